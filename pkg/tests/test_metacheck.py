import pytest

from rnmatrix.formula import SIG_C, Var, strong_negation, Up
from rnmatrix.logics import get_logic
from rnmatrix.metacheck import (AXIOMS, LEWIN, SCHEMATA, Congruence, FiniteMatrix, MatrixError,
                                check_gamma, enumerate_congruences, gamma_family, identity, is_logic_filter,
                                leibniz_congruence, lewin_matrix, models_schema, mp_closed, run_suite,
                                schema_counterexample, total)

L = lewin_matrix('bI')
N = lewin_matrix('nbI')
FA, FB = {'u', '1', 'a'}, {'u', '1', 'b'}


def test_lewin_cells():
    assert L.op('↑', 'u', '0') == '1'
    assert L.op('→', 'a', 'a') == '1'
    assert N.op('¬', 'a') == 'b'
    assert [N.op('¬', x) for x in LEWIN] == ['1', '0', 'b', 'a', '1']
    with pytest.raises(ValueError):
        lewin_matrix('mbC')


@pytest.mark.parametrize('name', AXIOMS['bI'])
def test_lewin_models_bi(name):
    assert models_schema(L, SCHEMATA[name])


@pytest.mark.parametrize('name', AXIOMS['nbI'] + ['ciw*', 'ci*', 'cl*'])
def test_lewin_nbi_models(name):
    assert models_schema(N, SCHEMATA[name])


def test_bare_metavariable_fails():
    assert not models_schema(L, Var('α'))
    assert schema_counterexample(L, Var('α')) in ({'α': 'a'}, {'α': 'b'}, {'α': '0'})
    assert schema_counterexample(L, SCHEMATA['Ax1']) is None


def test_signature_mismatch():
    from rnmatrix.formula import SignatureError
    with pytest.raises(SignatureError):
        models_schema(L, SCHEMATA['Ax11*'])


def test_mp_and_filters():
    assert mp_closed(L, L.designated)
    assert is_logic_filter(L, 'bI', FA)
    assert is_logic_filter(L, 'bI', FB)
    assert not is_logic_filter(L, 'bI', {'u'})
    with pytest.raises(KeyError):
        is_logic_filter(L, 'Cila', FA)


@pytest.mark.parametrize('M', [L, N], ids=['bI', 'nbI'])
def test_congruences(M):
    assert set(enumerate_congruences(M)) == {identity(M), total(M)}


def test_one_element_algebra():
    tables = {s: {args: 'x' for args in ([('x',)] if a == 1 else [('x', 'x')])} for s, a in SIG_C.connectives}
    M = FiniteMatrix(SIG_C, ['x'], tables, {'x'})
    cs = enumerate_congruences(M)
    assert cs == [identity(M)] and identity(M) == total(M)


def test_congruence_size_guard():
    tables = {s: {} for s, _ in SIG_C.connectives}
    M = FiniteMatrix(SIG_C, list('abcdefghi'), tables, {'a'})
    with pytest.raises(MatrixError):
        enumerate_congruences(M)


def test_leibniz():
    la, lb = leibniz_congruence(L, FA), leibniz_congruence(L, FB)
    assert la == lb == identity(L)
    assert leibniz_congruence(L, LEWIN) == total(L)
    assert repr(identity(L)) == 'Δ' and repr(total(L)) == '∇'


def test_congruence_blocks():
    c = Congruence([['u', '1'], ['a'], ['b'], ['0']])
    assert c.related('u', '1') and not c.related('a', 'b')
    assert not c.is_identity() and not c.is_total()


def test_gamma_family():
    assert gamma_family(0) == [strong_negation(Up(Var('p0'), Var('q0')))]
    g1 = gamma_family(1)
    assert g1[1] == Up(Var('p0'), Var('q1'))
    assert len(gamma_family(2)) == 9
    with pytest.raises(ValueError):
        gamma_family(-1)


@pytest.mark.parametrize('n', [0, 1, 2])
def test_gamma_countermodels(n):
    invalid, pattern, verdict = check_gamma(n)
    assert invalid and pattern
    cm = verdict.countermodel
    assert cm[Var('p0')] == '0'


def test_cplup_as_matrix():
    M = FiniteMatrix.from_logic(get_logic('CPLup'))
    assert M.op('↑', '1', '1') == '0'
    with pytest.raises(MatrixError):
        FiniteMatrix.from_logic(get_logic('bI'))


def test_run_suite_all_pass():
    results = run_suite()
    assert results and all(ok for _, ok in results), [n for n, ok in results if not ok]
