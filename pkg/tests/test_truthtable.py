import random

import pytest

from rnmatrix.formula import (SIG_C, And, Imp, Neg, Up, Var, defined_bottom, parse, pow,
                              random_formula, strong_negation, subformula_closure, substitute)
from rnmatrix.logics import get_logic, list_logics
from rnmatrix.truthtable import (ResourceLimitError, build_table, closure_for, entails, is_valid,
                                 naive_valuations, row_limit, search)

p, q, r = Var('p'), Var('q'), Var('r')

ORACLE_CAP = 3 * 10 ** 6


def rows_of(table):
    return [tuple(r.values) for r in table.rows]


def test_c1_single_variable():
    t = build_table(get_logic('C1'), [p])
    assert rows_of(t) == [('T',), ('t0',), ('F',)]
    assert set(rows_of(t)) == {r.values for r in naive_valuations(get_logic('C1'), [p])}
    assert len(build_table(get_logic('C2'), [p])) == 4


C1_FINAL = [
    ('T', 'F', 'T', 'F', 'T'),
    ('t0', 'T', 'F', 'T', 'F'),
    ('t0', 't0', 'T', 'T', 'F'),
    ('t0', 't0', 't0', 'T', 'F'),
    ('F', 'T', 'F', 'F', 'T'),
]


def test_c1_worked_table():
    spec = get_logic('C1')
    cols = [p, Neg(p), Neg(Neg(p)), And(p, Neg(p)), Neg(And(p, Neg(p)))]
    t = build_table(spec, [Neg(And(p, Neg(p))), Neg(Neg(p))])
    assert set(t.domain) == set(cols)
    assert [tuple(row[c] for c in cols) for row in t.rows] == C1_FINAL
    assert entails(spec, [p, Neg(p), Neg(And(p, Neg(p)))], Neg(Neg(p))).valid


BI_TABLE = [
    ('1', '1', '0', '0', '0'),
    ('1', '0', '1', '1', '1'),
    ('1', '0', '0', '0', '1'),
    ('0', '1', '1', '1', '1'),
    ('0', '1', '0', '0', '0'),
    ('0', '0', '1', '1', '1'),
    ('0', '0', '0', '0', '1'),
]


def test_bi_worked_table():
    spec = get_logic('bI')
    concl = Imp(q, Up(q, p))
    t = build_table(spec, [p, Up(p, q), concl])
    assert list(t.domain) == [p, q, Up(p, q), Up(q, p), concl]
    assert rows_of(t) == BI_TABLE
    assert entails(spec, [p, Up(p, q)], concl).valid


def test_cila_countermodel():
    f = parse('!(a | b) -> (!a & !b)')
    v = entails(get_logic('Cila'), [], f)
    assert not v.valid
    cm = v.countermodel
    assert (cm[Var('a')], cm[Var('b')]) == ('t', 'T')
    assert cm[parse('a | b')] == 't'
    assert cm[parse('!(a | b)')] in {'t', 'T'}
    assert is_valid(get_logic('CPL'), f)


def test_dump_and_records():
    t = build_table(get_logic('C1'), [Neg(p)])
    lines = t.dump(unicode=False).splitlines()
    assert lines[0].split('|')[0].strip() == 'p' and lines[0].split('|')[1].strip() == '!p'
    assert len(lines) == 2 + len(t)
    assert t.records()[0] == {'p': 'T', '!p': 'F'}


def test_row_limit_env(monkeypatch):
    monkeypatch.setenv('RNMATRIX_ROW_LIMIT', '5')
    assert row_limit() == 5
    with pytest.raises(ResourceLimitError):
        build_table(get_logic('C2'), [parse('(p | q) & !r')])
    monkeypatch.delenv('RNMATRIX_ROW_LIMIT')
    assert row_limit() == 2 * 10 ** 6


def test_signature_checked():
    from rnmatrix.formula import SignatureError
    with pytest.raises(SignatureError):
        build_table(get_logic('C1'), [Up(p, q)])


def test_naive_examined_is_exhaustive():
    spec = get_logic('C2')
    fs = [parse('!p -> q')]
    rows = naive_valuations(spec, fs)
    d = len(subformula_closure(fs))
    assert rows.examined == 4 ** d
    with pytest.raises(ResourceLimitError):
        naive_valuations(spec, [parse('((p | q) & (q | r)) -> !(p & !r)')], cap=1000)


def sample_within_cap(spec, rng, count, depth=4, names=('p', 'q', 'r')):
    """Random formulas whose augmented closure the exhaustive oracle can afford."""
    k = len(spec.carrier)
    out = []
    while len(out) < count:
        f = random_formula(rng, spec.sig, depth, names=names)
        if k ** len(closure_for(spec, [f])) <= ORACLE_CAP:
            out.append(f)
    return out


@pytest.mark.parametrize('lid', list_logics())
def test_naive_oracle_agrees(lid):
    spec = get_logic(lid)
    rng = random.Random('naive-' + lid)
    for f in sample_within_cap(spec, rng, 40):
        fast = set(rows_of(build_table(spec, [f])))
        slow = {r.values for r in naive_valuations(spec, [f], cap=ORACLE_CAP)}
        assert fast == slow, f


@pytest.mark.parametrize('lid', list_logics())
def test_rows_pass_independent_recheck(lid):
    spec = get_logic(lid)
    rng = random.Random('check-' + lid)
    for _ in range(15):
        f = random_formula(rng, spec.sig, 3)
        t = build_table(spec, [f])
        assert len(set(rows_of(t))) == len(t)
        for row in t.rows[:200]:
            assert spec.matrix.check_valuation(row.as_dict()) == []


@pytest.mark.parametrize('lid', list_logics())
def test_countermodels_witness_invalidity(lid):
    spec = get_logic(lid)
    rng = random.Random('cm-' + lid)
    seen = 0
    for _ in range(40):
        prem = [random_formula(rng, spec.sig, 2, names=('p', 'q')) for _ in range(rng.randint(0, 2))]
        concl = random_formula(rng, spec.sig, 3, names=('p', 'q'))
        v = entails(spec, prem, concl)
        if v.valid:
            assert v.countermodel is None
            continue
        seen += 1
        cm = v.countermodel
        assert all(cm[x] in spec.designated for x in prem)
        assert cm[concl] not in spec.designated
        assert spec.matrix.check_valuation(cm.as_dict()) == []
    assert seen > 0


@pytest.mark.parametrize('lid', list_logics())
def test_renaming_invariance(lid):
    spec = get_logic(lid)
    rng = random.Random('rename-' + lid)
    swap = {'p': q, 'q': r, 'r': p}
    for _ in range(30):
        prem = [random_formula(rng, spec.sig, 2) for _ in range(rng.randint(0, 1))]
        concl = random_formula(rng, spec.sig, 3)
        moved = entails(spec, [substitute(x, swap) for x in prem], substitute(concl, swap))
        assert moved.valid == entails(spec, prem, concl).valid


BI_FAMILY = ['bI', 'bIminus', 'bIpr', 'nbI', 'nbIciw', 'nbIci', 'nbIcl']


@pytest.mark.parametrize('lid', BI_FAMILY)
def test_bottom_and_strong_negation(lid):
    spec = get_logic(lid)
    D = spec.designated
    rng = random.Random('bot-' + lid)
    for _ in range(20):
        x = random_formula(rng, spec.sig, 2, names=('p', 'q'))
        y = random_formula(rng, spec.sig, 1, names=('p', 'q'))
        bot, sn = defined_bottom(x, y), strong_negation(x)
        for row in build_table(spec, [bot, sn]).rows:
            assert row[bot] not in D
            assert (row[sn] in D) == (row[x] not in D)


def extension_of(closure):
    extra = []
    for f in closure:
        extra += [And(f, Neg(f)), pow(f, 1)]
    return list(closure) + extra


@pytest.mark.parametrize('n,count', [(1, 60), (2, 40), (3, 15)])
def test_row_extension(n, count):
    spec = get_logic('C%d' % n)
    rng = random.Random('ext-%d' % n)
    for _ in range(count):
        f = random_formula(rng, SIG_C, 3 if n < 3 else 2, names=('p', 'q'))
        small = build_table(spec, [f])
        big = closure_for(spec, extension_of(small.domain))
        pos = {g: i for i, g in enumerate(big)}
        for row in small.rows:
            pins = {pos[g]: v for g, v in row.items()}
            assert next(search(spec, big, pins=pins), None) is not None, (f, row)


def test_merged_table_matches_deduction_theorem_in_cpl():
    spec = get_logic('CPL')
    rng = random.Random(9)
    for _ in range(50):
        x = random_formula(rng, SIG_C, 2)
        y = random_formula(rng, SIG_C, 3)
        assert entails(spec, [x], y).valid == is_valid(spec, Imp(x, y))
