import itertools
import random

import pytest

from rnmatrix.boolean import TWO, powerset_algebra
from rnmatrix.formula import (AND, IMP, NEG, OR, SIG_C, And, Imp, Neg, Or, Var, formulas_by_size, pow,
                              pow_conj, random_formula)
from rnmatrix.logics import get_logic, get_logic_over
from rnmatrix.snapshots import (b_valuation_violations, bivaluation_violations, c_names, count_closed_form,
                                count_enumerated, find_nonclassical_witness, is_snapshot,
                                restriction_Cn, scenario_value, snapshots, snapshots_over,
                                swap_structure, swap_structure_over)
from rnmatrix.truthtable import build_table

p, q = Var('p'), Var('q')


def test_two_valued_snapshots():
    s1 = snapshots(1)
    assert {s1.name(z): z for z in s1.all} == {'T': (1, 0), 't0': (1, 1), 'F': (0, 1)}
    s2 = snapshots(2)
    assert {s2.name(z): z for z in s2.all} == {'T': (1, 0, 1), 't0': (1, 1, 0), 't1': (1, 1, 1),
                                               'F': (0, 1, 1)}
    for n in range(1, 7):
        assert len(snapshots(n)) == n + 2
        assert [snapshots(n).name(z) for z in snapshots(n).all] == c_names(n)
    with pytest.raises(ValueError):
        snapshots(0)


def test_two_valued_snapshots_are_the_enumerated_ones():
    for n in range(1, 5):
        every = {z for z in itertools.product((0, 1), repeat=n + 1) if is_snapshot(z, TWO)}
        assert every == set(snapshots(n).all)


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('m', [1, 2, 3])
def test_counts(n, m):
    for which in ('all', 'designated', 'boolean'):
        assert count_enumerated(n, m, which) == count_closed_form(n, m, which)
    assert count_closed_form(n, m) == (n + 2) ** m
    assert count_closed_form(n, m, 'designated') == (n + 1) ** m
    assert count_closed_form(n, m, 'boolean') == 2 ** m


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('m', [1, 2, 3])
def test_snapshot_invariant(n, m):
    B = powerset_algebra(m)
    space = snapshots_over(n, B)
    assert all(is_snapshot(z, B) for z in space.all)
    assert not is_snapshot((B.bottom,) * (n + 1), B)
    assert all(z[0] == B.top for z in space.designated)
    assert all(B.meet(z[0], z[1]) == B.bottom for z in space.boolean_subset)


def test_count_examples():
    assert count_closed_form(1, 2) == 9
    assert count_closed_form(2, 2) == 16
    assert count_closed_form(1, 2, 'designated') == 4
    with pytest.raises(ValueError):
        count_closed_form(0, 2)


# Listings of B_n^B, split as (designated, Boolean) groups.
LISTINGS = {
    (1, 2): {
        (True, True): ['(1,0)'],
        (True, False): ['(1,{a})', '(1,{b})', '(1,1)'],
        (False, True): ['(0,1)', '({a},{b})', '({b},{a})'],
        (False, False): ['({a},1)', '({b},1)'],
    },
    (2, 2): {
        (True, True): ['(1,0,1)'],
        (True, False): ['(1,1,0)', '(1,1,{a})', '(1,1,{b})', '(1,1,1)', '(1,{a},{b})', '(1,{b},{a})',
                        '(1,{a},1)', '(1,{b},1)'],
        (False, True): ['(0,1,1)', '({a},{b},1)', '({b},{a},1)'],
        (False, False): ['({a},1,1)', '({a},1,{b})', '({b},1,1)', '({b},1,{a})'],
    },
    (1, 3): {
        (True, True): ['(1,0)'],
        (True, False): ['(1,{a})', '(1,{b})', '(1,{c})', '(1,{b,c})', '(1,{a,c})', '(1,{a,b})', '(1,1)'],
        (False, True): ['(0,1)', '({a},{b,c})', '({b},{a,c})', '({c},{a,b})', '({b,c},{a})',
                        '({a,c},{b})', '({a,b},{c})'],
        (False, False): ['({a},1)', '({b},1)', '({c},1)', '({b,c},{a,c})', '({b,c},{a,b})', '({b,c},1)',
                         '({a,c},{b,c})', '({a,c},{a,b})', '({a,c},1)', '({a,b},{b,c})',
                         '({a,b},{a,c})', '({a,b},1)'],
    },
}


@pytest.mark.parametrize('key', sorted(LISTINGS))
def test_listings(key):
    n, m = key
    space = snapshots_over(n, powerset_algebra(m))
    des, boo = set(space.designated), set(space.boolean_subset)
    got = {}
    for z in space.all:
        got.setdefault((z in des, z in boo), set()).add(space.name(z))
    assert got == {k: set(v) for k, v in LISTINGS[key].items()}


# -- swap structures -------------------------------------------------------------------

def classes(n):
    names = c_names(n)
    return {'F': {'F'}, 'T': {'T'}, 'I': set(names[1:-1]), 'D': set(names[:-1])}


SUMMARY = {
    OR: {'F': 'FDT', 'I': 'DDD', 'T': 'TDT'},
    AND: {'F': 'FFF', 'I': 'FDD', 'T': 'FDT'},
    IMP: {'F': 'TDT', 'I': 'FDD', 'T': 'FDT'},
}
SUMMARY_NEG = {'F': 'T', 'I': 'D', 'T': 'F'}


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_swap_structure_summary_tables(n):
    m = swap_structure(n)
    cl = classes(n)
    kind = {v: k for k in 'FIT' for v in cl[k]}
    for x in m.carrier:
        assert m.eval(NEG, (x,)) == cl[SUMMARY_NEG[kind[x]]]
        for sym, rows in SUMMARY.items():
            for y in m.carrier:
                want = rows[kind[x]]['FIT'.index(kind[y])]
                assert m.eval(sym, (x, y)) == cl[want], (sym, x, y)


def test_swap_structure_examples():
    m = swap_structure(3)
    D = set(c_names(3)[:-1])
    for k in range(3):
        assert m.eval(NEG, ('t%d' % k,)) == D
    assert m.eval(OR, ('t0', 't2')) == D
    assert m.eval(IMP, ('T', 'T')) == {'T'}


@pytest.mark.parametrize('n', [1, 2])
def test_swap_structure_over_b(n):
    B = powerset_algebra(2)
    space = snapshots_over(n, B)
    alg = swap_structure_over(n, B)
    a = B.parse('{a}')
    z = (a, B.compl(a)) + (B.top,) * (n - 1)
    assert alg.eval(NEG, (z,)) == {(B.compl(a), a) + (B.top,) * (n - 1)}
    boo = set(space.boolean_subset)
    for sym in (OR, AND, IMP):
        for x, y in itertools.product(boo, repeat=2):
            assert alg.eval(sym, (x, y)) <= boo
    # the two-valued structure sits inside, up to 1 -> top
    small = snapshots(n)
    lift = {zz: tuple(B.top if c else B.bottom for c in zz) for zz in small.all}
    named = swap_structure(n)
    image = set(lift.values())
    for sym, ar in SIG_C.connectives:
        for args in itertools.product(small.all, repeat=ar):
            want = {lift[small.by_name(v)] for v in named.eval(sym, tuple(small.name(x) for x in args))}
            assert alg.eval(sym, tuple(lift[x] for x in args)) & image == want


def test_restriction_rule_names():
    assert [r.name for r in restriction_Cn(1)] == ['R1']
    assert [r.name for r in restriction_Cn(2)] == ['R1', 'R2_2', 'R2_2']
    assert len(restriction_Cn(3)) == 5


@pytest.mark.parametrize('n', [1, 2])
def test_restriction_over_two_matches_named_rules(n):
    over, named = get_logic_over(n, 1), get_logic('C%d' % n)
    name = over.space.name
    fs = list(formulas_by_size(SIG_C, ('p',), 3)) + list(formulas_by_size(SIG_C, ('p', 'q'), 2))
    rng = random.Random(n)
    fs += [random_formula(rng, SIG_C, 3, names=('p', 'q')) for _ in range(60)]
    for f in fs:
        a = {tuple(name(v) for v in r) for r in build_table(over, [f]).value_rows()}
        b = set(build_table(named, [f]).value_rows())
        assert a == b, f


def test_clause_three_needs_the_implication_in_closure():
    spec = get_logic_over(1, 2)
    target = Imp(And(pow_conj(p, 1), pow_conj(q, 1)), pow_conj(Or(p, q), 1))
    dom = build_table(spec, [And(pow(p, 1), pow(q, 1))]).domain
    assert target not in dom
    fb3 = [r for r in spec.rules if r.name.startswith('FB3')]
    from rnmatrix.algebra import compile_rules
    assert compile_rules(fb3, dom) == []
    full = build_table(spec, [target])
    assert compile_rules(fb3, full.domain)
    D = set(spec.designated)
    assert all(r[target] in D for r in full.rows)


# -- properties of rows ----------------------------------------------------------------

def _t_index(n, name):
    return -1 if name == 'T' else n if name == 'F' else int(name[1:])


@pytest.mark.parametrize('n', [1, 2, 3])
def test_scenario_lemma(n):
    spec = get_logic('C%d' % n)
    for base in (p, Neg(p), Or(p, q)):
        t = build_table(spec, [pow(base, k) for k in range(1, n + 1)])
        assert len(t) > 0
        for row in t.rows:
            i = _t_index(n, row[base])
            for k in range(1, n + 1):
                assert row[pow(base, k)] == scenario_value(n, i, k)


def projection_closures(n):
    rng = random.Random(100 + n)
    fs = [[pow(p, n)], [Neg(pow(p, 1)), Neg(p)], [Neg(And(p, q)), Neg(p), Neg(q)],
          [Neg(Imp(p, q)), Neg(p), Neg(q)], [Neg(Neg(p))], [Neg(pow(p, n - 1)), pow(p, n)]]
    fs += [[random_formula(rng, SIG_C, 3, names=('p', 'q'))] for _ in range(40)]
    return fs


@pytest.mark.parametrize('n', [1, 2, 3])
def test_projection_is_bivaluation(n):
    spec = get_logic('C%d' % n)
    D = set(spec.designated)
    for fs in projection_closures(n):
        t = build_table(spec, fs)
        # many rows share a projection; check each distinct one
        for bits in {tuple(int(v in D) for v in r) for r in t.value_rows()}:
            assert bivaluation_violations(n, dict(zip(t.domain, bits))) == [], fs


def test_bivaluation_checker_catches_bad_maps():
    assert bivaluation_violations(1, {p: 0, Neg(p): 0}) == [('B4', Neg(p))]
    b = {p: 1, q: 0, And(p, q): 1}
    assert ('B1-3', And(p, q)) in bivaluation_violations(1, b)


@pytest.mark.parametrize('n', [1, 2])
def test_b_valuation_clauses_over_four_element_algebra(n):
    spec = get_logic_over(n, 2)
    B = spec.space.B
    closures = [[Neg(Neg(p))], [Neg(pow(p, 1)), Neg(p)], [pow(p, n)], [Neg(And(p, q))]]
    seen = 0
    for fs in closures:
        for row in build_table(spec, fs).rows:
            b = {f: v[0] for f, v in row.items()}
            assert b_valuation_violations(n, B, b) == []
            seen += 1
    assert seen > 0


def test_b_valuation_checker_catches_bad_maps():
    B = powerset_algebra(2)
    a = B.parse('{a}')
    assert b_valuation_violations(1, B, {p: a, Neg(p): B.bottom}) == [('V2', p)]


@pytest.mark.parametrize('n,m', [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_nonclassical_witness(n, m):
    v = find_nonclassical_witness(n, m, [And(Neg(p), pow(p, 1))])
    assert v is not None
    B = get_logic_over(n, m).space.B
    assert v[Neg(p)][0] != B.compl(v[p][0])
    assert b_valuation_violations(n, B, {f: z[0] for f, z in v.items()}) == []
