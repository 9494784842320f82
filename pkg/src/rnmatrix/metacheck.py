"""
Finite witnesses for the metatheory of the incompatibility logics: the
five-element Lewin matrices, their filters and congruences, and the Γ_n
families used against finite (R)Nmatrix characterizations.
"""

import itertools

from more_itertools import set_partitions

from .formula import (IMP, NEG, SIG_BI, SIG_NBI, And, Neg, Up, Var, check_signature,
                      defined_bottom, parse, strong_negation, substitute, variables)


class MatrixError(Exception):
    pass


class FiniteMatrix(object):
    """A deterministic matrix: carrier, one table per connective, designated set."""

    def __init__(self, sig, carrier, tables, designated, variant=None):
        self.sig = sig
        self.carrier = tuple(carrier)
        self.tables = tables
        self.designated = frozenset(designated)
        self.variant = variant

    def op(self, sym, *args):
        return self.tables[sym][args]

    def evaluate(self, f, assignment):
        if f.is_var:
            return assignment[f.name]
        return self.tables[f.conn][tuple(self.evaluate(a, assignment) for a in f.args)]

    @classmethod
    def from_logic(cls, spec):
        """View a two-valued deterministic built-in logic (CPL, CPLup) as a matrix."""
        if spec.rules or not spec.alg.is_deterministic():
            raise MatrixError('%s is not a deterministic matrix' % spec.id)
        tables = {sym: {k: next(iter(v)) for k, v in t.items()} for sym, t in spec.alg.tables.items()}
        return cls(spec.sig, spec.carrier, tables, spec.designated, spec.id)


LEWIN = ('u', '1', 'a', 'b', '0')


def _rows(text):
    grid = [line.split() for line in text.strip().splitlines()]
    return {(x, y): grid[i][j] for i, x in enumerate(LEWIN) for j, y in enumerate(LEWIN)}


LEWIN_OR = _rows('''
u u u u u
u 1 1 1 1
u 1 a 1 a
u 1 1 b b
u 1 a b 0
''')

LEWIN_AND = _rows('''
u 1 a b 0
1 1 a b 0
a a a 0 0
b b 0 b 0
0 0 0 0 0
''')

LEWIN_IMP = _rows('''
u u a b 0
u 1 a b 0
u 1 1 b b
u 1 a 1 a
u 1 1 1 1
''')

LEWIN_UP = _rows('''
0 0 0 0 1
0 0 b a 1
0 b b 1 1
0 a 1 a 1
1 1 1 1 1
''')

LEWIN_NEG = {('u',): '1', ('1',): '0', ('a',): 'b', ('b',): 'a', ('0',): '1'}


def lewin_matrix(variant='bI'):
    tables = {'∨': LEWIN_OR, '∧': LEWIN_AND, '→': LEWIN_IMP, '↑': LEWIN_UP}
    if variant == 'bI':
        sig = SIG_BI
    elif variant == 'nbI':
        sig = SIG_NBI
        tables[NEG] = LEWIN_NEG
    else:
        raise ValueError('variant must be bI or nbI, not %r' % variant)
    return FiniteMatrix(sig, LEWIN, tables, {'u', '1'}, variant)


# -- schemata --------------------------------------------------------------------

_META = {'a': Var('α'), 'b': Var('β'), 'c': Var('γ')}


def schema(text):
    """An axiom schema written with a, b, c for the metavariables α, β, γ."""
    return substitute(parse(text), _META)


A, B = Var('α'), Var('β')

SCHEMATA = {
    'Ax1': schema('a -> (b -> a)'),
    'Ax2': schema('(a -> (b -> c)) -> ((a -> b) -> (a -> c))'),
    'Ax3': schema('a -> (b -> (a & b))'),
    'Ax4': schema('(a & b) -> a'),
    'Ax5': schema('(a & b) -> b'),
    'Ax6': schema('a -> (a | b)'),
    'Ax7': schema('b -> (a | b)'),
    'Ax8': schema('(a -> c) -> ((b -> c) -> ((a | b) -> c))'),
    'Ax9*': schema('(a -> b) | a'),
    'Ip': schema('(a ^ b) -> (a -> (b -> c))'),
    'Comm': schema('(a ^ b) -> (b ^ a)'),
    'Ax11*': schema('a | !a'),
    'ciw*': schema('(a ^ !a) | (a & !a)'),
    'ci*': schema('!(a ^ !a) -> (a & !a)'),
    'cl*': schema('!(a & !a) -> (a ^ !a)'),
    'Ex': substitute(parse('(x -> y) -> (a ^ b)'), {'x': And(A, B), 'y': defined_bottom(A, B), **_META}),
    'ciw↑': schema('(a ^ b) | (a & b)'),
    'ci↑': schema('!(a ^ b) -> (a & b)'),
    'cl↑': schema('!(a & b) -> (a ^ b)'),
}

_BI = ['Ax1', 'Ax2', 'Ax3', 'Ax4', 'Ax5', 'Ax6', 'Ax7', 'Ax8', 'Ax9*', 'Ip', 'Comm']

AXIOMS = {
    'bI': _BI,
    'nbI': _BI + ['Ax11*'],
    'nbIciw': _BI + ['Ax11*', 'ciw*'],
    'nbIci': _BI + ['Ax11*', 'ci*'],
    'nbIcl': _BI + ['Ax11*', 'cl*'],
}

CPLUP_SCHEMATA = ['Ip', 'Comm', 'Ex', 'ciw↑', 'ci↑', 'cl↑']


def _assignments(M, f):
    names = [v.name for v in variables(f)]
    for vals in itertools.product(M.carrier, repeat=len(names)):
        yield dict(zip(names, vals))


def models_schema(M, f, within=None):
    """True iff every assignment sends f into ``within`` (default: the designated set)."""
    check_signature(f, M.sig)
    target = M.designated if within is None else frozenset(within)
    return all(M.evaluate(f, s) in target for s in _assignments(M, f))


def schema_counterexample(M, f):
    check_signature(f, M.sig)
    for s in _assignments(M, f):
        if M.evaluate(f, s) not in M.designated:
            return s
    return None


def mp_closed(M, F):
    F = frozenset(F)
    return all(M.op(IMP, x, y) not in F or y in F for x in F for y in M.carrier)


def is_logic_filter(M, logic_id, F):
    """Every axiom instance lands in F and F is closed under modus ponens."""
    try:
        names = AXIOMS[logic_id]
    except KeyError:
        raise KeyError('no axiom list for logic %r' % logic_id) from None
    return all(models_schema(M, SCHEMATA[n], F) for n in names) and mp_closed(M, F)


# -- congruences ---------------------------------------------------------------------

class Congruence(object):

    def __init__(self, blocks):
        self.blocks = frozenset(frozenset(b) for b in blocks)
        self._block = {x: b for b in self.blocks for x in b}

    def related(self, x, y):
        return self._block[x] is self._block[y] or self._block[x] == self._block[y]

    def pairs(self):
        return {(x, y) for b in self.blocks for x in b for y in b}

    def is_identity(self):
        return all(len(b) == 1 for b in self.blocks)

    def is_total(self):
        return len(self.blocks) == 1

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        if self.is_total():
            return '∇'
        if self.is_identity():
            return 'Δ'
        return '|'.join(''.join(sorted(b)) for b in sorted(self.blocks, key=sorted))


def identity(M):
    return Congruence([[x] for x in M.carrier])


def total(M):
    return Congruence([M.carrier])


def _compatible(M, theta):
    for sym, arity in M.sig.connectives:
        t = M.tables[sym]
        for args in itertools.product(M.carrier, repeat=arity):
            for k in range(arity):
                for y in theta._block[args[k]]:
                    other = args[:k] + (y,) + args[k + 1:]
                    if not theta.related(t[args], t[other]):
                        return False
    return True


def enumerate_congruences(M, max_size=8):
    if len(M.carrier) > max_size:
        raise MatrixError('carrier of size %d is too large (max %d)' % (len(M.carrier), max_size))
    out = []
    for parts in set_partitions(M.carrier):
        theta = Congruence(parts)
        if _compatible(M, theta):
            out.append(theta)
    return out


def leibniz_congruence(M, F):
    """The largest congruence for which F is a union of classes."""
    F = frozenset(F)
    good = [t for t in enumerate_congruences(M) if all(b <= F or not (b & F) for b in t.blocks)]
    best = max(good, key=lambda t: len(t.pairs()))
    assert all(t.pairs() <= best.pairs() for t in good)
    return best


# -- Γ_n ---------------------------------------------------------------------------------

def gamma_family(n):
    """φ_ij = p_i↑q_j for i<j and ~(p_i↑q_j) otherwise, 0 <= i, j <= n, row by row."""
    if n < 0:
        raise ValueError('n must be >= 0')
    out = []
    for i in range(n + 1):
        for j in range(n + 1):
            f = Up(Var('p%d' % i), Var('q%d' % j))
            out.append(f if i < j else strong_negation(f))
    return out


def check_gamma(n):
    """
    entails(bI, Γ_n, p0) must fail, with ν(p_i↑q_j) = 1 exactly when i < j
    in the countermodel. Returns (invalid, pattern_ok, verdict).
    """
    from .logics import get_logic
    from .truthtable import entails
    spec = get_logic('bI')
    verdict = entails(spec, gamma_family(n), Var('p0'))
    if verdict.valid:
        return False, False, verdict
    cm = verdict.countermodel
    ok = all((cm[Up(Var('p%d' % i), Var('q%d' % j))] == '1') == (i < j)
             for i in range(n + 1) for j in range(n + 1))
    return True, ok, verdict


# -- report ----------------------------------------------------------------------------

def run_suite(max_gamma=2):
    """Every claim as a (name, passed) pair."""
    from .logics import get_logic
    L, N = lewin_matrix('bI'), lewin_matrix('nbI')
    Fa, Fb = {'u', '1', 'a'}, {'u', '1', 'b'}
    out = []
    for name in AXIOMS['bI']:
        out.append(('Lewin bI models %s' % name, models_schema(L, SCHEMATA[name])))
    for name in AXIOMS['nbI'] + ['ciw*', 'ci*', 'cl*']:
        out.append(('Lewin nbI models %s' % name, models_schema(N, SCHEMATA[name])))
    out.append(('D is closed under MP', mp_closed(L, L.designated)))
    for tag, M in (('bI', L), ('nbI', N)):
        cs = set(enumerate_congruences(M))
        out.append(('congruences of Lewin %s are exactly Δ, ∇' % tag, cs == {identity(M), total(M)}))
    out.append(('F_a is a bI-filter', is_logic_filter(L, 'bI', Fa)))
    out.append(('F_b is a bI-filter', is_logic_filter(L, 'bI', Fb)))
    la, lb = leibniz_congruence(L, Fa), leibniz_congruence(L, Fb)
    out.append(('Leibniz(F_a) = Leibniz(F_b) = Δ', la == lb == identity(L) and Fa != Fb))
    cplup = FiniteMatrix.from_logic(get_logic('CPLup'))
    for name in CPLUP_SCHEMATA:
        out.append(('CPLup models %s' % name, models_schema(cplup, SCHEMATA[name])))
    for n in range(max_gamma + 1):
        invalid, pattern, _ = check_gamma(n)
        out.append(('Γ_%d does not entail p0 in bI' % n, invalid))
        out.append(('Γ_%d countermodel has ν(p_i↑q_j)=1 iff i<j' % n, pattern))
    return out
