"""
Catalog of built-in logics, each packaged as an RNmatrix plus a closure
augmentation policy.

Two-valued carriers are ``1, 0`` and the three-valued LFI carriers are
``T, t, F``; the listing order drives the order in which tables branch.
"""

import functools
import itertools
import re

from .algebra import Multialgebra, RNmatrix, RestrictionRule
from .formula import (AND, CIRC, IMP, NEG, OR, SIG_BI, SIG_C, SIG_LFI, SIG_NBI, UP, And, App,
                      Neg, Up, Var, subformula_closure)
from .boolean import BooleanAlgebra
from .snapshots import (c_names, restriction_Cn, restriction_Cn_over, snapshots_over,
                        swap_structure, swap_structure_over)


class UnknownLogicError(KeyError):

    def __str__(self):
        return self.args[0]


class LogicSpec(object):
    """
    A ready-made logic. ``tableau`` names the tableau calculus (or is None);
    ``augment`` maps a closure to a closure with auxiliary formulas added.
    """

    def __init__(self, id, sig, matrix, augment=None, tableau=None, n=None, description=''):
        if matrix.sig != sig:
            raise ValueError('matrix signature differs from logic signature')
        self.id = id
        self.sig = sig
        self.matrix = matrix
        self._augment = augment
        self.tableau = tableau
        self.n = n
        self.description = description

    @property
    def alg(self):
        return self.matrix.alg

    @property
    def carrier(self):
        return self.matrix.alg.carrier

    @property
    def designated(self):
        return self.matrix.designated

    @property
    def rules(self):
        return self.matrix.rules

    def augment(self, closure):
        closure = list(closure)
        if self._augment is None:
            return closure
        return subformula_closure(self._augment(closure))

    def __repr__(self):
        return 'LogicSpec(%s)' % self.id


# -- table helpers ------------------------------------------------------------

BIT = ('1', '0')
LFI3 = ('T', 't', 'F')


def _grid(order, rows):
    """Binary table from rows listed in ``order`` (row = first argument)."""
    t = {}
    for a, row in zip(order, rows):
        for b, cell in zip(order, row):
            t[(a, b)] = set(cell)
    return t


def _unary(order, cells):
    return {(a,): set(c) for a, c in zip(order, cells)}


def _classical():
    b = lambda x: '1' if x else '0'
    t = {OR: {}, AND: {}, IMP: {}}
    for x, y in itertools.product((1, 0), repeat=2):
        k = (b(x), b(y))
        t[OR][k] = {b(x or y)}
        t[AND][k] = {b(x and y)}
        t[IMP][k] = {b((not x) or y)}
    return t


def _bi_up():
    return {k: ({'0'} if k == ('1', '1') else {'0', '1'}) for k in itertools.product(BIT, repeat=2)}


PARA_NEG = {('0',): {'1'}, ('1',): {'0', '1'}}
CLASS_NEG = {('0',): {'1'}, ('1',): {'0'}}

# three-valued tables are written in the order F, t, T
_P = ('F', 't', 'T')
D3 = 'tT'

MBCCIW_TABLES = {
    OR: _grid(_P, [['F', D3, D3], [D3, D3, D3], [D3, D3, D3]]),
    AND: _grid(_P, [['F', 'F', 'F'], ['F', D3, D3], ['F', D3, D3]]),
    NEG: _unary(_P, [D3, D3, 'F']),
    IMP: _grid(_P, [[D3, D3, D3], ['F', D3, D3], ['F', D3, D3]]),
    CIRC: _unary(_P, [D3, 'F', D3]),
}

CILA_TABLES = {
    OR: _grid(_P, [['F', D3, 'T'], [D3, D3, D3], ['T', D3, 'T']]),
    AND: _grid(_P, [['F', 'F', 'F'], ['F', D3, D3], ['F', D3, 'T']]),
    NEG: _unary(_P, ['T', D3, 'F']),
    IMP: _grid(_P, [['T', D3, 'T'], ['F', D3, D3], ['F', D3, 'T']]),
    CIRC: _unary(_P, ['T', 'F', 'T']),
}

CI_TABLES = dict(MBCCIW_TABLES, **{NEG: _unary(_P, ['T', D3, 'F']), CIRC: _unary(_P, ['T', 'F', 'T'])})


# -- rules ----------------------------------------------------------------------

A, B, G = Var('α'), Var('β'), Var('γ')


def comm_rule():
    return RestrictionRule('Comm', (Up(A, B),), Up(B, A), lambda v: (v,))


def pr_rules():
    one = ('1',)
    fire = lambda v: one if v == '1' else None
    return [
        RestrictionRule('pr∧1', (Up(A, G),), Up(And(A, B), G), fire),
        RestrictionRule('pr∧2', (Up(B, G),), Up(And(A, B), G), fire),
        RestrictionRule('pr∨', (Up(A, G), Up(B, G)), Up(App(OR, (A, B)), G),
                        lambda x, y: one if x == y == '1' else None),
    ]


def _nand(x, y):
    return ('0',) if x == y == '1' else ('1',)


def _both(x, y):
    return ('1',) if x == y == '1' else ('0',)


def ciw_rules():
    return [
        RestrictionRule('ciw', (A, Neg(A)), Up(A, Neg(A)), _nand),
        RestrictionRule('ciw', (A, Neg(A)), Up(Neg(A), A), _nand),
    ]


def ci_rule():
    return RestrictionRule('ci', (A, Neg(A)), Neg(Up(A, Neg(A))), _both)


def cl_rule():
    return RestrictionRule('cl', (A, Neg(A)), Neg(And(A, Neg(A))), _nand)


def mbc_rule():
    return RestrictionRule('bc', (A, Neg(A)), App(CIRC, (A,)),
                           lambda x, y: ('0',) if x == y == '1' else None)


def mbcci_rules():
    return [
        RestrictionRule('bc', (A, Neg(A)), App(CIRC, (A,)), _nand),
        RestrictionRule('ci', (A, Neg(A)), Neg(App(CIRC, (A,))),
                        lambda x, y: None if x == y == '1' else ('0',)),
    ]


def t_rule():
    return RestrictionRule('t', (A,), And(A, Neg(A)), lambda v: ('T',) if v == 't' else None)


# -- augmentation -----------------------------------------------------------------

def add_circ_negations(closure):
    out = list(closure)
    for f in closure:
        if not f.is_var and f.conn == CIRC:
            out.append(Neg(f.args[0]))
    return out


def add_pr_components(closure):
    """
    Close the ↑-formulas under commutation and under splitting a ∧/∨ on the
    left of ↑, so every constraint that reaches a closure member is checkable.
    """
    seen = set(closure)
    todo = [f for f in closure if not f.is_var and f.conn == UP]
    out = list(closure)
    while todo:
        f = todo.pop()
        x, y = f.args
        new = [Up(y, x)]
        if not x.is_var and x.conn in (AND, OR):
            new += [Up(x.args[0], y), Up(x.args[1], y)]
        for g in new:
            if g not in seen:
                seen.add(g)
                out.append(g)
                todo.append(g)
    return out


# -- builders -----------------------------------------------------------------------

def _two_valued(sig, extra, rules=(), augment=None, tableau=None, id='', description=''):
    tables = _classical()
    tables.update(extra)
    alg = Multialgebra(sig, BIT, tables)
    return LogicSpec(id, sig, RNmatrix(alg, {'1'}, rules), augment, tableau, description=description)


def _build_cpl():
    return _two_valued(SIG_C, {NEG: CLASS_NEG}, tableau='generic', id='CPL',
                       description='classical logic')


def _build_cplup():
    up = {k: {'0' if k == ('1', '1') else '1'} for k in itertools.product(BIT, repeat=2)}
    return _two_valued(SIG_NBI, {NEG: CLASS_NEG, UP: up}, tableau='generic', id='CPLup',
                       description='classical logic with α↑β read as ~(α∧β)')


def _build_cn(n):
    alg = swap_structure(n)
    names = c_names(n)
    return LogicSpec('C%d' % n, SIG_C, RNmatrix(alg, names[:-1], restriction_Cn(n)),
                     tableau='Tn', n=n, description="da Costa's C_%d" % n)


def _three(tables, rules, id, tableau, description):
    alg = Multialgebra(SIG_LFI, LFI3, tables)
    return LogicSpec(id, SIG_LFI, RNmatrix(alg, {'t', 'T'}, rules), tableau=tableau,
                     description=description)


BUILDERS = {
    'CPL': _build_cpl,
    'CPLup': _build_cplup,
    'mbC': lambda: _two_valued(SIG_LFI, {NEG: PARA_NEG, CIRC: {('0',): {'0', '1'}, ('1',): {'0', '1'}}},
                               [mbc_rule()], add_circ_negations, None, 'mbC',
                               'mbC via its bivaluations'),
    'mbCci': lambda: _two_valued(SIG_LFI, {NEG: PARA_NEG, CIRC: {('0',): {'0', '1'}, ('1',): {'0', '1'}}},
                                 mbcci_rules(), add_circ_negations, None, 'mbCci',
                                 'mbCci via its bivaluations'),
    'mbCciw': lambda: _three(MBCCIW_TABLES, [], 'mbCciw', 'generic', 'mbCciw Nmatrix'),
    'mbCcl': lambda: _three(MBCCIW_TABLES, [t_rule()], 'mbCcl', 'mbCcl', 'mbCcl RNmatrix'),
    'Ci': lambda: _three(CI_TABLES, [], 'Ci', 'generic', 'Ci Nmatrix'),
    'Cila': lambda: _three(CILA_TABLES, [t_rule()], 'Cila', 'Cila', 'Cila RNmatrix'),
    'bI': lambda: _two_valued(SIG_BI, {UP: _bi_up()}, [comm_rule()], None, 'bI', 'bI',
                              'logic of incompatibility bI'),
    'bIminus': lambda: _two_valued(SIG_BI, {UP: _bi_up()}, [], None, 'generic', 'bIminus',
                                   'bI without commutation'),
    'bIpr': lambda: _two_valued(SIG_BI, {UP: _bi_up()}, [comm_rule()] + pr_rules(),
                                add_pr_components, None, 'bIpr', 'bI with propagation'),
    'nbI': lambda: _two_valued(SIG_NBI, {NEG: PARA_NEG, UP: _bi_up()}, [comm_rule()], None,
                               'nbI', 'nbI', 'bI with paraconsistent negation'),
    'nbIciw': lambda: _two_valued(SIG_NBI, {NEG: PARA_NEG, UP: _bi_up()}, [comm_rule()] + ciw_rules(),
                                  None, 'nbIciw', 'nbIciw', 'nbI plus ciw*'),
    'nbIci': lambda: _two_valued(SIG_NBI, {NEG: PARA_NEG, UP: _bi_up()},
                                 [comm_rule()] + ciw_rules() + [ci_rule()], None, 'nbIci', 'nbIci',
                                 'nbI plus ci*'),
    'nbIcl': lambda: _two_valued(SIG_NBI, {NEG: PARA_NEG, UP: _bi_up()},
                                 [comm_rule()] + ciw_rules() + [cl_rule()], None, 'nbIcl', 'nbIcl',
                                 'nbI plus cl*'),
}

_LOWER = {k.lower(): k for k in BUILDERS}


def list_logics():
    return ['CPL', 'CPLup', 'C1', 'C2', 'C3', 'mbC', 'mbCciw', 'mbCci', 'mbCcl', 'Ci', 'Cila',
            'bI', 'bIminus', 'bIpr', 'nbI', 'nbIciw', 'nbIci', 'nbIcl']


def get_logic(name, n=None):
    """Look up a logic by (case-insensitive) name; C_n takes ``n`` or a suffix as in ``C3``."""
    key = name.strip()
    m = re.fullmatch(r'[cC](\d+)', key)
    if m:
        level = int(m.group(1))
        if n is not None and n != level:
            raise ValueError('level %d conflicts with name %s' % (n, name))
        n = level
        key = 'Cn'
    if key.lower() == 'cn':
        if n is None:
            raise ValueError('C_n needs a level n >= 1')
        if int(n) < 1:
            raise ValueError('invalid level %r for C_n' % n)
        return _cn(int(n))
    canon = _LOWER.get(key.lower())
    if canon is None:
        raise UnknownLogicError('unknown logic %r' % name)
    if n is not None:
        raise ValueError('logic %s takes no level' % canon)
    return _named(canon)


@functools.lru_cache(maxsize=None)
def _cn(n):
    return _build_cn(n)


@functools.lru_cache(maxsize=None)
def _named(name):
    return BUILDERS[name]()


@functools.lru_cache(maxsize=None)
def get_logic_over(n, m):
    """C_n over the powerset algebra with m atoms: A_Cn^B with the F_Cn^B rules."""
    space = snapshots_over(n, BooleanAlgebra(m))
    alg = swap_structure_over(n, space)
    spec = LogicSpec('C%d^B%d' % (n, 2 ** m), SIG_C,
                     RNmatrix(alg, space.designated, restriction_Cn_over(n, space.B, space)),
                     n=n, description='C_%d over a Boolean algebra with %d atoms' % (n, m))
    spec.space = space
    return spec


def augment_closure(spec, closure):
    return spec.augment(closure)
