"""
Snapshots and swap structures for the C_n hierarchy.

A snapshot for C_n over a Boolean algebra B is a tuple z = (z_1, ..., z_{n+1})
with (z_1 ∧ ... ∧ z_k) ∨ z_{k+1} = 1 for 1 <= k <= n. Over the two-element
algebra there are n+2 of them, named T, t0, ..., t{n-1}, F.
"""

import itertools

from .algebra import Multialgebra, RestrictionRule
from .boolean import TWO, BooleanAlgebra
from .formula import AND, IMP, NEG, OR, SIG_C, And, Imp, Neg, Var, App, pow, pow_conj


def is_snapshot(z, B):
    acc = B.top
    for k in range(len(z) - 1):
        acc = B.meet(acc, z[k])
        if B.join(acc, z[k + 1]) != B.top:
            return False
    return True


class SnapshotSpace(object):
    """
    ``all`` lists the coordinate tuples, ``names`` maps each tuple to its
    printed name and ``designated`` / ``boolean_subset`` hold the tuples with
    z_1 = 1 and z_1 ∧ z_2 = 0.
    """

    def __init__(self, n, B, all, names):
        self.n = n
        self.B = B
        self.all = tuple(all)
        self.names = names
        self.designated = tuple(z for z in self.all if z[0] == B.top)
        self.boolean_subset = tuple(z for z in self.all if B.meet(z[0], z[1]) == B.bottom)

    def name(self, z):
        return self.names[z]

    def by_name(self, name):
        for z, nm in self.names.items():
            if nm == name:
                return z
        raise KeyError(name)

    def __len__(self):
        return len(self.all)


def _two_snapshots(n):
    one = (1,) * (n + 1)
    T = (1, 0) + (1,) * (n - 1)
    F = (0, 1) + (1,) * (n - 1)
    ts = []
    for k in range(n - 1):
        z = list(one)
        z[k + 2] = 0
        ts.append(tuple(z))
    ts.append(one)
    return [T] + ts + [F]


def snapshots(n):
    """B_n over the two-element algebra, in the order T, t0, ..., t{n-1}, F."""
    if n < 1:
        raise ValueError('C_n needs n >= 1')
    zs = _two_snapshots(n)
    names = {zs[0]: 'T', zs[-1]: 'F'}
    for i, z in enumerate(zs[1:-1]):
        names[z] = 't%d' % i
    return SnapshotSpace(n, TWO, zs, names)


def snapshots_over(n, B):
    if n < 1:
        raise ValueError('C_n needs n >= 1')
    if B.m == 1:
        return snapshots(n)
    zs = [z for z in itertools.product(B.elements, repeat=n + 1) if is_snapshot(z, B)]
    # designated first, like the two-valued listing
    zs.sort(key=lambda z: (z[0] != B.top, [-x for x in z]))
    names = {z: '(' + ','.join(B.name(x) for x in z) + ')' for z in zs}
    return SnapshotSpace(n, B, zs, names)


def _swap_tables(space):
    B = space.B
    boo = set(space.boolean_subset)
    neg = {}
    for z in space.all:
        neg[(z,)] = {w for w in space.all if w[0] == z[1] and B.leq(w[1], z[0])}
    ops = {OR: B.join, AND: B.meet, IMP: B.imp}
    tables = {NEG: neg}
    for sym, op in ops.items():
        t = {}
        for z, w in itertools.product(space.all, repeat=2):
            first = op(z[0], w[0])
            out = {u for u in space.all if u[0] == first}
            if z in boo and w in boo:
                out &= boo
            t[(z, w)] = out
        tables[sym] = t
    return tables


def swap_structure_over(n, B):
    space = snapshots_over(n, B) if isinstance(B, BooleanAlgebra) else B
    return Multialgebra(SIG_C, space.all, _swap_tables(space), space.names)


def swap_structure(n):
    """The multialgebra A_Cn with carrier values named T, t0, ..., F."""
    space = snapshots(n)
    raw = _swap_tables(space)
    nm = space.names
    tables = {sym: {tuple(nm[a] for a in args): {nm[v] for v in out} for args, out in t.items()}
              for sym, t in raw.items()}
    return Multialgebra(SIG_C, [nm[z] for z in space.all], tables)


def c_names(n):
    return ['T'] + ['t%d' % i for i in range(n)] + ['F']


def restriction_Cn(n):
    """R1 and R2_k (2 <= k <= n) over the named carrier."""
    a = Var('α')
    conj = And(a, Neg(a))
    inc = frozenset('t%d' % i for i in range(n))
    rules = [RestrictionRule('R1', (a,), conj, lambda v: {'T'} if v == 't0' else None)]
    for k in range(2, n + 1):
        tk = 't%d' % (k - 1)
        prev = {'t%d' % (k - 2)}
        rules.append(RestrictionRule('R2_%d' % k, (a,), conj,
                                     lambda v, tk=tk: inc if v == tk else None))
        rules.append(RestrictionRule('R2_%d' % k, (a,), pow(a, 1),
                                     lambda v, tk=tk, prev=prev: prev if v == tk else None))
    return rules


def _ext(z, B):
    return tuple(z) + (B.compl(B.meet_all(z)),)


def restriction_Cn_over(n, B, space=None):
    """
    The rule families over B:
      ν(α∧¬α) has second coordinate e_3,
      ν(α¹) = (e_3, z_1∧z_2, e_4, ..., e_{n+2}),
      ν((α^(n)∧β^(n)) → (α#β)^(n)) is designated,
    where e extends z = ν(α) by e_{n+2} = ~(z_1 ∧ ... ∧ z_{n+1}).
    """
    space = space or snapshots_over(n, B)
    carrier = space.all
    a, b = Var('α'), Var('β')

    def conj_allowed(z):
        e = _ext(z, B)
        return {u for u in carrier if u[1] == e[2]}

    def pow_allowed(z):
        e = _ext(z, B)
        return {(e[2], B.meet(z[0], z[1])) + e[3:n + 2]}

    rules = [
        RestrictionRule('FB1', (a,), And(a, Neg(a)), conj_allowed),
        RestrictionRule('FB2', (a,), pow(a, 1), pow_allowed),
    ]
    designated = set(space.designated)
    for sym in (OR, AND, IMP):
        target = Imp(And(pow_conj(a, n), pow_conj(b, n)), pow_conj(App(sym, (a, b)), n))
        rules.append(RestrictionRule('FB3' + sym, (), target, lambda: designated))
    return rules


def count_closed_form(n, m, which='all'):
    if n < 1 or m < 1:
        raise ValueError('n and m must be positive')
    base = {'all': n + 2, 'designated': n + 1, 'boolean': 2}[which]
    return base ** m


def count_enumerated(n, m, which='all'):
    space = snapshots_over(n, BooleanAlgebra(m))
    return len({'all': space.all, 'designated': space.designated,
                'boolean': space.boolean_subset}[which])


def scenario_value(n, i, k):
    """
    Predicted name of ν(α^k) when ν(α) = t_i (i = -1 stands for T and i = n
    for F), for 1 <= k <= n.
    """
    if i == n:
        return 'T'
    if i <= k - 2:
        return 'T'
    if i == k - 1:
        return 'F'
    return 't%d' % (i - k)


# -- valuation clauses ------------------------------------------------------------

def _unpow(f):
    """α when f = α¹ = ¬(α∧¬α), else None."""
    if f.is_var or f.conn != NEG:
        return None
    g = f.args[0]
    if g.is_var or g.conn != AND:
        return None
    a, na = g.args
    if not na.is_var and na.conn == NEG and na.args[0] == a:
        return a
    return None


def bivaluation_violations(n, b):
    """
    Clauses (B1)-(B8) of a C_n bivaluation, checked on a map b: formula -> 0/1
    whose domain is subformula closed. A clause instance is only checked
    when all of its formulas are in the domain.
    """
    bad = []
    dom = set(b)
    for f in b:
        if f.is_var:
            continue
        if f.conn in (AND, OR, IMP):
            x, y = (b[a] for a in f.args)
            want = {AND: x & y, OR: x | y, IMP: (1 - x) | y}[f.conn]
            if b[f] != want:
                bad.append(('B1-3', f))
            a, c = f.args
            na, nc, nf = Neg(a), Neg(c), Neg(f)
            if {na, nc, nf} <= dom and b[a] != b[na] and b[c] != b[nc] and b[f] == b[nf]:
                bad.append(('B8', f))
        elif f.conn == NEG:
            a = f.args[0]
            if b[a] == 0 and b[f] != 1:
                bad.append(('B4', f))
            if not a.is_var and a.conn == NEG and b[f] == 1 and b[a.args[0]] != 1:
                bad.append(('B5', f))
    for f in b:
        # (B7): b(α) = b(¬α) iff b(¬(α¹)) = 1
        na, nf1 = Neg(f), Neg(pow(f, 1))
        if {na, nf1} <= dom and (b[f] == b[na]) != (b[nf1] == 1):
            bad.append(('B7', f))
        # (B6)_n: b(α^{n-1}) = b(¬α^{n-1}) iff b(α^n) = 0
        p, np_, pn = pow(f, n - 1), Neg(pow(f, n - 1)), pow(f, n)
        if {p, np_, pn} <= dom and (b[p] == b[np_]) != (b[pn] == 0):
            bad.append(('B6', f))
    return bad


def b_valuation_violations(n, B, b):
    """Clauses (V1)-(V6)_n for a map b: formula -> element of B, on in-domain instances."""
    bad = []
    dom = set(b)
    ops = {AND: B.meet, OR: B.join, IMP: B.imp}
    for f in b:
        if not f.is_var and f.conn in ops:
            if b[f] != ops[f.conn](*(b[a] for a in f.args)):
                bad.append(('V1', f))
        na = Neg(f)
        if na in dom:
            if not B.leq(B.compl(b[f]), b[na]):
                bad.append(('V2', f))
            nna = Neg(na)
            if nna in dom and not B.leq(b[nna], b[f]):
                bad.append(('V3', f))
        p, np_, pn = pow(f, n - 1), Neg(pow(f, n - 1)), pow(f, n)
        if {p, np_, pn} <= dom and b[pn] != B.compl(B.meet(b[p], b[np_])):
            bad.append(('V4', f))
        nf1 = Neg(pow(f, 1))
        if {na, nf1} <= dom and b[nf1] != B.meet(b[f], b[na]):
            bad.append(('V5', f))
    for f in b:
        if f.is_var or f.conn not in ops:
            continue
        a, c = f.args
        pa, pc, pf = pow_conj(a, n), pow_conj(c, n), pow_conj(f, n)
        if {pa, pc, pf} <= dom and not B.leq(B.meet(b[pa], b[pc]), b[pf]):
            bad.append(('V6', f))
    return bad


def find_nonclassical_witness(n, m, fs, limit=None):
    """
    Bounded search for a row over A_Cn^B (B with m atoms) in which some
    variable p has ν(¬p)_1 ≠ ~ν(p)_1, i.e. whose first-coordinate projection
    is not a bivaluation. Returns the row or None.
    """
    from .logics import get_logic_over
    from .truthtable import closure_for, search, Valuation
    spec = get_logic_over(n, m)
    B = spec.space.B
    domain = closure_for(spec, fs)
    pairs = [(f, Neg(f)) for f in domain if f.is_var and Neg(f) in domain]
    for row in search(spec, domain, limit=limit):
        v = Valuation(domain, row)
        if any(v[nf][0] != B.compl(v[f][0]) for f, nf in pairs):
            return v
    return None
