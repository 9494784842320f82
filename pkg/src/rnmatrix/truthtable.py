"""
Row-branching, row-eliminating truth tables.

Rows are built one closure formula at a time, in complexity order: variables
branch over the whole carrier, compound formulas branch over the table value
of their arguments, and a row is dropped as soon as the last formula of some
violated rule instance receives its value.
"""

import os

import numpy as np

from .algebra import compile_rules
from .formula import check_signature, subformula_closure

DEFAULT_ROW_LIMIT = 2 * 10 ** 6
DEFAULT_NAIVE_CAP = 2 * 10 ** 7


class ResourceLimitError(RuntimeError):
    pass


def row_limit():
    env = os.environ.get('RNMATRIX_ROW_LIMIT')
    return int(env) if env else DEFAULT_ROW_LIMIT


class Valuation(object):
    """A (partial) valuation: a closure together with one value per member."""

    def __init__(self, domain, values):
        self.domain = tuple(domain)
        self.values = tuple(values)
        self._map = dict(zip(self.domain, self.values))

    def __getitem__(self, f):
        return self._map[f]

    def get(self, f, default=None):
        return self._map.get(f, default)

    def __contains__(self, f):
        return f in self._map

    def items(self):
        return zip(self.domain, self.values)

    def as_dict(self):
        return dict(self._map)

    def restrict(self, fs):
        return Valuation(fs, [self._map[f] for f in fs])

    def __eq__(self, other):
        return isinstance(other, Valuation) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return 'Valuation({%s})' % ', '.join('%s: %s' % (f, v) for f, v in self.items())


class Stats(object):

    def __init__(self):
        self.examined = 0
        self.eliminated = 0

    def __repr__(self):
        return 'Stats(examined=%d, eliminated=%d)' % (self.examined, self.eliminated)


class Table(object):

    def __init__(self, logic, domain, rows, stats):
        self.logic = logic
        self.domain = tuple(domain)
        self.rows = rows
        self.stats = stats

    def __len__(self):
        return len(self.rows)

    def value_rows(self):
        return [r.values for r in self.rows]

    def dump(self, unicode=True):
        return format_rows(self.logic, self.domain, self.rows, unicode)

    def records(self):
        """One dict per row, rendered formula -> value name."""
        from .formula import render
        name = self.logic.alg.name
        return [{render(f): name(v) for f, v in r.items()} for r in self.rows]


class Verdict(object):

    def __init__(self, valid, countermodel=None, method='table', stats=None, tree=None, logic=None):
        self.valid = valid
        self.countermodel = countermodel
        self.method = method
        self.stats = stats
        self.tree = tree
        self.logic = logic

    def __bool__(self):
        return self.valid

    def __repr__(self):
        return 'Verdict(%s, method=%s)' % ('valid' if self.valid else 'invalid', self.method)


def format_rows(logic, domain, rows, unicode=True):
    from .formula import render
    name = logic.alg.name
    head = [render(f, unicode=unicode) for f in domain]
    body = [[name(v) for v in r.values] for r in rows]
    widths = [max([len(h)] + [len(b[i]) for b in body]) for i, h in enumerate(head)]
    line = lambda cells: ' | '.join(c.center(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(head), '-+-'.join('-' * w for w in widths)]
    out.extend(line(b) for b in body)
    return '\n'.join(out)


class _Plan(object):
    """Index-level description of a closure for the search."""

    def __init__(self, spec, domain, var_order=None):
        alg = spec.alg
        self.domain = tuple(domain)
        pos = {f: i for i, f in enumerate(self.domain)}
        carrier = alg.carrier
        order = {v: i for i, v in enumerate(carrier)}
        self.choices = []
        for f in self.domain:
            if f.is_var:
                self.choices.append((None, tuple(var_order or carrier)))
            else:
                table = alg.tables[f.conn]
                ordered = {k: tuple(sorted(s, key=order.__getitem__)) for k, s in table.items()}
                self.choices.append((tuple(pos[a] for a in f.args), ordered))
        self.ready = [[] for _ in self.domain]
        for inst in compile_rules(spec.rules, self.domain):
            idx = [pos[g] for g in inst.formulas]
            self.ready[max(idx)].append((inst.rule.allowed, tuple(idx[:-1]), idx[-1]))
        self.pos = pos
        # frontier[i]: earlier positions still read at position i or later
        last = list(range(len(self.domain)))
        for i, (args, _) in enumerate(self.choices):
            for a in args or ():
                last[a] = max(last[a], i)
        for i, checks in enumerate(self.ready):
            for _, guard, target in checks:
                for j in guard + (target,):
                    last[j] = max(last[j], i)
        self.frontier = [tuple(j for j in range(i) if last[j] >= i) for i in range(len(self.domain) + 1)]


def search(spec, domain, pins=None, prune=None, stats=None, limit=None, var_order=None):
    """
    Depth-first enumeration of the admissible rows over domain. ``pins`` fixes
    values by position; ``prune(i, v)`` may veto value v at position i;
    ``var_order`` overrides the order in which variables run over the carrier.
    Yields value tuples.

    Whether a partial row extends depends only on the values at the current
    frontier, so frontier states that produced no row are remembered and
    skipped when they recur.
    """
    plan = _Plan(spec, domain, var_order)
    n = len(plan.domain)
    stats = stats if stats is not None else Stats()
    limit = row_limit() if limit is None else limit
    vals = [None] * n
    pins = pins or {}

    def ok(i):
        for allowed, guard, target in plan.ready[i]:
            a = allowed(*[vals[g] for g in guard])
            if a is not None and vals[target] not in a:
                return False
        return True

    dead = set()
    found = [0]

    def go(i):
        if i == n:
            found[0] += 1
            yield tuple(vals)
            return
        key = (i, tuple(vals[j] for j in plan.frontier[i]))
        if key in dead:
            return
        before = found[0]
        args, table = plan.choices[i]
        options = table if args is None else table[tuple(vals[a] for a in args)]
        pin = pins.get(i)
        for v in options:
            if pin is not None and v != pin:
                continue
            if prune is not None and prune(i, v):
                continue
            stats.examined += 1
            if stats.examined > limit:
                raise ResourceLimitError('row limit %d exceeded' % limit)
            vals[i] = v
            if not ok(i):
                stats.eliminated += 1
                continue
            yield from go(i + 1)
        vals[i] = None
        if found[0] == before:
            dead.add(key)

    return go(0)


def closure_for(spec, fs):
    for f in fs:
        check_signature(f, spec.sig)
    return spec.augment(subformula_closure(fs))


def build_table(spec, fs, limit=None):
    domain = closure_for(spec, fs)
    stats = Stats()
    rows = [Valuation(domain, r) for r in search(spec, domain, stats=stats, limit=limit)]
    return Table(spec, domain, rows, stats)


def entails(spec, premises, conclusion, limit=None):
    """
    Merged-table entailment: valid iff no admissible row over the joint
    closure designates every premise but not the conclusion. Variables are
    tried from the undesignated end of the carrier, which only affects which
    countermodel is reported.
    """
    premises = list(premises)
    domain = closure_for(spec, premises + [conclusion])
    pos = {f: i for i, f in enumerate(domain)}
    prem_pos = {pos[p] for p in premises}
    concl_pos = pos[conclusion]
    des = spec.designated

    def prune(i, v):
        if i in prem_pos and v not in des:
            return True
        return i == concl_pos and v in des

    stats = Stats()
    backwards = tuple(reversed(spec.carrier))
    for row in search(spec, domain, prune=prune, stats=stats, limit=limit, var_order=backwards):
        return Verdict(False, Valuation(domain, row), 'table', stats, logic=spec)
    return Verdict(True, None, 'table', stats, logic=spec)


def is_valid(spec, formula):
    return entails(spec, [], formula).valid


# -- independent oracle ---------------------------------------------------------

class ValuationList(list):
    examined = 0


def naive_valuations(spec, fs, cap=DEFAULT_NAIVE_CAP, chunk=1 << 20):
    """
    Exhaustive oracle: every total map from the closure to the carrier is
    generated (vectorized, in chunks) and filtered by the tables, then by the
    rule checker. No incremental pruning.
    """
    domain = closure_for(spec, fs)
    alg = spec.alg
    carrier = alg.carrier
    k, d = len(carrier), len(domain)
    total = k ** d
    if total > cap:
        raise ResourceLimitError('%d^%d maps exceed the oracle cap %d' % (k, d, cap))
    code = {v: i for i, v in enumerate(carrier)}
    pos = {f: i for i, f in enumerate(domain)}
    checks = []
    for i, f in enumerate(domain):
        if f.is_var:
            continue
        ar = len(f.args)
        okarr = np.zeros((k,) * ar + (k,), dtype=bool)
        for args, out in alg.tables[f.conn].items():
            for v in out:
                okarr[tuple(code[a] for a in args) + (code[v],)] = True
        checks.append((okarr, tuple(pos[a] for a in f.args), i))
    weights = k ** np.arange(d - 1, -1, -1, dtype=np.int64)
    instances = compile_rules(spec.rules, domain)
    out = ValuationList()
    out.examined = total
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = (idx[:, None] // weights[None, :]) % k
        mask = np.ones(len(idx), dtype=bool)
        for okarr, args, i in checks:
            mask &= okarr[tuple(cols[:, a] for a in args) + (cols[:, i],)]
        for row in cols[mask]:
            vals = tuple(carrier[c] for c in row)
            amap = dict(zip(domain, vals))
            if not any(inst.violated(amap.__getitem__) for inst in instances):
                out.append(Valuation(domain, vals))
    return out
