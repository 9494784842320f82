"""
Finite multialgebras, restricted Nmatrices and restriction rules.

A restriction rule is a schema over metavariables. An instance is obtained by
matching the rule's patterns against formulas of a closure; it is only in force
when every formula it mentions is in that closure.
"""

import itertools

from .formula import App, Var, match, substitute, variables


class AlgebraError(Exception):
    pass


class Multialgebra(object):
    """
    Carrier plus, per connective, a total table from argument tuples to
    non-empty frozensets of carrier values.
    """

    partial = False

    def __init__(self, sig, carrier, tables, names=None):
        self.sig = sig
        self.carrier = tuple(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise AlgebraError('carrier values must be distinct')
        self.names = dict(names) if names else {v: str(v) for v in self.carrier}
        self.by_name = {n: v for v, n in self.names.items()}
        self.tables = {}
        members = set(self.carrier)
        for sym, arity in sig.connectives:
            if sym not in tables:
                raise AlgebraError('no table for connective %r' % sym)
            src = tables[sym]
            table = {}
            for args in itertools.product(self.carrier, repeat=arity):
                if args not in src:
                    raise AlgebraError('missing entry %s for connective %r' % (self._fmt(args), sym))
                out = frozenset(src[args])
                if not out and not self.partial:
                    raise AlgebraError('empty result for %r at %s' % (sym, self._fmt(args)))
                if not out <= members:
                    raise AlgebraError('value outside carrier for %r at %s' % (sym, self._fmt(args)))
                table[args] = out
            self.tables[sym] = table

    def _fmt(self, args):
        return '(' + ', '.join(self.names.get(a, str(a)) for a in args) + ')'

    def name(self, v):
        return self.names[v]

    def value(self, name):
        return self.by_name[name]

    def eval(self, sym, args):
        try:
            return self.tables[sym][tuple(args)]
        except KeyError:
            if sym not in self.tables:
                raise AlgebraError('unknown connective %r' % sym) from None
            raise AlgebraError('arguments %r outside carrier' % (args,)) from None

    def is_deterministic(self):
        return all(len(s) == 1 for t in self.tables.values() for s in t.values())

    def dump(self, sym):
        """The table of one connective as a text grid."""
        arity = self.sig.arity(sym)
        cell = lambda s: '{' + ','.join(self.names[v] for v in self.carrier if v in s) + '}'
        if arity == 1:
            rows = [[self.names[a], cell(self.tables[sym][(a,)])] for a in self.carrier]
            head = ['', sym]
        else:
            head = [sym] + [self.names[b] for b in self.carrier]
            rows = [[self.names[a]] + [cell(self.tables[sym][(a, b)]) for b in self.carrier]
                    for a in self.carrier]
        grid = [head] + rows
        widths = [max(len(r[i]) for r in grid) for i in range(len(head))]
        return '\n'.join(' '.join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in grid)

    def __repr__(self):
        return '%s(%s, |A|=%d)' % (type(self).__name__, self.sig.name, len(self.carrier))


class PartialMultialgebra(Multialgebra):
    partial = True


def make_multialgebra(sig, carrier, tables, names=None):
    return Multialgebra(sig, carrier, tables, names)


def eval_connective(m, c, args):
    return m.eval(c, args)


class RestrictionRule(object):
    """
    Constrains the value of ``target`` given the values of the ``guard``
    patterns. ``allowed`` maps the guard values to the permitted target values,
    or to None when the rule does not fire.
    """

    def __init__(self, name, guard, target, allowed):
        self.name = name
        self.guard = tuple(guard)
        self.target = target
        self.allowed = allowed
        mv = {}
        for p in self.guard + (target,):
            for v in variables(p):
                mv.setdefault(v.name, None)
        self.metavariables = tuple(mv)

    @property
    def patterns(self):
        return self.guard + (self.target,)

    def instances(self, domain, index=None):
        """All instances whose formulas all lie in domain."""
        if index is None:
            index = _index(domain)
        cover = _cover(self.patterns, self.metavariables)
        out = []
        seen = set()
        for binding in _bindings(cover, domain, index):
            fs = tuple(substitute(p, binding) for p in self.patterns)
            if all(f in index for f in fs) and fs not in seen:
                seen.add(fs)
                out.append(RuleInstance(self, fs[:-1], fs[-1]))
        return out

    def __repr__(self):
        return 'RestrictionRule(%s)' % self.name


class RuleInstance(object):

    __slots__ = ('rule', 'guard', 'target', 'formulas')

    def __init__(self, rule, guard, target):
        self.rule = rule
        self.guard = guard
        self.target = target
        self.formulas = guard + (target,)

    def violated(self, get):
        """``get`` maps a formula to its value."""
        allowed = self.rule.allowed(*[get(g) for g in self.guard])
        return allowed is not None and get(self.target) not in allowed

    def __repr__(self):
        return '%s[%s]' % (self.rule.name, ', '.join(str(f) for f in self.formulas))


def _index(domain):
    return {f: i for i, f in enumerate(domain)}


def _cover(patterns, metavars):
    """Patterns to match, largest first, until every metavariable is bound."""
    need = set(metavars)
    chosen = []
    for p in sorted(patterns, key=lambda p: -p.complexity):
        names = {v.name for v in variables(p)}
        if names & need:
            chosen.append(p)
            need -= names
        if not need:
            break
    return chosen


def _bindings(cover, domain, index):
    def go(i, binding):
        if i == len(cover):
            yield binding
            return
        p = cover[i]
        for f in domain:
            if f.complexity < p.complexity:
                continue
            b = match(p, f, binding)
            if b is not None:
                yield from go(i + 1, b)
    if not cover:
        return iter(())
    return go(0, {})


def compile_rules(rules, domain):
    """Instantiate every rule over domain."""
    index = _index(domain)
    out = []
    for r in rules:
        out.extend(r.instances(domain, index))
    return out


class RNmatrix(object):

    def __init__(self, alg, designated, rules=()):
        designated = frozenset(designated)
        if not designated <= set(alg.carrier):
            raise AlgebraError('designated values %r are not in the carrier'
                               % sorted(map(str, designated - set(alg.carrier))))
        self.alg = alg
        self.designated = designated
        self.rules = tuple(rules)

    @property
    def sig(self):
        return self.alg.sig

    @property
    def undesignated(self):
        return tuple(v for v in self.alg.carrier if v not in self.designated)

    def is_nmatrix(self):
        return not self.rules

    def check_valuation(self, assignment):
        """
        Re-check a map formula -> value: every compound formula whose
        arguments are assigned respects the tables, and no rule instance over
        the assigned formulas is violated. Returns a list of problems.
        """
        problems = []
        dom = list(assignment)
        for f, v in assignment.items():
            if v not in self.alg.carrier:
                problems.append('%s has value %r outside the carrier' % (f, v))
                continue
            if not f.is_var and all(a in assignment for a in f.args):
                allowed = self.alg.eval(f.conn, tuple(assignment[a] for a in f.args))
                if v not in allowed:
                    problems.append('%s: %s not in table value' % (f, self.alg.name(v)))
        if problems:
            return problems
        for inst in compile_rules(self.rules, dom):
            if inst.violated(assignment.__getitem__):
                problems.append('rule %r violated' % inst)
        return problems

    def __repr__(self):
        return 'RNmatrix(%r, D=%d, rules=%d)' % (self.alg, len(self.designated), len(self.rules))


def make_rnmatrix(alg, designated, rules=()):
    return RNmatrix(alg, designated, rules)


# -- generic embeddings -------------------------------------------------------

OMEGA = 'o'


def pnmatrix_embed(p, designated, fresh=OMEGA):
    """
    Turn a partial multialgebra into a total one with an extra value ``fresh``
    that absorbs empty cells, plus a rule forbidding ``fresh`` anywhere.
    """
    if fresh in p.carrier:
        raise AlgebraError('fresh value %r already in carrier' % fresh)
    carrier = p.carrier + (fresh,)
    tables = {}
    for sym, arity in p.sig.connectives:
        t = {}
        for args in itertools.product(carrier, repeat=arity):
            if fresh in args:
                t[args] = {fresh}
            else:
                t[args] = p.tables[sym][args] or {fresh}
        tables[sym] = t
    names = dict(p.names)
    names[fresh] = str(fresh)
    alg = Multialgebra(p.sig, carrier, tables, names)
    proper = frozenset(p.carrier)
    rule = RestrictionRule('no-%s' % fresh, (), Var('α'), lambda: proper)
    return RNmatrix(alg, designated, [rule])


def static_restriction(m):
    """Equal argument values force equal results, connective by connective."""
    rules = []
    for sym, arity in m.sig.connectives:
        xs = tuple(Var('α%d' % i) for i in range(arity))
        ys = tuple(Var('β%d' % i) for i in range(arity))

        def allowed(*vals, k=arity):
            if vals[:k] == vals[k:2 * k]:
                return (vals[2 * k],)
            return None
        rules.append(RestrictionRule('static' + sym, xs + ys + (App(sym, xs),), App(sym, ys), allowed))
    return rules
