"""
Labeled tableaux.

Elimination rules are read off the operation tables: the rule headed by
L(σ(φ, ψ)) has one branch per way of giving the arguments values whose
σ-image can contain L. Whole rows and columns are folded into single-formula
branches, so F(φ∧ψ) yields F(φ) | F(ψ) rather than 2|A|-1 pairs. A head
whose label is reachable from every argument tuple gets no rule at all
(it is exempt from completeness bookkeeping), and one that is reachable from
none closes its branch.
"""

import heapq
import itertools

from .algebra import compile_rules
from .formula import (AND, NEG, UP, And, App, Imp, Neg, Up, Var, match, pow, render,
                      subformula_closure, substitute)
from .truthtable import ResourceLimitError, Valuation, Verdict, closure_for, row_limit, search


class NoTableauError(Exception):
    pass


class BranchNotCompleteError(Exception):
    pass


class ExtractionError(Exception):
    pass


PHI, PSI = Var('φ'), Var('ψ')


class LabeledFormula(object):

    __slots__ = ('label', 'formula')

    def __init__(self, label, formula):
        self.label = label
        self.formula = formula

    def __eq__(self, other):
        return (isinstance(other, LabeledFormula) and self.label == other.label
                and self.formula == other.formula)

    def __hash__(self):
        return hash((self.label, self.formula))

    def render(self, unicode=True):
        return '%s(%s)' % (self.label, render(self.formula, unicode=unicode))

    def __repr__(self):
        return self.render()


class TableauRule(object):
    """
    ``head`` is a labeled pattern, ``branches`` a list of lists of labeled
    patterns. An empty branch list closes any branch the head appears on.
    """

    def __init__(self, name, head, branches, derived=False):
        self.name = name
        self.head = head
        self.branches = [list(b) for b in branches]
        self.derived = derived

    @property
    def closes(self):
        return not self.branches

    def instantiate(self, f):
        binding = match(self.head.formula, f, {})
        if binding is None:
            return None
        return [[LabeledFormula(lab, substitute(p, binding)) for lab, p in b] for b in self.branches]

    def __repr__(self):
        alts = ' | '.join(', '.join('%s(%s)' % (l, render(p, unicode=True)) for l, p in b)
                          for b in self.branches)
        return '%s: %s => %s' % (self.name, self.head, alts or 'closed')


# -- rule derivation ----------------------------------------------------------------

def _compact_binary(P, carrier):
    cs = set(carrier)
    rows = [a for a in carrier if all((a, b) in P for b in cs)]
    cols = [b for b in carrier if all((a, b) in P for a in cs)]
    out = [[(a, 0)] for a in rows] + [[(b, 1)] for b in cols]
    for a, b in itertools.product(carrier, repeat=2):
        if (a, b) in P and a not in rows and b not in cols:
            out.append([(a, 0), (b, 1)])
    return out


def generic_rules(spec):
    alg = spec.alg
    carrier = alg.carrier
    rules = []
    for sym, arity in spec.sig.connectives:
        args = (PHI,) if arity == 1 else (PHI, PSI)
        if arity == 0:
            continue
        table = alg.tables[sym]
        for lab in carrier:
            P = {k for k, out in table.items() if lab in out}
            if len(P) == len(table):
                continue
            if arity == 1:
                alts = [[(k[0], 0)] for k in sorted(P, key=lambda k: carrier.index(k[0]))]
            else:
                alts = _compact_binary(P, carrier)
            branches = [[(l, args[i]) for l, i in alt] for alt in alts]
            rules.append(TableauRule('E%s%s' % (sym, lab), LabeledFormula(lab, App(sym, args)), branches))
    return rules


def _extra_rules(kind):
    lf = LabeledFormula
    ciw = [
        TableauRule('ciw1', lf('0', Up(PHI, Neg(PHI))), [[('1', PHI), ('1', Neg(PHI))]]),
        TableauRule('ciw2', lf('0', Up(Neg(PHI), PHI)), [[('1', PHI), ('1', Neg(PHI))]]),
    ]
    ci = TableauRule('ci', lf('1', Neg(Up(PHI, Neg(PHI)))), [[('1', PHI), ('1', Neg(PHI))]])
    cl = TableauRule('cl', lf('1', Neg(And(PHI, Neg(PHI)))), [[('0', PHI)], [('0', Neg(PHI))]])
    consistent = TableauRule('t-contradiction', lf('t', And(PSI, Neg(PSI))), [])
    return {
        'nbIciw': ciw,
        'nbIci': ciw + [ci],
        'nbIcl': ciw + [cl],
        'mbCcl': [consistent],
        'Cila': [consistent, TableauRule('t-circ', lf('t', App('∘', (PSI,))), [])],
    }.get(kind, [])


def derived_rules_Cn(n):
    """
    Shortcut rules for φ^i∧¬φ^i, φ^k and ¬φ^k. Each is computed from the
    table of the pattern with φ a variable, which over-approximates the
    values φ can take, so every rule is sound; an empty set is a ⊗ rule.
    """
    from .logics import get_logic
    from .truthtable import build_table
    spec = get_logic('C%d' % n)
    p = Var('p')
    patterns = []
    for i in range(n + 2):
        patterns.append(('conj%d' % i, And(pow(p, i), Neg(pow(p, i)))))
    for k in range(1, n + 2):
        patterns.append(('pow%d' % k, pow(p, k)))
        patterns.append(('negpow%d' % k, Neg(pow(p, k))))
    rules = []
    for name, pat in patterns:
        table = build_table(spec, [pat])
        for lab in spec.carrier:
            S = {r[p] for r in table.rows if r[pat] == lab}
            if len(S) == len(spec.carrier):
                continue
            head = LabeledFormula(lab, substitute(pat, {p: PHI}))
            alts = [[(v, PHI)] for v in spec.carrier if v in S]
            rules.append(TableauRule('DR-%s-%s' % (name, lab), head, alts, derived=True))
    return rules


def rules_for(spec, derived=False):
    """The elimination rules and closure conditions of spec's calculus."""
    if spec.tableau is None:
        raise NoTableauError('no tableau calculus for %s' % spec.id)
    rules = generic_rules(spec) + _extra_rules(spec.id)
    if derived:
        if spec.tableau != 'Tn':
            raise NoTableauError('derived rules exist only for C_n')
        rules += derived_rules_Cn(spec.n)
    closure = ['clash', 'restriction'] + [r.name for r in rules if r.closes]
    return rules, closure


# -- tree -------------------------------------------------------------------------------

class Node(object):

    def __init__(self, entries=()):
        self.entries = list(entries)
        self.children = []
        self.status = None
        self.reason = None
        self.rule = None


class Branch(object):

    def __init__(self):
        self.labels = {}
        self.order = []
        self.agenda = []
        self.done = set()
        self.closed = None

    def copy(self):
        b = Branch()
        b.labels = dict(self.labels)
        b.order = list(self.order)
        b.agenda = list(self.agenda)
        b.done = set(self.done)
        return b

    def __contains__(self, lf):
        return self.labels.get(lf.formula) == lf.label

    def labeled(self):
        return [LabeledFormula(self.labels[f], f) for f in self.order]


class TableauTree(object):

    def __init__(self, logic, start, root, open_branches, leaves):
        self.logic = logic
        self.start = start
        self.root = root
        self.open_branches = open_branches
        self.branch_count = leaves

    @property
    def closed(self):
        return not self.open_branches

    def dump(self, unicode=True):
        lines = []

        def walk(node, depth):
            pad = '  ' * depth
            for lf in node.entries:
                lines.append(pad + lf.render(unicode))
            if node.status == 'closed':
                lines.append(pad + 'CLOSED(%s)' % node.reason)
            elif node.status == 'open':
                lines.append(pad + 'OPEN')
            for c in node.children:
                walk(c, depth + 1)
        walk(self.root, 0)
        return '\n'.join(lines)


class _Prover(object):

    def __init__(self, spec, start, derived=False, record=True, complete=False, limit=None):
        self.spec = spec
        rules, _ = rules_for(spec, derived)
        self.rules = rules
        self.by_label = {}
        for i, r in enumerate(rules):
            self.by_label.setdefault(r.head.label, []).append((i, r))
        domain = subformula_closure([start.formula])
        self.instances = {}
        for inst in compile_rules(spec.rules, domain):
            for f in set(inst.formulas):
                self.instances.setdefault(f, []).append(inst)
        self.seq = itertools.count()
        self.open = []
        self.leaves = 0
        self.record = record
        self.complete = complete
        self.limit = row_limit() if limit is None else limit

    def insert(self, br, lf):
        """Add lf to br; returns a closure reason or None."""
        f = lf.formula
        have = br.labels.get(f)
        if have is not None:
            if have != lf.label:
                return 'clash %s/%s on %s' % (have, lf.label, render(f, unicode=True))
            return None
        br.labels[f] = lf.label
        br.order.append(f)
        get = br.labels.__getitem__
        for inst in self.instances.get(f, ()):
            if all(g in br.labels for g in inst.formulas) and inst.violated(get):
                return 'rule %s' % inst.rule.name
        seq = next(self.seq)
        for i, r in self.by_label.get(lf.label, ()):
            if r.instantiate(f) is None:
                continue
            if r.closes:
                return r.name
            heapq.heappush(br.agenda, (f.complexity, 0 if r.derived else 1, seq, i, f))
        return None

    def _leaf(self):
        self.leaves += 1
        if self.leaves > self.limit:
            raise ResourceLimitError('branch limit %d exceeded' % self.limit)

    def expand(self, br, node):
        """Develop br below node; True when an open branch was found and the search may stop."""
        while br.agenda:
            _, _, _, i, f = heapq.heappop(br.agenda)
            rule = self.rules[i]
            alts = rule.instantiate(f)
            br.done.add((i, f))
            if any(all(lf in br for lf in alt) for alt in alts):
                continue
            node.rule = rule.name
            for alt in alts:
                child = Node()
                if self.record:
                    node.children.append(child)
                nb = br.copy()
                reason = None
                for lf in alt:
                    if lf in nb:
                        continue
                    child.entries.append(lf)
                    reason = self.insert(nb, lf)
                    if reason:
                        break
                if reason:
                    child.status, child.reason = 'closed', reason
                    self._leaf()
                elif self.expand(nb, child) and not self.complete:
                    return True
            return False
        node.status = 'open'
        self._leaf()
        self.open.append(br)
        return True


def start_formula(premises, conclusion):
    premises = list(premises)
    if not premises:
        return conclusion
    conj = premises[0]
    for p in premises[1:]:
        conj = And(conj, p)
    return Imp(conj, conclusion)


def undesignated_start(spec):
    """F_n / 0 / F: the undesignated value listed last in the carrier."""
    return [v for v in spec.carrier if v not in spec.designated][-1]


def build_tree(spec, start, label=None, derived=False, complete=False, record=True, limit=None):
    """
    Develop the tableau for label(start). Unless ``complete`` is set the
    search stops at the first complete open branch, which already decides
    the verdict; ``record`` keeps the node tree for dumping.
    """
    label = undesignated_start(spec) if label is None else label
    head = LabeledFormula(label, start)
    prover = _Prover(spec, head, derived, record, complete, limit)
    root = Node([head])
    br = Branch()
    reason = prover.insert(br, head)
    if reason:
        root.status, root.reason = 'closed', reason
        prover._leaf()
    else:
        prover.expand(br, root)
    return TableauTree(spec, start, root, prover.open, prover.leaves)


def prove(spec, premises, conclusion, derived=False, complete=False, record=True, limit=None):
    """Refute the undesignated label on ⋀premises → conclusion; valid iff every branch closes."""
    from .formula import check_signature
    premises = list(premises)
    for f in premises + [conclusion]:
        check_signature(f, spec.sig)
    start = start_formula(premises, conclusion)
    tree = build_tree(spec, start, derived=derived, complete=complete, record=record, limit=limit)
    stats = {'branches': tree.branch_count}
    if tree.closed:
        return Verdict(True, None, 'tableau', stats, tree, spec)
    cm = extract_countermodel(spec, tree.open_branches[0], [conclusion] + premises)
    return Verdict(False, cm, 'tableau', stats, tree, spec)


def is_complete(spec, branch):
    return not branch.agenda and branch.closed is None


def extract_countermodel(spec, branch, extra=()):
    """
    A rule-consistent valuation over the closure of the branch formulas (plus
    ``extra``) giving every labeled formula its label; unlabeled members are
    filled in complexity order by the table search.
    """
    if branch.agenda:
        raise BranchNotCompleteError('branch still has undischarged formulas')
    domain = closure_for(spec, list(branch.order) + list(extra))
    pins = {i: branch.labels[f] for i, f in enumerate(domain) if f in branch.labels}
    for row in search(spec, domain, pins=pins):
        return Valuation(domain, row)
    raise ExtractionError('open branch has no admissible extension')


def entails_tableau(spec, premises, conclusion, derived=False):
    return prove(spec, premises, conclusion, derived)
