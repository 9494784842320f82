"""
Signatures, formula trees, parsing and printing.

Connectives are stored under their logical symbols (¬ ∘ ∧ ∨ → ↑). The ASCII
concrete syntax is ``!`` ``*`` ``&`` ``|`` ``->`` ``^``; unary operators bind
tightest, then ``^``, ``&``, ``|`` and finally ``->``, which associates to the
right.
"""

import re

NEG, CIRC, AND, OR, IMP, UP = '¬', '∘', '∧', '∨', '→', '↑'

ASCII = {NEG: '!', CIRC: '*', AND: '&', OR: '|', IMP: '->', UP: '^'}
FROM_ASCII = {v: k for k, v in ASCII.items()}

# binding strength and associativity of the binary connectives
BINARY_PREC = {IMP: 1, OR: 2, AND: 3, UP: 4}
RIGHT_ASSOC = {IMP}
UNARY_PREC = 5


class FormulaError(Exception):
    pass


class ParseError(FormulaError):

    def __init__(self, message, pos):
        super().__init__('%s at position %d' % (message, pos))
        self.pos = pos


class SignatureError(FormulaError):
    """A connective is used outside the signature it was checked against."""

    def __init__(self, symbol, sig):
        super().__init__('connective %r is not in signature %s' % (symbol, sig.name))
        self.symbol = symbol


class MissingConnectiveError(SignatureError):
    pass


class Signature(object):

    def __init__(self, name, connectives):
        connectives = tuple((sym, int(ar)) for sym, ar in connectives)
        syms = [sym for sym, _ in connectives]
        if len(set(syms)) != len(syms):
            raise ValueError('duplicate connective in signature %s' % name)
        for sym, ar in connectives:
            if ar not in (1, 2):
                raise ValueError('bad arity %d for %r' % (ar, sym))
        self.name = name
        self.connectives = connectives
        self._arity = dict(connectives)

    def arity(self, symbol):
        try:
            return self._arity[symbol]
        except KeyError:
            raise SignatureError(symbol, self) from None

    @property
    def symbols(self):
        return tuple(self._arity)

    def __contains__(self, symbol):
        return symbol in self._arity

    def require(self, *symbols):
        for sym in symbols:
            if sym not in self._arity:
                raise MissingConnectiveError(sym, self)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.connectives == other.connectives

    def __hash__(self):
        return hash(self.connectives)

    def __repr__(self):
        return 'Signature(%s)' % self.name


SIG_C = Signature('SigC', [(NEG, 1), (OR, 2), (AND, 2), (IMP, 2)])
SIG_BI = Signature('SigBI', [(OR, 2), (AND, 2), (IMP, 2), (UP, 2)])
SIG_NBI = Signature('SigNBI', [(NEG, 1), (OR, 2), (AND, 2), (IMP, 2), (UP, 2)])
SIG_LFI = Signature('SigLFI', [(NEG, 1), (CIRC, 1), (OR, 2), (AND, 2), (IMP, 2)])

SIGNATURES = {s.name: s for s in (SIG_C, SIG_BI, SIG_NBI, SIG_LFI)}


class Formula(object):
    """Base class. Formulas are immutable and compared structurally."""

    __slots__ = ('_hash', 'complexity')

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return render(self)

    def subformulas(self):
        """Post-order walk, left to right, repeats included."""
        stack = [(self, False)]
        while stack:
            f, done = stack.pop()
            if done or f.is_var:
                yield f
                continue
            stack.append((f, True))
            for a in reversed(f.args):
                stack.append((a, False))


class Var(Formula):

    __slots__ = ('name',)
    is_var = True
    args = ()
    conn = None

    def __init__(self, name):
        self.name = name
        self.complexity = 0
        self._hash = hash(('v', name))

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and other.name == self.name)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return 'Var(%r)' % self.name

    def sort_key(self):
        return (0, self.name)


class App(Formula):

    __slots__ = ('conn', 'args')
    is_var = False

    def __init__(self, conn, args):
        self.conn = conn
        self.args = tuple(args)
        self.complexity = 1 + max(a.complexity for a in self.args)
        self._hash = hash((conn, self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, App) and other._hash == self._hash
                and other.conn == self.conn and other.args == self.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return 'App(%r, %r)' % (self.conn, list(self.args))

    def sort_key(self):
        return (self.complexity, self.conn, tuple(a.sort_key() for a in self.args))


def Neg(a):
    return App(NEG, (a,))


def Circ(a):
    return App(CIRC, (a,))


def And(a, b):
    return App(AND, (a, b))


def Or(a, b):
    return App(OR, (a, b))


def Imp(a, b):
    return App(IMP, (a, b))


def Up(a, b):
    return App(UP, (a, b))


def variables(f):
    """Variables of f in order of first occurrence."""
    seen = {}
    for g in f.subformulas():
        if g.is_var:
            seen.setdefault(g, None)
    return list(seen)


def connectives(f):
    return {g.conn for g in f.subformulas() if not g.is_var}


def check_signature(f, sig):
    for g in f.subformulas():
        if not g.is_var and (g.conn not in sig or sig.arity(g.conn) != len(g.args)):
            raise SignatureError(g.conn, sig)
    return f


def complexity(f):
    return f.complexity


def subformula_closure(fs):
    """All subformulas of fs, sorted by complexity; ties keep post-order first occurrence."""
    order = {}
    for f in fs:
        for g in f.subformulas():
            if g not in order:
                order[g] = len(order)
    return sorted(order, key=lambda g: (g.complexity, order[g]))


def substitute(f, s, sig=None):
    """Replace variables according to the map s (homomorphic extension)."""
    if sig is not None:
        check_signature(f, sig)
        for g in s.values():
            check_signature(g, sig)
    memo = {}

    def walk(g):
        if g in memo:
            return memo[g]
        if g.is_var:
            r = s.get(g, s.get(g.name, g))
        else:
            args = tuple(walk(a) for a in g.args)
            r = g if args == g.args else App(g.conn, args)
        memo[g] = r
        return r

    return walk(f)


def match(pattern, f, binding=None):
    """
    Match a pattern whose variables act as metavariables. Returns an extended
    binding dict or None.
    """
    binding = {} if binding is None else dict(binding)
    stack = [(pattern, f)]
    while stack:
        p, g = stack.pop()
        if p.is_var:
            bound = binding.get(p.name)
            if bound is None:
                binding[p.name] = g
            elif bound != g:
                return None
        elif g.is_var or g.conn != p.conn or len(g.args) != len(p.args):
            return None
        else:
            stack.extend(zip(p.args, g.args))
    return binding


def pow(a, n, sig=None):
    """α^0 = α and α^(k+1) = ¬(α^k ∧ ¬α^k)."""
    if sig is not None:
        sig.require(NEG, AND)
    for _ in range(n):
        a = Neg(And(a, Neg(a)))
    return a


def pow_conj(a, n, sig=None):
    """α^(1) = α^1 and α^(k+1) = α^(k) ∧ α^(k+1)."""
    if n < 1:
        raise ValueError('pow_conj needs n >= 1')
    if sig is not None:
        sig.require(NEG, AND)
    f = pow(a, 1)
    for k in range(2, n + 1):
        f = And(f, pow(a, k))
    return f


def defined_bottom(a, b, sig=None):
    if sig is not None:
        sig.require(AND, UP)
    return And(a, And(b, Up(a, b)))


def strong_negation(a, sig=None):
    if sig is not None:
        sig.require(AND, IMP, UP)
    return Imp(a, defined_bottom(a, a))


# -- concrete syntax ---------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(->|→)|([!*&|^()¬∘∧∨↑])|([A-Za-z_][A-Za-z0-9_]*))')
_UNICODE_IN = {'→': '->', '¬': '!', '∘': '*', '∧': '&', '∨': '|', '↑': '^'}


def tokenize(text):
    pos = 0
    toks = []
    end = len(text)
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError('unexpected character %r' % text[pos], pos)
        start = m.start(m.lastindex)
        tok = m.group(m.lastindex)
        toks.append((_UNICODE_IN.get(tok, tok), start, m.lastindex == 3))
        pos = m.end()
    toks.append((None, end, False))
    return toks


class _Parser(object):

    def __init__(self, text, sig):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def check(self, sym, pos):
        if self.sig is not None and sym not in self.sig:
            err = SignatureError(sym, self.sig)
            err.pos = pos
            raise err

    def expr(self, min_prec):
        left = self.unary()
        while True:
            tok, pos, ident = self.peek()
            sym = None if ident else FROM_ASCII.get(tok)
            if sym not in BINARY_PREC or BINARY_PREC[sym] < min_prec:
                return left
            self.take()
            self.check(sym, pos)
            prec = BINARY_PREC[sym]
            right = self.expr(prec if sym in RIGHT_ASSOC else prec + 1)
            left = App(sym, (left, right))

    def unary(self):
        tok, pos, ident = self.take()
        if tok is None:
            raise ParseError('unexpected end of input', pos)
        if ident:
            return Var(tok)
        if tok in ('!', '*'):
            sym = FROM_ASCII[tok]
            self.check(sym, pos)
            return App(sym, (self.unary(),))
        if tok == '(':
            inner = self.expr(0)
            close, cpos, _ = self.take()
            if close != ')':
                raise ParseError("expected ')'", cpos)
            return inner
        raise ParseError('unexpected token %r' % tok, pos)


def parse(text, sig=None):
    p = _Parser(text, sig)
    f = p.expr(0)
    tok, pos, _ = p.peek()
    if tok is not None:
        raise ParseError('unexpected token %r' % tok, pos)
    return f


def _prec(f):
    if f.is_var or len(f.args) == 1:
        return UNARY_PREC + 1
    return BINARY_PREC[f.conn]


def render(f, unicode=False):
    """Minimally parenthesized text that parses back to f."""
    sym = (lambda c: c) if unicode else ASCII.__getitem__
    sep = ' '

    def wrap(g, need):
        s = walk(g)
        return '(' + s + ')' if need else s

    def walk(g):
        if g.is_var:
            return g.name
        if len(g.args) == 1:
            a = g.args[0]
            return sym(g.conn) + wrap(a, _prec(a) <= UNARY_PREC)
        p = BINARY_PREC[g.conn]
        left, right = g.args
        if g.conn in RIGHT_ASSOC:
            lneed, rneed = _prec(left) <= p, _prec(right) < p
        else:
            lneed, rneed = _prec(left) < p, _prec(right) <= p
        return wrap(left, lneed) + sep + sym(g.conn) + sep + wrap(right, rneed)

    return walk(f)


# -- generators ----------------------------------------------------------------

def random_formula(rng, sig, max_complexity, names=('p', 'q', 'r'), leaf=0.3):
    """A random formula over sig of height at most max_complexity; rng is a random.Random."""
    conns = sorted(sig.connectives)
    if max_complexity <= 0 or rng.random() < leaf:
        return Var(rng.choice(names))
    sym, arity = rng.choice(conns)
    return App(sym, [random_formula(rng, sig, max_complexity - 1, names, leaf) for _ in range(arity)])


def formulas_by_size(sig, names, size):
    """Every formula over sig with at most ``size`` connective occurrences."""
    layers = [[Var(n) for n in names]]
    for k in range(1, size + 1):
        layer = []
        for sym, arity in sorted(sig.connectives):
            if arity == 1:
                layer.extend(App(sym, (a,)) for a in layers[k - 1])
            elif arity == 2:
                for i in range(k):
                    for a in layers[i]:
                        layer.extend(App(sym, (a, b)) for b in layers[k - 1 - i])
        layers.append(layer)
    return [f for layer in layers for f in layer]
