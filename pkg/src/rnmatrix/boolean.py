"""Finite Boolean algebras, realized as powersets of {a, b, c, ...}."""

import string


class BooleanAlgebra(object):
    """
    The powerset algebra of an m-element set. Elements are bit masks; bit i
    stands for the i-th atom, named ``a``, ``b``, ``c`` and so on.
    """

    def __init__(self, m):
        if m < 1:
            raise ValueError('a Boolean algebra needs at least one atom (m >= 1)')
        if m > len(string.ascii_lowercase):
            raise ValueError('too many atoms')
        self.m = m
        self.atoms = tuple(string.ascii_lowercase[:m])
        self.bottom = 0
        self.top = (1 << m) - 1
        self.elements = tuple(range(1 << m))

    def meet(self, x, y):
        return x & y

    def join(self, x, y):
        return x | y

    def compl(self, x):
        return self.top & ~x

    def imp(self, x, y):
        return self.compl(x) | y

    def leq(self, x, y):
        return x & ~y == 0

    def meet_all(self, xs):
        r = self.top
        for x in xs:
            r &= x
        return r

    def name(self, x):
        """``0`` and ``1`` for the bounds, otherwise a sorted brace set like ``{a,c}``."""
        if x == self.bottom:
            return '0'
        if x == self.top:
            return '1'
        return '{' + ','.join(a for i, a in enumerate(self.atoms) if x >> i & 1) + '}'

    def parse(self, text):
        text = text.strip()
        if text == '0':
            return self.bottom
        if text == '1':
            return self.top
        if not (text.startswith('{') and text.endswith('}')):
            raise ValueError('bad element %r' % text)
        x = 0
        body = text[1:-1].strip()
        for atom in filter(None, (t.strip() for t in body.split(','))):
            x |= 1 << self.atoms.index(atom)
        return x

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return 'BooleanAlgebra(m=%d)' % self.m


def powerset_algebra(m):
    return BooleanAlgebra(m)


TWO = BooleanAlgebra(1)

_OPS = {
    'meet': (2, BooleanAlgebra.meet),
    'join': (2, BooleanAlgebra.join),
    'compl': (1, BooleanAlgebra.compl),
    'imp': (2, BooleanAlgebra.imp),
    'leq': (2, BooleanAlgebra.leq),
}


def ba_eval(B, op, *args):
    try:
        arity, fn = _OPS[op]
    except KeyError:
        raise ValueError('unknown Boolean operation %r' % op) from None
    if len(args) != arity:
        raise TypeError('%s takes %d argument(s), got %d' % (op, arity, len(args)))
    for x in args:
        if x not in range(1 << B.m):
            raise ValueError('%r is not an element of %r' % (x, B))
    return fn(B, *args)
