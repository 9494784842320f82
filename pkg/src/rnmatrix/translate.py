"""The translation T from Σ_LFI into Σ_nbI: ∘α goes to T(α)↑¬T(α), all else is kept."""

from .formula import CIRC, NEG, UP, SIG_LFI, SIG_NBI, App, Neg, Up, check_signature, render


class NotInImageError(ValueError):
    pass


class TranslationReport(object):

    def __init__(self, input, output, image_member):
        self.input = input
        self.output = output
        self.image_member = image_member

    def __repr__(self):
        return 'TranslationReport(%s => %s, image=%s)' % (self.input, self.output, self.image_member)


def translate_lfi(f):
    check_signature(f, SIG_LFI)
    return _t(f)


def _t(f):
    if f.is_var:
        return f
    args = [_t(a) for a in f.args]
    if f.conn == CIRC:
        return Up(args[0], Neg(args[0]))
    return App(f.conn, args)


def _consistency_shape(g):
    x, y = g.args
    return not y.is_var and y.conn == NEG and y.args[0] == x


def is_translation_image(g):
    check_signature(g, SIG_NBI)
    return all(_consistency_shape(h) for h in g.subformulas() if not h.is_var and h.conn == UP)


def untranslate(g):
    if not is_translation_image(g):
        raise NotInImageError('%s is not a translation image' % render(g))
    return _u(g)


def _u(g):
    if g.is_var:
        return g
    if g.conn == UP:
        return App(CIRC, (_u(g.args[0]),))
    return App(g.conn, [_u(a) for a in g.args])


def report(f):
    out = translate_lfi(f)
    return TranslationReport(f, out, is_translation_image(out))


def report_image(g):
    """Report for an arbitrary Σ_nbI formula (CLI ``untranslate``)."""
    member = is_translation_image(g)
    return TranslationReport(_u(g) if member else None, g, member)
