"""
Command line front end.

Exit status: 0 valid / pass, 1 invalid / countermodel / failed check,
2 usage or internal error.
"""

import argparse
import json
import sys

from .formula import FormulaError, ParseError, parse, render
from .logics import UnknownLogicError, get_logic, list_logics
from .tableau import NoTableauError
from .truthtable import ResourceLimitError, build_table, entails

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _logic(args):
    if not args.logic:
        raise UsageError('--logic is required')
    return get_logic(args.logic, args.n)


def _formula(text, sig):
    try:
        return parse(text, sig)
    except ParseError as e:
        raise UsageError('parse error in %r at position %d: %s' % (text, e.pos, e)) from None


def _conclusion(args):
    if args.conclusion == '-':
        return sys.stdin.read().strip()
    return args.conclusion


def _emit(args, record, text):
    if args.format == 'records':
        print(json.dumps(record, ensure_ascii=False))
    else:
        print(text)


def _cm_records(spec, cm):
    if cm is None:
        return None
    return [{'formula': render(f), 'value': spec.alg.name(v)} for f, v in cm.items()]


def _cm_text(spec, cm, uni):
    return '\n'.join('  %s = %s' % (render(f, unicode=uni), spec.alg.name(v)) for f, v in cm.items())


def cmd_prove(args):
    spec = _logic(args)
    concl = _formula(_conclusion(args), spec.sig)
    prems = [_formula(p, spec.sig) for p in args.premise]
    if args.verify:
        return _verify(spec, prems, concl, args.verify)
    if args.method == 'tableau':
        from .tableau import prove
        verdict = prove(spec, prems, concl, derived=args.derived)
        count = ('branches', verdict.stats['branches'])
    else:
        verdict = entails(spec, prems, concl)
        count = ('rows_examined', verdict.stats.examined)
    word = 'valid' if verdict.valid else 'invalid'
    record = {'verdict': word, 'logic': spec.id, 'method': verdict.method, count[0]: count[1],
              'countermodel': _cm_records(spec, verdict.countermodel)}
    lines = ['%s (%s, %s=%d)' % (word, verdict.method, count[0], count[1])]
    if verdict.tree is not None and args.show_tree:
        lines.append(verdict.tree.dump(unicode=args.unicode))
    if verdict.countermodel is not None:
        lines.append('countermodel:')
        lines.append(_cm_text(spec, verdict.countermodel, args.unicode))
    _emit(args, record, '\n'.join(lines))
    return EXIT_OK if verdict.valid else EXIT_FAIL


def _verify(spec, prems, concl, path):
    """Re-check a countermodel stored as a record against the deduction."""
    with (sys.stdin if path == '-' else open(path, encoding='utf-8')) as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    cms = [r['countermodel'] for r in records if r.get('countermodel')]
    if not cms:
        raise UsageError('no countermodel found in %s' % path)
    assignment = {}
    for item in cms[0]:
        try:
            value = spec.alg.value(item['value'])
        except KeyError:
            raise UsageError('unknown value %r for %s' % (item['value'], spec.id)) from None
        assignment[_formula(item['formula'], spec.sig)] = value
    problems = spec.matrix.check_valuation(assignment)
    des = spec.designated
    for p in prems:
        if p in assignment and assignment[p] not in des:
            problems.append('premise %s is not designated' % render(p))
    if concl in assignment and assignment[concl] in des:
        problems.append('conclusion %s is designated' % render(concl))
    if problems:
        print('rejected')
        for p in problems:
            print('  ' + p)
        return EXIT_FAIL
    print('verified')
    return EXIT_OK


def cmd_table(args):
    spec = _logic(args)
    fs = [_formula(t, spec.sig) for t in args.formulas]
    table = build_table(spec, fs)
    if args.format == 'records':
        for r in table.records():
            print(json.dumps(r, ensure_ascii=False))
    else:
        print(table.dump(unicode=args.unicode))
        print('%d rows (examined=%d, eliminated=%d)' % (len(table), table.stats.examined,
                                                        table.stats.eliminated))
    return EXIT_OK


def cmd_translate(args):
    from .formula import SIG_LFI
    from .translate import report
    rep = report(_formula(args.formula, SIG_LFI))
    _emit(args, {'input': render(rep.input), 'output': render(rep.output), 'image': rep.image_member},
          '%s\nimage=%s' % (render(rep.output, unicode=args.unicode), str(rep.image_member).lower()))
    return EXIT_OK


def cmd_untranslate(args):
    from .formula import SIG_NBI
    from .translate import report_image
    rep = report_image(_formula(args.formula, SIG_NBI))
    out = render(rep.input, unicode=args.unicode) if rep.image_member else '-'
    _emit(args, {'input': render(rep.output), 'output': render(rep.input) if rep.input else None,
                 'image': rep.image_member},
          '%s\nimage=%s' % (out, str(rep.image_member).lower()))
    return EXIT_OK if rep.image_member else EXIT_FAIL


def cmd_count(args):
    from .snapshots import count_closed_form, count_enumerated
    e = count_enumerated(args.n, args.m, args.which)
    c = count_closed_form(args.n, args.m, args.which)
    print('enumerated=%d closed_form=%d' % (e, c))
    return EXIT_OK if e == c else EXIT_FAIL


def cmd_metacheck(args):
    from .metacheck import run_suite
    results = run_suite(args.max_gamma)
    for name, ok in results:
        print('%s  %s' % ('PASS' if ok else 'FAIL', name))
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


def cmd_list(args):
    for name in list_logics():
        print(name)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog='rnmatrix', description='RNmatrix truth tables and tableaux')
    sub = ap.add_subparsers(dest='command', required=True)

    def logic_opts(p):
        p.add_argument('--logic', '-l')
        p.add_argument('--n', type=int, help='level for Cn')
        p.add_argument('--format', choices=('text', 'records'), default='text')
        p.add_argument('--unicode', action='store_true', help='print connectives as symbols')

    def prove_opts(p, method):
        logic_opts(p)
        if method is None:
            p.add_argument('--method', choices=('table', 'tableau'), default='table')
        p.add_argument('--premise', '-p', action='append', default=[])
        p.add_argument('--derived', action='store_true', help='add derived rules (Cn tableaux)')
        p.add_argument('--show-tree', action='store_true', help='print the tableau')
        p.add_argument('--verify', metavar='FILE', help='re-check a countermodel record instead of proving')
        p.add_argument('conclusion', help='conclusion formula, or - for stdin')
        p.set_defaults(func=cmd_prove, **({'method': method} if method else {}))

    prove_opts(sub.add_parser('prove', help='decide an entailment'), None)
    prove_opts(sub.add_parser('tableau', help='prove --method tableau'), 'tableau')

    p = sub.add_parser('table', help='print the table over a closure')
    logic_opts(p)
    p.add_argument('formulas', nargs='+')
    p.set_defaults(func=cmd_table)

    for name, func, text in (('translate', cmd_translate, 'map an LFI formula into the ↑ language'),
                             ('untranslate', cmd_untranslate, 'invert the translation when possible')):
        p = sub.add_parser(name, help=text)
        p.add_argument('formula')
        p.add_argument('--format', choices=('text', 'records'), default='text')
        p.add_argument('--unicode', action='store_true')
        p.set_defaults(func=func)

    p = sub.add_parser('count', help='snapshot counts, enumerated and closed form')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--which', choices=('all', 'designated', 'boolean'), default='all')
    p.set_defaults(func=cmd_count)

    p = sub.add_parser('metacheck', help='run the finite metatheory checks')
    p.add_argument('--max-gamma', type=int, default=2)
    p.set_defaults(func=cmd_metacheck)

    p = sub.add_parser('list-logics', help='print the available logic names')
    p.set_defaults(func=cmd_list)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == 'tableau':
        args.show_tree = True
    try:
        return args.func(args)
    except UsageError as e:
        print('error: %s' % e, file=sys.stderr)
    except ParseError as e:
        print('error: parse error at position %d: %s' % (e.pos, e), file=sys.stderr)
    except (FormulaError, UnknownLogicError, NoTableauError, ValueError) as e:
        print('error: %s' % e, file=sys.stderr)
    except ResourceLimitError as e:
        print('error: %s (raise RNMATRIX_ROW_LIMIT to continue)' % e, file=sys.stderr)
    except Exception as e:
        print('internal error: %r' % e, file=sys.stderr)
    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
