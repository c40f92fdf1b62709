"""Command-line interface: ``efl check | transform | valid | scenario |
export-dot | render``.

Exit codes: 0 for true / valid / all checks passed, 1 for false /
countermodel / a failed check, 2 for any usage, parse, validation or
evaluation error.
"""
import argparse
import csv
import os
import sys

from .dynamics import apply
from .errors import EFLError, EFLViolation
from .io import dumps_model, export_dot, read_model, write_model
from .parser import parse_defs, parse_formula, parse_operator
from .engine import satisfies
from .validity import check_valid, signature_for


def _text(arg):
    return sys.stdin.read().strip() if arg == "-" else arg


def _load(path):
    model, actual, defs = read_model(path)
    return model, actual, parse_defs(defs, tuple(model.g)), defs


def cmd_check(args):
    model, _, defs, _ = _load(args.model)
    phi = parse_formula(_text(args.formula), nominals=tuple(model.g), defs=defs)
    verdict = satisfies(model, phi, (args.world, args.agent))
    print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_transform(args):
    model, actual, defs, raw_defs = _load(args.model)
    op = parse_operator(_text(args.operator), nominals=tuple(model.g), defs=defs)
    result = apply(model, op)
    new_actual = result(actual) if actual is not None else None
    if args.output == "-":
        sys.stdout.write(dumps_model(result.model, new_actual, raw_defs))
    else:
        write_model(result.model, args.output, new_actual, raw_defs)
        print(f"wrote {args.output}")
    return 0


def cmd_valid(args):
    agents = [a for a in args.agents.split(",") if a]
    props = [p for p in (args.props or "").split(",") if p]
    phi = parse_formula(_text(args.formula), nominals=agents + list(args.nominal or []))
    sig = signature_for(phi, args.worlds, agents, props, args.with_d)
    verdict = check_valid(phi, sig, partial=args.partial)
    if verdict:
        print(verdict)
        return 0
    print(verdict)
    if args.output:
        write_model(verdict.model, args.output, verdict.point)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(dumps_model(verdict.model, verdict.point))
    return 1


def cmd_scenario(args):
    from .scenarios import golden_suite, load
    sc = load(args.name)
    raw_defs = sc.defs
    if args.write:
        write_model(sc.model, args.write, sc.actual, raw_defs)
        print(f"wrote {args.write}")
    if not (args.run_golden or args.report or args.write):
        sys.stdout.write(dumps_model(sc.model, sc.actual, raw_defs))
        return 0
    if not (args.run_golden or args.report):
        return 0
    checks = [c for c in golden_suite() if c.scenario == sc.name]
    rows = [(c.name, repr(c.expected), repr(c.observed), "PASS" if c.passed else "FAIL")
            for c in checks]
    header = ("check", "expected", "observed", "status")
    if args.run_golden:
        w = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    if args.report:
        from .plotting import render
        from .scenarios import figures
        os.makedirs(args.report, exist_ok=True)
        tsv = os.path.join(args.report, f"{sc.name}_golden.tsv")
        with open(tsv, "w", newline="") as fh:
            w = csv.writer(fh, delimiter="\t", lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        for label, model, point in figures(sc.name):
            render(model, os.path.join(args.report, f"{label}.png"), title=label,
                   highlight=point)
            export_dot(model, os.path.join(args.report, f"{label}.dot"))
        print(f"wrote report to {args.report}", file=sys.stderr)
    return 0 if all(c.passed for c in checks) else 1


def cmd_export_dot(args):
    model, _, _, _ = _load(args.model)
    export_dot(model, args.output)
    return 0


def cmd_render(args):
    from .plotting import render
    model, actual, _, _ = _load(args.model)
    render(model, args.output, title=args.title, highlight=actual)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="efl", description="Epistemic friendship logic toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate a formula at a point")
    c.add_argument("model")
    c.add_argument("world")
    c.add_argument("agent")
    c.add_argument("formula", help="formula text, or - for stdin")
    c.set_defaults(fn=cmd_check)

    t = sub.add_parser("transform", help="apply a dynamic operator to a model")
    t.add_argument("model")
    t.add_argument("operator", help="e.g. 'K := cutK(d)', or - for stdin")
    t.add_argument("-o", "--output", required=True, help="output model file, or -")
    t.set_defaults(fn=cmd_transform)

    v = sub.add_parser("valid", help="bounded validity check")
    v.add_argument("formula")
    v.add_argument("--worlds", type=int, default=2)
    v.add_argument("--agents", default="a,b")
    v.add_argument("--props", default="")
    v.add_argument("--nominal", action="append",
                   help="declare a schematic nominal (repeatable)")
    v.add_argument("--with-d", action="store_true", help="enumerate want relations too")
    v.add_argument("--partial", action="store_true",
                   help="skip points where an update leaves the EFL class")
    v.add_argument("-o", "--output", help="write a countermodel here")
    v.set_defaults(fn=cmd_valid)

    s = sub.add_parser("scenario", help="print a built-in scenario or run its checks")
    s.add_argument("name")
    s.add_argument("--run-golden", action="store_true", help="print golden checks as TSV")
    s.add_argument("--report", metavar="DIR", help="write TSV, PNG and DOT files to DIR")
    s.add_argument("--write", metavar="FILE", help="write the scenario model file")
    s.set_defaults(fn=cmd_scenario)

    e = sub.add_parser("export-dot", help="write Graphviz DOT")
    e.add_argument("model")
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(fn=cmd_export_dot)

    r = sub.add_parser("render", help="draw a model with matplotlib")
    r.add_argument("model")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--title")
    r.set_defaults(fn=cmd_render)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.fn(args)
    except EFLViolation as e:
        print("error: result is not an EFL model:", file=sys.stderr)
        for v in e.violations:
            print(f"  {v}", file=sys.stderr)
        return 2
    except (EFLError, KeyError, ValueError, TypeError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
