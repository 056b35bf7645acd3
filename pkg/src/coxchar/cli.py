"""Command-line interface.

    coxchar verify-c --group B5 --L 1,2,4,5 [--table FILE | --solve]
    coxchar verify-a --group B5 [--tables DIR] [--solve]
    coxchar omega --group E6 --rep 123456 [--top-only]
    coxchar validate FILE...

Exit status: 0 when every identity holds, 1 when one fails, 2 for usage,
parse or missing-data errors.
"""
from __future__ import annotations

import argparse
import sys

from .coxgroup import GroupTooLarge, coxeter_group, parse_word
from .cyclotomic import format_cyclotomic
from .tables import TableError, _Reader, data_dir, parse_table
from .verify import MissingData, emit_report, verify_theorem_A, verify_theorem_C


class UsageError(Exception):
    pass


def parse_subset(box, text):
    """``1,2,4,5``, ``"1' 2 3"``, ``1245`` or ``S``."""
    text = text.strip()
    if text in ("S", "all"):
        return tuple(box.datum.labels)
    if text in ("", "{}", "none"):
        return ()
    parts = [p for p in text.replace(",", " ").replace("{", " ").replace("}", " ").split() if p]
    if len(parts) == 1 and parts[0] not in box.datum.labels:
        parts = [box.datum.labels[i] for i in parse_word(box.datum, parts[0])]
    for p in parts:
        if p not in box.datum.labels:
            raise UsageError(f"{p!r} is not a generator of {box.datum.name}")
    return tuple(parts)


def parse_element(box, text):
    """An element written with table tokens: words, ``w0``, ``r``, ``e``."""
    r = _Reader("<command line>")
    r.feed(1, f"group {box.datum.family} {box.rank}", "")
    r.feed(2, "L " + " ".join(box.datum.labels), "")
    toks = [(t, k + 1) for k, t in enumerate(text.split())]
    if not toks:
        raise UsageError("empty representative")
    return r.word(toks, 0)


def _group(name):
    try:
        return coxeter_group(name)
    except (ValueError, GroupTooLarge) as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_c(args):
    box = _group(args.group)
    L = parse_subset(box, args.L)
    report = verify_theorem_C(
        box, L, table=args.table, solve=args.solve, full_omega=args.full_omega,
        oracle=args.oracle, jobs=args.jobs,
    )
    sys.stdout.write(emit_report(report, args.format, args.timings))
    return report.exit_code


def cmd_verify_a(args):
    box = _group(args.group)
    tables = args.tables if args.tables is not None else data_dir()
    report = verify_theorem_A(box, tables=tables, solve=args.solve, full_omega=args.full_omega, jobs=args.jobs)
    sys.stdout.write(emit_report(report, args.format, args.timings))
    return report.exit_code


def cmd_omega(args):
    from .osalg import omega_value

    box = _group(args.group)
    x = parse_element(box, args.rep)
    W = box.whole()
    label = W.classes[int(W.class_of[x])].label
    degrees = [box.rank] if args.top_only else range(box.rank + 1)
    values = [(d, omega_value(box, x, d, cutoff=not args.oracle)) for d in degrees]
    if args.format == "machine":
        for d, v in values:
            sys.stdout.write(f"{box.datum.name}\t{label}\t{d}\t{format_cyclotomic(v) if hasattr(v, 'coeffs') else v}\n")
        return 0
    sys.stdout.write(f"{box.datum.name} class {label} (rep {box.word_str(x)})\n")
    for d, v in values:
        sys.stdout.write(f"  degree {d}: {v}\n")
    if not args.top_only:
        sys.stdout.write(f"  total: {sum(v for _, v in values)}\n")
    return 0


def cmd_validate(args):
    for path in args.files:
        t = parse_table(path)
        sys.stdout.write(f"{path}: {t.group} {{{','.join(t.L)}}}, {len(t.entries)} classes, ok\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="coxchar", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--format", choices=("text", "machine"), default="text")
        q.add_argument("--jobs", type=int, default=1, help="worker processes for omega traces")
        q.add_argument("--timings", action="store_true", help="append wall-clock times (text format)")
        q.add_argument("--full-omega", action="store_true",
                       help="evaluate omega on every class for rank-6 groups (slow)")

    c = sub.add_parser("verify-c", help="check the identities for one pair (W, L)")
    c.add_argument("--group", required=True)
    c.add_argument("--L", required=True, help="subset of generators, e.g. 1,2,4,5 or S")
    src = c.add_mutually_exclusive_group()
    src.add_argument("--table", help="table file (default: the shipped table)")
    src.add_argument("--solve", action="store_true", help="search for the characters instead")
    c.add_argument("--oracle", action="store_true", help="add independent cross-checks")
    common(c)
    c.set_defaults(func=cmd_verify_c)

    a = sub.add_parser("verify-a", help="assemble the decompositions of rho and omega over all shapes")
    a.add_argument("--group", required=True)
    a.add_argument("--tables", help="directory of table files (default: the shipped tables)")
    a.add_argument("--solve", action="store_true", help="search characters for shapes without a table")
    common(a)
    a.set_defaults(func=cmd_verify_a)

    o = sub.add_parser("omega", help="trace of an element on the Orlik-Solomon algebra")
    o.add_argument("--group", required=True)
    o.add_argument("--rep", required=True, help="element, e.g. 123456 or 'w0' or '12356 r'")
    o.add_argument("--top-only", action="store_true")
    o.add_argument("--oracle", action="store_true", help="disable the trace cutoff")
    o.add_argument("--format", choices=("text", "machine"), default="text")
    o.set_defaults(func=cmd_omega)

    v = sub.add_parser("validate", help="parse and validate table files")
    v.add_argument("files", nargs="+")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, TableError, MissingData, OSError) as exc:
        sys.stderr.write(f"coxchar: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"coxchar: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
