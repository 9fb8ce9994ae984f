"""The ``nda`` command line tool.

Subcommands: eval, laws, series, demo, repl, validate.  Output is a human
table by default; ``--format json`` emits one JSON record per line with
stable field names, ``--format csv`` a fixed header row plus data rows.
The NDA_FORMAT environment variable changes the default; flags win.

Exit codes are a contract: 0 success, 1 usage, 2 the functional parameter
or carrier was rejected, 3 an evaluation failed (off-carrier value, carrier
exhausted, multiplication unavailable, bad expression).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import exprlang, funcparam, laws, series
from .arith import DUAL, PROJECTIVE, Arithmetic
from .carrier import Carrier
from .errors import NdaError, SpecError, ValidationError

FORMATS = ("table", "json", "csv")

LAW_CHOICES = laws.ALL_LAWS + ("archimedean", "theorem-archimedean-mll")
_LAW_ALIASES = {"dist": "distributivity", "theorem": "theorem-archimedean-mll", "arch": "archimedean"}

_LAW_COLUMNS = ("law", "status", "witness", "range", "pairs_checked", "violations")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message):
        raise _UsageError(message)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except SpecError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except NdaError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nda", description="explore arithmetics where 2 + 2 need not be 4")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default: table, or $NDA_FORMAT)")
    sub = parser.add_subparsers(dest="command")

    p_eval = sub.add_parser("eval", help="evaluate an expression under an arithmetic")
    p_eval.add_argument("arith", help="arithmetic spec, e.g. projective:pow:1.5@int:0:1000")
    p_eval.add_argument("expression", help="expression, e.g. '(2+3)+3 == 2+(3+3)'")
    p_eval.set_defaults(handler=_cmd_eval)

    p_laws = sub.add_parser("laws", help="audit classical laws over a range")
    p_laws.add_argument("arith")
    p_laws.add_argument("--check", default="all",
                        help="comma-separated law names, 'all', aliases dist/arch/theorem")
    p_laws.add_argument("-R", type=int, default=None, dest="upper",
                        help="highest carrier index scanned (default min(100, top))")
    p_laws.set_defaults(handler=_cmd_laws)

    p_series = sub.add_parser("series", help="series experiments")
    series_sub = p_series.add_subparsers(dest="series_command")
    p_prac = series_sub.add_parser("practical", help="budget-relative convergence verdict")
    p_prac.add_argument("sequence", help="sequence spec, e.g. powfact:1000")
    p_prac.add_argument("-K", type=int, default=100, dest="budget", help="term budget")
    p_prac.add_argument("--window", type=int, default=50)
    p_prac.add_argument("--tol", type=float, default=1e-12)
    p_prac.set_defaults(handler=_cmd_series_practical)
    p_sum = series_sub.add_parser("sum", help="partial sums inside an arithmetic")
    p_sum.add_argument("arith")
    p_sum.add_argument("sequence")
    p_sum.add_argument("-n", type=int, default=50, dest="terms", help="number of terms")
    p_sum.set_defaults(handler=_cmd_series_sum)
    p_series.set_defaults(handler=_cmd_series_usage)

    p_demo = sub.add_parser("demo", help="narrated scenario reproductions")
    p_demo.add_argument("name", nargs="?", default="all",
                        choices=sorted(DEMOS) + ["all"], help="demo name (default: all)")
    p_demo.set_defaults(handler=_cmd_demo)

    p_repl = sub.add_parser("repl", help="interactive loop")
    p_repl.add_argument("arith", nargs="?", default=None, help="initial arithmetic spec")
    p_repl.set_defaults(handler=_cmd_repl)

    p_val = sub.add_parser("validate", help="check a functional parameter against a carrier")
    p_val.add_argument("spec", help="<f-spec>@<carrier-spec> (a leading kind: is accepted)")
    p_val.set_defaults(handler=_cmd_validate)
    return parser


def _format_of(args) -> str:
    if args.format:
        return args.format
    env = os.environ.get("NDA_FORMAT", "").strip().lower()
    return env if env in FORMATS else "table"


# ----------------------------------------------------------------------
# record emission
# ----------------------------------------------------------------------

def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _fmt_cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt_value(x) for x in v) + ")"
    return _fmt_value(v)


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _emit_records(records: list[dict], columns: tuple[str, ...], fmt: str) -> None:
    if fmt == "json":
        for record in records:
            print(json.dumps({k: _jsonable(v) for k, v in record.items()}, sort_keys=False))
        return
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(columns)
        for record in records:
            writer.writerow(_fmt_cell(record.get(col)) for col in columns)
        sys.stdout.write(buffer.getvalue())
        return
    widths = [max(len(col), *(len(_fmt_cell(r.get(col))) for r in records)) for col in columns]
    print("  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip())
    for record in records:
        print("  ".join(_fmt_cell(record.get(col)).ljust(w) for col, w in zip(columns, widths)).rstrip())


# ----------------------------------------------------------------------
# eval / validate
# ----------------------------------------------------------------------

def _cmd_eval(args) -> int:
    arith = Arithmetic.from_spec(args.arith)
    result = exprlang.evaluate(exprlang.parse_text(args.expression), arith)
    fmt = _format_of(args)
    if fmt == "json":
        print(json.dumps({"result": result}))
    elif fmt == "csv":
        print("result")
        print(_fmt_value(result))
    else:
        print(_fmt_value(result))
    return 0


def _split_validate_spec(spec: str) -> tuple[str, str]:
    head, sep, carrier_spec = spec.partition("@")
    if not sep:
        raise SpecError(f"bad spec {spec!r} (want <f-spec>@<carrier-spec>)")
    first = head.split(":", 1)[0]
    if first in (PROJECTIVE, DUAL):
        head = head.split(":", 1)[1] if ":" in head else ""
    return head, carrier_spec


def _cmd_validate(args) -> int:
    f_spec, carrier_spec = _split_validate_spec(args.spec)
    carrier = Carrier.from_spec(carrier_spec)
    f = funcparam.from_spec(f_spec)
    report = funcparam.validate(f, carrier)
    record = {
        "f": f.name, "carrier": carrier.spec,
        "status": "pass" if report.ok else "fail",
        "multiplicative": report.multiplicative,
        "points_checked": report.points_checked,
        "failure_index": report.failure_index,
        "reason": report.reason,
    }
    fmt = _format_of(args)
    if fmt == "table":
        print(f"{f.name} on {carrier.spec}: {report.message()}")
    else:
        _emit_records([record], tuple(record.keys()), fmt)
    return 0 if report.ok else 2


# ----------------------------------------------------------------------
# laws
# ----------------------------------------------------------------------

def _parse_law_list(text: str) -> list[str]:
    if text.strip() == "all":
        return list(LAW_CHOICES)
    names = []
    for raw in text.split(","):
        name = raw.strip()
        name = _LAW_ALIASES.get(name, name)
        if name not in LAW_CHOICES:
            raise SpecError(f"unknown law {name!r}; choose from {', '.join(LAW_CHOICES)} or 'all'")
        names.append(name)
    return names


def _law_record(report: laws.LawReport) -> dict:
    return {
        "law": report.law, "status": report.status, "witness": report.witness,
        "range": report.range_text, "pairs_checked": report.pairs_checked,
        "violations": report.violations,
    }


def _archimedean_record(report: laws.ArchimedeanReport) -> dict:
    return {
        "law": "archimedean",
        "status": laws.HOLDS if report.archimedean else laws.FAILS,
        "witness": report.witness,
        "range": f"0..{report.upper}",
        "pairs_checked": report.candidates_checked,
        "violations": None,
        "fixed_point": report.fixed_point,
    }


def _theorem_record(report: laws.TheoremReport) -> dict:
    return {
        "law": "theorem-archimedean-mll",
        "status": laws.HOLDS if report.status == laws.CONSISTENT else laws.FAILS,
        "witness": report.mll_witness,
        "range": f"0..{report.upper}",
        "pairs_checked": (report.upper + 1) ** 2,
        "violations": None,
        "consistency": report.status,
        "archimedean": report.archimedean,
    }


def _cmd_laws(args) -> int:
    arith = Arithmetic.from_spec(args.arith)
    upper = args.upper if args.upper is not None else min(100, arith.carrier.size - 1)
    records = []
    for name in _parse_law_list(args.check):
        if name == "archimedean":
            records.append(_archimedean_record(laws.check_archimedean(arith, upper)))
        elif name == "theorem-archimedean-mll":
            records.append(_theorem_record(laws.verify_archimedean_theorem(arith, upper)))
        else:
            records.append(_law_record(laws.check_law(arith, name, upper)))
    _emit_records(records, _LAW_COLUMNS, _format_of(args))
    return 0


# ----------------------------------------------------------------------
# series
# ----------------------------------------------------------------------

def _cmd_series_usage(args) -> int:
    print("usage error: choose 'series practical' or 'series sum'", file=sys.stderr)
    return 1


def _cmd_series_practical(args) -> int:
    seq = series.from_spec(args.sequence)
    verdict = series.practical_convergence(seq, args.budget, args.window, args.tol)
    ev = verdict.evidence
    record = {
        "sequence": seq.name, "verdict": verdict.verdict, "budget": verdict.budget,
        "window": ev.window, "tol": ev.tol,
        "min_step": ev.min_step, "max_step": ev.max_step, "mean_step": ev.mean_step,
    }
    fmt = _format_of(args)
    if fmt == "table":
        print(f"{seq.name}: {verdict.verdict} at budget K={verdict.budget}")
        print(f"  trailing window {ev.window}, log-step in [{ev.min_step:.6g}, {ev.max_step:.6g}]")
    else:
        _emit_records([record], tuple(record.keys()), fmt)
    return 0


def _cmd_series_sum(args) -> int:
    arith = Arithmetic.from_spec(args.arith)
    seq = series.from_spec(args.sequence)
    sums, stationary_at = series.arith_partial_sums(arith, seq, args.terms)
    record = {
        "arithmetic": arith.spec, "sequence": seq.name, "terms": args.terms,
        "final_sum": sums[-1], "stationary_at": stationary_at,
    }
    fmt = _format_of(args)
    if fmt == "table":
        shown = ", ".join(_fmt_value(s) for s in sums[:10])
        if len(sums) > 10:
            shown += ", ..."
        print(f"partial sums of {seq.name} in {arith.spec}:")
        print(f"  sums: {shown}")
        if stationary_at is None:
            print(f"  still moving after {args.terms} terms; final sum {_fmt_value(sums[-1])}")
        else:
            print(f"  stationary at k={stationary_at}, sum {_fmt_value(sums[-1])}")
    else:
        _emit_records([record], tuple(record.keys()), fmt)
    return 0


# ----------------------------------------------------------------------
# demos: every printed equality is computed through the library
# ----------------------------------------------------------------------

def _demo_heap() -> list[str]:
    arith = Arithmetic.from_spec("projective:exp2m1@int:0:100")
    grains = 10
    result = arith.add(grains, 1)
    return [
        "heap: one more grain does not change a heap",
        f"  arithmetic {arith.spec}",
        f"  a heap of {grains} grains gains a grain:",
        f"  {grains} (+) 1 = {result}",
        f"  the heap {'is unchanged' if result == grains else 'changed!'}",
    ]


def _demo_payphone() -> list[str]:
    arith = Arithmetic.from_spec("projective:exp2m1@int:0:100")
    total = arith.nsum(1, 1000)
    reached = any(arith.nsum(1, k) >= 5 for k in range(1, 50))
    return [
        "payphone: a pile of pennies and a phone that wants a nickel",
        f"  arithmetic {arith.spec}",
        "  adding a penny to a penny to a penny, 1000 times over:",
        f"  1 (+) 1 (+) ... (+) 1 [1000 terms] = {total}",
        f"  a 5 is {'never' if not reached and total < 5 else 'eventually'} reached",
    ]


def _demo_bogo() -> list[str]:
    arith = Arithmetic.from_spec("projective:exp2m1@int:0:100")
    price = 5
    result = arith.add(price, price)
    return [
        "bogo: buy one, get one free",
        f"  arithmetic {arith.spec}",
        f"  one gallon costs ${price}; the second one is free:",
        f"  {price} (+) {price} = {result}",
    ]


def _demo_cans() -> list[str]:
    tariff = {1: 1.05, 2: 2.00}
    doubled = tariff[1] + tariff[1]
    return [
        "cans: tariff pricing breaks a + a = 2a",
        f"  posted prices: 1 can ${tariff[1]:.2f}, 2 cans ${tariff[2]:.2f}",
        f"  {tariff[1]:.2f} + {tariff[1]:.2f} = {doubled:.2f}, but two cans cost {tariff[2]:.2f}",
        f"  so a + a {'!=' if doubled != tariff[2] else '=='} 2a in this price list",
    ]


def _demo_lightspeed() -> list[str]:
    arith = Arithmetic.from_spec("projective:atanh:1@grid:0:1:0.001")
    half = arith.add(0.5, 0.5)
    u, v = 0.5, 0.5
    oracle = (u + v) / (1 + u * v)
    top = arith.add(1.0, 0.6)
    return [
        "lightspeed: velocities never add past c (speeds as fractions of c)",
        f"  arithmetic {arith.spec}",
        f"  0.500 (+) 0.500 = {half:.3f}",
        f"  closed-form velocity addition (u+v)/(1+uv) agrees: {oracle:.3f}",
        f"  1.000 (+) 0.600 = {top:.3f}",
    ]


def _demo_headlines() -> list[str]:
    lines = ["headline equalities, each computed on the spot"]
    for spec, expr in (
        ("projective:pow:1.5@int:0:1000", "2 + 2"),
        ("projective:pow:2@int:0:1000", "2 + 2"),
        ("projective:quad@int:0:1000", "2 * 2"),
        ("projective:exp2m1@int:0:100", "2 * 2"),
        ("projective:exp2m1@int:0:100", "5 + 5"),
    ):
        arith = Arithmetic.from_spec(spec)
        value = exprlang.evaluate(exprlang.parse_text(expr), arith)
        lines.append(f"  {expr} = {value}   under {spec}")
    return lines


DEMOS = {
    "heap": _demo_heap,
    "payphone": _demo_payphone,
    "bogo": _demo_bogo,
    "cans": _demo_cans,
    "lightspeed": _demo_lightspeed,
}

_DEMO_ORDER = ("heap", "payphone", "bogo", "cans", "lightspeed")


def _cmd_demo(args) -> int:
    if args.name == "all":
        blocks = [_demo_headlines()] + [DEMOS[name]() for name in _DEMO_ORDER]
        print("\n\n".join("\n".join(block) for block in blocks))
    else:
        print("\n".join(DEMOS[args.name]()))
    return 0


# ----------------------------------------------------------------------
# repl
# ----------------------------------------------------------------------

_REPL_HELP = """directives:
  :arith <spec>      switch arithmetic, e.g. :arith projective:pow:2@int:0:100
  :laws <list> <R>   audit laws in the current arithmetic
  :format <fmt>      table | json | csv
  :help              this text
  :quit              leave
anything else is parsed as an expression and evaluated"""


def _cmd_repl(args) -> int:
    current = Arithmetic.from_spec(args.arith) if args.arith else None
    fmt = _format_of(args)
    interactive = sys.stdin.isatty()
    if interactive:
        print("nda repl; :help for directives")
    while True:
        try:
            line = input("nda> " if interactive else "")
        except EOFError:
            break
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            fields = line.split()
            directive = fields[0]
            try:
                if directive in (":quit", ":q"):
                    break
                elif directive == ":help":
                    print(_REPL_HELP)
                elif directive == ":arith" and len(fields) == 2:
                    current = Arithmetic.from_spec(fields[1])
                    print(f"arithmetic set to {current.spec}")
                elif directive == ":format" and len(fields) == 2 and fields[1] in FORMATS:
                    fmt = fields[1]
                elif directive == ":laws" and len(fields) in (2, 3):
                    if current is None:
                        print("error: no arithmetic selected; use :arith <spec>")
                        continue
                    upper = int(fields[2]) if len(fields) == 3 else min(100, current.carrier.size - 1)
                    records = []
                    for name in _parse_law_list(fields[1]):
                        if name == "archimedean":
                            records.append(_archimedean_record(laws.check_archimedean(current, upper)))
                        elif name == "theorem-archimedean-mll":
                            records.append(_theorem_record(laws.verify_archimedean_theorem(current, upper)))
                        else:
                            records.append(_law_record(laws.check_law(current, name, upper)))
                    _emit_records(records, _LAW_COLUMNS, fmt)
                else:
                    print(f"error: bad directive {line!r}; :help lists them")
            except NdaError as exc:
                print(f"error: {exc}")
            except ValueError as exc:
                print(f"error: {exc}")
            continue
        if current is None:
            print("error: no arithmetic selected; use :arith <spec>")
            continue
        try:
            result = exprlang.evaluate(exprlang.parse_text(line), current)
        except NdaError as exc:
            print(f"error: {exc}")
            continue
        if fmt == "json":
            print(json.dumps({"result": result}))
        else:
            print(_fmt_value(result))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
