"""Command-line interface.

    mdshash bound u --n 9 --m 3 --eps 1/3
    mdshash thresholds --n 27 --m 3
    mdshash compare su --n 8 --m 2 --eps 3/5
    mdshash construct rs --q 5 --k 2 --n 5 --out rs.fam
    mdshash verify u rs.fam
    mdshash convert code2family code.txt fam.txt
    mdshash sweep u --n 10:100 --m 3 --eps 3/10:1:1/20 --out sweep.csv

Exit codes: 0 success, 1 a bound check failed, 2 precondition violation,
3 resource cap, 4 parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import bounds, constructions, fileio
from .audit import all_pass, audit_family, bound_checks
from .bounds import Kind
from .errors import BadParams, MdsHashError
from .family import code_to_delta_family, code_to_family, family_to_code, measure_epsilon_delta, measure_epsilon_su, measure_epsilon_u


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact fraction: {text!r} (use p/q)") from None


def int_range(text: str) -> list[int]:
    """'a', 'a:b', 'a:b:step' (inclusive) or a comma list."""
    text = text.strip()
    if not text:
        return []
    try:
        if "," in text:
            return [int(t) for t in text.split(",") if t.strip()]
        parts = [int(t) for t in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None
    if len(parts) == 1:
        return parts
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}")
    step = parts[2] if len(parts) == 3 else 1
    return list(range(parts[0], parts[1] + 1, step))


def eps_grid(text: str) -> list[Fraction]:
    """'p/q', 'start:stop:step' (inclusive, exact) or a comma list."""
    text = text.strip()
    if not text:
        return []
    if "," in text:
        return [fraction_arg(t) for t in text.split(",") if t.strip()]
    parts = [fraction_arg(t) for t in text.split(":")]
    if len(parts) == 1:
        return parts
    if len(parts) != 3 or parts[2] <= 0:
        raise argparse.ArgumentTypeError(f"eps range must be start:stop:step with step > 0, got {text!r}")
    start, stop, step = parts
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out


def _num(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x} ({float(x):.10g})"
    return f"{x:.10g}"


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_bound(args) -> int:
    rep = bounds.evaluate(args.kind, args.n, args.m, args.eps, require_threshold=False)
    lines = [
        f"kind       {rep.kind.value}",
        f"n m eps    {rep.n} {rep.m} {rep.eps}",
        f"floor      {_num(rep.floor)}",
        f"old_raw    {_num(rep.old_raw)}",
        f"new_raw    {_num(rep.new_raw)}",
        f"old_N      {_num(rep.old_N)}",
        f"new_N      {_num(rep.new_N)}",
        f"threshold  {_num(rep.threshold) if rep.threshold is not None else 'inapplicable'}",
        f"dominant   {rep.dominant}",
        f"regime     {rep.regime}{' (boundary)' if rep.boundary else ''}",
    ]
    _emit(args, rep.as_dict(), lines)
    return 0


def cmd_compare(args) -> int:
    rep = bounds.compare(args.kind, args.n, args.m, args.eps)
    lines = [
        f"{rep.kind.value} n={rep.n} m={rep.m} eps={rep.eps}: dominant={rep.dominant} "
        f"regime={rep.regime}{' boundary' if rep.boundary else ''}",
        f"old_raw={_num(rep.old_raw)} new_raw={_num(rep.new_raw)} threshold={_num(rep.threshold)}",
    ]
    _emit(args, rep.as_dict(), lines)
    return 0


def cmd_thresholds(args) -> int:
    ts = bounds.thresholds(args.n, args.m)

    def entry(value, ok):
        return {"value": None if value is None else float(value), "applicable": ok}

    payload = {
        "n": ts.n,
        "m": ts.m,
        "eps1": entry(ts.eps1, ts.eps1_applicable),
        "eps2": entry(ts.eps2, True),
        "eps3": entry(ts.eps3, ts.eps3_applicable),
        "eps4": entry(ts.eps4, ts.eps4_applicable),
        "quad_coeffs": list(ts.quad_coeffs),
        "discriminant": ts.discriminant,
    }
    lines = [f"n={ts.n} m={ts.m}"]
    for name, value, ok in (
        ("eps1", ts.eps1, ts.eps1_applicable),
        ("eps2", ts.eps2, True),
        ("eps3", ts.eps3, ts.eps3_applicable),
        ("eps4", ts.eps4, ts.eps4_applicable),
    ):
        lines.append(f"{name}  {_num(value):24} {'applicable' if ok else 'inapplicable'}")
    a, b, c = ts.quad_coeffs
    lines.append(f"eps4 quadratic a={a:.10g} b={b:.10g} c={c:.10g} discriminant={ts.discriminant:.10g}")
    _emit(args, payload, lines)
    return 0


def _audit_lines(results) -> tuple[list[str], list[dict], bool]:
    lines, payload, ok = [], [], True
    for rep, checks in results:
        if rep is None:
            lines.extend("  " + c.line() for c in checks)
            continue
        lines.append(f"eps_{rep.kind} = {rep.epsilon}  witness={rep.witness}"
                     + (f"  balanced={rep.balanced}" if rep.balanced is not None else "")
                     + (f"  group={rep.group}" if rep.kind == "DeltaU" else ""))
        lines.extend("  " + c.line() for c in checks)
        ok = ok and all_pass(checks)
        payload.append({
            **rep.as_dict(),
            "checks": [
                {"name": c.name, "value": None if c.value is None else float(c.value), "ok": c.ok, "note": c.note}
                for c in checks
            ],
        })
    return lines, payload, ok


def cmd_construct(args) -> int:
    kind_list = ("U",)
    if args.recipe == "rs":
        code, fam = constructions.rs_family(args.q, _need(args, "k"), _need(args, "n"))
    elif args.recipe == "parity":
        code, fam = constructions.parity_family(args.q, _need(args, "n"))
    elif args.recipe == "subfamily":
        code, fam = constructions.subfamily(args.q, _need(args, "i"))
    else:
        code, fam = constructions.delta_family(args.q, _need(args, "n"))
        kind_list = ("DeltaU", "U")
    if args.out:
        fileio.write_family(fam, args.out)
    if args.code_out:
        fileio.write_code(code, args.code_out)
    lines, payload, ok = _audit_lines(audit_family(fam, kind_list))
    head = f"{args.recipe} family: N={fam.N} n={fam.n} m={fam.m} group={fam.group}"
    lines = [head] + lines + [f"bounds: {'all satisfied' if ok else 'VIOLATED'}"]
    _emit(args, {"N": fam.N, "n": fam.n, "m": fam.m, "group": fam.group, "reports": payload, "ok": ok}, lines)
    return 0 if ok else 1


def _need(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise BadParams(f"construct {args.recipe} needs --{name}")
    return value


def cmd_verify(args) -> int:
    fam = fileio.read_family(args.family_file)
    kind = Kind.parse(args.kind)
    measure = {Kind.U: measure_epsilon_u, Kind.DELTA: measure_epsilon_delta, Kind.SU: measure_epsilon_su}[kind]
    rep = measure(fam)
    checks = bound_checks(kind, fam.N, fam.n, fam.m, rep.epsilon, rep.balanced)
    lines, payload, ok = _audit_lines([(rep, checks)])
    lines = [f"family: N={fam.N} n={fam.n} m={fam.m} group={fam.group}"] + lines
    lines.append(f"verify: {'pass' if ok else 'FAIL'}")
    _emit(args, {**payload[0], "ok": ok}, lines)
    return 0 if ok else 1


def cmd_convert(args) -> int:
    if args.direction == "family2code":
        code = family_to_code(fileio.read_family(args.input))
        fileio.write_code(code, args.output)
        print(f"wrote code q={code.q} K={code.size} N={code.length}"
              + (f"; dropped duplicate domain points {code.dropped}" if code.dropped else ""))
        return 0
    code = fileio.read_code(args.input)
    if args.direction == "code2family":
        fam = code_to_family(code)
    else:
        fam = code_to_delta_family(code)
    fileio.write_family(fam, args.output)
    print(f"wrote family N={fam.N} n={fam.n} m={fam.m} group={fam.group}")
    return 0


def cmd_sweep(args) -> int:
    rows = bounds.sweep(args.kind, args.n, args.m, args.eps, workers=args.workers)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=bounds.SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdshash", description="Universal hash families from MDS codes: bounds and brute-force checks.")
    sub = p.add_subparsers(dest="verb", required=True)

    def query(sp, with_eps=True):
        sp.add_argument("kind", type=Kind.parse, help="u, du or su")
        sp.add_argument("--n", type=int, required=True, help="domain size")
        sp.add_argument("--m", type=int, required=True, help="range size")
        if with_eps:
            sp.add_argument("--eps", type=fraction_arg, required=True, help="exact fraction p/q")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bound", help="evaluate both lower bounds on N")
    query(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("compare", help="which bound dominates")
    query(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("thresholds", help="eps1..eps4 for (n, m)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_thresholds)

    sp = sub.add_parser("construct", help="build a family from an MDS code")
    sp.add_argument("recipe", choices=("rs", "parity", "subfamily", "delta"))
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--out", help="family file to write")
    sp.add_argument("--code-out", help="code file to write")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="measure epsilon of a family file")
    sp.add_argument("kind", type=Kind.parse)
    sp.add_argument("family_file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("convert", help="code <-> family files")
    sp.add_argument("direction", choices=("code2family", "family2code", "code2delta"))
    sp.add_argument("input")
    sp.add_argument("output")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("sweep", help="dominance table as CSV")
    sp.add_argument("kind", type=Kind.parse)
    sp.add_argument("--n", type=int_range, required=True, help="a:b[:step] or comma list")
    sp.add_argument("--m", type=int_range, required=True)
    sp.add_argument("--eps", type=eps_grid, required=True, help="start:stop:step or comma list of fractions")
    sp.add_argument("--out")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MdsHashError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
