"""Command line interface: ``keyvar <subcommand> ...``.

Exit codes: 0 when every check passes, 1 on a verification failure,
2 on usage or data errors.  ``KEYVAR_SEED`` sets the default seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import hilbert as hs
from . import singcheck as sc
from .classdb import UnknownClassError, load_class, record_summary
from .grading import ws_validate
from .report import emit_report, run_suite
from .weightsearch import search_weights

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("KEYVAR_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"KEYVAR_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fraction_list(text: str, n: int, what: str) -> list[Fraction]:
    try:
        vals = [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what}: expected comma-separated rationals, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what}: expected {n} values, got {len(vals)}")
    return vals


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    if args.all or args.class_no is None:
        target = "all"
    else:
        target = args.class_no
    report = run_suite(target, seed=args.seed, timings=args.timings, jobs=args.jobs,
                       include_global=True if args.with_global else None)
    _write(emit_report(report, args.format), args.output)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_weights(args) -> int:
    rec = load_class(args.class_no)
    ws = rec.weights
    v = ws_validate(ws)
    out = {"grdb_no": rec.grdb_no, "free": ws.free_parameters(), "weights": ws.as_dict(),
           "matches_table": ws.as_dict() == rec.table_weights, **v}
    _write(_dump(out), None)
    return EXIT_OK if v["ok"] and out["matches_table"] else EXIT_FAIL


def cmd_search(args) -> int:
    degrees = _int_list(args.degrees)
    if len(degrees) != 9:
        raise UsageError(f"--degrees needs nine values, got {len(degrees)}")
    found = search_weights(degrees, allow_negative=not args.positive_only)
    out = {"degrees": sorted(degrees), "count": len(found),
           "solutions": [{"free": x["weights"].free_parameters(), "negative": x["negative"],
                          "weights": x["weights"].as_dict()} for x in found]}
    _write(_dump(out), None)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    rec = load_class(args.class_no)
    ws = rec.weights
    terms = args.terms if args.terms is not None else 2 * ws.delta
    out = {"grdb_no": rec.grdb_no, "variant": rec.variant,
           "numerator": str(hs.hilbert_numerator(ws)),
           "resolution": hs.resolution_profile(ws).as_dict(),
           "palindromic": hs.is_palindromic(ws),
           "anticanonical_defect": hs.anticanonical_defect(ws, rec.cuts),
           "genus": hs.genus(rec) if hs.anticanonical_check(rec) else None,
           "series": hs.hilbert_series(ws, rec.variant, rec.cuts, terms)}
    _write(_dump(out), None)
    return EXIT_OK if out["palindromic"] and out["anticanonical_defect"] == 1 else EXIT_FAIL


def cmd_lpc(args) -> int:
    rec = load_class(args.class_no)
    rep = sc.verify_class_lpc(rec, args.seed)
    _write(_dump(rep), None)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_fiber(args) -> int:
    s = sc.symmetric_from_entries(_fraction_list(args.S, 6, "--S"))
    t = _fraction_list(args.t, 3, "--t")
    _write(_dump(sc.fiber_invariants(s, t).as_dict()), None)
    return EXIT_OK


def cmd_report(args) -> int:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = run_suite("all", seed=args.seed, timings=args.timings, jobs=args.jobs)
    (out_dir / "report.json").write_text(emit_report(report, "json"), encoding="utf-8")
    (out_dir / "report.md").write_text(emit_report(report, "md"), encoding="utf-8")
    print(f"{report['status']}: wrote {out_dir / 'report.json'} and {out_dir / 'report.md'}")
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_show(args) -> int:
    _write(_dump(record_summary(load_class(args.class_no))), None)
    return EXIT_OK


def build_parser(seed: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="keyvar", description="Key variety verification toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--class", dest="class_no", type=int, help="one class number")
    g.add_argument("--all", action="store_true", help="all classes (default)")
    v.add_argument("--seed", type=int, default=seed)
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--output", help="write the report to a file")
    v.add_argument("--timings", action="store_true", help="include per-check timings")
    v.add_argument("--with-global", action="store_true",
                   help="also run the key variety checks for a single class")
    v.add_argument("--jobs", type=int, default=1, help="classes verified in parallel")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weights", help="weights, degrees, delta and k of a class")
    w.add_argument("class_no", type=int)
    w.set_defaults(func=cmd_weights)

    s = sub.add_parser("search", help="weight systems with given equation degrees")
    s.add_argument("--degrees", required=True, help="nine comma-separated degrees")
    s.add_argument("--positive-only", action="store_true", help="drop systems with negative weights")
    s.set_defaults(func=cmd_search)

    h = sub.add_parser("hilbert", help="Hilbert numerator and series of a class")
    h.add_argument("class_no", type=int)
    h.add_argument("--terms", type=int, help="highest power of t (default 2*delta)")
    h.set_defaults(func=cmd_hilbert)

    lp = sub.add_parser("lpc", help="singularity types at the tabulated points of a class")
    lp.add_argument("class_no", type=int)
    lp.add_argument("--seed", type=int, default=seed)
    lp.set_defaults(func=cmd_lpc)

    f = sub.add_parser("fiber", help="fiber invariants over a base point (S, t)")
    f.add_argument("--S", required=True, help="s11,s12,s13,s22,s23,s33")
    f.add_argument("--t", required=True, help="t1,t2,t3")
    f.set_defaults(func=cmd_fiber)

    r = sub.add_parser("report", help="write JSON and Markdown reports for all classes")
    r.add_argument("--seed", type=int, default=seed)
    r.add_argument("--output-dir", default="keyvar-report")
    r.add_argument("--timings", action="store_true")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_report)

    sh = sub.add_parser("show", help="database record of a class")
    sh.add_argument("class_no", type=int)
    sh.set_defaults(func=cmd_show)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(default_seed())
    except UsageError as exc:
        print(f"keyvar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, UnknownClassError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"keyvar: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
