"""Verification suite orchestration and report emission."""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import __version__
from . import hilbert as hs
from . import keyvarieties as kv
from . import singcheck as sc
from .classdb import ClassRecord, integrity_problems, load_all, load_class
from .grading import InhomogeneousError, check_homogeneous, torus_rescale_holds, ws_validate
from .singcheck import QuotientType
from .weightsearch import search_weights

REPORT_SCHEMA_VERSION = 1
EXACT = "exact"
SAMPLED = "sampled-evidence"
NOT_TABULATED = "covered by Table 2 data only"


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" or "fail"
    kind: str = EXACT
    value: object = None
    detail: str = ""
    seconds: float | None = field(default=None, compare=False)

    def as_dict(self, timings: bool = False) -> dict:
        d = {"name": self.name, "status": self.status, "kind": self.kind}
        if self.value is not None:
            d["value"] = self.value
        if self.detail:
            d["detail"] = self.detail
        if timings and self.seconds is not None:
            d["seconds"] = round(self.seconds, 4)
        return d


def _run(name: str, fn: Callable[[], tuple[bool, object, str]], kind: str = EXACT) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, value, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, value, detail = False, None, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, "pass" if ok else "fail", kind, value, detail,
                       time.perf_counter() - start)


# -- per-class checks ---------------------------------------------------------

def basket_coverage(rec: ClassRecord, lpc_types: dict[str, str]) -> list[dict]:
    """Match each basket point 1/a(1,b,c) to an LPC point of type 1/a(b,c)."""
    free = dict(lpc_types)
    out = []
    for text in rec.basket:
        q = QuotientType.parse(text)
        betas = list(q.betas)
        if 1 in betas:
            betas.remove(1)
        surface = str(QuotientType(q.alpha, tuple(sorted(betas))))
        hit = next((label for label, t in free.items() if t == surface), None)
        if hit is not None:
            del free[hit]
        out.append({"point": text, "matched": hit if hit is not None else NOT_TABULATED})
    return out


def class_checks(rec: ClassRecord, seed: int) -> tuple[list[CheckResult], dict]:
    ws = rec.weights
    values: dict = {}
    checks: list[CheckResult] = []

    def integrity():
        problems = integrity_problems(rec)
        return not problems, None, "; ".join(problems)

    def weights():
        v = ws_validate(ws)
        bad = [k for k, ok in v["checks"].items() if not ok]
        return v["ok"], None, ", ".join(bad)

    def homogeneity():
        try:
            degs = check_homogeneous(rec.presentation(), ws)
        except InhomogeneousError as exc:
            return False, None, str(exc)
        return list(degs.values()) == list(ws.degrees), list(degs.values()), ""

    def anticanonical():
        defect = hs.anticanonical_defect(ws, rec.cuts)
        return defect == 1, defect, "k - sum(cuts)"

    def series():
        coeffs = hs.hilbert_series(ws, rec.variant, rec.cuts, 2 * ws.delta)
        neg = [i for i, c in enumerate(coeffs) if c < 0]
        return not neg, coeffs[:8], f"negative at {neg}" if neg else ""

    def t1():
        c1 = hs.hilbert_series(ws, rec.variant, rec.cuts, 1)[1]
        n1 = list(rec.ambient).count(1)
        return c1 == n1, c1, f"ambient has {n1} weight-1 coordinates"

    def search():
        found = search_weights(ws.degrees)
        hit = any(x["weights"] == ws for x in found)
        return hit, len(found), "" if hit else "table weights not among the solutions"

    lpc_report: dict = {}

    def lpc():
        nonlocal lpc_report
        lpc_report = sc.verify_class_lpc(rec, seed)
        bad = [t["label"] for t in lpc_report["targets"] if t["status"] != "pass"]
        types = {t["label"]: t.get("type") for t in lpc_report["targets"]}
        return lpc_report["ok"], types, ("failed: " + ", ".join(bad)) if bad else ""

    checks += [
        _run("integrity", integrity),
        _run("weight_relations", weights),
        _run("homogeneity", homogeneity),
        _run("degree_sum", lambda: (sum(ws.degrees) == 3 * ws.delta, sum(ws.degrees), "")),
        _run("k_formulas_agree", lambda: (ws.k == ws.k_from_coordinates, ws.k, "")),
        _run("anticanonical", anticanonical),
        _run("numerator_palindromic", lambda: (hs.is_palindromic(ws), None, "")),
        _run("series_nonnegative", series),
        _run("series_t1_matches_ambient", t1),
        _run("search_roundtrip", search),
        _run("lpc", lpc, SAMPLED),
    ]
    values["delta"] = ws.delta
    values["k"] = ws.k
    values["degrees"] = list(ws.degrees)
    try:
        values["genus"] = hs.genus(rec)
    except ValueError:
        values["genus"] = None
    values["lpc"] = [{k: v for k, v in t.items() if k != "surviving"}
                     for t in lpc_report.get("targets", [])]
    types = {t["label"]: t.get("type") for t in lpc_report.get("targets", []) if t.get("type")}
    values["basket"] = basket_coverage(rec, types)
    return checks, values


def class_report(rec: ClassRecord, seed: int, timings: bool = False) -> dict:
    checks, values = class_checks(rec, seed)
    return {"grdb_no": rec.grdb_no, "variant": rec.variant,
            "status": "pass" if all(c.status == "pass" for c in checks) else "fail",
            "checks": [c.as_dict(timings) for c in checks], "values": values}


# -- identities and sampled suites on the key varieties ---------------------

def _count(samples: int, seed: int, fn: Callable[[int], bool]) -> tuple[bool, str, str]:
    passed = sum(1 for i in range(samples) if fn(seed * 1000 + i))
    return passed == samples, f"{passed}/{samples}", ""


def global_checks(seed: int, samples: int = 50, locus_samples: int = 10) -> list[CheckResult]:
    s14 = kv.build_sigma14()
    s13 = kv.build_sigma13()

    def correspondence():
        match = kv.pfaffian_correspondence()
        labels = sorted(lab for _, lab, _ in match)
        ok = labels == ["E1", "E2", "E3", "E4", "E5"] and all(sg in (1, -1) for *_, sg in match)
        return ok, [[i, lab, sg] for i, lab, sg in match], ""

    def codim2():
        lhs, rhs = kv.upsilon_codim2_relation(kv.build_upsilon14())
        return (lhs - rhs).is_zero(), None, ""

    def torus():
        recs = load_all()
        pres = s14
        rng = random.Random(seed)
        ok = 0
        for i in range(samples):
            pt = kv.chart_sample(kv.chart(("p1", "p2", "u")[i % 3]), rng)
            lam = kv.random_rational(rng, nonzero=True)
            ok += torus_rescale_holds(pres, recs[i % len(recs)].weights, pt, lam)
        return ok == samples, f"{ok}/{samples}", ""

    def generic_jac():
        ranks = sc.generic_jacobian_ranks(s14, samples, seed)
        n = sum(1 for r in ranks if r == 4)
        return n == samples, f"{n}/{samples}", "rank 4 expected"

    def locus(which):
        def fn():
            ranks = sc.locus_jacobian_ranks(s14, which, locus_samples, seed)
            n = sum(1 for r in ranks if r < 4)
            return n == locus_samples, f"{n}/{locus_samples}", "rank < 4 expected"
        return fn

    def fiber_table():
        bad = sc.fiber_table_mismatches()
        return not bad, len(sc.FIBER_REPRESENTATIVES) - len(bad), ", ".join(bad)

    def fiber_twist():
        bad = sc.fiber_twist_mismatches(10, seed)
        return not bad, None, ", ".join(bad)

    out = [
        _run("pfaffian_correspondence", correspondence),
        _run("chart_identity_p1", lambda: (kv.verify_chart_identity(s14, kv.chart("p1")), None, "")),
        _run("chart_identity_p2", lambda: (kv.verify_chart_identity(s14, kv.chart("p2")), None, "")),
        _run("chart_identity_u", lambda: (kv.verify_chart_identity(s14, kv.chart("u")), None, "")),
        _run("chart_identity_p1_s33_one",
             lambda: (kv.verify_chart_identity(s13, kv.chart("p1")), None, "")),
        _run("xi_rewrite", lambda: (kv.verify_xi_rewrite(), None, "")),
        _run("upsilon_codim2_relation", codim2),
        _run("q1_chart_pfaffians",
             lambda: _count(samples, seed, lambda s: kv.verify_q1_chart_pfaffians(1, s)), SAMPLED),
        _run("upsilon_embedding",
             lambda: _count(samples, seed, lambda s: kv.verify_upsilon_embedding(1, s)), SAMPLED),
        _run("gl3_covariance",
             lambda: _count(samples, seed, lambda s: kv.verify_gl3(1, s)), SAMPLED),
        _run("torus_rescale", torus, SAMPLED),
        _run("jacobian_generic", generic_jac, SAMPLED),
    ]
    out += [_run(f"jacobian_{w}", locus(w), SAMPLED) for w in ("S1", "S2", "S3", "S4")]
    out += [_run("fiber_table", fiber_table), _run("fiber_twist_invariance", fiber_twist, SAMPLED)]
    return out


def global_report(seed: int, timings: bool = False) -> dict:
    checks = global_checks(seed)
    return {"status": "pass" if all(c.status == "pass" for c in checks) else "fail",
            "checks": [c.as_dict(timings) for c in checks]}


# -- suite ------------------------------------------------------------------

def _class_job(args) -> dict:
    rec, seed, timings = args
    return class_report(rec, seed, timings)


def run_suite(target: int | str = "all", seed: int = 0, records: Iterable[ClassRecord] | None = None,
              include_global: bool | None = None, timings: bool = False, jobs: int = 1) -> dict:
    """Verify one class, all classes, or explicitly given records.

    The global identity checks run once, by default only for ``"all"``.
    Reports are deterministic for a given seed unless ``timings`` is set.
    """
    if records is None:
        records = load_all() if target == "all" else [load_class(int(target))]
    records = list(records)
    if include_global is None:
        include_global = target == "all"
    work = [(r, seed, timings) for r in records]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            classes = list(pool.map(_class_job, work))
    else:
        classes = [_class_job(w) for w in work]
    report = {"schema_version": REPORT_SCHEMA_VERSION, "tool": "keyvar",
              "tool_version": __version__, "seed": seed, "target": str(target)}
    if include_global:
        report["global"] = global_report(seed, timings)
    report["classes"] = classes
    statuses = [c["status"] for c in classes] + ([report["global"]["status"]] if include_global else [])
    report["status"] = "pass" if all(s == "pass" for s in statuses) else "fail"
    return report


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if fmt == "md":
        return _markdown(report)
    raise ValueError(f"unknown report format {fmt!r}")


def _markdown(report: dict) -> str:
    lines = [f"# keyvar verification report (schema {report['schema_version']})", "",
             f"- seed: {report['seed']}", f"- status: **{report['status']}**", ""]
    if "global" in report:
        lines += ["## Key variety checks", "", "| check | kind | status | value |",
                  "|---|---|---|---|"]
        for c in report["global"]["checks"]:
            lines.append(f"| {c['name']} | {c['kind']} | {c['status']} | {_cell(c.get('value'))} |")
        lines.append("")
    lines += ["## Classes", "", "| No. | variant | delta | k | genus | LPC types | failed checks | status |",
              "|---|---|---|---|---|---|---|---|"]
    for c in report["classes"]:
        v = c["values"]
        types = ", ".join(f"{t['label']} {t.get('type', '?')}" for t in v.get("lpc", []))
        failed = ", ".join(ch["name"] for ch in c["checks"] if ch["status"] != "pass") or "-"
        lines.append(f"| {c['grdb_no']} | {c['variant']} | {v['delta']} | {v['k']} | "
                     f"{v['genus']} | {types} | {failed} | {c['status']} |")
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False).replace("|", "/")
    return str(value)
