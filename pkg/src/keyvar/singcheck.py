"""Local singularity checks: localization, linear part computation (LPC),
Jacobian ranks, and the invariants classifying fibers over the (S, t) base."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import symmatrix as sm
from .exactpoly import Polynomial, Universe, evaluate_expression, parse_polynomial
from .keyvarieties import (COORDS, SIGMA, Presentation, point_matrix_s, random_rational,
                           skew3)

# Variables that LPC prefers to eliminate first, so the surviving local
# coordinates are reported the way one would choose them by hand.
_KILL_ORDER = ("p1", "p2", "p3", "p4")


class LocalizationError(ValueError):
    pass


@dataclass(frozen=True)
class SectionTable:
    """Rows ``(weight, coordinate, right-hand side)`` cutting a variety out of
    the key variety; parameters are the non-coordinate symbols in the rows."""

    rows: tuple[tuple[int, str, str], ...]
    params: tuple[str, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[tuple[str, str]], weights: Mapping[str, int]) -> "SectionTable":
        solved = [c for c, _ in rows]
        if len(set(solved)) != len(solved):
            raise ValueError("solved coordinates must be distinct")
        params: list[str] = []
        for _, rhs in rows:
            for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", rhs):
                if name not in COORDS and name not in params:
                    params.append(name)
        return cls(tuple((weights[c], c, rhs) for c, rhs in rows), tuple(params))

    @property
    def solved(self) -> tuple[str, ...]:
        return tuple(c for _, c, _ in self.rows)

    @property
    def cut_degrees(self) -> list[int]:
        return sorted(w for w, _, _ in self.rows)

    def symbolic(self) -> dict[str, Polynomial]:
        universe = SIGMA.extend(self.params)
        return {c: parse_polynomial(rhs, universe) for _, c, rhs in self.rows}

    def check(self, weights: Mapping[str, int]) -> list[str]:
        """Problems found: inhomogeneous rows, or RHS using a solved coordinate."""
        problems = []
        w = dict(weights)
        w.update({p: 0 for p in self.params})
        solved = set(self.solved)
        for (deg, c, _), poly in zip(self.rows, self.symbolic().values()):
            if not poly.is_homogeneous(w, deg):
                problems.append(f"row {c} = ... is not homogeneous of weight {deg}")
            bad = poly.variables() & solved
            if bad:
                problems.append(f"row {c} uses solved coordinates {sorted(bad)}")
        return problems

    def instantiate(self, values: Mapping[str, Fraction]) -> dict[str, Polynomial]:
        missing = [p for p in self.params if p not in values]
        if missing:
            raise ValueError(f"missing parameter values {missing}")
        return {c: parse_polynomial(rhs, SIGMA, values) for _, c, rhs in self.rows}

    def surviving(self, pres: Presentation) -> list[str]:
        solved = set(self.solved)
        return [n for n in pres.free_coordinates if n not in solved]


@dataclass(frozen=True)
class LocalModel:
    equations: tuple[Polynomial, ...]
    residual: tuple[str, ...]
    chart: str
    alpha: int
    residual_weights: dict

    def residue(self, name: str) -> int:
        return self.residual_weights[name] % self.alpha if self.alpha else 0


def localize(pres: Presentation, section: Mapping[str, Polynomial], chart: str,
             target: Mapping[str, Fraction], weights: Mapping[str, int] | None = None) -> LocalModel:
    """Equations of the section-cut variety near ``target`` in the chart ``chart != 0``.

    ``target`` lists the nonzero coordinates of the point (others are 0);
    it must include the chart coordinate.  Solved coordinates are
    eliminated through ``section`` before the shift to the origin.
    """
    value = Fraction(target.get(chart, 0))
    if value == 0:
        raise LocalizationError(f"chart coordinate {chart} vanishes at the target")
    eqs = [e.substitute(section) if section else e for e in pres.equations]
    fixed = pres.fixed_map
    residual = tuple(n for n in pres.universe.names
                     if n not in section and n != chart and n not in fixed)
    stray = [n for n, v in target.items() if v and n not in residual and n != chart]
    if stray:
        raise LocalizationError(f"target assigns eliminated coordinates {stray}")
    mapping: dict = {chart: value}
    for n in residual:
        off = Fraction(target.get(n, 0))
        if off:
            mapping[n] = SIGMA.var(n) + off
    local = [e.substitute(mapping) for e in eqs]
    if any(e.constant_term() != 0 for e in local):
        raise LocalizationError("target does not lie on the variety")
    w = dict(weights or {})
    alpha = 0
    for n, v in target.items():
        if v and n in w:
            alpha = gcd(alpha, w[n])
    return LocalModel(tuple(local), residual, chart, alpha,
                      {n: w.get(n, 0) for n in residual})


def linear_span(lm: LocalModel) -> tuple[int, list[str], list[str]]:
    """Rank of the linear parts, killed variables and surviving variables."""
    order = sorted(lm.residual, key=lambda n: (_KILL_ORDER.index(n)
                                               if n in _KILL_ORDER else len(_KILL_ORDER)))
    rows = []
    for e in lm.equations:
        lin = e.linear_part()
        if lin:
            rows.append([lin.get(n, Fraction(0)) for n in order])
    if not rows:
        return 0, [], list(lm.residual)
    _, pivots = sm.row_reduce(rows)
    killed = [order[i] for i in pivots]
    surviving = [n for n in lm.residual if n not in killed]
    return len(pivots), killed, surviving


@dataclass(frozen=True)
class QuotientType:
    alpha: int
    betas: tuple[int, ...]

    def __str__(self) -> str:
        if self.alpha <= 1:
            return "smooth"
        return f"1/{self.alpha}({','.join(str(b) for b in self.betas)})"

    @classmethod
    def parse(cls, text: str) -> "QuotientType":
        text = text.strip()
        if text == "smooth":
            return cls(1, ())
        m = re.fullmatch(r"1/(\d+)\(([\d,\s]+)\)", text)
        if not m:
            raise ValueError(f"cannot parse singularity type {text!r}")
        return cls(int(m.group(1)), tuple(sorted(int(x) for x in m.group(2).split(","))))

    def is_isolated(self) -> bool:
        return all(gcd(b, self.alpha) == 1 for b in self.betas)


def lpc_type(lm: LocalModel, expected_dim: int = 2) -> QuotientType:
    rank, killed, surviving = linear_span(lm)
    if len(surviving) != expected_dim:
        raise LocalizationError(
            f"{len(surviving)} local coordinates survive (rank {rank}), expected {expected_dim}")
    # the linear parts must respect the grading mod alpha; otherwise the
    # survivor residues would depend on the pivot choice
    if lm.alpha > 1:
        classes: dict[int, list[str]] = {}
        for n in lm.residual:
            classes.setdefault(lm.residue(n), []).append(n)
        total = 0
        for names in classes.values():
            rows = [[e.linear_part().get(n, 0) for n in names] for e in lm.equations]
            total += sm.numeric_rank(rows) if rows else 0
        if total != rank:
            raise LocalizationError("linear parts are not graded modulo the stabilizer order")
    betas = tuple(sorted(lm.residue(n) for n in surviving))
    return QuotientType(lm.alpha, betas)


def jacobian_rank(pres: Presentation, point: Mapping[str, Fraction]) -> int:
    """Exact rank of the Jacobian matrix of ``pres`` at ``point``."""
    full = {n: Fraction(point.get(n, 0)) for n in pres.universe.names}
    full.update(pres.fixed_map)
    names = pres.free_coordinates
    rows = [[e.diff(n).evaluate(full) for n in names] for e in pres.equations]
    return sm.numeric_rank(rows)


# -- constructed points of the singular locus --------------------------------

def singular_locus_point(which: str, rng: random.Random) -> dict[str, Fraction]:
    """Random point of one of the loci S1..S4 of the 14-dimensional variety."""
    pt = {n: Fraction(0) for n in COORDS}
    r = lambda: random_rational(rng)  # noqa: E731
    nz = lambda: random_rational(rng, nonzero=True)  # noqa: E731
    if which == "S4":
        pt["p4"] = nz()
        for n in ("s11", "s12", "s13", "s22", "s23", "s33"):
            pt[n] = r()
        return pt
    if which == "S1":
        q1, q2, q3 = nz(), r(), r()
        s11, s12, s13, t1 = r(), r(), r(), r()
        pt.update(q1=q1, q2=q2, q3=q3, s11=s11, s12=s12, s13=s13, t1=t1,
                  s23=(q1 * q2 * s13 + q1 * q3 * s12 - q2 * q3 * s11) / q1 ** 2,
                  s33=(2 * q1 * q3 * s13 - q3 ** 2 * s11) / q1 ** 2,
                  s22=(2 * q1 * q2 * s12 - q2 ** 2 * s11) / q1 ** 2,
                  t2=q2 * t1 / q1, t3=q3 * t1 / q1)
        return pt
    if which == "S2":
        q1, q2, q3 = r(), nz(), r()
        s12, s22, s23, t2 = r(), r(), r(), r()
        pt.update(q1=q1, q2=q2, q3=q3, s12=s12, s22=s22, s23=s23, t2=t2,
                  s13=(q1 * q2 * s23 - q1 * q3 * s22 + q2 * q3 * s12) / q2 ** 2,
                  s33=(2 * q2 * q3 * s23 - q3 ** 2 * s22) / q2 ** 2,
                  s11=(2 * q1 * q2 * s12 - q1 ** 2 * s22) / q2 ** 2,
                  t1=q1 * t2 / q2, t3=q3 * t2 / q2)
        return pt
    if which == "S3":
        q1, q2, q3 = r(), r(), nz()
        s13, s23, s33, t3 = r(), r(), r(), r()
        pt.update(q1=q1, q2=q2, q3=q3, s13=s13, s23=s23, s33=s33, t3=t3,
                  s12=(q3 * q2 * s13 + q3 * q1 * s23 - q1 * q2 * s33) / q3 ** 2,
                  s11=(2 * q1 * q3 * s13 - q1 ** 2 * s33) / q3 ** 2,
                  s22=(2 * q2 * q3 * s23 - q2 ** 2 * s33) / q3 ** 2,
                  t1=q1 * t3 / q3, t2=q2 * t3 / q3)
        return pt
    raise ValueError(f"unknown locus {which!r}")


# -- per-class LPC ------------------------------------------------------------

class DegenerateSample(ValueError):
    pass


def sample_parameters(section: SectionTable, target: Mapping, rng: random.Random) -> dict[str, Fraction]:
    """Nonzero random values for the table parameters, then the target's own
    free symbols, then the back-solved parameters (which override).  Raises
    ``DegenerateSample`` if a target's nondegeneracy expression vanishes."""
    values = {p: random_rational(rng, nonzero=True) for p in section.params}
    for name in target.get("extra", []):
        values[name] = random_rational(rng, nonzero=True)
    for name, expr in target.get("derived", {}).items():
        try:
            v = evaluate_expression(expr, values)
        except ZeroDivisionError:
            raise DegenerateSample(f"derived parameter {name} divides by zero") from None
        if v == 0:
            raise DegenerateSample(f"derived parameter {name} vanished")
        values[name] = v
    # distinct roots, etc.: the sample is general only if these stay nonzero
    for expr in target.get("nondegenerate", []):
        try:
            if evaluate_expression(expr, values) == 0:
                raise DegenerateSample(f"degenerate sample: {expr} vanished")
        except ZeroDivisionError:
            raise DegenerateSample(f"degenerate sample: {expr} divides by zero") from None
    return values


def target_point(target: Mapping, values: Mapping[str, Fraction]) -> dict[str, Fraction]:
    pt = {}
    for name, expr in target["point"].items():
        try:
            pt[name] = Fraction(evaluate_expression(expr, values))
        except ZeroDivisionError:
            raise DegenerateSample(f"coordinate {name} divides by zero") from None
    return pt


def run_lpc_target(pres: Presentation, section: SectionTable, weights: Mapping[str, int],
                   target: Mapping, rng: random.Random, retries: int = 20) -> dict:
    """LPC at one tabulated point with sampled general parameters."""
    last = None
    for _ in range(retries):
        try:
            values = sample_parameters(section, target, rng)
            pt = target_point(target, values)
            # a point with any extra nonzero coordinate that the target
            # expression sent to 0 is still fine; a vanishing chart is not
            if pt.get(target["chart"], 0) == 0:
                raise DegenerateSample("chart coordinate vanished")
        except DegenerateSample as exc:
            last = exc
            continue
        subs = section.instantiate(values)
        lm = localize(pres, subs, target["chart"], pt, weights)
        rank, killed, surviving = linear_span(lm)
        qt = lpc_type(lm, target.get("dim", 2))
        return {"label": target["label"], "type": str(qt), "rank": rank,
                "killed": killed, "surviving": surviving, "alpha": lm.alpha,
                "parameters": {k: str(v) for k, v in sorted(values.items())}}
    raise DegenerateSample(f"{target['label']}: no admissible parameters after {retries} tries ({last})")


# -- fibers over the (S, t) base ---------------------------------------------

LABEL_P2P2 = "ℙ²×ℙ²"
LABEL_P22 = "ℙ^{2,2}"
LABEL_P1P3_Q4 = "ℙ¹×ℙ³ ∪ Q⁴"
LABEL_P1P3PRIME_Q4 = "(ℙ¹×ℙ³)′ ∪ Q⁴"
LABEL_3P4_2Q5 = "ℙ⁴ ∪ ℙ⁴ ∪ ℙ⁴ ∪ Q⁵ ∪ Q⁵"
LABEL_Q4_DOUBLE = "Q⁴ ∪ double Q⁴"
LABEL_S0_T = "(ℙ¹×ℙ³)′ ∪ Q⁴ (smooth Q⁴)"
LABEL_S0_T0 = "Q⁵ ∪ Q⁴"
LABEL_INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class FiberInvariants:
    rank_s: int
    q_t: Fraction
    rank_bsb: int
    s_zero: bool
    t_zero: bool
    label: str

    def as_dict(self) -> dict:
        return {"rank_S": self.rank_s, "q_t": str(self.q_t), "rank_BSB": self.rank_bsb,
                "S_zero": self.s_zero, "t_zero": self.t_zero, "label": self.label}


def symmetric_from_entries(entries: Sequence) -> list[list[Fraction]]:
    """``(s11, s12, s13, s22, s23, s33)`` to a symmetric 3x3 matrix."""
    if len(entries) != 6:
        raise ValueError("expected six entries s11,s12,s13,s22,s23,s33")
    s11, s12, s13, s22, s23, s33 = (Fraction(x) for x in entries)
    return point_matrix_s({"s11": s11, "s12": s12, "s13": s13,
                           "s22": s22, "s23": s23, "s33": s33})


def fiber_label(rank_s: int, q_t_zero: bool, rank_bsb: int, s_zero: bool, t_zero: bool) -> str:
    if s_zero:
        return LABEL_S0_T0 if t_zero else LABEL_S0_T
    if t_zero:
        return {3: LABEL_P1P3PRIME_Q4, 2: LABEL_3P4_2Q5, 1: LABEL_Q4_DOUBLE}[rank_s]
    if not q_t_zero:
        return LABEL_P2P2 if rank_bsb == 2 else LABEL_INCONSISTENT
    if rank_bsb == 1:
        return LABEL_P22
    if rank_bsb == 0:
        return {2: LABEL_P1P3_Q4, 1: LABEL_P1P3PRIME_Q4}.get(rank_s, LABEL_INCONSISTENT)
    return LABEL_INCONSISTENT


def fiber_invariants(s: Sequence[Sequence], t: Sequence) -> FiberInvariants:
    s = [[Fraction(x) for x in row] for row in s]
    t = [Fraction(x) for x in t]
    if not sm.is_symmetric(s):
        raise ValueError("S must be symmetric")
    rank_s = sm.numeric_rank(s)
    q_t = sm.dot(t, sm.matvec(sm.adjugate(s), t))
    b = skew3(t)
    rank_bsb = sm.numeric_rank(sm.matmul(sm.matmul(b, s), b))
    s_zero = rank_s == 0
    t_zero = all(x == 0 for x in t)
    label = fiber_label(rank_s, q_t == 0, rank_bsb, s_zero, t_zero)
    return FiberInvariants(rank_s, Fraction(q_t), rank_bsb, s_zero, t_zero, label)


def twist_base_point(g, s, t):
    """``(S, t) -> ((tg)^dag S g^dag, (tg)^dag t)``."""
    g = [[Fraction(x) for x in row] for row in g]
    gd = sm.adjugate(sm.transpose(g))
    return (sm.matmul(sm.matmul(gd, [[Fraction(x) for x in r] for r in s]), sm.adjugate(g)),
            sm.matvec(gd, [Fraction(x) for x in t]))


def verify_class_lpc(record, seed: int) -> dict:
    """Run LPC at every tabulated point of a class record.

    ``record`` provides ``presentation()``, ``section_table()``, ``weights``
    and ``lpc_targets``; each target is checked against its expected type
    and expected linear-span rank.
    """
    rng = random.Random(seed)
    pres = record.presentation()
    section = record.section_table()
    weights = record.weights.as_dict()
    results = []
    for target in record.lpc_targets:
        entry = {"label": target["label"], "expected": target["expected"],
                 "expected_rank": target.get("rank")}
        try:
            out = run_lpc_target(pres, section, weights, target, rng)
        except (LocalizationError, DegenerateSample) as exc:
            entry.update(status="fail", error=str(exc))
        else:
            ok = (QuotientType.parse(out["type"]) == QuotientType.parse(target["expected"])
                  and (target.get("rank") is None or out["rank"] == target["rank"]))
            entry.update(status="pass" if ok else "fail", type=out["type"], rank=out["rank"],
                         surviving=out["surviving"])
            if "tabulated" in target:
                entry["tabulated"] = target["tabulated"]
        results.append(entry)
    return {"grdb_no": record.grdb_no, "seed": seed, "targets": results,
            "ok": all(r["status"] == "pass" for r in results)}


# -- sampled Jacobian evidence --------------------------------------------------

def generic_jacobian_ranks(pres: Presentation, samples: int, seed: int) -> list[int]:
    """Jacobian ranks at random points of the p1-, p2- and u-charts in turn."""
    from .keyvarieties import chart, chart_sample
    rng = random.Random(seed)
    charts = [chart(c) for c in ("p1", "p2", "u")]
    return [jacobian_rank(pres, chart_sample(charts[i % 3], rng)) for i in range(samples)]


def locus_jacobian_ranks(pres: Presentation, which: str, samples: int, seed: int) -> list[int]:
    """Jacobian ranks at constructed points of a singular locus; each point is
    first checked to lie on the variety."""
    rng = random.Random(seed)
    ranks = []
    for _ in range(samples):
        pt = singular_locus_point(which, rng)
        if not pres.vanishes_at(pt):
            raise ValueError(f"constructed {which} point is not on the variety")
        ranks.append(jacobian_rank(pres, pt))
    return ranks


# -- fiber representatives --------------------------------------------------

def _diag(*d):
    return [[Fraction(d[i]) if i == j else Fraction(0) for j in range(3)] for i in range(3)]


# One constructed (S, t) per column of the fiber tables, with its label.
FIBER_REPRESENTATIVES = (
    ("rank 3, q_t != 0", _diag(1, 1, 1), (0, 0, 1), LABEL_P2P2),
    ("rank 3, q_t = 0, rank BSB 1", _diag(1, -1, 1), (1, 1, 0), LABEL_P22),
    ("rank 2, q_t != 0", _diag(1, 1, 0), (0, 0, 1), LABEL_P2P2),
    ("rank 2, q_t = 0, rank BSB 1", _diag(1, 1, 0), (1, 0, 0), LABEL_P22),
    ("rank 2, q_t = 0, rank BSB 0", [[0, 1, 0], [1, 0, 0], [0, 0, 0]], (1, 0, 0), LABEL_P1P3_Q4),
    ("rank 1, rank BSB 1", _diag(1, 0, 0), (0, 0, 1), LABEL_P22),
    ("rank 1, rank BSB 0", _diag(1, 0, 0), (1, 0, 0), LABEL_P1P3PRIME_Q4),
    ("t = 0, rank 3", _diag(1, 1, 1), (0, 0, 0), LABEL_P1P3PRIME_Q4),
    ("t = 0, rank 2", _diag(1, 1, 0), (0, 0, 0), LABEL_3P4_2Q5),
    ("t = 0, rank 1", _diag(1, 0, 0), (0, 0, 0), LABEL_Q4_DOUBLE),
    ("S = 0, t != 0", _diag(0, 0, 0), (1, 2, 3), LABEL_S0_T),
    ("S = 0, t = 0", _diag(0, 0, 0), (0, 0, 0), LABEL_S0_T0),
)


def fiber_table_mismatches() -> list[str]:
    return [name for name, s, t, label in FIBER_REPRESENTATIVES
            if fiber_invariants(s, t).label != label]


def fiber_twist_mismatches(twists: int, seed: int) -> list[str]:
    """Representatives whose label changes under a random GL3 twist."""
    from .keyvarieties import random_gl3
    rng = random.Random(seed)
    bad = []
    for _ in range(twists):
        g = random_gl3(rng)
        for name, s, t, label in FIBER_REPRESENTATIVES:
            s2, t2 = twist_base_point(g, s, t)
            if fiber_invariants(s2, t2).label != label:
                bad.append(name)
    return sorted(set(bad))
