"""Equation systems of the key varieties and the identities relating them.

The 14-dimensional key variety lives in affine 18-space with coordinates
``p1..p4, q1..q3, r, u, s11..s33, t1..t3``.  It is cut out by nine
equations E1..E9; the 13-dimensional variety is its slice ``s33 = 1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import symmatrix as sm
from .exactpoly import Polynomial, Universe, parse_polynomial

COORDS = ("p1", "p2", "p3", "p4", "q1", "q2", "q3", "r", "u",
          "s11", "s12", "s13", "s22", "s23", "s33", "t1", "t2", "t3")
SIGMA = Universe(COORDS)

UPSILON_COORDS = ("x1", "x2", "y1", "y2", "z", "s1", "s2", "s3", "s4",
                  "t1", "t2", "t3", "t4", "p1", "p2", "p3", "p4", "u")
UPSILON = Universe(UPSILON_COORDS)

Point = dict  # coordinate name -> Fraction


@dataclass(frozen=True)
class Presentation:
    """A named, ordered list of labeled equations over a universe."""

    name: str
    universe: Universe
    labels: tuple[str, ...]
    equations: tuple[Polynomial, ...]
    fixed: tuple[tuple[str, Fraction], ...] = ()  # coordinates pinned to constants

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("equation labels must be unique")
        if len(self.labels) != len(self.equations):
            raise ValueError("one label per equation")
        if any(e.is_zero() for e in self.equations):
            raise ValueError("equations must be nonzero")

    def __getitem__(self, label: str) -> Polynomial:
        return self.equations[self.labels.index(label)]

    def __iter__(self):
        return iter(self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    @property
    def fixed_map(self) -> dict[str, Fraction]:
        return dict(self.fixed)

    @property
    def free_coordinates(self) -> tuple[str, ...]:
        pinned = self.fixed_map
        return tuple(n for n in self.universe.names if n not in pinned)

    def evaluate(self, point: Mapping[str, Fraction]) -> list[Fraction]:
        full = {**point, **self.fixed_map}
        return [e.evaluate(full) for e in self.equations]

    def vanishes_at(self, point: Mapping[str, Fraction]) -> bool:
        return all(v == 0 for v in self.evaluate(point))

    def replace(self, label: str, poly: Polynomial) -> "Presentation":
        eqs = list(self.equations)
        eqs[self.labels.index(label)] = poly
        return Presentation(self.name, self.universe, self.labels, tuple(eqs), self.fixed)


# -- building blocks ----------------------------------------------------------

def _v(name: str) -> Polynomial:
    return SIGMA.var(name)


def vec_p() -> list[Polynomial]:
    return [_v("p1"), _v("p2"), _v("p3")]


def vec_q() -> list[Polynomial]:
    return [_v("q1"), _v("q2"), _v("q3")]


def vec_t() -> list[Polynomial]:
    return [_v("t1"), _v("t2"), _v("t3")]


def skew3(v: Sequence) -> sm.Matrix:
    """The skew matrix with ``skew3(v) @ w == v x w``."""
    zero = v[0] * 0
    return [[zero, -v[2], v[1]],
            [v[2], zero, -v[0]],
            [-v[1], v[0], zero]]


def matrix_a() -> sm.Matrix:
    return skew3(vec_q())


def matrix_s() -> sm.Matrix:
    s = {k: _v(k) for k in ("s11", "s12", "s13", "s22", "s23", "s33")}
    return [[s["s11"], s["s12"], s["s13"]],
            [s["s12"], s["s22"], s["s23"]],
            [s["s13"], s["s23"], s["s33"]]]


def matrix_b() -> sm.Matrix:
    return skew3(vec_t())


def build_F() -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """``(F1, F2, F3) = (rI - AS) A t`` and ``F4 = -(r^2 + q^T adj(S) q)``."""
    r = _v("r")
    a, s, t, q = matrix_a(), matrix_s(), vec_t(), vec_q()
    m = sm.add(sm.identity(3, r), sm.scale(sm.matmul(a, s), -1))
    f = sm.matvec(m, sm.matvec(a, t))
    f4 = -(r * r + sm.dot(q, sm.matvec(sm.adjugate(s), q)))
    return f[0], f[1], f[2], f4


def build_sigma14() -> Presentation:
    p, q, t = vec_p(), vec_q(), vec_t()
    r, u, p4 = _v("r"), _v("u"), _v("p4")
    a, s = matrix_a(), matrix_s()
    e1 = sm.dot(p, q)
    m = sm.add(sm.identity(3, r), sm.matmul(a, s))
    e234 = [x + p4 * y for x, y in zip(sm.matvec(m, p), sm.matvec(a, t))]
    e5 = sm.dot(p, sm.matvec(s, p)) + p4 * sm.dot(p, t)
    f1, f2, f3, f4 = build_F()
    eqs = (e1, *e234, e5, u * p[0] - f1, u * p[1] - f2, u * p[2] - f3, u * p4 - f4)
    labels = tuple(f"E{i}" for i in range(1, 10))
    return Presentation("Sigma14", SIGMA, labels, eqs)


def specialize_s33(pres: Presentation) -> Presentation:
    """The 13-dimensional slice ``s33 = 1``."""
    if pres.name != "Sigma14":
        raise ValueError("specialize_s33 expects the Sigma14 presentation")
    eqs = tuple(e.substitute({"s33": 1}) for e in pres.equations)
    return Presentation("Sigma13", pres.universe, pres.labels, eqs, (("s33", Fraction(1)),))


def build_sigma13() -> Presentation:
    return specialize_s33(build_sigma14())


def build_presentation(variant: str) -> Presentation:
    if variant == "Sigma14":
        return build_sigma14()
    if variant == "Sigma13":
        return build_sigma13()
    raise ValueError(f"unknown variant {variant!r}")


# -- Tom format ---------------------------------------------------------------

def build_tom_matrix() -> sm.Matrix:
    p = vec_p()
    s, p4 = matrix_s(), _v("p4")
    q1, q2, q3 = vec_q()
    t1, t2, t3 = vec_t()
    a25 = sm.dot([s[0][2], s[1][2], s[2][2]], p) + p4 * t3
    a35 = -sm.dot([s[0][1], s[1][1], s[1][2]], p) - p4 * t2
    a45 = sm.dot([s[0][0], s[0][1], s[0][2]], p) + p4 * t1
    upper = [[q3, -q2, q1, _v("r")],
             [p[0], p[1], a25],
             [p[2], a35],
             [a45]]
    return sm.skew_from_upper(upper, SIGMA.zero())


def pfaffian_correspondence(matrix: sm.Matrix | None = None,
                            pres: Presentation | None = None) -> list[tuple[int, str, int]]:
    """Match each signed 4x4 Pfaffian to one of E1..E5.

    Returns ``(pfaffian index, equation label, sign)`` with 1-based indices,
    where index ``i`` means row and column ``i`` deleted.  Raises
    ``ValueError`` unless the matching is perfect.
    """
    matrix = build_tom_matrix() if matrix is None else matrix
    pres = build_sigma14() if pres is None else pres
    targets = {lab: pres[lab] for lab in ("E1", "E2", "E3", "E4", "E5")}
    out = []
    used = set()
    for i, pf in enumerate(sm.sub_pfaffians(matrix), start=1):
        hit = None
        for lab, eq in targets.items():
            if lab in used or pf.is_zero():
                continue
            if pf == eq:
                hit = (lab, 1)
            elif pf == -eq:
                hit = (lab, -1)
            if hit:
                break
        if hit is None:
            raise ValueError(f"no matching: Pfaffian {i} matches none of E1..E5")
        used.add(hit[0])
        out.append((i, hit[0], hit[1]))
    return out


# -- charts -------------------------------------------------------------------

_CHART_TEXT = {
    "p1": {
        "q1": "-p2*q2 - p3*q3",
        "r": ("q3*s12 - q2*s13 + p2*q3*s22 - p2*q2*s23 + p3*q3*s23 - p3*q2*s33"
              " + p4*q3*t2 - p4*q2*t3"),
        "u": ("q3^2*s22*t1 - 2*q2*q3*s23*t1 + q2^2*s33*t1 - 2*q3^2*s12*t2"
              " + 2*q2*q3*s13*t2 - p2*q3^2*s22*t2 - 2*p3*q3^2*s23*t2 + p2*q2^2*s33*t2"
              " + 2*p3*q2*q3*s33*t2 - p4*q3^2*t2^2 + 2*q2*q3*s12*t3 - 2*q2^2*s13*t3"
              " + 2*p2*q2*q3*s22*t3 + p3*q3^2*s22*t3 - 2*p2*q2^2*s23*t3"
              " - p3*q2^2*s33*t3 + 2*p4*q2*q3*t2*t3 - p4*q2^2*t3^2"),
        "s11": ("-2*p2*s12 - 2*p3*s13 - p2^2*s22 - 2*p2*p3*s23 - p3^2*s33 - p4*t1"
                " - p2*p4*t2 - p3*p4*t3"),
    },
    "p2": {
        "q2": "-p1*q1 - p3*q3",
        "r": ("p3*q1*s33 - p1*q3*s11 - q3*s12 + p1*q1*s13 - p3*q3*s13 + q1*s23"
              " - p4*q3*t1 + p4*q1*t3"),
        "u": ("p1*q1^2*s33*t1 + 2*p3*q1*q3*s33*t1 - p1*q3^2*s11*t1 - 2*q3^2*s12*t1"
              " - 2*p3*q3^2*s13*t1 + 2*q1*q3*s23*t1 - p4*q3^2*t1^2 + q1^2*s33*t2"
              " + q3^2*s11*t2 - 2*q1*q3*s13*t2 - p3*q1^2*s33*t3 + 2*p1*q1*q3*s11*t3"
              " + p3*q3^2*s11*t3 + 2*q1*q3*s12*t3 - 2*p1*q1^2*s13*t3 - 2*q1^2*s23*t3"
              " + 2*p4*q1*q3*t1*t3 - p4*q1^2*t3^2"),
        "s22": ("-p3^2*s33 - p1^2*s11 - 2*p1*s12 - 2*p1*p3*s13 - 2*p3*s23 - p1*p4*t1"
                " - p4*t2 - p3*p4*t3"),
    },
    "u": {
        "p1": ("q3^2*s22*t1 - 2*q2*q3*s23*t1 + q2^2*s33*t1 - q3*r*t2 - q3^2*s12*t2"
               " + q2*q3*s13*t2 + q1*q3*s23*t2 - q1*q2*s33*t2 + q2*r*t3 + q2*q3*s12*t3"
               " - q2^2*s13*t3 - q1*q3*s22*t3 + q1*q2*s23*t3"),
        "p2": ("q3*r*t1 - q3^2*s12*t1 + q2*q3*s13*t1 + q1*q3*s23*t1 - q1*q2*s33*t1"
               " + q3^2*s11*t2 - 2*q1*q3*s13*t2 + q1^2*s33*t2 - q1*r*t3 - q2*q3*s11*t3"
               " + q1*q3*s12*t3 + q1*q2*s13*t3 - q1^2*s23*t3"),
        "p3": ("-q2*r*t1 + q2*q3*s12*t1 - q2^2*s13*t1 - q1*q3*s22*t1 + q1*q2*s23*t1"
               " + q1*r*t2 - q2*q3*s11*t2 + q1*q3*s12*t2 + q1*q2*s13*t2 - q1^2*s23*t2"
               " + q2^2*s11*t3 - 2*q1*q2*s12*t3 + q1^2*s22*t3"),
        "p4": ("-r^2 + q3^2*s12^2 - 2*q2*q3*s12*s13 + q2^2*s13^2 - q3^2*s11*s22"
               " + 2*q1*q3*s13*s22 + 2*q2*q3*s11*s23 - 2*q1*q3*s12*s23 - 2*q1*q2*s13*s23"
               " + q1^2*s23^2 - q2^2*s11*s33 + 2*q1*q2*s12*s33 - q1^2*s22*s33"),
    },
}


@dataclass(frozen=True)
class Chart:
    """Open chart ``{x != 0}`` normalized by ``x = 1`` and solved explicitly."""

    chart_id: str
    normalized: str
    solved: dict = field(hash=False)  # name -> Polynomial in the free variables
    free: tuple[str, ...] = ()

    def substitution(self) -> dict:
        return {self.normalized: 1, **self.solved}

    def point(self, values: Mapping[str, Fraction]) -> Point:
        """Complete an assignment of the free variables to a chart point."""
        base = {n: Fraction(values[n]) for n in self.free}
        base[self.normalized] = Fraction(1)
        for n, poly in self.solved.items():
            base[n] = poly.evaluate(base)
        return base


def chart(chart_id: str) -> Chart:
    if chart_id not in _CHART_TEXT:
        raise ValueError(f"unknown chart {chart_id!r}; expected one of {sorted(_CHART_TEXT)}")
    solved = {n: parse_polynomial(text, SIGMA).substitute({chart_id: 1})
              for n, text in _CHART_TEXT[chart_id].items()}
    free = tuple(n for n in COORDS if n != chart_id and n not in solved)
    return Chart(chart_id, chart_id, solved, free)


def verify_chart_identity(pres: Presentation, ch: Chart) -> bool:
    """True iff every equation vanishes identically on the chart."""
    fixed = pres.fixed_map
    sub = {k: v.substitute(fixed) if isinstance(v, Polynomial) and fixed else v
           for k, v in ch.substitution().items()}
    sub.update({k: v for k, v in fixed.items() if k not in sub})
    return all(e.substitute(sub).is_zero() for e in pres.equations)


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    """Small random rational: an integer in [-9, 9] over 1, 2 or 3."""
    while True:
        x = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
        if x or not nonzero:
            return x


def chart_sample(ch: Chart | str, seed: int | random.Random,
                 fixed: Mapping[str, Fraction] | None = None) -> Point:
    """Seeded random point of the 14-dimensional variety on a chart.

    ``fixed`` pins free variables, e.g. ``{"s33": 1}`` for the 13-dimensional
    slice.
    """
    ch = chart(ch) if isinstance(ch, str) else ch
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    fixed = fixed or {}
    values = {n: Fraction(fixed[n]) if n in fixed else random_rational(rng) for n in ch.free}
    return ch.point(values)


def torus_rescale(point: Mapping[str, Fraction], weights: Mapping[str, int],
                  lam: Fraction | int) -> Point:
    """Apply ``x -> lam**w(x) * x`` coordinatewise."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("torus parameter must be nonzero")
    return {n: v * lam ** weights[n] for n, v in point.items()}


# -- the q1 = 1 Pfaffian chart ------------------------------------------------

_Q1PF_UPPER = [
    ["-u", "r - (s23 - q2*s13 - q3*s12 + q2*q3*s11)", "-s33 + 2*q3*s13 - q3^2*s11",
     "-t3 + q3*t1"],
    ["s22 - 2*q2*s12 + q2^2*s11", "r + (s23 - q2*s13 - q3*s12 + q2*q3*s11)", "t2 - q2*t1"],
    ["p4", "-p3"],
    ["p2"],
]


def q1_pfaffian_matrix() -> sm.Matrix:
    upper = [[parse_polynomial(x, SIGMA) for x in row] for row in _Q1PF_UPPER]
    return sm.skew_from_upper(upper, SIGMA.zero())


# Weights of No.24078: every coordinate has weight 1 except r (2) and u (3).
Q1_RESCALE_WEIGHTS = {n: 1 for n in COORDS} | {"r": 2, "u": 3}


def verify_q1_chart_pfaffians(samples: int, seed: int = 0,
                              matrix: sm.Matrix | None = None) -> bool:
    """Sub-Pfaffians of the q1-chart matrix vanish at sampled points with q1 = 1."""
    matrix = q1_pfaffian_matrix() if matrix is None else matrix
    pfs = sm.sub_pfaffians(matrix)
    rng = random.Random(seed)
    ch = chart("u")
    done = 0
    while done < samples:
        pt = chart_sample(ch, rng)
        if pt["q1"] == 0:
            continue
        pt = torus_rescale(pt, Q1_RESCALE_WEIGHTS, 1 / pt["q1"])
        if any(pf.evaluate(pt) != 0 for pf in pfs):
            return False
        done += 1
    return True


# -- the projection format of Section 6 ---------------------------------------

def build_xi() -> Presentation:
    f1, f2, f3, f4 = build_F()
    return Presentation("Xi", SIGMA, ("E7", "E9"),
                        (_v("u") * _v("p2") - f2, _v("u") * _v("p4") - f4))


def _xi_minors() -> dict[str, Polynomial]:
    v = {n: _v(n) for n in COORDS}
    rp = v["r"] - (v["s12"] * v["q3"] - v["s23"] * v["q1"])
    q1p = v["q1"] - v["s13"] * v["q3"]
    s11p = -v["s11"] + v["s13"] ** 2
    rows = [[q1p, rp, s11p * v["q3"], s11p * v["q2"]],
            [v["q3"], v["q2"], q1p, rp]]
    return _two_by_four_minors(rows)


def _two_by_four_minors(rows) -> dict[str, Polynomial]:
    out = {}
    for i in range(4):
        for j in range(i + 1, 4):
            out[f"{i + 1}{j + 1}"] = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
    return out


def xi_rewrite_sides() -> list[tuple[Polynomial, Polynomial]]:
    """Pairs (F2, Delta-combination) and (F4, Delta-combination) on ``s33 = 1``."""
    v = {n: _v(n) for n in COORDS}
    d = _xi_minors()
    t1p = v["s13"] * v["t3"] - v["t1"]
    s12p = 2 * (v["s12"] - v["s13"] * v["s23"])
    rhs2 = t1p * d["12"] + v["t2"] * d["13"] - v["t3"] * d["23"]
    rhs4 = s12p * d["12"] - v["s22"] * d["13"] + 2 * v["s23"] * d["23"] - d["24"]
    _, f2, _, f4 = build_F()
    return [(f2.substitute({"s33": 1}), rhs2), (f4.substitute({"s33": 1}), rhs4)]


def verify_xi_rewrite(sides: list | None = None) -> bool:
    sides = xi_rewrite_sides() if sides is None else sides
    return all((lhs - rhs).is_zero() for lhs, rhs in sides)


# -- the variety Upsilon ------------------------------------------------------

@dataclass(frozen=True)
class UpsilonPresentation:
    presentation: Presentation
    five_rel: sm.Matrix
    m1: sm.Matrix
    m3: sm.Matrix
    minors: dict
    aux: dict


def build_upsilon14() -> UpsilonPresentation:
    v = {n: UPSILON.var(n) for n in UPSILON_COORDS}
    x1, x2, y1, y2, z = v["x1"], v["x2"], v["y1"], v["y2"], v["z"]
    s = [v["s1"], v["s2"], v["s3"], v["s4"]]
    t = [v["t1"], v["t2"], v["t3"], v["t4"]]
    p1, p2, p3, p4, u = v["p1"], v["p2"], v["p3"], v["p4"], v["u"]
    d = _two_by_four_minors([[y1, y2, z * x1, z * x2], [x1, x2, y1, y2]])
    pairs = ("12", "13", "23", "24")
    c1 = u * p2 - sum((ti * d[k] for ti, k in zip(t, pairs)), UPSILON.zero())
    c2 = u * p4 - sum((si * d[k] for si, k in zip(s, pairs)), UPSILON.zero())
    half = Fraction(1, 2)
    a12 = p4 * t[0] - p2 * s[0]
    b11 = p2 * s[1] - p4 * t[1]
    b12 = half * (p2 * s[2] - p4 * t[2])
    b22 = p2 * s[3] - p4 * t[3]
    five = sm.skew_from_upper([
        [x1, x2, y1, y2],
        [-p1, -b22, p3 + b12],
        [-p3 + b12, -b11],
        [-z * p1 - a12],
    ], UPSILON.zero())
    m1 = sm.skew_from_upper([
        [-x1 ** 2, -x1 * x2, -x2 ** 2],
        [-x1 * y1, -x1 * y2 - x2 * y1],
        [-x2 * y2],
    ], UPSILON.zero())
    m3 = sm.skew_from_upper([
        [x1 * y1, half * (x1 * y2 + x2 * y1), x2 * y2],
        [half * (y1 ** 2 + z * x1 ** 2), y1 * y2 + z * x1 * x2],
        [half * (y2 ** 2 + z * x2 ** 2)],
    ], UPSILON.zero())
    r1 = p1 * u + sm.dot(t, sm.matvec(m1, s))
    r3 = p3 * u + sm.dot(t, sm.matvec(m3, s))
    pfs = sm.sub_pfaffians(five)
    eqs = (c1, c2, *pfs, r1, r3)
    labels = ("codim2_p2", "codim2_p4", "pf1", "pf2", "pf3", "pf4", "pf5", "rel_p1", "rel_p3")
    pres = Presentation("Upsilon14", UPSILON, labels, eqs)
    return UpsilonPresentation(pres, five, m1, m3, d,
                               {"A12": a12, "B11": b11, "B12": b12, "B22": b22})


def upsilon_codim2_relation(up: UpsilonPresentation) -> tuple[Polynomial, Polynomial]:
    """The relation ``-A12*D12 + B11*D13 + 2*B12*D23 + B22*D24`` and the
    combination ``p4*codim2_p2 - p2*codim2_p4`` it should equal up to sign."""
    d, a = up.minors, up.aux
    rel = -a["A12"] * d["12"] + a["B11"] * d["13"] + 2 * a["B12"] * d["23"] + a["B22"] * d["24"]
    p2, p4 = UPSILON.var("p2"), UPSILON.var("p4")
    pres = up.presentation
    return rel, p4 * pres["codim2_p2"] - p2 * pres["codim2_p4"]


_UPSILON_MAP_TEXT = {
    "p1": "p1", "p2": "p2", "p4": "p4", "u": "u", "t2": "t2",
    "t1": "s13*t3 - t1", "t3": "-t3", "t4": "0",
    "s1": "2*(s12 - s13*s23)", "s2": "-s22", "s3": "2*s23", "s4": "-1",
    "x1": "q3", "x2": "q2", "y1": "q1 - s13*q3", "y2": "r - (s12*q3 - q1*s23)",
    "z": "-s11 + s13^2", "p3": "p3 + p1*s13 + p2*s23 + 1/2*p4*t3",
}


def sigma13_to_upsilon_map() -> dict[str, Polynomial]:
    """Upsilon coordinate -> polynomial in the Sigma13 coordinates."""
    return {k: parse_polynomial(text, SIGMA) for k, text in _UPSILON_MAP_TEXT.items()}


def map_point(mapping: Mapping[str, Polynomial], point: Mapping[str, Fraction]) -> Point:
    return {k: poly.evaluate(point) for k, poly in mapping.items()}


def verify_upsilon_embedding(samples: int, seed: int = 0,
                             mapping: Mapping[str, Polynomial] | None = None,
                             up: UpsilonPresentation | None = None) -> bool:
    mapping = sigma13_to_upsilon_map() if mapping is None else mapping
    up = build_upsilon14() if up is None else up
    rng = random.Random(seed)
    ch = chart("p1")
    for _ in range(samples):
        pt = chart_sample(ch, rng, fixed={"s33": 1})
        if not up.presentation.vanishes_at(map_point(mapping, pt)):
            return False
    return True


# -- GL3 action ---------------------------------------------------------------

def _as_fraction_matrix(g) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in row] for row in g]
    if sm.shape(m) != (3, 3):
        raise ValueError("g must be 3x3")
    return m


def sym_entries(s: sm.Matrix) -> dict[str, Fraction]:
    return {"s11": s[0][0], "s12": s[0][1], "s13": s[0][2],
            "s22": s[1][1], "s23": s[1][2], "s33": s[2][2]}


def point_matrix_s(point: Mapping[str, Fraction]) -> list[list[Fraction]]:
    g = point.get
    return [[g("s11"), g("s12"), g("s13")],
            [g("s12"), g("s22"), g("s23")],
            [g("s13"), g("s23"), g("s33")]]


def gl3_act(g, point: Mapping[str, Fraction]) -> Point:
    """Image of a point under ``g`` in GL3 (left action)."""
    g = _as_fraction_matrix(g)
    det = sm.determinant(g)
    if det == 0:
        raise ValueError("g is singular")
    gd = sm.adjugate(sm.transpose(g))  # (tg)^dagger
    gdag = sm.adjugate(g)
    p = sm.matvec(g, [point["p1"], point["p2"], point["p3"]])
    q = sm.matvec(gd, [point["q1"], point["q2"], point["q3"]])
    t = sm.matvec(gd, [point["t1"], point["t2"], point["t3"]])
    s = sm.matmul(sm.matmul(gd, point_matrix_s(point)), gdag)
    out = {"p1": p[0], "p2": p[1], "p3": p[2], "q1": q[0], "q2": q[1], "q3": q[2],
           "t1": t[0], "t2": t[1], "t3": t[2],
           "p4": det * point["p4"], "r": det ** 2 * point["r"], "u": det ** 3 * point["u"]}
    out.update(sym_entries(s))
    return out


def gl3_action(g) -> dict[str, Polynomial]:
    """The substitution x -> (g.x) as polynomials with numeric coefficients."""
    g = _as_fraction_matrix(g)
    basis = {n: SIGMA.var(n) for n in COORDS}
    # the action is linear in each coordinate block, so push the symbolic point
    det = sm.determinant(g)
    if det == 0:
        raise ValueError("g is singular")
    gd = sm.adjugate(sm.transpose(g))
    gdag = sm.adjugate(g)
    p = sm.matvec(g, vec_p())
    q = sm.matvec(gd, vec_q())
    t = sm.matvec(gd, vec_t())
    s = sm.matmul(sm.matmul(gd, matrix_s()), gdag)
    out = {"p1": p[0], "p2": p[1], "p3": p[2], "q1": q[0], "q2": q[1], "q3": q[2],
           "t1": t[0], "t2": t[1], "t3": t[2],
           "p4": det * basis["p4"], "r": det ** 2 * basis["r"], "u": det ** 3 * basis["u"]}
    out.update(sym_entries(s))
    return out


def _numeric_blocks(point):
    q = [point["q1"], point["q2"], point["q3"]]
    s = point_matrix_s(point)
    return skew3(q), sm.adjugate(s)


def gl3_covariance_holds(g, point: Mapping[str, Fraction], fs=None) -> bool:
    """Check A, adj(S), F and F4 transform as stated at one point."""
    g = _as_fraction_matrix(g)
    det = sm.determinant(g)
    fs = build_F() if fs is None else fs
    img = gl3_act(g, point)
    a0, sd0 = _numeric_blocks(point)
    a1, sd1 = _numeric_blocks(img)
    gt = sm.transpose(g)
    if a1 != sm.matmul(sm.matmul(g, a0), gt):
        return False
    if sd1 != sm.scale(sm.matmul(sm.matmul(g, sd0), gt), det ** 2):
        return False
    f0 = [f.evaluate(point) for f in fs]
    f1 = [f.evaluate(img) for f in fs]
    if f1[:3] != [det ** 3 * x for x in sm.matvec(g, f0[:3])]:
        return False
    return f1[3] == det ** 4 * f0[3]


def verify_gl3(samples: int, seed: int = 0, gs: Sequence | None = None) -> bool:
    """Sampled points stay on the variety under g and the covariance identities hold."""
    rng = random.Random(seed)
    if gs is None:
        gs = [[[1, 0, 0], [0, 1, 0], [0, 0, 2]]] + [random_gl3(rng) for _ in range(2)]
    pres = build_sigma14()
    fs = build_F()
    ch = chart("p1")
    for _ in range(samples):
        pt = chart_sample(ch, rng)
        for g in gs:
            if not pres.vanishes_at(gl3_act(g, pt)):
                return False
            if not gl3_covariance_holds(g, pt, fs):
                return False
    return True


def random_gl3(rng: random.Random) -> list[list[Fraction]]:
    while True:
        g = [[random_rational(rng) for _ in range(3)] for _ in range(3)]
        if sm.determinant(g) != 0:
            return g
