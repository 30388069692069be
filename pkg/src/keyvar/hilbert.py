"""Graded resolution shifts, Hilbert numerator and Hilbert series."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactpoly import Polynomial, Universe
from .grading import WeightSystem
from .keyvarieties import COORDS

T = Universe(("t",))


@dataclass(frozen=True)
class ResolutionProfile:
    P0: tuple[int, ...]
    P1: tuple[int, ...]
    P2: tuple[int, ...]
    P3: tuple[int, ...]
    P4: tuple[int, ...]

    def as_dict(self) -> dict[str, list[int]]:
        return {k: list(getattr(self, k)) for k in ("P0", "P1", "P2", "P3", "P4")}


def resolution_profile(ws: WeightSystem) -> ResolutionProfile:
    w = ws.as_dict()
    d = ws.degrees
    d0, delta, wr, wu = d[0], ws.delta, w["r"], w["u"]
    wp = [w["p1"], w["p2"], w["p3"]]
    p2 = ([wr + d0, wu + d0]
          + [wr + wu + x for x in wp]
          + [2 * wr + x for x in wp]
          + [delta - 2 * wr - x for x in wp]
          + [delta - wr - wu - x for x in wp]
          + [delta - wr - d0, delta - wu - d0])
    return ResolutionProfile((0,), tuple(d), tuple(p2),
                             tuple(delta - x for x in d), (delta,))


def numerator_coefficients(ws: WeightSystem) -> dict[int, int]:
    prof = resolution_profile(ws)
    c: Counter = Counter()
    for sign, shifts in ((1, prof.P0), (-1, prof.P1), (1, prof.P2),
                         (-1, prof.P3), (1, prof.P4)):
        for e in shifts:
            c[e] += sign
    return {e: v for e, v in sorted(c.items()) if v}


def hilbert_numerator(ws: WeightSystem) -> Polynomial:
    coeffs = numerator_coefficients(ws)
    if any(e < 0 for e in coeffs):
        raise ValueError("numerator has negative exponents; weights are not valid")
    return Polynomial(T, {(e,): c for e, c in coeffs.items()})


def is_palindromic(ws: WeightSystem) -> bool:
    """``N(t) == t^delta * N(1/t)``."""
    c = numerator_coefficients(ws)
    return all(c.get(ws.delta - e, 0) == v for e, v in c.items())


def denominator_weights(ws: WeightSystem, variant: str) -> list[int]:
    if variant == "Sigma14":
        return [ws[n] for n in COORDS]
    if variant == "Sigma13":
        return [ws[n] for n in COORDS if n != "s33"]
    raise ValueError(f"unknown variant {variant!r}")


def hilbert_series(ws: WeightSystem, variant: str, cuts: Iterable[int], terms: int) -> list[int]:
    """Coefficients c_0..c_terms of ``N(t) prod(1 - t^a) / prod(1 - t^w)``."""
    if terms < 0:
        raise ValueError("terms must be non-negative")
    if variant == "Sigma13" and ws["s33"] != 0:
        raise ValueError("the Sigma13 variant needs w(s33) = 0")
    den = denominator_weights(ws, variant)
    bad = [w for w in den if w <= 0]
    if bad:
        raise ValueError(f"non-positive coordinate weight in denominator: {bad}")
    n = terms + 1
    series = [0] * n
    for e, v in numerator_coefficients(ws).items():
        if 0 <= e < n:
            series[e] += v
    for a in cuts:
        if a <= 0:
            raise ValueError("cut degrees must be positive")
        for i in range(n - 1, a - 1, -1):
            series[i] -= series[i - a]
    for w in den:
        for i in range(w, n):
            series[i] += series[i - w]
    return series


def series_divide(num: Sequence[int], den: Sequence[int], terms: int) -> list[int]:
    """Power series quotient num/den to ``terms`` coefficients (den[0] == +-1)."""
    if not den or den[0] not in (1, -1):
        raise ValueError("denominator must have unit constant term")
    out = []
    for i in range(terms + 1):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc * den[0])
    return out


def anticanonical_defect(ws: WeightSystem, cuts: Iterable[int]) -> int:
    """``k - sum(cuts)``; a threefold with ``K = O(-1)`` has defect 1."""
    return ws.k - sum(cuts)


def anticanonical_check(record) -> bool:
    return anticanonical_defect(record.weights, record.cuts) == 1


def genus(record) -> int:
    """``h^0(-K) - 2``, read from the coefficient of t in the Hilbert series."""
    if not anticanonical_check(record):
        raise ValueError(f"class {record.grdb_no} fails the K = O(-1) check")
    return hilbert_series(record.weights, record.variant, record.cuts, 1)[1] - 2
