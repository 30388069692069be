"""Weight systems on the 18 coordinates and the derived equation degrees."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .exactpoly import ANY_DEGREE
from .keyvarieties import COORDS, Presentation

FREE_FIELDS = ("d0", "wp1", "wp2", "wp3", "wr", "wu")


@dataclass(frozen=True)
class WeightSystem:
    """Integer weights of all 18 coordinates (negative values are allowed)."""

    weights: tuple[tuple[str, int], ...]

    @classmethod
    def from_mapping(cls, weights: Mapping[str, int]) -> "WeightSystem":
        missing = [n for n in COORDS if n not in weights]
        if missing:
            raise ValueError(f"weights missing for {missing}")
        return cls(tuple((n, int(weights[n])) for n in COORDS))

    def __getitem__(self, name: str) -> int:
        return dict(self.weights)[name]

    def as_dict(self) -> dict[str, int]:
        return dict(self.weights)

    # derived constants
    @property
    def d0(self) -> int:
        return self["p1"] + self["q1"]

    @property
    def sum_p(self) -> int:
        return self["p1"] + self["p2"] + self["p3"]

    @property
    def degrees(self) -> tuple[int, ...]:
        """Degrees (d0, ..., d8) of E1, ..., E9."""
        w = self.as_dict()
        d0 = self.d0
        return (d0,
                w["r"] + w["p1"], w["r"] + w["p2"], w["r"] + w["p3"],
                -d0 + self.sum_p + w["r"],
                w["u"] + w["p1"], w["u"] + w["p2"], w["u"] + w["p3"],
                2 * w["r"])

    @property
    def delta(self) -> int:
        return 2 * self["r"] + self["u"] + self.sum_p

    @property
    def k(self) -> int:
        return 3 * self.delta - 2 * self["r"] - 6 * self.d0 - self["u"]

    @property
    def k_from_coordinates(self) -> int:
        return sum(w for _, w in self.weights) - self.delta

    @property
    def negative(self) -> bool:
        return any(w < 0 for _, w in self.weights)

    def is_projectivizable(self, variant: str = "Sigma14") -> bool:
        """Positive weights everywhere, except ``s33`` which is 0 for Sigma13."""
        for n, w in self.weights:
            if variant == "Sigma13" and n == "s33":
                if w != 0:
                    return False
            elif w <= 0:
                return False
        return True

    def free_parameters(self) -> dict[str, int]:
        return {"d0": self.d0, "wp1": self["p1"], "wp2": self["p2"],
                "wp3": self["p3"], "wr": self["r"], "wu": self["u"]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, text: str) -> "WeightSystem":
        return cls.from_mapping(json.loads(text))


def ws_from_free(d0: int, wp1: int, wp2: int, wp3: int, wr: int, wu: int) -> WeightSystem:
    """The unique weight system with the given free parameters."""
    if not wp1 <= wp2 <= wp3:
        raise ValueError("expected w(p1) <= w(p2) <= w(p3)")
    wp = (wp1, wp2, wp3)
    wq = tuple(d0 - x for x in wp)
    w = {"p1": wp1, "p2": wp2, "p3": wp3, "q1": wq[0], "q2": wq[1], "q3": wq[2],
         "r": wr, "u": wu, "p4": 2 * wr - wu,
         "s12": wr - wq[2], "s13": wr - wq[1], "s23": wr - wq[0],
         "s11": wr + wp2 - wp1 - wq[2],
         "s22": wr + wp3 - wp2 - wq[0],
         "s33": wr + wp1 - wp3 - wq[1],
         "t1": wu + wp2 - wr - wq[2],
         "t2": wu + wp3 - wr - wq[0],
         "t3": wu + wp1 - wr - wq[1]}
    return WeightSystem.from_mapping(w)


def relation_checks(ws: WeightSystem) -> dict[str, bool]:
    """Each defining weight relation, evaluated on ``ws``."""
    w = ws.as_dict()
    d = ws.degrees
    return {
        "d0_balanced": w["p1"] + w["q1"] == w["p2"] + w["q2"] == w["p3"] + w["q3"],
        "s12": w["s12"] == w["r"] - w["q3"],
        "s13": w["s13"] == w["r"] - w["q2"],
        "s23": w["s23"] == w["r"] - w["q1"],
        "s11": w["s11"] == w["r"] + w["p2"] - w["p1"] - w["q3"],
        "s22": w["s22"] == w["r"] + w["p3"] - w["p2"] - w["q1"],
        "s33": w["s33"] == w["r"] + w["p1"] - w["p3"] - w["q2"],
        "p4": w["p4"] == 2 * w["r"] - w["u"],
        "t1": w["t1"] == w["u"] + w["p2"] - w["r"] - w["q3"],
        "t2": w["t2"] == w["u"] + w["p3"] - w["r"] - w["q1"],
        "t3": w["t3"] == w["u"] + w["p1"] - w["r"] - w["q2"],
        "degree_sum": sum(d) == 3 * ws.delta,
        "k_agree": ws.k == ws.k_from_coordinates,
    }


def ws_validate(ws: WeightSystem) -> dict:
    checks = relation_checks(ws)
    return {"checks": checks, "ok": all(checks.values()),
            "degrees": list(ws.degrees), "delta": ws.delta, "k": ws.k,
            "k_from_coordinates": ws.k_from_coordinates,
            "negative": ws.negative}


class InhomogeneousError(ValueError):
    pass


def check_homogeneous(pres: Presentation, ws: WeightSystem) -> dict[str, int]:
    """Degree of each equation; raises unless they are (d0, ..., d8) in order."""
    weights = ws.as_dict()
    expected = ws.degrees
    out = {}
    for (label, eq), want in zip(zip(pres.labels, pres.equations), expected):
        deg = eq.weighted_degree(weights)
        if deg is None:
            raise InhomogeneousError(f"{label} is not homogeneous for these weights")
        if deg != ANY_DEGREE and deg != want:
            raise InhomogeneousError(f"{label} has degree {deg}, expected {want}")
        out[label] = want if deg == ANY_DEGREE else deg
    return out


def torus_rescale_holds(pres: Presentation, ws: WeightSystem, point, lam) -> bool:
    """A point of ``pres`` stays on it after ``x -> lam**w(x) * x``."""
    from .keyvarieties import torus_rescale
    return pres.vanishes_at(torus_rescale(point, ws.as_dict(), lam))
