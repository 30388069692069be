"""Embedded database of the 24 Fano classes and their section tables."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from .grading import WeightSystem, ws_from_free
from .keyvarieties import COORDS, Presentation, build_presentation
from .singcheck import QuotientType, SectionTable

SCHEMA_VERSION = 1

# Order in which non-structural coordinates are eliminated by generic sections.
_GENERIC_ORDER = ("q1", "q2", "q3", "s11", "s12", "s13", "s22", "s23", "s33", "t1", "t2", "t3")


class UnknownClassError(KeyError):
    pass


@dataclass(frozen=True)
class ClassRecord:
    grdb_no: int
    variant: str
    free: dict
    table_weights: dict
    ambient: tuple[int, ...]
    cuts: tuple[int, ...]
    basket: tuple[str, ...]
    case: int
    projection: str
    section_spec: dict
    lpc_targets: tuple[dict, ...]
    notes: tuple[str, ...] = field(default=())

    @classmethod
    def from_dict(cls, d: dict) -> "ClassRecord":
        return cls(int(d["grdb_no"]), d["variant"], dict(d["free"]), dict(d["table_weights"]),
                   tuple(d["ambient"]), tuple(d["cuts"]), tuple(d["basket"]), int(d["case"]),
                   d["projection"], dict(d["section"]), tuple(d["lpc"]), tuple(d.get("notes", ())))

    @property
    def weights(self) -> WeightSystem:
        f = self.free
        return ws_from_free(f["d0"], f["wp1"], f["wp2"], f["wp3"], f["wr"], f["wu"])

    def presentation(self) -> Presentation:
        return build_presentation(self.variant)

    def coordinates(self) -> tuple[str, ...]:
        return tuple(n for n in COORDS if not (self.variant == "Sigma13" and n == "s33"))

    @property
    def section_cuts(self) -> list[int]:
        """Degrees cutting the anticanonical surface: the threefold cuts plus one of weight 1."""
        return sorted(list(self.cuts) + [1])

    def section_table(self) -> SectionTable:
        w = self.weights.as_dict()
        if self.section_spec.get("kind") == "table":
            return SectionTable.from_rows([tuple(r) for r in self.section_spec["rows"]], w)
        return generic_section(self.coordinates(), w, self.section_cuts)


def _monomials(names: list[str], weights: dict, degree: int, start: int = 0):
    """Exponent-free monomial strings of the given weighted degree."""
    if degree == 0:
        yield []
        return
    for i in range(start, len(names)):
        wi = weights[names[i]]
        if 0 < wi <= degree:
            for rest in _monomials(names, weights, degree - wi, i):
                yield [names[i]] + rest


def generic_section(coords: tuple[str, ...], weights: dict, cuts: list[int]) -> SectionTable:
    """Rows eliminating, per cut degree, the next coordinate of that weight in a
    fixed order; each right-hand side is a general combination of monomials in
    the surviving coordinates."""
    eliminated: list[tuple[str, int]] = []
    taken = set()
    for a in sorted(cuts):
        for n in _GENERIC_ORDER:
            if n in coords and n not in taken and weights[n] == a:
                eliminated.append((n, a))
                taken.add(n)
                break
        else:
            raise ValueError(f"no coordinate of weight {a} left to eliminate")
    survivors = [n for n in coords if n not in taken]
    rows = []
    for k, (n, a) in enumerate(eliminated):
        terms = []
        for j, mono in enumerate(_monomials(survivors, weights, a)):
            terms.append(f"c{k}_{j}*" + "*".join(mono))
        rows.append((n, " + ".join(terms) if terms else "0"))
    return SectionTable.from_rows(rows, weights)


@lru_cache(maxsize=1)
def _raw_database() -> dict:
    text = resources.files("keyvar").joinpath("data/classes.json").read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported class database version {data.get('schema_version')}")
    return data


def class_numbers() -> list[int]:
    return [int(c["grdb_no"]) for c in _raw_database()["classes"]]


def load_class(grdb_no: int) -> ClassRecord:
    for c in _raw_database()["classes"]:
        if int(c["grdb_no"]) == int(grdb_no):
            return ClassRecord.from_dict(c)
    raise UnknownClassError(f"no class No.{grdb_no} in the database")


def load_all() -> list[ClassRecord]:
    return [ClassRecord.from_dict(c) for c in _raw_database()["classes"]]


def parse_basket_point(text: str) -> QuotientType:
    return QuotientType.parse(text)


def integrity_problems(rec: ClassRecord) -> list[str]:
    """Transcription checks that must hold for every record."""
    out: list[str] = []
    ws = rec.weights
    w = ws.as_dict()
    if w != {k: int(v) for k, v in rec.table_weights.items()}:
        diff = sorted(k for k in w if w[k] != rec.table_weights.get(k))
        out.append(f"weights from free parameters differ from the table at {diff}")
    n_coords = len(rec.coordinates())
    if len(rec.cuts) + len(rec.ambient) != n_coords:
        out.append(f"|cuts| + |ambient| = {len(rec.cuts) + len(rec.ambient)}, expected {n_coords}")
    if not ws.is_projectivizable(rec.variant):
        out.append("weights are not positive on the projectivized coordinates")
    for b in rec.basket:
        try:
            parse_basket_point(b)
        except ValueError as exc:
            out.append(str(exc))
    try:
        sec = rec.section_table()
    except ValueError as exc:
        return out + [f"section table: {exc}"]
    out += sec.check(w)
    if sec.cut_degrees != rec.section_cuts:
        out.append(f"section row weights {sec.cut_degrees} differ from cuts plus one {rec.section_cuts}")
    survivors = sorted(w[n] for n in rec.coordinates() if n not in sec.solved)
    expected = sorted(rec.ambient)
    expected.remove(1)
    if survivors != expected:
        out.append(f"surviving weights {survivors} differ from the ambient minus one weight-1 coordinate {expected}")
    for t in rec.lpc_targets:
        try:
            QuotientType.parse(t["expected"])
        except ValueError as exc:
            out.append(str(exc))
    return out


def record_summary(rec: ClassRecord) -> dict[str, Any]:
    return {"grdb_no": rec.grdb_no, "variant": rec.variant,
            "weights": rec.weights.as_dict(), "ambient": list(rec.ambient),
            "cuts": list(rec.cuts), "basket": list(rec.basket),
            "projection": rec.projection}
