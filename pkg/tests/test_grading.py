from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from keyvar.classdb import load_all, load_class
from keyvar.grading import (InhomogeneousError, WeightSystem, check_homogeneous,
                            relation_checks, ws_from_free, ws_validate)
from keyvar.keyvarieties import build_sigma13, build_sigma14


@st.composite
def free_params(draw):
    wp = sorted(draw(st.lists(st.integers(-3, 9), min_size=3, max_size=3)))
    return (draw(st.integers(-3, 14)), *wp, draw(st.integers(-3, 9)), draw(st.integers(-3, 14)))


@pytest.mark.parametrize("rec", load_all(), ids=lambda r: str(r.grdb_no))
def test_table_weights_reproduced(rec):
    assert rec.weights.as_dict() == rec.table_weights


@pytest.mark.parametrize("no,delta,k", [(393, 44, 37), (1218, 30, 27), (24078, 10, 11)])
def test_spot_values(no, delta, k):
    ws = load_class(no).weights
    assert (ws.delta, ws.k, ws.k_from_coordinates) == (delta, k, k)


def test_degrees_of_393():
    assert load_class(393).weights.degrees == (12, 13, 14, 15, 16, 15, 16, 17, 14)


def test_unordered_p_weights_rejected():
    with pytest.raises(ValueError):
        ws_from_free(10, 5, 4, 6, 7, 8)


def test_missing_weights_rejected():
    with pytest.raises(ValueError):
        WeightSystem.from_mapping({"p1": 1})


def test_json_round_trip():
    ws = load_class(569).weights
    assert WeightSystem.from_json(ws.to_json()) == ws


def test_s33_has_weight_zero_on_every_slice_class():
    for rec in load_all():
        if rec.variant == "Sigma13":
            assert rec.weights["s33"] == 0
            assert rec.weights.is_projectivizable("Sigma13")
            assert not rec.weights.is_projectivizable("Sigma14")


@given(free_params())
def test_relations_hold_for_every_free_choice(fp):
    ws = ws_from_free(*fp)
    assert all(relation_checks(ws).values())
    assert sum(ws.degrees) == 3 * ws.delta
    assert ws.k == ws.k_from_coordinates
    assert ws_validate(ws)["ok"]


@given(free_params())
def test_equations_homogeneous_for_every_free_choice(fp):
    ws = ws_from_free(*fp)
    degs = check_homogeneous(build_sigma14(), ws)
    assert tuple(degs.values()) == ws.degrees


def test_corrupted_weights_are_caught():
    ws = load_class(393).weights.as_dict()
    ws["u"] += 1
    bad = WeightSystem.from_mapping(ws)
    assert not ws_validate(bad)["ok"]
    with pytest.raises(InhomogeneousError):
        check_homogeneous(build_sigma14(), bad)


def test_slice_homogeneity_uses_zero_weight_for_s33():
    ws = load_class(1218).weights
    assert tuple(check_homogeneous(build_sigma13(), ws).values()) == ws.degrees
