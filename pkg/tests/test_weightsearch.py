from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from keyvar.classdb import load_all
from keyvar.grading import ws_from_free
from keyvar.weightsearch import search_weights


@pytest.mark.parametrize("rec", load_all(), ids=lambda r: str(r.grdb_no))
def test_round_trip(rec):
    found = search_weights(rec.weights.degrees)
    assert any(x["weights"] == rec.weights for x in found)


def test_results_are_unique_and_match_degrees():
    degs = [12, 13, 14, 15, 16, 15, 16, 17, 14]
    found = search_weights(degs)
    keys = [tuple(x["weights"].free_parameters().values()) for x in found]
    assert len(keys) == len(set(keys)) and keys == sorted(keys)
    assert all(sorted(x["weights"].degrees) == sorted(degs) for x in found)


def test_positive_only_filter():
    degs = [12, 13, 14, 15, 16, 15, 16, 17, 14]
    every = search_weights(degs)
    positive = search_weights(degs, allow_negative=False)
    assert all(not x["negative"] for x in positive)
    assert len(positive) == sum(1 for x in every if not x["negative"])


def test_degree_sum_not_divisible_by_three():
    assert search_weights([1, 1, 1, 1, 1, 1, 1, 1, 2]) == []


def test_wrong_length():
    with pytest.raises(ValueError):
        search_weights([1, 2, 3])


@given(st.integers(-2, 12), st.lists(st.integers(-2, 8), min_size=3, max_size=3),
       st.integers(-2, 8), st.integers(-2, 12))
def test_any_weight_system_is_recovered(d0, wp, wr, wu):
    ws = ws_from_free(d0, *sorted(wp), wr, wu)
    assert any(x["weights"] == ws for x in search_weights(ws.degrees))
