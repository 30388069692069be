from __future__ import annotations

import dataclasses
import json
from importlib import resources

import jsonschema
import pytest

from keyvar.classdb import load_class
from keyvar.report import NOT_TABULATED, basket_coverage, emit_report, run_suite


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("keyvar").joinpath("data/report.schema.json").read_text())


@pytest.fixture(scope="module")
def full_report():
    return run_suite("all", seed=5)


def test_single_class_passes(schema):
    rep = run_suite(393, seed=1)
    assert rep["status"] == "pass" and "global" not in rep
    jsonschema.validate(rep, schema)


def test_full_report(full_report, schema):
    assert full_report["status"] == "pass"
    assert len(full_report["classes"]) == 24
    assert full_report["global"]["status"] == "pass"
    jsonschema.validate(full_report, schema)


def test_sampled_checks_are_labelled(full_report):
    kinds = {c["name"]: c["kind"] for c in full_report["global"]["checks"]}
    assert kinds["pfaffian_correspondence"] == "exact"
    assert kinds["jacobian_generic"] == "sampled-evidence"
    assert kinds["gl3_covariance"] == "sampled-evidence"


def test_determinism():
    a = emit_report(run_suite(1413, seed=9))
    b = emit_report(run_suite(1413, seed=9))
    assert a == b and '"seconds"' not in a


def test_timings_are_opt_in(schema):
    rep = run_suite(1413, seed=9, timings=True)
    assert all("seconds" in c for c in rep["classes"][0]["checks"])
    jsonschema.validate(rep, schema)


def test_parallel_matches_serial():
    recs = [load_class(n) for n in (393, 569, 24078)]
    serial = run_suite("subset", seed=2, records=recs)
    parallel = run_suite("subset", seed=2, records=recs, jobs=2)
    assert emit_report(serial) == emit_report(parallel)


def test_corrupted_record_fails():
    rec = load_class(393)
    bad = dataclasses.replace(rec, cuts=tuple(sorted(rec.cuts)[:-1]) + (8,))
    rep = run_suite("mutant", seed=1, records=[bad])
    assert rep["status"] == "fail"
    failed = {c["name"] for c in rep["classes"][0]["checks"] if c["status"] == "fail"}
    assert {"anticanonical", "integrity"} <= failed


def test_json_round_trip(full_report):
    assert json.loads(emit_report(full_report, "json")) == full_report


def test_markdown_has_one_row_per_class(full_report):
    md = emit_report(full_report, "md")
    for no in (360, 393, 24078):
        assert sum(1 for line in md.splitlines() if line.startswith(f"| {no} |")) == 1
    assert "schema 1" in md


def test_unknown_format(full_report):
    with pytest.raises(ValueError):
        emit_report(full_report, "xml")


def test_basket_coverage_of_360():
    cov = basket_coverage(load_class(360), {"p1-point": "1/7(2,5)", "p4-point": "1/6(1,5)"})
    assert [c["matched"] for c in cov] == [NOT_TABULATED, NOT_TABULATED, "p4-point", "p1-point"]
