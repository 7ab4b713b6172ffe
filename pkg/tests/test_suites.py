"""Verification suite envelopes and canonical report serialization."""

import json
import math
from fractions import Fraction

import pytest

from cclab.suites import SUITES, canonical_report_json, run_suite

# params that shrink each suite enough for a quick smoke pass; the full
# sizes run in test_acceptance.py
SMALL_PARAMS = {
    "gap-algebra": {"pairs": 25},
    "compiler": {"instances": 10},
    "amplifier-bounds": {"max_k": 2, "max_m": 2},
    "majority-amplify": {"sets": 4},
    "round-trip": {"instances": 25},
    "measures": {"sandwich_matrices": 4, "max_side": 4, "bound_grids": 2},
    "bp-operator": {"brute_steps": 20, "monotone_3x3": 2},
    "minimax": {"instances": 5},
    "pipeline": {},
}


def test_registry_matches_param_table():
    assert sorted(SUITES) == sorted(SMALL_PARAMS)


@pytest.mark.parametrize("name", sorted(SMALL_PARAMS))
def test_small_suite_passes(name):
    report = run_suite(name, seed=3, **SMALL_PARAMS[name])
    assert report["suite"] == name
    assert report["seed"] == 3
    assert report["status"] == "pass"
    assert report["failed"] == 0
    assert report["passed"] == report["case_count"] == len(report["cases"])
    assert report["case_count"] > 0
    ids = [case["id"] for case in report["cases"]]
    assert ids == sorted(ids)
    for case in report["cases"]:
        assert case["status"] == "pass"


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_params_are_recorded():
    report = run_suite("minimax", seed=9, instances=3)
    assert report["params"]["instances"] == 3


def test_canonical_json_rendering():
    report = {
        "b": Fraction(1, 3),
        "a": [Fraction(2), math.inf, -math.inf],
        "nested": {"z": 1, "frac": Fraction(-5, 7)},
    }
    text = canonical_report_json(report)
    assert text.endswith("\n")
    data = json.loads(text)
    assert data["b"] == "1/3"
    assert data["a"] == ["2", "inf", "-inf"]
    assert data["nested"]["frac"] == "-5/7"
    # keys come out sorted
    assert list(data) == ["a", "b", "nested"]


def test_reports_are_byte_stable():
    first = canonical_report_json(run_suite("minimax", seed=11, instances=4))
    second = canonical_report_json(run_suite("minimax", seed=11, instances=4))
    assert first == second
    shifted = canonical_report_json(run_suite("minimax", seed=12, instances=4))
    assert shifted != first
