import json

import pytest

from artifact.report import Mismatch, VerdictReport, combine, series_mismatch, verdict
from artifact.scalars import Mode
from artifact.series import PSeries


def test_verdict_validation():
    with pytest.raises(ValueError):
        VerdictReport("x", {}, "maybe")
    with pytest.raises(ValueError):
        VerdictReport("x", {}, "fail")


def test_json_is_sorted_and_compact():
    rep = verdict("x", {"b": 1, "a": 2}, Mismatch((1, 0), "3", "4"), started=0.0)
    obj = json.loads(rep.to_json())
    assert obj["verdict"] == "fail" and obj["mismatch"]["index"] == [1, 0]
    assert rep.to_json().index('"identity"') < rep.to_json().index('"verdict"')
    assert " " not in rep.to_json()
    assert json.loads(rep.to_json(timing=False))["wall_time_ms"] is None


def test_combine_fails_if_any_seed_fails():
    good = verdict("x", {}, None)
    bad = verdict("x", {}, Mismatch((2,), "1", "0"))
    assert combine([good, good], "x", {}).passed
    out = combine([good, bad, good], "x", {}, kind="conjecture")
    assert not out.passed and out.mismatch.index == (2,) and out.kind == "conjecture"


def test_series_mismatch_reports_first_difference():
    a = PSeries(1, 3, Mode.EXACT, {(0,): 1, (2,): 5})
    b = PSeries(1, 3, Mode.EXACT, {(0,): 1, (2,): 4})
    assert series_mismatch(a, a) is None
    mm = series_mismatch(a, b)
    assert mm.index == (2,) and (mm.lhs, mm.rhs) == ("5", "4")
