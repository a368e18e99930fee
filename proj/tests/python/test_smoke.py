import os

import pytest

import bnloc

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def test_witt_hyperbolic():
    assert bnloc.witt("<2>+<2*d>; d=-1") == "0"
    assert bnloc.witt("<2>*<3>", field="F5") == "1"


def test_ring_relations():
    assert bnloc.ring_eval("(1+q0)*e") == "0"
    assert bnloc.ring_eval("q0^2") == "1"
    assert bnloc.ring_eval("et*et") == "-4*e"


def test_euler_classes():
    assert bnloc.euler("3,+") == "3*e"
    assert bnloc.euler("2,+") == "et"


def test_localize_fixture():
    report, code = bnloc.localize(os.path.join(FIXTURES, "single_point.json"))
    assert code == 0
    assert report["degree_form"] == "<1>"


def test_localize_custom_table_relative_path():
    report, code = bnloc.localize(os.path.join(FIXTURES, "custom_table.json"))
    assert code == 0
    assert report["table"] == "custom"


def test_pole_exit_code():
    report, code = bnloc.localize(os.path.join(FIXTURES, "pole.json"))
    assert code == 3
    assert report["diagnostic"].startswith("PolePresent")


def test_errors_carry_codes():
    with pytest.raises(bnloc.BnlocError) as info:
        bnloc.witt("<0>")
    assert info.value.code == "DegenerateForm"
    assert info.value.exit_code == 3
    with pytest.raises(bnloc.BnlocError) as info:
        bnloc.localize({"version": 1, "field": "Q", "theory": "HW", "components": []})
    assert info.value.code == "SchemaError"


def test_selfcheck_passes():
    results = bnloc.selfcheck(7)
    assert results
    assert all(passed for _, passed, _ in results)
