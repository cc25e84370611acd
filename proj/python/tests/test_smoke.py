import json
import pathlib

import pytest

import lubintate as lt

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


def coeff(series, m):
    for t in series["terms"]:
        if t["m"] == m:
            return t["c"]
    return None


def test_multiplicative_group_addition():
    table = lt.formal_group(2, 1, prec=8, wmax=4)
    S = table["S"]
    assert {tuple(t["m"]) for t in S["terms"]} == {(1, 0), (0, 1), (1, 1)}
    assert coeff(S, [1, 1])["coeffs"] == [1]


def test_bad_prime_is_an_input_error():
    with pytest.raises(lt.InputError):
        lt.formal_group(4, 1)
    with pytest.raises(ValueError):
        lt.formal_group(2, 0)


def test_fgl_suite_passes():
    report, code = lt.verify("fgl", p=3, h=2)
    assert code == 0
    assert report["summary"]["passed"] == report["summary"]["total"]


def test_module_roundtrip_from_file():
    spec = json.loads((DATA / "nonsplit_h2.json").read_text())
    report, code = lt.module(spec, "roundtrip")
    assert code == 0
    assert report["roundtrip"]["result"] == "jumps match"


def test_malformed_module_is_rejected():
    with pytest.raises(lt.InputError, match="expected 2 rows"):
        lt.module((DATA / "malformed.json").read_text())
