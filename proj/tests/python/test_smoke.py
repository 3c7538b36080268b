from fractions import Fraction
from pathlib import Path

import pytest

import llmk

PROGRAMS = Path(__file__).resolve().parents[2] / "programs"


def read(name):
    return (PROGRAMS / name).read_text()


def test_intro_example():
    assert llmk.denote(read("coin_pair.llmk"), "main") == {
        "(tt,ff)": Fraction(1, 2),
        "(ff,tt)": Fraction(1, 2),
    }
    assert llmk.denote(read("coin_pair.llmk"), "main", model="rel") == {
        "(tt,ff)": 1,
        "(ff,tt)": 1,
    }


def test_trace_matches_denotation():
    text = read("sampling.llmk")
    for name in ["correlated", "channel", "lossy", "applied"]:
        assert llmk.trace(text, name) == llmk.denote(text, name)


def test_equiv():
    text = read("laws.llmk")
    assert llmk.equiv(text, "identity_lhs", "identity_rhs")
    assert llmk.equiv(text, "fusion_lhs", "fusion_rhs")
    assert not llmk.equiv(text, "copied", "redrawn")


def test_check_reports_kinds():
    assert llmk.check(read("sampling.llmk")) == []
    [diag] = llmk.check(read("negative/duplicate_use.llmk"))
    assert diag["kind"] == "duplicate-use"
    assert diag["line"] == 2


def test_errors_are_python_exceptions():
    with pytest.raises(llmk.ParseError):
        llmk.check("base Bool = {tt, tt};")
    with pytest.raises(llmk.OracleError):
        llmk.trace(read("higher_order.llmk"), "flip")
    with pytest.raises(KeyError):
        llmk.denote(read("coin_pair.llmk"), "nope")


def test_mc_is_reproducible():
    text = read("coin_pair.llmk")
    a = llmk.mc(text, "main", seed=3, n=2000)
    assert a == llmk.mc(text, "main", seed=3, n=2000)
    assert sum(a.values()) == 2000
    assert abs(a["(tt,ff)"] / 2000 - 0.5) < 0.05


def test_laws():
    report = llmk.run_laws(seed=1, instances=10, only=["sample-identity", "comonoid"])
    assert report.all_pass
    assert [law["name"] for law in report.laws] == ["sample-identity", "comonoid"]
    assert report.text().startswith("LAW sample-identity sample-identity-theorem pass 10")
    assert "all_pass=true" in report.kv()
    assert "adequacy" in llmk.law_names()


def test_web():
    w = llmk.web("Bool")
    assert w["index"] == ["tt", "ff"]
    assert w["polar_gens"] == [["1", "1"]]
    assert w["bipolar_closed"]
