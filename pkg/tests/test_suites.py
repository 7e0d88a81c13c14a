import json

import pytest

from gentcheb.suites import SUITES, SuiteConfig, run_suite

FAST = ["routes", "genfun", "tch-props", "real-roots-1d", "real-roots-2d", "counterexample-k3", "u-props"]


def test_thirteen_suites():
    assert len(SUITES) == 13


@pytest.mark.parametrize("name", FAST)
def test_fast_suites_pass(name):
    report = run_suite(SuiteConfig(name))
    assert report["pass"], [it for it in report["items"] if not it["pass"]]
    assert all(it["claim"] for it in report["items"])


def test_report_is_deterministic():
    a = json.dumps(run_suite(SuiteConfig("tch-props", seed=3)), sort_keys=True)
    b = json.dumps(run_suite(SuiteConfig("tch-props", seed=3)), sort_keys=True)
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite(SuiteConfig("nope"))


def test_failures_carry_witnesses():
    from gentcheb.suites import _item
    assert _item("c", "i", False, "claim", {"n": [3]}).to_json()["witness"] == {"n": [3]}
    assert _item("c", "i", True, "claim", {"n": []}).to_json()["witness"] is None
