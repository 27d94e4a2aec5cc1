import json
import math

import numpy as np
import pytest

from visangle import Check, SuiteId, UsageError, VerificationReport, VerifyConfig, run_suite
from visangle.verify import STATEMENTS, _check, _guarded, _monotone

SMALL = VerifyConfig(pairs=300, vk_pairs=10, map_pairs=100, polygons=2, r_grid=1000)
SUITES = [s for s in SuiteId if s is not SuiteId.ALL]


@pytest.fixture(scope="module")
def reports():
    return {s: run_suite(s, SMALL) for s in SUITES}


@pytest.mark.parametrize("suite", SUITES, ids=lambda s: s.value)
def test_suite_passes(reports, suite):
    rep = reports[suite]
    assert rep.suite == suite.value
    assert rep.statement == STATEMENTS[suite.value]
    assert rep.checks
    failed = [c.name for c in rep.checks if not c.passed]
    assert not failed, failed
    assert rep.passed


def find(rep, text):
    hits = [c for c in rep.checks if text in c.name]
    assert hits, text
    return hits


def test_vs3_constants(reports):
    rep = reports[SuiteId.VS3]
    assert find(rep, "g(1)")[0].detail["g1"] == pytest.approx(0.744915, abs=1e-5)
    assert find(rep, "r0 =")[0].detail["r0"] == pytest.approx(0.841471, abs=1e-5)


def test_schwarz_equality_at_k1(reports):
    c = find(reports[SuiteId.SCHWARZ_V], "C(1) = 2 attained")[0]
    assert c.detail["sup_ratio"] == pytest.approx(2.0, abs=1e-8)


def test_bv_trans_c1(reports):
    c = find(reports[SuiteId.BV_TRANS], "c(1) = 1")[0]
    assert c.detail["c1"] == pytest.approx(1.0, abs=1e-10)


def test_vk_constant_and_informational_j(reports):
    rep = reports[SuiteId.VK]
    for c in find(rep, "k_upper"):
        assert c.detail["constant"] == 2.26618
    warns = [c for c in rep.checks if c.status == "warn"]
    assert warns and all("informational" in c.name for c in warns)


def test_radial_divergence_window(reports):
    c = find(reports[SuiteId.RADIAL_DIVERGENCE], "in [28, 35]")[0]
    assert 28 <= c.detail["ratio"] <= 35


def test_labels(reports):
    labels = {c.label for rep in reports.values() for c in rep.checks}
    assert labels == {"scalar-certified", "sample-map"}
    assert all(c.label == "scalar-certified" for c in reports[SuiteId.VS1].checks)


def test_report_json_schema(reports):
    data = json.loads(reports[SuiteId.MTHM1].to_json())
    assert set(data) == {"suite", "statement", "params", "checks"}
    assert data["params"]["pairs"] == 300
    for c in data["checks"]:
        assert set(c) == {"name", "status", "worst_violation", "witness", "label", "detail"}
        assert c["status"] in {"pass", "fail", "warn"}


def test_deterministic():
    a = run_suite("MTHM1", SMALL).to_json()
    b = run_suite("MTHM1", SMALL).to_json()
    assert a == b
    c = run_suite("MTHM1", VerifyConfig(pairs=300, seed=7)).to_json()
    assert c != a


def test_all_is_order_independent():
    cfg = VerifyConfig(pairs=100, vk_pairs=3, map_pairs=30, polygons=1, r_grid=300, K_list=(1.0, 2.0),
                       L_list=(1.0,), eps_list=(0.5,), K_grid=50, rho_grid=200)
    rep = run_suite(SuiteId.ALL, cfg)
    assert rep.passed
    assert rep.params["suites"] == [s.value for s in SUITES]
    prefixes = {c.name.split(":")[0] for c in rep.checks}
    assert prefixes == {s.value for s in SUITES}
    single = run_suite("RED", cfg)
    assert [c.worst_violation for c in single.checks] == \
        [c.worst_violation for c in rep.checks if c.name.startswith("RED:")]


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suite("NOPE")


def test_progress_callback():
    seen = []
    run_suite("LERHO1", SMALL, progress=seen.append)
    assert seen == ["LERHO1"]


# --- check builders -------------------------------------------------------------


def test_check_semantics():
    ok = _check("ok", np.array([-1.0, -0.5]))
    assert ok.status == "pass" and ok.worst_violation == -0.5
    bad = _check("bad", np.array([-1.0, 0.25, 0.1]))
    assert bad.status == "fail" and bad.worst_violation == 0.25
    nan = _check("nan", np.array([-1.0, np.nan]))
    assert nan.status == "fail" and math.isinf(nan.worst_violation)


def test_monotone_detects_wrong_direction():
    r = np.linspace(0.1, 0.9, 9)
    assert _monotone("up", r, r**2, 1, 1e-9).passed
    assert not _monotone("down", r, r**2, -1, 1e-9).passed


def test_guarded_turns_errors_into_failures():
    def boom():
        raise ValueError("bad input")

    out = _guarded("explodes", "sample-map", boom)
    assert len(out) == 1 and out[0].status == "fail"
    assert "ValueError" in out[0].witness["error"]
    rep = VerificationReport("X", "s", {}, out)
    assert not rep.passed


def test_check_roundtrips_to_dict():
    c = Check("n", "pass", -1.0, {"x": np.float64(0.5)}, "sample-map", {"arr": np.arange(2)})
    assert json.loads(json.dumps(c.to_dict()))["detail"]["arr"] == [0, 1]
