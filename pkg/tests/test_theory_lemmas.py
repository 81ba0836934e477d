import json
from fractions import Fraction
from math import exp, log, sqrt

import pytest

from parallel_ea.rng import derive_rng
from parallel_ea.theory.lemmas import (
    D_DROP_CHAIN,
    D_FREE_RIDERS,
    ETA_DROP_CHAIN,
    ETA_FREE_RIDERS,
    GAMMA_POTENTIAL,
    chvatal_point_check,
    drop_chain_series,
    exact_vs_log_max_error,
    expected_max_bound,
    expected_max_drop,
    mc_check_max_geometric,
    mgf_series_value,
    multibit_nstar,
    verify_chvatal,
    verify_coupon,
    verify_delta_symmetry,
    verify_hypergeom_tail,
    verify_improve_prob,
    verify_max_geometric,
    verify_mgf_bound,
    verify_multibit_progress,
)
from parallel_ea.theory.pmf import (
    delta0_point_log_prob,
    delta0_point_prob,
    delta0_tail_prob,
    hypergeom_pmf,
)


def test_hypergeom_tail_small_grid():
    report = verify_hypergeom_tail(32)
    assert report.passed
    assert report.points_checked > 0
    assert report.max_slack <= 1 + 1e-12


def test_hypergeom_tail_trivial_cases():
    # z = 0: bound is 1; beyond support the pmf is 0
    assert hypergeom_pmf(16, 5, 4, 0) <= 1
    assert hypergeom_pmf(16, 3, 4, 4) == 0


def test_improve_prob_small_grid():
    report = verify_improve_prob(32)
    assert report.passed
    assert report.max_slack <= 1 + 1e-12


def test_improve_prob_spot_value():
    # n=64, s=m=8, r=64: radius n flips every zero, so the drop is 0
    p = delta0_point_prob(64, 8, 8, 64, 2)
    assert float(p) <= 0.5
    assert p == 0
    # a nonzero cell of the same grid stays under the bound as well
    p2 = delta0_point_prob(64, 8, 8, 14, 2)
    assert 0 < float(p2) <= 0.5


def test_chvatal_small_grid():
    report = verify_chvatal(32)
    assert report.passed


def test_chvatal_spot_values():
    # m = s: bound is exp(0) = 1
    assert chvatal_point_check(32, 4, 4, 8)["bound"] == 1.0
    # n=64, m-s=16, r=8: exact tail under e^-16
    res = chvatal_point_check(64, 4, 20, 8)
    assert float(res["tail"]) <= exp(-16.0)
    assert res["pass"]


def test_chvatal_exact_tail_is_fraction():
    tail = delta0_tail_prob(32, 2, 10, 5)
    assert isinstance(tail, Fraction)


def test_mgf_bound_small_grid_and_series():
    report = verify_mgf_bound(32, (1, 64))
    assert report.passed
    series = report.details["series"]
    assert series["1"]["series"] == pytest.approx(8.0, rel=1e-9)
    assert series["64"]["series"] == pytest.approx(512.0, rel=1e-9)


def test_mgf_series_closed_form():
    # gamma = ln((3/4) sqrt 2) turns the series into 2 lam * sum (3/4)^z
    assert GAMMA_POTENTIAL == pytest.approx(log(0.75 * sqrt(2.0)))
    assert mgf_series_value(1.0) == pytest.approx(8.0, rel=1e-12)
    with pytest.raises(ValueError):
        mgf_series_value(1.0, gamma=log(2.0))


def test_mgf_premise_spot_value():
    # grid point s=m=4, r=3, z=1: P <= 2^(1/2) trivially, exact value under it
    p = delta0_point_prob(128, 4, 4, 3, 1)
    assert float(p) <= 2 ** 0.5


def test_multibit_domain_error():
    with pytest.raises(ValueError) as err:
        verify_multibit_progress(4096)
    assert "n*" in str(err.value)


def test_multibit_small_supported_n():
    n = 2**18
    assert multibit_nstar(n) >= 2
    report = verify_multibit_progress(n, z_max=60)
    assert report.passed
    assert report.max_slack > 0  # grid reaches points with nonzero probability


def test_multibit_parity_empty_support():
    # r=2, z=1 with m=s: progress would need an odd hypergeometric step
    from math import inf
    n = 2**18
    assert delta0_point_log_prob(n, 2, 2, 2, 1) == -inf


def test_delta_symmetry_report():
    report = verify_delta_symmetry(12)
    assert report.passed
    assert report.points_checked > 0


def test_expected_max_bound_examples():
    assert expected_max_bound(1.0, 1.0, 1) == 1.0
    assert expected_max_bound(log(1.5), 2.0, 100) == pytest.approx(15.5336, abs=2e-4)
    # doubling lambda adds ln(2)/eta
    eta = 0.37
    delta = expected_max_bound(eta, 2.0, 64) - expected_max_bound(eta, 2.0, 32)
    assert delta == pytest.approx(log(2.0) / eta)
    with pytest.raises(ValueError):
        expected_max_bound(0.0, 2.0, 4)


def test_mc_max_geometric():
    result = mc_check_max_geometric(100, 4000, derive_rng(5))
    assert result["pass"]
    assert 6.0 <= result["sample_mean"] <= 9.0
    assert result["bound"] == pytest.approx(
        expected_max_bound(ETA_FREE_RIDERS, D_FREE_RIDERS, 100)
    )


def test_verify_max_geometric_report_json():
    report = verify_max_geometric(lam=50, trials=2000, seed=1)
    assert report.passed
    parsed = json.loads(report.to_json())
    assert parsed["pass"] is True
    assert parsed["lemma"] == "mgf-max"


def test_verify_coupon():
    report = verify_coupon(delta=0.5)
    assert report.passed
    for point in report.details["points"]:
        assert point["survival"] >= point["floor"]


def test_drop_chain_constants():
    # the geometric chain at eta = ln(4/3) closes to exactly 9 + 6 sqrt(2)
    assert ETA_DROP_CHAIN == pytest.approx(log(4.0 / 3.0))
    assert D_DROP_CHAIN == pytest.approx(9.0 + 6.0 * sqrt(2.0))
    assert drop_chain_series() == pytest.approx(D_DROP_CHAIN, rel=1e-12)
    # explicit O(log lambda) expected-max curve built from those constants
    assert expected_max_drop(64) == pytest.approx(
        (log(D_DROP_CHAIN * 64) + 1) / log(4.0 / 3.0)
    )
    gap = expected_max_drop(2048) - expected_max_drop(1024)
    assert gap == pytest.approx(log(2.0) / log(4.0 / 3.0))


def test_backends_cross_validate():
    # the exact big-rational and log-gamma backends agree pointwise
    for n in (64, 128):
        assert exact_vs_log_max_error(n) < 1e-10


def test_report_violation_capture():
    report = verify_hypergeom_tail(8)
    report.record({"m": 1}, 2.0)
    assert not report.passed
    assert report.to_dict()["pass"] is False
    assert report.violations[0]["slack"] == 2.0
