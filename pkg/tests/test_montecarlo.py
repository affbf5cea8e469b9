"""Monte Carlo of the OPA receiver: threshold test, sampler checks, bound validity."""

import math

import numpy as np
import pytest
from scipy import stats

from qillum import (
    McConfig,
    OpaReceiverModel,
    ProtocolParams,
    ml_threshold,
    opa_bhattacharyya,
    opa_model,
    run_mc,
)


def make_config(m: int, trials: int, seed: int = 7) -> McConfig:
    params = ProtocolParams(ns=0.004, kappa=0.1, g=1e4, nb=1e4, m=m)
    return McConfig(trials=trials, seed=seed, params=params)


# ----------------------------------------------------------------------
# threshold


def test_ml_threshold_single_mode_example():
    model = OpaReceiverModel(g_opa=1.1, n0=3.0, n1=1.0)
    expected = math.log(2.0) / math.log(1.5)
    assert ml_threshold(model, 1) == pytest.approx(expected, rel=1e-12)
    assert ml_threshold(model, 1) == pytest.approx(1.7095112913514547, rel=1e-12)


def test_ml_threshold_matches_likelihood_ratio_sign_change():
    # discrete search: first count where the bit-0 likelihood overtakes bit 1
    model = OpaReceiverModel(g_opa=1.1, n0=3.0, n1=1.0)
    threshold = ml_threshold(model, 1)

    def log_likelihood(n, mean):
        return n * math.log(mean / (1.0 + mean)) - math.log(1.0 + mean)

    for n in range(0, 12):
        favours_bit0 = log_likelihood(n, 3.0) >= log_likelihood(n, 1.0)
        assert favours_bit0 == (n >= threshold)


def test_ml_threshold_scales_with_m():
    model = OpaReceiverModel(g_opa=1.1, n0=3.0, n1=1.0)
    assert ml_threshold(model, 10) == pytest.approx(10 * ml_threshold(model, 1), rel=1e-12)


def test_ml_threshold_within_mean_interval(headline_params):
    model = opa_model(headline_params)
    threshold = ml_threshold(model, headline_params.m)
    assert headline_params.m * model.n1 < threshold < headline_params.m * model.n0


def test_ml_threshold_rejects_degenerate_model():
    model = OpaReceiverModel(g_opa=1.1, n0=0.5, n1=0.5)
    with pytest.raises(ValueError, match="no threshold"):
        ml_threshold(model, 10)


# ----------------------------------------------------------------------
# sampler calibration


def test_geometric_sampler_moment():
    # negative binomial with m = 1 is the geometric count distribution
    model = opa_model(ProtocolParams(ns=0.004, kappa=0.1, g=1e4, nb=1e4, m=1))
    rng = np.random.default_rng(5)
    draws = rng.negative_binomial(1, 1.0 / (1.0 + model.n0), size=10**6)
    assert draws.mean() == pytest.approx(model.n0, rel=0.01)


def test_negative_binomial_equals_convolved_geometric():
    # chi-square at m = 3 against the thrice-convolved geometric pmf
    mean = 1.3
    p = 1.0 / (1.0 + mean)
    kmax = 80
    geometric = (1.0 - p) ** np.arange(kmax + 1) * p
    convolved = np.convolve(np.convolve(geometric, geometric), geometric)[: kmax + 1]
    rng = np.random.default_rng(42)
    sample = rng.negative_binomial(3, p, size=200_000)
    observed = np.bincount(np.clip(sample, 0, kmax), minlength=kmax + 1)
    expected = convolved * len(sample)
    expected[-1] = len(sample) - expected[:-1].sum()  # fold the tail in
    cut = int(np.argmax(np.cumsum(expected) > len(sample) - 5.0))
    observed = np.concatenate([observed[:cut], [observed[cut:].sum()]])
    expected = np.concatenate([expected[:cut], [expected[cut:].sum()]])
    _, p_value = stats.chisquare(observed, expected)
    assert p_value > 1e-3


# ----------------------------------------------------------------------
# runs


def test_run_mc_is_deterministic():
    first = run_mc(make_config(m=2000, trials=100_000))
    second = run_mc(make_config(m=2000, trials=100_000))
    assert first == second


def test_run_mc_respects_bhattacharyya_bound():
    config = make_config(m=2000, trials=200_000)
    bound = opa_bhattacharyya(config.params).bhattacharyya_upper
    result = run_mc(config)
    assert result.empirical_error <= bound
    assert result.empirical_error >= bound / 20.0
    lo, hi = result.wilson_ci95
    assert lo <= result.empirical_error <= hi


def test_run_mc_error_grows_as_m_shrinks():
    errors = [run_mc(make_config(m=m, trials=200_000)).empirical_error for m in (2000, 1000, 500)]
    assert errors[0] < errors[1] < errors[2]


def test_run_mc_degenerate_model_gives_coin_flip():
    config = make_config(m=100, trials=200_000)
    model = OpaReceiverModel(g_opa=1.1, n0=0.2, n1=0.2)
    result = run_mc(config, model=model)
    lo, hi = result.wilson_ci95
    assert lo <= 0.5 <= hi
    assert result.threshold == pytest.approx(100 * 0.2)


def test_run_mc_warns_on_low_statistical_power():
    with pytest.warns(UserWarning, match="low statistical power"):
        run_mc(make_config(m=2000, trials=100))


def test_mc_config_validation():
    params = ProtocolParams(ns=0.004, kappa=0.1, g=1e4, nb=1e4, m=100)
    with pytest.raises(ValueError, match="trials"):
        McConfig(trials=0, seed=1, params=params)
    with pytest.raises(ValueError, match="seed"):
        McConfig(trials=100, seed=1.5, params=params)
