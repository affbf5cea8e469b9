"""Monte Carlo validation of the OPA receiver's error bound.

Each trial draws a uniformly random bit, samples the receiver's total
photon count over the bit's M modes and applies the maximum-likelihood
threshold test.  Since the per-mode counts are iid geometric, the total is
negative binomial, which is what gets sampled (one draw per trial instead
of M).  The empirical error rate, with a Wilson 95% interval, is compared
against the analytic Bhattacharyya bound by the caller.

Randomness comes from ``numpy.random.Generator`` seeded with PCG64, so a
fixed seed reproduces results bit for bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .protocol import ProtocolParams
from .receivers import OpaReceiverModel, geometric_bhattacharyya_overlap, opa_model

__all__ = ["McConfig", "McResult", "ml_threshold", "run_mc"]

# 95% two-sided normal quantile for the Wilson interval.
_Z95 = 1.959963984540054

RECOMMENDED_MIN_TRIALS = 10_000


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo run description: trial count, RNG seed, protocol knobs.

    Fewer than 10^4 trials, or an expected error count below 10, triggers a
    statistical-power warning at run time rather than a hard error.
    """

    trials: int
    seed: int
    params: ProtocolParams

    def __post_init__(self) -> None:
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError("trials must be a positive integer")
        if int(self.seed) != self.seed:
            raise ValueError("seed must be an integer")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class McResult:
    """Empirical error rate with its Wilson 95% interval and the test threshold."""

    empirical_error: float
    wilson_ci95: tuple[float, float]
    threshold: float
    trials_used: int


def ml_threshold(model: OpaReceiverModel, m: int) -> float:
    """Maximum-likelihood count threshold between the two bit hypotheses.

    Equating the two negative-binomial log-likelihoods of the total count
    gives

        n* = m ln[(1 + n0) / (1 + n1)] / ln[n0 (1 + n1) / (n1 (1 + n0))];

    declare bit 0 iff the total count >= n*.  Raises when n0 = n1, where no
    threshold exists.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if model.n0 == model.n1:
        raise ValueError("n0 = n1: the hypotheses coincide and no threshold exists")
    num = math.log((1.0 + model.n0) / (1.0 + model.n1))
    den = math.log(model.n0 * (1.0 + model.n1) / (model.n1 * (1.0 + model.n0)))
    return m * num / den


def _wilson_ci95(errors: int, trials: int) -> tuple[float, float]:
    p_hat = errors / trials
    z2 = _Z95**2
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denom
    half = _Z95 * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials**2)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def run_mc(config: McConfig, model: OpaReceiverModel | None = None) -> McResult:
    """Simulate the OPA receiver and measure its empirical bit-error rate.

    Per trial: draw the bit, draw the total count from the negative
    binomial with mean m * n_bit, threshold, record the outcome.  Ties at
    exactly the threshold are declared bit 0.  A model with n0 = n1 (no
    threshold) falls back to the midpoint m * n0, under which the error
    rate is exactly 1/2 in distribution.

    Output is fully determined by ``config.seed``.
    """
    params = config.params
    if model is None:
        model = opa_model(params)
    m = params.m
    if model.n0 == model.n1:
        threshold = m * model.n0
    else:
        threshold = ml_threshold(model, m)

    q = geometric_bhattacharyya_overlap(model.n0, model.n1)
    bound = 0.5 * math.exp(m * math.log(q))
    if config.trials < RECOMMENDED_MIN_TRIALS or config.trials * min(bound, 1.0) < 10.0:
        warnings.warn(
            f"low statistical power: {config.trials} trials against an error bound "
            f"of {bound:.3e}; expect a noisy estimate",
            stacklevel=2,
        )

    rng = np.random.default_rng(config.seed)
    bits = rng.integers(0, 2, size=config.trials)
    means = np.where(bits == 0, model.n0, model.n1)
    totals = rng.negative_binomial(m, 1.0 / (1.0 + means))
    decided_bit0 = totals >= threshold
    errors = int(np.count_nonzero(decided_bit0 != (bits == 0)))
    return McResult(
        empirical_error=errors / config.trials,
        wilson_ci95=_wilson_ci95(errors, config.trials),
        threshold=threshold,
        trials_used=config.trials,
    )
