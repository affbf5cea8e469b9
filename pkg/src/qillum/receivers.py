"""Error-probability bounds for the protocol's receivers.

Three receivers are covered: Alice's optimum quantum receiver and Eve's
optimum quantum receiver (both via the Gaussian Chernoff-bound engine), and
Alice's parametric-amplifier (OPA) receiver, which mixes her retained idler
with the returned mode and counts photons.  The OPA output modes are
exactly thermal, so their photon counts are geometric and the Bhattacharyya
bound has a closed form.

Closed-form exponent approximants valid for dim sources over noisy links
(ns << 1, kappa * nb >> 1) are provided alongside the exact bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gaussian import (
    ErrorBounds,
    GaussianState,
    chernoff_bound,
    error_bounds_from_overlaps,
    to_unit_vacuum,
)
from .protocol import (
    HypothesisPair,
    ProtocolParams,
    alice_pair,
    derived_coefficients,
    eve_pair,
)

__all__ = [
    "OpaReceiverModel",
    "ApproxExponents",
    "alice_optimum_bounds",
    "eve_optimum_bounds",
    "opa_model",
    "opa_bhattacharyya",
    "geometric_bhattacharyya_overlap",
    "approx_exponents",
]

REGIME_NS_MAX = 0.01
REGIME_KAPPA_NB_MIN = 100.0


@dataclass(frozen=True)
class OpaReceiverModel:
    """Photon statistics of the OPA receiver.

    The amplifier gain is g_opa = 1 + ns / sqrt(kappa nb); each output mode
    is thermal with mean photon number n0 (bit 0, positive correlation) or
    n1 (bit 1), n0 > n1.
    """

    g_opa: float
    n0: float
    n1: float

    def __post_init__(self) -> None:
        if self.g_opa <= 1.0:
            raise ValueError("g_opa must exceed 1")
        if not self.n0 >= self.n1 > 0.0:
            raise ValueError("mean photon numbers must satisfy n0 >= n1 > 0")


@dataclass(frozen=True)
class ApproxExponents:
    """Per-mode error exponents in the ns << 1, kappa nb >> 1 regime.

    alice_opt = 4 kappa g ns / nb, eve_opt = 4 kappa (1 - kappa) g ns^2 / nb
    and alice_opa = 2 kappa g ns / nb = alice_opt / 2.  ``in_regime`` flags
    ns < 0.01 together with kappa nb > 100.
    """

    alice_opt: float
    eve_opt: float
    alice_opa: float
    in_regime: bool


def _pair_bounds(pair: HypothesisPair, m: int) -> ErrorBounds:
    s0 = GaussianState(to_unit_vacuum(pair.state_bit0.cm))
    s1 = GaussianState(to_unit_vacuum(pair.state_bit1.cm))
    return chernoff_bound(s0, s1, m)


def alice_optimum_bounds(params: ProtocolParams) -> ErrorBounds:
    """Chernoff-family bounds for Alice's optimum quantum receiver."""
    return _pair_bounds(alice_pair(params), params.m)


def eve_optimum_bounds(params: ProtocolParams) -> ErrorBounds:
    """Chernoff-family bounds for Eve's optimum quantum receiver."""
    return _pair_bounds(eve_pair(params), params.m)


def opa_model(params: ProtocolParams) -> OpaReceiverModel:
    """Build the OPA receiver's photon-count model from the protocol knobs.

    The OPA combines idler and return as a' = sqrt(g_opa) a_I +
    sqrt(g_opa - 1) a_R^dagger.  Propagating the return/idler covariance
    matrix through that transform leaves each output mode exactly thermal
    with

        n_k = g_opa ns + (g_opa - 1)(a + 1)/2
              + (-1)^k sqrt(g_opa (g_opa - 1)) c_a,

    where a and c_a are the return/idler coefficients and the bit enters
    through the phase-sensitive cross moment <a_R a_I> = (-1)^k c_a / 2.
    """
    if params.nb <= 0.0:
        raise ValueError("the OPA gain 1 + ns / sqrt(kappa nb) requires nb > 0")
    c = derived_coefficients(params)
    g_opa = 1.0 + params.ns / math.sqrt(params.kappa * params.nb)
    common = g_opa * params.ns + (g_opa - 1.0) * (c.a + 1.0) / 2.0
    shift = math.sqrt(g_opa * (g_opa - 1.0)) * c.c_a
    return OpaReceiverModel(g_opa=g_opa, n0=common + shift, n1=common - shift)


def geometric_bhattacharyya_overlap(n0: float, n1: float) -> float:
    """Bhattacharyya coefficient of two geometric photon-count distributions.

    sum_n sqrt(P0(n) P1(n)) for thermal counts with means n0, n1 sums to
    1 / [sqrt((n0 + 1)(n1 + 1)) - sqrt(n0 n1)]; equals 1 at n0 = n1.
    """
    if n0 < 0.0 or n1 < 0.0:
        raise ValueError("mean photon numbers must be nonnegative")
    return 1.0 / (math.sqrt((n0 + 1.0) * (n1 + 1.0)) - math.sqrt(n0 * n1))


def opa_bhattacharyya(params: ProtocolParams) -> ErrorBounds:
    """Bhattacharyya bound on the OPA receiver's bit-error probability.

    The per-mode overlap is the closed-form geometric Bhattacharyya
    coefficient (exact, because the OPA outputs are exactly thermal); the
    M-mode bound is 0.5 * q**M in the log domain.  The upper bound is the
    contract here; s is pinned at 1/2.
    """
    model = opa_model(params)
    q = geometric_bhattacharyya_overlap(model.n0, model.n1)
    return error_bounds_from_overlaps(q, q, params.m, 0.5)


def approx_exponents(params: ProtocolParams) -> ApproxExponents:
    """Closed-form per-mode exponents and the validity-regime flag."""
    ns, kappa, g, nb = params.ns, params.kappa, params.g, params.nb
    if nb == 0.0:
        # g = 1, nb = 0: the approximants divide by nb and do not apply.
        return ApproxExponents(
            alice_opt=math.inf, eve_opt=math.inf, alice_opa=math.inf, in_regime=False
        )
    alice_opt = 4.0 * kappa * g * ns / nb
    return ApproxExponents(
        alice_opt=alice_opt,
        eve_opt=4.0 * kappa * (1.0 - kappa) * g * ns**2 / nb,
        alice_opa=alice_opt / 2.0,
        in_regime=bool(ns < REGIME_NS_MAX and kappa * nb > REGIME_KAPPA_NB_MIN),
    )
