"""Fiber-link planning: loss budgets, mode-pair counts and security margins.

Converts a physical link description (length, fiber loss, source bandwidth,
bit duration) into protocol parameters, sizes the mode-pair number M needed
to hit a target error probability, and summarises the tradeoff between
Alice's error bound and Eve's: longer fiber means a larger M at fixed
source brightness, hence a lower bit rate 1/T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .gaussian import ErrorBounds, GaussianState, minimize_overlap, to_unit_vacuum
from .protocol import ProtocolParams, alice_pair
from .receivers import (
    alice_optimum_bounds,
    approx_exponents,
    eve_optimum_bounds,
    geometric_bhattacharyya_overlap,
    opa_bhattacharyya,
    opa_model,
)

__all__ = [
    "LinkBudget",
    "Receiver",
    "SecurityMarginReport",
    "budget_from_fiber",
    "required_m",
    "security_margin",
]

# Per-mode overlaps at least this close to 1 make any target unreachable.
_OVERLAP_CEILING = 1.0 - 1e-15

DEFAULT_EVE_FLOOR = 0.25
DEFAULT_ALICE_TARGET = 1e-6


class Receiver(Enum):
    OPTIMUM = "optimum"
    OPA = "opa"


@dataclass(frozen=True)
class LinkBudget:
    """Physical link description with its derived protocol quantities.

    kappa = 10**(-length_km * loss_db_per_km / 10), m = floor(W T) and
    bit_rate = 1 / T.  kappa = 1 (zero length) is representable here; it is
    rejected only once protocol parameters are built from the budget.
    """

    length_km: float
    loss_db_per_km: float
    w_hz: float
    t_s: float
    kappa: float
    m: int
    bit_rate: float


@dataclass(frozen=True)
class SecurityMarginReport:
    """Alice-versus-Eve bound comparison at one operating point.

    ``alice_upper`` is the OPA (buildable receiver) upper bound; the ratio
    and difference compare Eve's lower bound against it.  ``insecure``
    flags Eve's lower bound dropping below the floor, ``alice_unusable``
    flags Alice's bound missing her target.
    """

    alice_optimum: ErrorBounds
    alice_opa: ErrorBounds
    eve: ErrorBounds
    alice_upper: float
    eve_lower: float
    margin_ratio: float
    margin_difference: float
    eve_floor: float
    alice_target: float
    insecure: bool
    alice_unusable: bool
    in_regime: bool


def budget_from_fiber(
    length_km: float, loss_db_per_km: float, w_hz: float, t_s: float
) -> LinkBudget:
    """Build a link budget from fiber length, loss rate, bandwidth and bit time.

    Requires W T >= 1 (at least one full mode pair per bit); fractional
    mode pairs are truncated, which is conservative for error probability.
    """
    if length_km < 0.0 or loss_db_per_km < 0.0:
        raise ValueError("length_km and loss_db_per_km must be nonnegative")
    if w_hz <= 0.0 or t_s <= 0.0:
        raise ValueError("w_hz and t_s must be positive")
    product = w_hz * t_s
    if product < 1.0:
        raise ValueError(
            f"W T = {product:.3g} < 1: the bit interval holds no full mode pair"
        )
    # Tiny relative epsilon so exact products like 1e12 * 2e-8 survive
    # floating-point representation of the inputs.
    m = int(math.floor(product * (1.0 + 1e-12)))
    kappa = 10.0 ** (-length_km * loss_db_per_km / 10.0)
    return LinkBudget(
        length_km=length_km,
        loss_db_per_km=loss_db_per_km,
        w_hz=w_hz,
        t_s=t_s,
        kappa=kappa,
        m=m,
        bit_rate=1.0 / t_s,
    )


def _per_mode_overlap(params: ProtocolParams, receiver: Receiver) -> float:
    if receiver is Receiver.OPA:
        model = opa_model(params)
        return geometric_bhattacharyya_overlap(model.n0, model.n1)
    pair = alice_pair(params)
    result = minimize_overlap(
        GaussianState(to_unit_vacuum(pair.state_bit0.cm)),
        GaussianState(to_unit_vacuum(pair.state_bit1.cm)),
    )
    return result.q_s


def required_m(
    params: ProtocolParams, target_pe: float, receiver: Receiver = Receiver.OPA
) -> int:
    """Smallest mode-pair number M whose upper bound meets ``target_pe``.

    ``params.m`` is ignored; the per-mode overlap is fixed by the other
    four knobs and the bound 0.5 * q**M is monotone in M, so the answer is
    found by exponential growth followed by binary search.

    Raises:
        ValueError: target outside (0, 0.5], or per-mode overlap within
            1e-15 of 1 (target unreachable).
    """
    if not 0.0 < target_pe <= 0.5:
        raise ValueError("target_pe must lie in (0, 0.5]")
    q = _per_mode_overlap(params, receiver)
    if q >= _OVERLAP_CEILING:
        raise ValueError(
            f"per-mode overlap {q!r} is too close to 1: target unreachable"
        )
    log_q = math.log(q)

    def bound(m: int) -> float:
        return 0.5 * math.exp(m * log_q)

    hi = 1
    while bound(hi) > target_pe:
        hi *= 2
        if hi > 2**62:
            raise ValueError("target unreachable: M would exceed 2**62")
    if hi == 1:
        return 1
    lo = hi // 2  # bound(lo) > target_pe >= bound(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= target_pe:
            hi = mid
        else:
            lo = mid
    return hi


def security_margin(
    params: ProtocolParams,
    eve_floor: float = DEFAULT_EVE_FLOOR,
    alice_target: float = DEFAULT_ALICE_TARGET,
) -> SecurityMarginReport:
    """Compare Alice's achievable error bound against Eve's lower bound.

    The operating point is insecure when Eve's lower bound falls under
    ``eve_floor`` and unusable when Alice's OPA bound exceeds
    ``alice_target``.
    """
    alice_opt = alice_optimum_bounds(params)
    alice_opa = opa_bhattacharyya(params)
    eve = eve_optimum_bounds(params)
    alice_upper = alice_opa.bhattacharyya_upper
    eve_lower = eve.lower_bound
    return SecurityMarginReport(
        alice_optimum=alice_opt,
        alice_opa=alice_opa,
        eve=eve,
        alice_upper=alice_upper,
        eve_lower=eve_lower,
        margin_ratio=eve_lower / alice_upper if alice_upper > 0.0 else math.inf,
        margin_difference=eve_lower - alice_upper,
        eve_floor=eve_floor,
        alice_target=alice_target,
        insecure=bool(eve_lower < eve_floor),
        alice_unusable=bool(alice_upper > alice_target),
        in_regime=approx_exponents(params).in_regime,
    )
