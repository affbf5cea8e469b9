"""Protocol states for two-way quantum-illumination communication.

Alice distributes entangled signal/idler mode pairs from a downconversion
source; Bob phase-flips, amplifies and returns the signal through the same
lossy channel; Eve passively collects every photon lost on both legs.  Each
observer then faces a binary hypothesis test between two zero-mean Gaussian
states that differ only in the sign of a correlation block.  This module
builds those covariance matrices from the five protocol knobs and checks
their physicality.

All matrices are produced in the quarter-vacuum convention so that their
entries match the printed coefficient definitions entry for entry; convert
with :func:`qillum.gaussian.to_unit_vacuum` before any spectral work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from .gaussian import Convention, CovMat, GaussianState, symplectic_eigenvalues, to_unit_vacuum

__all__ = [
    "ProtocolParams",
    "DerivedCoefficients",
    "Observer",
    "HypothesisPair",
    "PhysicalityReport",
    "derived_coefficients",
    "source_cm",
    "alice_pair",
    "eve_pair",
    "validate_physicality",
]

PHYSICALITY_THRESHOLD = 1.0 - 1e-9


@dataclass(frozen=True)
class ProtocolParams:
    """The five protocol knobs.

    ns:    mean signal (and idler) photon number per mode, > 0
    kappa: one-way channel transmissivity, strictly inside (0, 1)
    g:     Bob's amplifier gain, >= 1 (g = 1 means no amplifier, nb = 0)
    nb:    amplifier noise photon number, nb >= g - 1
    m:     signal-idler mode pairs per bit, integer >= 1
    """

    ns: float
    kappa: float
    g: float
    nb: float
    m: int

    def __post_init__(self) -> None:
        for name in ("ns", "kappa", "g", "nb"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number")
        if self.ns <= 0:
            raise ValueError("ns must be positive")
        if not 0.0 < self.kappa < 1.0:
            raise ValueError(
                "kappa must lie strictly inside (0, 1): kappa = 0 and kappa = 1 "
                "degenerate Eve's or Alice's hypothesis test"
            )
        if self.g < 1.0:
            raise ValueError("g must be at least 1")
        if self.nb < self.g - 1.0:
            raise ValueError(
                "nb must satisfy nb >= g - 1 (amplifier mode occupation "
                "nb / (g - 1) cannot drop below 1)"
            )
        if self.g == 1.0 and self.nb != 0.0:
            raise ValueError("nb must be 0 when g = 1 (no amplifier, no added noise)")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be an integer >= 1")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class DerivedCoefficients:
    """Covariance-matrix entries implied by the protocol knobs.

    s_diag = 2 ns + 1 and c_q = 2 sqrt(ns (ns + 1)) describe the source;
    a = 2 kappa^2 g ns + 2 kappa nb + 1 and c_a = kappa sqrt(g) c_q describe
    Alice's return/idler state; d = 2 (1 - kappa) ns + 1,
    c_e = 2 (1 - kappa) sqrt(kappa g) ns and
    e = 2 (1 - kappa) kappa g ns + 2 (1 - kappa) nb + 1 describe Eve's
    tapped pair.
    """

    s_diag: float
    c_q: float
    a: float
    c_a: float
    d: float
    c_e: float
    e: float


class Observer(Enum):
    ALICE = "alice"
    EVE = "eve"


@dataclass(frozen=True)
class HypothesisPair:
    """The two equally likely Gaussian states one observer must distinguish."""

    state_bit0: GaussianState
    state_bit1: GaussianState
    observer: Observer


@dataclass(frozen=True)
class PhysicalityReport:
    """Symplectic spectrum of a covariance matrix and its pass/fail verdict."""

    nu: NDArray[np.float64]
    threshold: float
    ok: bool


def derived_coefficients(params: ProtocolParams) -> DerivedCoefficients:
    """Evaluate every covariance-matrix coefficient from the protocol knobs.

    The matrix builders below place these exact values, so recomputing here
    reproduces the matrix entries bit for bit.
    """
    ns, kappa, g, nb = params.ns, params.kappa, params.g, params.nb
    s_diag = 2.0 * ns + 1.0
    c_q = 2.0 * math.sqrt(ns * (ns + 1.0))
    return DerivedCoefficients(
        s_diag=s_diag,
        c_q=c_q,
        a=2.0 * kappa**2 * g * ns + 2.0 * kappa * nb + 1.0,
        c_a=kappa * math.sqrt(g) * c_q,
        d=2.0 * (1.0 - kappa) * ns + 1.0,
        c_e=2.0 * (1.0 - kappa) * math.sqrt(kappa * g) * ns,
        e=2.0 * (1.0 - kappa) * kappa * g * ns + 2.0 * (1.0 - kappa) * nb + 1.0,
    )


def source_cm(ns: float) -> CovMat:
    """Signal/idler covariance matrix of the downconversion source.

    Quarter-vacuum convention, ordering (x_S, p_S, x_I, p_I): diagonal
    (2 ns + 1) / 4 with phase-sensitive corners +/- c_q / 4.  The state is
    pure: both symplectic eigenvalues equal 1 after rescaling.
    """
    if not (isinstance(ns, (int, float)) and math.isfinite(ns) and ns > 0):
        raise ValueError("ns must be positive and finite")
    s_diag = 2.0 * ns + 1.0
    c_q = 2.0 * math.sqrt(ns * (ns + 1.0))
    mat = 0.25 * np.array(
        [
            [s_diag, 0.0, c_q, 0.0],
            [0.0, s_diag, 0.0, -c_q],
            [c_q, 0.0, s_diag, 0.0],
            [0.0, -c_q, 0.0, s_diag],
        ]
    )
    return CovMat(mat, Convention.QUARTER_VACUUM)


def _phase_sensitive_cm(diag_a: float, diag_b: float, corr: float) -> CovMat:
    """Two-mode CM with x-x correlation +corr and p-p correlation -corr."""
    mat = 0.25 * np.array(
        [
            [diag_a, 0.0, corr, 0.0],
            [0.0, diag_a, 0.0, -corr],
            [corr, 0.0, diag_b, 0.0],
            [0.0, -corr, 0.0, diag_b],
        ]
    )
    return CovMat(mat, Convention.QUARTER_VACUUM)


def _phase_insensitive_cm(diag_a: float, diag_b: float, corr: float) -> CovMat:
    """Two-mode CM with the same correlation sign on both quadratures."""
    mat = 0.25 * np.array(
        [
            [diag_a, 0.0, corr, 0.0],
            [0.0, diag_a, 0.0, corr],
            [corr, 0.0, diag_b, 0.0],
            [0.0, corr, 0.0, diag_b],
        ]
    )
    return CovMat(mat, Convention.QUARTER_VACUUM)


def alice_pair(params: ProtocolParams) -> HypothesisPair:
    """Alice's return/idler states under Bob's bit k = 0 and k = 1.

    Ordering (x_R, p_R, x_I, p_I).  The correlation is phase sensitive:
    the x-x entry carries (-1)^k c_a and the p-p entry the opposite sign.
    """
    c = derived_coefficients(params)
    return HypothesisPair(
        state_bit0=GaussianState(_phase_sensitive_cm(c.a, c.s_diag, c.c_a)),
        state_bit1=GaussianState(_phase_sensitive_cm(c.a, c.s_diag, -c.c_a)),
        observer=Observer.ALICE,
    )


def eve_pair(params: ProtocolParams) -> HypothesisPair:
    """Eve's tapped signal/return states under Bob's bit k = 0 and k = 1.

    Ordering (x_S', p_S', x_R', p_R') for the two tapped modes.  Unlike
    Alice's pair the correlation here is phase insensitive: (-1)^k c_e
    multiplies both the x-x and the p-p entry.
    """
    c = derived_coefficients(params)
    return HypothesisPair(
        state_bit0=GaussianState(_phase_insensitive_cm(c.d, c.e, c.c_e)),
        state_bit1=GaussianState(_phase_insensitive_cm(c.d, c.e, -c.c_e)),
        observer=Observer.EVE,
    )


def validate_physicality(cm: CovMat) -> PhysicalityReport:
    """Report the symplectic spectrum and whether the matrix is a physical state.

    Accepts either convention (quarter-vacuum input is rescaled first) and
    never raises on unphysical input; the verdict is ``ok = all nu >= 1 - 1e-9``.
    """
    unit = cm if cm.convention is Convention.UNIT_VACUUM else to_unit_vacuum(cm)
    nu = symplectic_eigenvalues(unit)
    return PhysicalityReport(
        nu=nu,
        threshold=PHYSICALITY_THRESHOLD,
        ok=bool(np.all(nu >= PHYSICALITY_THRESHOLD)),
    )
