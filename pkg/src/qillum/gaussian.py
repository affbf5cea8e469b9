"""Gaussian-state covariance algebra and binary-discrimination error bounds.

Everything here works on zero-mean Gaussian states described by their real
quadrature covariance matrices in the ordering (x_1, p_1, ..., x_n, p_n).
Two variance conventions coexist in the literature, so every matrix carries
an explicit tag:

* ``QUARTER_VACUUM`` : vacuum quadrature variance 1/4 (the convention the
  protocol matrices are written in, so they can be transcribed by eye).
* ``UNIT_VACUUM``    : vacuum covariance matrix equals the identity.  All
  spectral machinery below (symplectic eigenvalues, Williamson form, state
  overlaps) requires this convention.

The discrimination engine computes ``tr(rho0**s rho1**(1-s))`` for two
zero-mean Gaussian states from their Williamson decompositions, then turns
the s-minimised overlap into quantum Chernoff / Bhattacharyya upper bounds
and the matching lower bound for an M-copy binary hypothesis test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import schur

__all__ = [
    "Convention",
    "CovMat",
    "GaussianState",
    "WilliamsonDecomposition",
    "OverlapResult",
    "ErrorBounds",
    "IllConditionedMatrixError",
    "symplectic_form",
    "to_unit_vacuum",
    "symplectic_eigenvalues",
    "williamson",
    "power_nu",
    "power_trace",
    "power_cm",
    "power_overlap",
    "minimize_overlap",
    "error_bounds_from_overlaps",
    "chernoff_bound",
]

# Symplectic eigenvalues this close below 1 are treated as exactly 1
# (pure-state fuzz from finite-precision eigensolves).
NU_CLAMP_TOL = 1e-9
# Below this distance from 1, the closed forms for nu = 1 are used instead
# of evaluating (nu - 1)**s.
NU_PURE_TOL = 1e-12
# States with a symplectic eigenvalue below 1 - NU_CLAMP_TOL are rejected
# as unphysical by the overlap engine.

_SYMMETRY_ATOL = 1e-12
_GOLDEN_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class IllConditionedMatrixError(ValueError):
    """Raised when a covariance matrix is too ill-conditioned to decompose."""


class Convention(Enum):
    """Vacuum-variance convention of a covariance matrix."""

    QUARTER_VACUUM = "quarter_vacuum"
    UNIT_VACUUM = "unit_vacuum"


def symplectic_form(n_modes: int) -> NDArray[np.float64]:
    """Return the 2n x 2n symplectic form for (x_1, p_1, ..., x_n, p_n)."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


@dataclass(frozen=True)
class CovMat:
    """A real, symmetric, positive-definite quadrature covariance matrix.

    Construction validates shape (square, even dimension), symmetry to
    within 1e-12 absolute and positive definiteness, then freezes the
    underlying array.  Physicality (symplectic eigenvalues >= 1) is *not*
    enforced here; diagnostics on unphysical matrices must stay possible.
    """

    mat: NDArray[np.float64]
    convention: Convention

    def __post_init__(self) -> None:
        m = np.array(self.mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("covariance matrix must be square")
        if m.shape[0] % 2 != 0 or m.shape[0] < 2:
            raise ValueError("covariance matrix must be 2n x 2n with n >= 1")
        if not isinstance(self.convention, Convention):
            raise ValueError("convention must be a Convention member")
        if np.max(np.abs(m - m.T)) > _SYMMETRY_ATOL:
            raise ValueError("covariance matrix must be symmetric to 1e-12")
        m = (m + m.T) / 2.0
        try:
            np.linalg.cholesky(m)
        except np.linalg.LinAlgError:
            raise ValueError("covariance matrix must be positive definite") from None
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def n_modes(self) -> int:
        return self.mat.shape[0] // 2


@dataclass(frozen=True)
class GaussianState:
    """A zero-mean Gaussian state: a covariance matrix plus a zero mean vector."""

    cm: CovMat
    mean: NDArray[np.float64] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        dim = self.cm.mat.shape[0]
        mean = np.zeros(dim) if self.mean is None else np.array(self.mean, dtype=float)
        if mean.shape != (dim,):
            raise ValueError(f"mean must have length {dim}")
        if np.any(mean != 0.0):
            raise ValueError("only zero-mean Gaussian states are supported")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self) -> int:
        return self.cm.n_modes


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Williamson normal form V = S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T."""

    nu: NDArray[np.float64]
    symplectic: NDArray[np.float64]


@dataclass(frozen=True)
class OverlapResult:
    """An s-overlap value q_s = tr(rho0**s rho1**(1-s)) and the s it was taken at."""

    q_s: float
    s: float


@dataclass(frozen=True)
class ErrorBounds:
    """Error-probability bounds for an M-copy binary hypothesis test.

    ``chernoff_upper`` is 0.5 * q_star**M with q_star the s-minimised
    single-copy overlap, ``bhattacharyya_upper`` the same at s = 1/2, and
    ``lower_bound`` the standard two-state lower bound
    0.5 * (1 - sqrt(1 - q_half**(2M))).  All M-fold powers are taken in the
    log domain.
    """

    chernoff_upper: float
    bhattacharyya_upper: float
    lower_bound: float
    s_star: float
    q_star: float
    q_half: float
    m: int


def to_unit_vacuum(cm: CovMat) -> CovMat:
    """Rescale a quarter-vacuum covariance matrix to the unit-vacuum convention.

    Multiplies the matrix by 4 so the vacuum state maps to the identity.
    Rejects input already tagged ``UNIT_VACUUM`` to guard against double
    scaling.
    """
    if cm.convention is Convention.UNIT_VACUUM:
        raise ValueError("covariance matrix is already in the unit-vacuum convention")
    return CovMat(4.0 * cm.mat, Convention.UNIT_VACUUM)


def _require_unit(cm: CovMat, what: str) -> None:
    if cm.convention is not Convention.UNIT_VACUUM:
        raise ValueError(f"{what} requires the unit-vacuum convention")


def symplectic_eigenvalues(cm: CovMat) -> NDArray[np.float64]:
    """Symplectic spectrum of a unit-vacuum covariance matrix.

    Returns the n distinct moduli of the eigenvalues of i Omega V, sorted
    descending.  Values within 1e-9 below 1 are clamped up to 1.
    """
    _require_unit(cm, "symplectic_eigenvalues")
    n = cm.n_modes
    eigs = np.linalg.eigvals(1j * symplectic_form(n) @ cm.mat)
    moduli = np.sort(np.abs(eigs))[::-1]
    # The spectrum comes in +/- pairs; adjacent after sorting.
    nu = moduli.reshape(n, 2).mean(axis=1)
    nu[(nu >= 1.0 - NU_CLAMP_TOL) & (nu < 1.0)] = 1.0
    return nu


def williamson(cm: CovMat) -> WilliamsonDecomposition:
    """Williamson decomposition of a unit-vacuum covariance matrix.

    Computes V = S D S^T with S symplectic and D = diag(nu_1, nu_1, ...,
    nu_n, nu_n), nu sorted descending.  Uses the real Schur form of
    V^{-1/2} Omega V^{-1/2}, whose antisymmetric 2x2 blocks carry 1/nu_k.

    Raises:
        IllConditionedMatrixError: condition number above 1e12.
    """
    _require_unit(cm, "williamson")
    v = cm.mat
    n = cm.n_modes
    cond = np.linalg.cond(v)
    if not np.isfinite(cond) or cond > 1e12:
        raise IllConditionedMatrixError(
            f"covariance matrix condition number {cond:.3e} exceeds 1e12"
        )
    lam, u = np.linalg.eigh(v)
    root = (u * np.sqrt(lam)) @ u.T
    inv_root = (u / np.sqrt(lam)) @ u.T
    core = inv_root @ symplectic_form(n) @ inv_root
    core = (core - core.T) / 2.0  # exact antisymmetry for the Schur step
    t, q = schur(core, output="real")
    # Flip blocks whose upper-right entry came out negative.
    for k in range(n):
        if t[2 * k, 2 * k + 1] < 0.0:
            q[:, [2 * k, 2 * k + 1]] = q[:, [2 * k + 1, 2 * k]]
            t[[2 * k, 2 * k + 1], :] = t[[2 * k + 1, 2 * k], :]
            t[:, [2 * k, 2 * k + 1]] = t[:, [2 * k + 1, 2 * k]]
    nu = np.array([1.0 / t[2 * k, 2 * k + 1] for k in range(n)])
    order = np.argsort(nu)[::-1]
    cols = np.ravel([[2 * k, 2 * k + 1] for k in order])
    q = q[:, cols]
    nu = nu[order]
    nu[(nu >= 1.0 - NU_CLAMP_TOL) & (nu < 1.0)] = 1.0
    s = root @ q @ np.diag(np.repeat(nu, 2) ** -0.5)
    return WilliamsonDecomposition(nu=nu, symplectic=s)


def _check_nu_s(nu: float, s: float) -> None:
    if not nu >= 1.0 - NU_CLAMP_TOL:
        raise ValueError(f"symplectic eigenvalue {nu} is below 1")
    if not 0.0 < s < 1.0:
        raise ValueError(f"power s = {s} must lie strictly inside (0, 1)")


def power_nu(nu: float, s: float) -> float:
    """Symplectic eigenvalue of the normalised s-th power of a thermal state.

    For a thermal mode with symplectic eigenvalue ``nu``, rho**s is again
    thermal (up to normalisation) with eigenvalue

        [(nu+1)**s + (nu-1)**s] / [(nu+1)**s - (nu-1)**s].

    Returns exactly 1 at nu = 1 (pure-state fixed point); (nu-1)**s is
    evaluated as exp(s ln(nu-1)) only when nu - 1 > 1e-12.
    """
    _check_nu_s(nu, s)
    if nu - 1.0 <= NU_PURE_TOL:
        return 1.0
    a = (nu + 1.0) ** s
    b = math.exp(s * math.log(nu - 1.0))
    return (a + b) / (a - b)


def power_trace(nu: float, s: float) -> float:
    """Trace of the s-th power of a thermal state with symplectic eigenvalue nu.

    tr(rho**s) = 2**s / [(nu+1)**s - (nu-1)**s]; equal to 1 at nu = 1.
    """
    _check_nu_s(nu, s)
    if nu - 1.0 <= NU_PURE_TOL:
        return 1.0
    a = (nu + 1.0) ** s
    b = math.exp(s * math.log(nu - 1.0))
    return 2.0**s / (a - b)


def power_cm(decomp: WilliamsonDecomposition, s: float) -> NDArray[np.float64]:
    """Covariance matrix of the normalised s-th power of a Gaussian state.

    Applies the symplectic functional calculus: each Williamson eigenvalue
    nu_k is replaced by power_nu(nu_k, s) while the symplectic matrix is
    kept, i.e. V(s) = S diag(power_nu(nu_k, s)) S^T.
    """
    scaled = np.repeat([power_nu(nu, s) for nu in decomp.nu], 2)
    sp = decomp.symplectic
    return sp @ np.diag(scaled) @ sp.T


def _physical_williamson(state: GaussianState, label: str) -> WilliamsonDecomposition:
    _require_unit(state.cm, "power_overlap")
    dec = williamson(state.cm)
    if np.any(dec.nu < 1.0 - NU_CLAMP_TOL):
        raise ValueError(
            f"{label} is unphysical: symplectic eigenvalues {dec.nu} below 1"
        )
    return dec


def power_overlap(state0: GaussianState, state1: GaussianState, s: float) -> float:
    """The s-overlap Q_s = tr(rho0**s rho1**(1-s)) of two zero-mean Gaussian states.

    For n-mode states with Williamson spectra alpha_k, beta_k,

        Q_s = 2**n prod_k power_trace(alpha_k, s) power_trace(beta_k, 1-s)
                    / sqrt(det[V0(s) + V1(1-s)]),

    with V(s) from the symplectic functional calculus (power_cm).  Both
    states must share the mode count and be unit-vacuum and physical.
    Satisfies Q_s(rho, rho) = 1 and Q_s(rho0, rho1) = Q_{1-s}(rho1, rho0).
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"power s = {s} must lie strictly inside (0, 1)")
    if state0.n_modes != state1.n_modes:
        raise ValueError("states must have the same number of modes")
    dec0 = _physical_williamson(state0, "state0")
    dec1 = _physical_williamson(state1, "state1")
    n = state0.n_modes
    prefactor = 2.0**n
    for nu in dec0.nu:
        prefactor *= power_trace(nu, s)
    for nu in dec1.nu:
        prefactor *= power_trace(nu, 1.0 - s)
    sigma = power_cm(dec0, s) + power_cm(dec1, 1.0 - s)
    q = prefactor / math.sqrt(np.linalg.det(sigma))
    return min(q, 1.0)


def minimize_overlap(
    state0: GaussianState,
    state1: GaussianState,
    s_lo: float = 1e-6,
    s_hi: float = 1.0 - 1e-6,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> OverlapResult:
    """Minimise Q_s over s in (0, 1) by golden-section search.

    Q_s is smooth and unimodal on the search interval (the endpoints are
    singular for mixed states, so they are kept at 1e-6 off the boundary).
    If the s = 1/2 value is at least as small as the golden-section result,
    s = 1/2 is returned: this keeps the Chernoff bound at or below the
    Bhattacharyya bound and resolves the flat minimum of symmetric pairs
    exactly.

    Raises:
        RuntimeError: interval failed to contract below ``tol`` within
            ``max_iter`` iterations.
    """

    def f(s: float) -> float:
        return power_overlap(state0, state1, s)

    a, b = s_lo, s_hi
    c = b - _GOLDEN_INVPHI * (b - a)
    d = a + _GOLDEN_INVPHI * (b - a)
    fc, fd = f(c), f(d)
    iterations = 0
    while abs(b - a) > tol:
        if iterations >= max_iter:
            raise RuntimeError(
                f"overlap minimisation did not converge in {max_iter} iterations"
            )
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN_INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN_INVPHI * (b - a)
            fd = f(d)
        iterations += 1
    s_star = (a + b) / 2.0
    q_star = f(s_star)
    q_half = f(0.5)
    if q_half <= q_star:
        return OverlapResult(q_s=q_half, s=0.5)
    return OverlapResult(q_s=q_star, s=s_star)


def error_bounds_from_overlaps(
    q_star: float, q_half: float, m: int, s_star: float
) -> ErrorBounds:
    """Assemble M-copy error bounds from single-copy overlaps, in log domain.

    ``q_star`` is the s-minimised overlap, ``q_half`` the s = 1/2 overlap.
    The lower bound 0.5 * (1 - sqrt(1 - q_half**(2M))) switches to its
    leading-order form q_half**(2M) / 4 once q_half**(2M) < 1e-12, which
    keeps it positive far past double-precision underflow of the sqrt form.
    """
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    m = int(m)
    if not 0.0 < q_star <= 1.0 or not 0.0 < q_half <= 1.0:
        raise ValueError("overlaps must lie in (0, 1]")
    log_q_star = math.log(q_star)
    log_q_half = math.log(q_half)
    chernoff = 0.5 * math.exp(m * log_q_star)
    bhatt = 0.5 * math.exp(m * log_q_half)
    log_q2m = 2.0 * m * log_q_half
    if log_q2m < math.log(1e-12):
        lower = 0.25 * math.exp(log_q2m)
    else:
        lower = 0.5 * (1.0 - math.sqrt(-math.expm1(log_q2m)))
    return ErrorBounds(
        chernoff_upper=chernoff,
        bhattacharyya_upper=bhatt,
        lower_bound=lower,
        s_star=s_star,
        q_star=q_star,
        q_half=q_half,
        m=m,
    )


def chernoff_bound(state0: GaussianState, state1: GaussianState, m: int) -> ErrorBounds:
    """Quantum Chernoff / Bhattacharyya error bounds for M copies of a state pair.

    Pr(e) <= 0.5 * (min_s Q_s)**M together with the s = 1/2 upper bound and
    the matching lower bound; see ``error_bounds_from_overlaps`` for the
    exact expressions.  Identical states give 1/2 for all three.
    """
    best = minimize_overlap(state0, state1)
    q_half = best.q_s if best.s == 0.5 else power_overlap(state0, state1, 0.5)
    return error_bounds_from_overlaps(best.q_s, q_half, m, best.s)
