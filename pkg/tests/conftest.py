"""Shared fixtures and random-state generators for the test suite."""

import numpy as np
import pytest
from scipy.linalg import expm

from qillum import Convention, CovMat, GaussianState, ProtocolParams, symplectic_form

# Operating point used throughout: ns = 0.004, kappa = 0.1, g = nb = 1e4,
# M = 2e4 (the 50 km / 0.2 dB/km / 1 THz / 20 ns link).
HEADLINE = dict(ns=0.004, kappa=0.1, g=1e4, nb=1e4, m=20000)


@pytest.fixture
def headline_params() -> ProtocolParams:
    return ProtocolParams(**HEADLINE)


def random_unit_state(rng: np.random.Generator, n_modes: int = 2, nu_max: float = 4.0) -> GaussianState:
    """Random physical state: thermal spectrum conjugated by a random symplectic."""
    dim = 2 * n_modes
    h = rng.normal(size=(dim, dim))
    h = 0.3 * (h + h.T) / 2.0
    sp = expm(symplectic_form(n_modes) @ h)
    nu = 1.0 + rng.uniform(0.0, nu_max - 1.0, n_modes)
    v = sp @ np.diag(np.repeat(nu, 2)) @ sp.T
    return GaussianState(CovMat((v + v.T) / 2.0, Convention.UNIT_VACUUM))


def random_valid_params(rng: np.random.Generator, m: int = 1) -> ProtocolParams:
    """Draw protocol knobs from the documented ranges, rejecting invalid combos."""
    while True:
        ns = 10.0 ** rng.uniform(-4, 0)
        kappa = rng.uniform(0.01, 0.99)
        g = 10.0 ** rng.uniform(0, 6)
        nb = rng.uniform(max(g - 1.0, 0.0), 1e6)
        try:
            return ProtocolParams(ns=ns, kappa=kappa, g=g, nb=nb, m=m)
        except ValueError:
            continue


def thermal_state(mean_photons: float, n_modes: int = 1) -> GaussianState:
    """Unit-vacuum thermal state: covariance (2 N + 1) I."""
    dim = 2 * n_modes
    return GaussianState(
        CovMat((2.0 * mean_photons + 1.0) * np.eye(dim), Convention.UNIT_VACUUM)
    )
