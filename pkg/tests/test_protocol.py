"""Protocol parameter validation and covariance-matrix construction."""

import numpy as np
import pytest

from qillum import (
    Observer,
    ProtocolParams,
    alice_pair,
    derived_coefficients,
    eve_pair,
    power_overlap,
    source_cm,
    to_unit_vacuum,
    validate_physicality,
)
from qillum.gaussian import Convention, CovMat, GaussianState

from conftest import HEADLINE, random_valid_params


# ----------------------------------------------------------------------
# parameter validation


def test_valid_params_accepted(headline_params):
    assert headline_params.m == 20000


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        (dict(ns=0.0), "ns"),
        (dict(ns=-1.0), "ns"),
        (dict(kappa=0.0), "kappa"),
        (dict(kappa=1.0), "kappa"),
        (dict(kappa=1.5), "(0, 1)"),
        (dict(g=0.5), "g"),
        (dict(nb=1.0), "nb >= g - 1"),
        (dict(m=0), "m"),
        (dict(m=1.5), "m"),
        (dict(ns=float("nan")), "finite"),
    ],
)
def test_invalid_params_rejected_with_named_invariant(overrides, fragment):
    values = dict(HEADLINE)
    values.update(overrides)
    with pytest.raises(ValueError, match=None) as excinfo:
        ProtocolParams(**values)
    assert fragment in str(excinfo.value)


def test_no_amplifier_limit():
    # g = 1 forces nb = 0; nb > 0 without gain is inconsistent
    params = ProtocolParams(ns=0.01, kappa=0.3, g=1.0, nb=0.0, m=10)
    coeffs = derived_coefficients(params)
    assert coeffs.a == 2 * 0.3**2 * 0.01 + 1.0
    with pytest.raises(ValueError, match="nb must be 0 when g = 1"):
        ProtocolParams(ns=0.01, kappa=0.3, g=1.0, nb=0.5, m=10)


def test_kappa_limits_are_usable():
    for kappa in (1e-6, 1.0 - 1e-6):
        ProtocolParams(ns=0.004, kappa=kappa, g=1e4, nb=1e4, m=10)


# ----------------------------------------------------------------------
# derived coefficients


def test_coefficients_at_headline_point(headline_params):
    c = derived_coefficients(headline_params)
    assert c.s_diag == 1.008
    assert c.c_q == pytest.approx(0.12674383614203888, rel=1e-15)
    assert c.a == 2001.8
    assert c.c_a == pytest.approx(1.2674383614203888, rel=1e-15)
    assert c.d == 1.0072
    assert c.c_e == pytest.approx(0.22768399153212332, rel=1e-15)
    # e = 2 (1 - kappa) kappa g ns + 2 (1 - kappa) nb + 1 = 7.2 + 18000 + 1
    assert c.e == pytest.approx(18008.2, abs=1e-9)


def test_coefficient_recomputation_is_bit_identical(headline_params):
    c1 = derived_coefficients(headline_params)
    c2 = derived_coefficients(headline_params)
    assert c1 == c2


def test_matrix_entries_equal_coefficients_exactly(headline_params):
    c = derived_coefficients(headline_params)
    alice = alice_pair(headline_params)
    mat0 = 4.0 * alice.state_bit0.cm.mat
    assert mat0[0, 0] == c.a and mat0[1, 1] == c.a
    assert mat0[2, 2] == c.s_diag and mat0[3, 3] == c.s_diag
    assert mat0[0, 2] == c.c_a and mat0[1, 3] == -c.c_a
    eve = eve_pair(headline_params)
    emat0 = 4.0 * eve.state_bit0.cm.mat
    assert emat0[0, 0] == c.d and emat0[2, 2] == c.e
    assert emat0[0, 2] == c.c_e and emat0[1, 3] == c.c_e


# ----------------------------------------------------------------------
# source state


def test_source_cm_quarter_entries():
    cm = source_cm(0.004)
    assert cm.convention is Convention.QUARTER_VACUUM
    assert np.allclose(np.diag(cm.mat), 0.252)
    assert cm.mat[0, 2] == pytest.approx(0.0316860, abs=5e-7)
    assert cm.mat[1, 3] == pytest.approx(-0.0316860, abs=5e-7)


def test_source_cm_rejects_nonpositive_ns():
    for ns in (0.0, -0.1):
        with pytest.raises(ValueError):
            source_cm(ns)


# ----------------------------------------------------------------------
# hypothesis pairs


def test_alice_pair_sign_symmetry(headline_params):
    pair = alice_pair(headline_params)
    assert pair.observer is Observer.ALICE
    m0 = pair.state_bit0.cm.mat.copy()
    m1 = pair.state_bit1.cm.mat
    # negating the correlation block of bit 0 gives bit 1
    m0[0:2, 2:4] *= -1.0
    m0[2:4, 0:2] *= -1.0
    assert np.array_equal(m0, m1)


def test_alice_pair_is_phase_sensitive(headline_params):
    mat = 4.0 * alice_pair(headline_params).state_bit0.cm.mat
    assert mat[0, 2] == -mat[1, 3]  # opposite signs on x-x and p-p


def test_eve_pair_is_phase_insensitive(headline_params):
    mat = 4.0 * eve_pair(headline_params).state_bit0.cm.mat
    assert mat[0, 2] == mat[1, 3]  # same sign on both quadratures
    pair = eve_pair(headline_params)
    assert pair.observer is Observer.EVE


def test_pairs_share_diagonal_blocks(headline_params):
    for pair in (alice_pair(headline_params), eve_pair(headline_params)):
        m0, m1 = pair.state_bit0.cm.mat, pair.state_bit1.cm.mat
        assert np.array_equal(np.diag(m0), np.diag(m1))


def test_eve_correlation_vanishes_as_kappa_to_one():
    params = ProtocolParams(ns=0.004, kappa=1.0 - 1e-6, g=1e4, nb=1e4, m=10)
    c = derived_coefficients(params)
    assert c.c_e == pytest.approx(0.0, abs=1e-5)
    assert c.d == pytest.approx(1.0, abs=1e-7)
    # her two hypotheses then essentially coincide
    pair = eve_pair(params)
    q = power_overlap(
        GaussianState(to_unit_vacuum(pair.state_bit0.cm)),
        GaussianState(to_unit_vacuum(pair.state_bit1.cm)),
        0.5,
    )
    assert q == pytest.approx(1.0, abs=1e-9)


def test_eve_correlation_vanishes_with_signal():
    params = ProtocolParams(ns=1e-9, kappa=0.1, g=1e4, nb=1e4, m=10)
    assert derived_coefficients(params).c_e == pytest.approx(0.0, abs=1e-6)


# ----------------------------------------------------------------------
# physicality


def test_protocol_states_are_physical(headline_params):
    assert validate_physicality(source_cm(headline_params.ns)).ok
    for pair in (alice_pair(headline_params), eve_pair(headline_params)):
        for state in (pair.state_bit0, pair.state_bit1):
            report = validate_physicality(state.cm)
            assert report.ok
            assert np.all(report.nu >= report.threshold)


def test_source_physicality_reports_pure_spectrum():
    report = validate_physicality(source_cm(0.25))
    assert report.ok
    assert np.allclose(report.nu, [1.0, 1.0], atol=1e-9)


def test_sub_vacuum_matrix_fails_without_raising():
    report = validate_physicality(CovMat(0.5 * np.eye(4), Convention.UNIT_VACUUM))
    assert not report.ok
    assert np.allclose(report.nu, [0.5, 0.5])


def test_physicality_sweep_over_random_parameters():
    rng = np.random.default_rng(101)
    for _ in range(1000):
        params = random_valid_params(rng)
        assert validate_physicality(source_cm(params.ns)).ok
        for pair in (alice_pair(params), eve_pair(params)):
            assert validate_physicality(pair.state_bit0.cm).ok
            assert validate_physicality(pair.state_bit1.cm).ok


def test_alice_overlap_monotone_in_signal_brightness():
    # more signal photons never make Alice's discrimination harder
    previous = 2.0
    for ns in np.logspace(-4, -2, 7):
        params = ProtocolParams(ns=float(ns), kappa=0.1, g=1e4, nb=1e4, m=1)
        pair = alice_pair(params)
        q = power_overlap(
            GaussianState(to_unit_vacuum(pair.state_bit0.cm)),
            GaussianState(to_unit_vacuum(pair.state_bit1.cm)),
            0.5,
        )
        assert q <= previous + 1e-12
        previous = q
