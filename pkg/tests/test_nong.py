import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrqfi.errors import DomainError, NumericalInconsistencyError
from kerrqfi.fock import FockState
from kerrqfi.nong import (
    CovarianceMatrix,
    Moments,
    covariance,
    entropy_from_nu,
    entropy_from_thermal,
    moments,
    nong_entropic,
    nong_entropic_thermal,
    nong_max,
    nong_normalized,
    symplectic_excess,
)
from kerrqfi.probes import ProbeSpec, build_probe, coherent, squeezed_vacuum


def test_moments_examples():
    m = moments(FockState.vacuum(16))
    assert (m.mean_a, m.mean_n, m.mean_a2) == (0, 0, 0)
    alpha = 1.3 * complex(math.cos(0.4), math.sin(0.4))
    m = moments(coherent(1.3, 0.4))
    assert m.mean_a == pytest.approx(alpha, abs=1e-8)
    assert m.mean_n == pytest.approx(abs(alpha) ** 2, abs=1e-8)
    assert m.mean_a2 == pytest.approx(alpha**2, abs=1e-8)


def test_squeezed_moments_sign():
    r = 0.8
    m = moments(squeezed_vacuum(r))
    assert m.mean_a == 0
    assert m.mean_n == pytest.approx(math.sinh(r) ** 2, rel=1e-10)
    # positive under S(r) = exp{(r/2)(a^dag^2 - a^2)}
    assert m.mean_a2.real == pytest.approx(math.cosh(r) * math.sinh(r), rel=1e-10)


def test_covariance_examples():
    assert covariance(Moments(0, 0, 0)).matrix() == pytest.approx(np.eye(2) / 2)
    a = 1.1 - 0.4j
    assert covariance(Moments(a, abs(a) ** 2, a * a)).matrix() == pytest.approx(np.eye(2) / 2)
    assert covariance(Moments(0, 3.0, 0)).matrix() == pytest.approx(np.diag([3.5, 3.5]))


def test_covariance_uncertainty_violation():
    with pytest.raises(NumericalInconsistencyError):
        covariance(Moments(0, 0.0, 0.3))


def test_moments_invariant():
    with pytest.raises(NumericalInconsistencyError):
        Moments(2.0, 1.0, 0)


def test_gaussian_probes_have_zero_nong():
    assert nong_entropic(coherent(2.0, 1.0)) <= 1e-9
    assert nong_entropic(build_probe(ProbeSpec.from_photons(3.0, 1.5, 0.6))) <= 1e-9


def test_kerr_probe_nong_dual_paths():
    st_ = build_probe(ProbeSpec.from_photons(2.0, 0.0, 0.0, 0.05))
    d1 = nong_entropic(st_)
    d2 = nong_entropic_thermal(st_)
    assert d1 > 0
    assert d1 == pytest.approx(d2, abs=1e-12)
    # through the covariance matrix of the moments as well
    nu = covariance(moments(st_)).symplectic_eigenvalue
    assert entropy_from_nu(nu) == pytest.approx(d1, abs=1e-9)


def test_symplectic_excess_matches_determinant():
    st_ = build_probe(ProbeSpec.from_photons(1.5, 0.4, 0.2, 0.3))
    cov = covariance(moments(st_))
    assert symplectic_excess(st_) == pytest.approx(cov.det - 0.25, rel=1e-9)


def test_entropy_formulas():
    assert entropy_from_nu(0.5) == 0.0
    assert entropy_from_nu(0.5 - 5e-10) == 0.0
    with pytest.raises(NumericalInconsistencyError):
        entropy_from_nu(0.4)
    for nbar in (1e-12, 0.3, 4.0, 50.0):
        assert entropy_from_nu(nbar + 0.5) == pytest.approx(entropy_from_thermal(nbar), rel=1e-10)


def test_normalized_examples():
    assert nong_normalized(coherent(1.0), 1.0) == pytest.approx(0.0, abs=1e-9)
    for n in (1, 2, 5):
        assert nong_normalized(FockState.basis(n, 64), float(n)) == pytest.approx(1.0, abs=1e-9)
    v = nong_normalized(build_probe(ProbeSpec.from_photons(2.0, 0.0, 0.0, 0.05)), 2.0)
    assert 0 < v < 1
    with pytest.raises(DomainError):
        nong_normalized(coherent(1.0), 0.0)
    assert nong_max(2.0) == pytest.approx(3 * math.log(3) - 2 * math.log(2))


def test_rotation_invariance():
    st_ = build_probe(ProbeSpec.from_photons(2.5, 0.3, 0.1, 0.07))
    for theta in (0.3, 1.7, 4.0):
        rot = FockState(st_.amplitudes * np.exp(1j * theta * np.arange(st_.dim)))
        cov = covariance(moments(rot))
        assert cov.det == pytest.approx(covariance(moments(st_)).det, rel=1e-10)
        assert nong_entropic(rot) == pytest.approx(nong_entropic(st_), abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 20), st.floats(0, 2), st.floats(0, 2 * math.pi))
def test_gaussian_zero_property(n_alpha, n_sq, phi):
    assert nong_entropic(build_probe(ProbeSpec.from_photons(n_alpha, n_sq, phi))) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 10), st.floats(0, 1))
def test_nong_bounded_by_number_state(n_alpha, gamma):
    st_ = build_probe(ProbeSpec.from_photons(n_alpha, 0.0, 0.0, gamma))
    d = nong_normalized(st_, n_alpha)
    assert -1e-12 <= d <= 1 + 1e-9


def test_covariance_matrix_type():
    c = CovarianceMatrix(1.0, 0.5, 0.2)
    assert c.det == pytest.approx(0.46)
