import math

import numpy as np
import pytest

from kerrqfi.errors import DomainError, TruncationError
from kerrqfi.fock import FockState
from kerrqfi.probes import ProbeSpec, build_probe, coherent, squeezed_vacuum
from kerrqfi.qfi import (
    EstimationTask,
    gaussian_qfi_displacement,
    gaussian_qfi_squeezing,
    gaussian_qfi_squeezing_max,
    kerr_coherent_qfi_displacement,
    kerr_coherent_qfi_squeezing,
    optimize_phase,
    optimize_phase_and_fraction,
    qfi_finite_difference_check,
    qfi_probe,
    qfi_pure,
)

H_S_N2 = 4 + 16 + 8 * math.sqrt(6)


def sv(n):
    return squeezed_vacuum(math.asinh(math.sqrt(n)))


def test_generator_variance_examples():
    assert qfi_pure(coherent(1.3, 0.4), "displacement") == pytest.approx(4.0, abs=1e-8)
    assert qfi_pure(sv(2.0), "displacement") == pytest.approx(H_S_N2, rel=1e-6)
    assert H_S_N2 == pytest.approx(39.5959, abs=1e-4)
    assert qfi_pure(sv(2.0), "squeezing") == pytest.approx(50.0, rel=1e-6)


def test_vacuum_squeezing_qfi():
    assert qfi_pure(FockState.vacuum(64), "squeezing") == pytest.approx(2.0, abs=1e-10)
    assert gaussian_qfi_squeezing_max(0) == 2.0
    assert gaussian_qfi_squeezing_max(2) == 50.0


def test_unknown_task():
    with pytest.raises(DomainError):
        qfi_pure(FockState.vacuum(64), "phase")


def test_generator_spill_is_detected():
    # weight right at the edge: G pushes it past the cutoff
    amps = np.zeros(64, complex)
    amps[0] = math.sqrt(1 - 5e-9)
    amps[-3] = math.sqrt(5e-9)
    with pytest.raises(TruncationError):
        qfi_pure(FockState(amps), "squeezing")


def test_gaussian_displacement_closed_form():
    assert gaussian_qfi_displacement(5, 0) == 4.0
    assert gaussian_qfi_displacement(3, 1) == pytest.approx(4 + 24 + 8 * math.sqrt(12))
    assert gaussian_qfi_displacement(3, 1) == pytest.approx(55.7128, abs=1e-4)
    with pytest.raises(DomainError):
        gaussian_qfi_displacement(3, 1.1)
    with pytest.raises(DomainError):
        gaussian_qfi_displacement(-1, 0.5)


def test_gaussian_displacement_matches_fock_at_half_fraction():
    spec = ProbeSpec.from_photons(2.0, 2.0)
    res = optimize_phase(spec, "displacement")
    assert res.value == pytest.approx(gaussian_qfi_displacement(4.0, 0.5), rel=1e-6)


@pytest.mark.parametrize("n_alpha,n_sq,phi", [(2.0, 1.0, 0.0), (3.0, 2.0, 0.7), (0.0, 3.0, 0.0), (5.0, 0.5, 2.0)])
def test_gaussian_squeezing_closed_form_vs_fock(n_alpha, n_sq, phi):
    state = build_probe(ProbeSpec.from_photons(n_alpha, n_sq, phi))
    assert qfi_pure(state, "squeezing") == pytest.approx(gaussian_qfi_squeezing(n_alpha, n_sq, phi), rel=1e-9)


def test_gaussian_squeezing_phase_optimum():
    res = optimize_phase(ProbeSpec.from_photons(4.0, 1.0), "squeezing")
    assert res.value == pytest.approx(gaussian_qfi_squeezing(4.0, 1.0), rel=1e-9)


@pytest.mark.parametrize("n", [0.5, 1.0, 2.0, 5.0, 10.0, 20.0])
@pytest.mark.parametrize("gamma", [1e-6, 1e-4, 1e-2])
@pytest.mark.parametrize("phi", [0.0, math.pi / 5, math.pi / 2])
def test_kerr_coherent_formulas_vs_fock(n, gamma, phi):
    state = build_probe(ProbeSpec.from_photons(n, 0.0, phi, gamma))
    assert kerr_coherent_qfi_displacement(n, phi, gamma) == pytest.approx(qfi_pure(state, "displacement"), rel=1e-6)
    assert kerr_coherent_qfi_squeezing(n, phi, gamma) == pytest.approx(qfi_pure(state, "squeezing"), rel=1e-6)


def test_kerr_coherent_formula_limits():
    assert kerr_coherent_qfi_displacement(7.0, 0.3, 0.0) == 4.0
    assert kerr_coherent_qfi_displacement(1.0, 0.0, 1e-6) == pytest.approx(4.0, abs=1e-6)
    assert kerr_coherent_qfi_squeezing(0.0, 0.4, 0.3) == 2.0
    coh = qfi_pure(coherent(math.sqrt(2.0), 0.0), "squeezing")
    assert kerr_coherent_qfi_squeezing(2.0, 0.0, 0.0) == pytest.approx(coh, abs=1e-8)
    # strong coupling, far from the small-gamma regime
    state = build_probe(ProbeSpec.from_photons(3.0, 0.0, math.pi / 7, 0.7))
    assert kerr_coherent_qfi_squeezing(3.0, math.pi / 7, 0.7) == pytest.approx(qfi_pure(state, "squeezing"), rel=1e-9)


def test_optimize_phase_examples():
    assert optimize_phase(ProbeSpec.from_photons(3.0), "displacement").value == pytest.approx(4.0, abs=1e-8)
    res = optimize_phase(ProbeSpec.from_photons(0.0, 2.0), "displacement")
    assert res.value == pytest.approx(H_S_N2, rel=1e-6)
    res = optimize_phase(ProbeSpec.from_photons(3.0, 0.0, gamma=0.01), "displacement")
    phis = np.linspace(0, 2 * math.pi, 20001)
    oracle = max(kerr_coherent_qfi_displacement(3.0, p, 0.01) for p in phis)
    assert res.value == pytest.approx(oracle, rel=1e-6)
    assert res.value >= oracle - 1e-9
    assert kerr_coherent_qfi_displacement(3.0, res.optimal_phi, 0.01) == pytest.approx(res.value, rel=1e-9)


def test_optimizer_never_below_grid():
    res = optimize_phase(ProbeSpec.from_photons(10.0, 0.0, gamma=0.01), "squeezing")
    grid = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    values = [kerr_coherent_qfi_squeezing(10.0, p, 0.01) for p in grid]
    assert res.value >= max(values) - 1e-9
    assert res.value >= res.extra["grid_max"]


def test_phase_and_fraction_gaussian():
    res = optimize_phase_and_fraction(2.0, 0.0, "displacement")
    assert res.optimal_beta == pytest.approx(1.0, abs=1 / 40)
    assert res.value == pytest.approx(gaussian_qfi_displacement(2.0, 1.0), rel=1e-8)


def test_phase_and_fraction_kerr_below_gaussian():
    res = optimize_phase_and_fraction(2.0, 0.05, "displacement")
    assert res.value <= gaussian_qfi_displacement(2.0, 1.0)


def test_finite_difference_examples():
    assert qfi_finite_difference_check(ProbeSpec.from_photons(2.0), "displacement", 1e-3) == pytest.approx(4.0, rel=1e-4)
    fd = qfi_finite_difference_check(ProbeSpec.from_photons(0.0, 1.0), "displacement", 1e-3)
    assert fd == pytest.approx(4 + 8 + 8 * math.sqrt(2), rel=1e-4)
    spec = ProbeSpec.from_photons(2.0, 0.0, gamma=0.01)
    fd = qfi_finite_difference_check(spec, "squeezing", 1e-3)
    assert fd == pytest.approx(qfi_probe(spec, "squeezing").value, rel=1e-3)


def test_finite_difference_lambda_independence():
    spec = ProbeSpec.from_photons(2.0, 0.5, 0.3, 0.02)
    for task in EstimationTask:
        at0 = qfi_finite_difference_check(spec, task, 1e-3, lambda0=0.0)
        at3 = qfi_finite_difference_check(spec, task, 1e-3, lambda0=0.3)
        assert at3 == pytest.approx(at0, rel=1e-4)


def test_finite_difference_domain():
    with pytest.raises(DomainError):
        qfi_finite_difference_check(ProbeSpec(), "displacement", 0.1)


def test_verify_truncation_passes_for_auto_dim():
    res = qfi_probe(ProbeSpec.from_photons(20.0, 1.0, 0.2, 0.01), "squeezing", verify_truncation=True)
    assert res.value > 0


def test_gamma_zero_reductions():
    for n in (0.5, 2.0, 7.0):
        for phi in (0.0, 1.0):
            st = build_probe(ProbeSpec.from_photons(n, 0.0, phi, 0.0))
            assert qfi_pure(st, "displacement") == pytest.approx(4.0, abs=1e-8)
            assert qfi_pure(st, "squeezing") == pytest.approx(2 + 4 * n, abs=1e-8)


def test_fig1_top_late_growth():
    ns = np.linspace(5, 100, 20)
    vals = [optimize_phase(ProbeSpec.from_photons(n, 0.0, gamma=1e-2), "displacement").value for n in ns]
    assert np.all(np.diff(vals[-10:]) > 0)


def test_qfi_result_text():
    res = qfi_probe(ProbeSpec.from_photons(4.0), "displacement")
    text = res.to_text()
    assert "value: 4.0" in text
    assert "task: displacement" in text
