"""Quantum Fisher information of pure probes for displacement and squeezing.

For a pure probe and a unitary family ``exp(-i lambda G)`` the QFI is
``4 Var(G)`` on the probe, evaluated here in the truncated Fock space.
The closed forms below serve as fast paths and as oracles for the
numerics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import DomainError, TruncationError, TruncationSensitivityError
from .fock import (
    LEAK_TOL,
    TAIL_WIDTH,
    FockOperator,
    FockState,
    check_truncation,
    displacement_generator,
    squeezing_generator,
    truncation_error,
    variance,
)
from .optimize import grid_then_refine
from .probes import ProbeSpec, build_probe

SENSITIVITY_RTOL = 1e-8
PHI_GRID = 64
BETA_GRID = 41
REFINE_TOL = 1e-6


class EstimationTask(str, enum.Enum):
    DISPLACEMENT = "displacement"
    SQUEEZING = "squeezing"

    def generator(self, dim: int) -> FockOperator:
        if self is EstimationTask.DISPLACEMENT:
            return displacement_generator(dim)
        return squeezing_generator(dim)

    @property
    def support_shift(self) -> int:
        """How far the generator moves amplitude in photon number."""
        return 1 if self is EstimationTask.DISPLACEMENT else 2


def as_task(task) -> EstimationTask:
    try:
        return EstimationTask(task)
    except ValueError:
        raise DomainError(f"unknown estimation task {task!r}") from None


@dataclass(frozen=True)
class QfiResult:
    value: float
    probe: ProbeSpec
    task: EstimationTask
    truncation_leakage: float
    dim: int
    optimal_phi: float | None = None
    optimal_beta: float | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"QFI must be finite and >= 0, got {self.value!r}")

    def to_text(self) -> str:
        lines = [
            f"task: {self.task.value}",
            f"value: {float(f'{self.value:.12g}')!r}",
            f"alpha_mag: {self.probe.alpha_mag:.12g}",
            f"phi: {self.probe.phi:.12g}",
            f"r: {self.probe.r:.12g}",
            f"gamma: {self.probe.gamma:.12g}",
            f"n_alpha: {self.probe.n_alpha:.12g}",
            f"n_sq: {self.probe.n_sq:.12g}",
            f"dim: {self.dim}",
            f"truncation_leakage: {self.truncation_leakage:.6g}",
        ]
        if self.optimal_phi is not None:
            lines.append(f"optimal_phi: {self.optimal_phi:.12g}")
        if self.optimal_beta is not None:
            lines.append(f"optimal_beta: {self.optimal_beta:.12g}")
        return "\n".join(lines)


def _generator_spill(state: FockState, task: EstimationTask) -> float:
    # G psi computed in a slightly larger space; any weight landing on the
    # top rows means the truncated G^2 misses part of the fluctuations
    shift = task.support_shift
    big = state.padded(state.dim + shift)
    g_psi = task.generator(big.dim).apply(big.amplitudes)
    total = float(np.vdot(g_psi, g_psi).real)
    if total == 0.0:
        return 0.0
    tail = float(np.sum(np.abs(g_psi[-(TAIL_WIDTH + shift):]) ** 2))
    return tail / total


def qfi_pure(probe: FockState, task, leak_tol: float = LEAK_TOL) -> float:
    """``4 Var(G)`` on a pure probe state."""
    task = as_task(task)
    check_truncation(probe, leak_tol, "probe")
    spill = _generator_spill(probe, task)
    if spill > leak_tol:
        raise TruncationError(
            f"generator pushes {spill:.3e} of its weight onto the truncation edge at dim={probe.dim}",
            leakage=spill,
            dim=probe.dim,
        )
    return 4.0 * variance(probe, task.generator(probe.dim))


def qfi_probe(spec: ProbeSpec, task, verify_truncation: bool = False, leak_tol: float = LEAK_TOL) -> QfiResult:
    """Build the probe for ``spec`` and return its QFI.

    With ``verify_truncation`` the value is recomputed at 1.25x the
    dimension and a relative change above 1e-8 raises.
    """
    task = as_task(task)
    dim = spec.resolved_dim()
    state = build_probe(spec.with_(dim=dim), leak_tol)
    value = qfi_pure(state, task, leak_tol)
    if verify_truncation:
        _verify(spec, task, dim, value, leak_tol)
    return QfiResult(value, spec.with_(dim=dim), task, truncation_error(state), dim)


def _verify(spec, task, dim, value, leak_tol):
    big = math.ceil(1.25 * dim)
    ref = qfi_pure(build_probe(spec.with_(dim=big), leak_tol), task, leak_tol)
    rel = abs(ref - value) / max(abs(ref), 1e-300)
    if rel > SENSITIVITY_RTOL:
        raise TruncationSensitivityError(
            f"QFI changes by {rel:.3e} (relative) when dim grows {dim} -> {big}", leakage=rel, dim=dim
        )


# closed forms


def gaussian_qfi_displacement(n: float, beta: float) -> float:
    """Displacement QFI of a displaced squeezed probe with ``n`` photons, fraction ``beta``.

    ``4 + 8 N beta + 8 sqrt(N beta (1 + N beta))``, i.e. ``4 e^{2r}``; it is
    the same for every displacement phase.
    """
    if n < 0 or not 0.0 <= beta <= 1.0:
        raise DomainError(f"need n >= 0 and 0 <= beta <= 1, got n={n}, beta={beta}")
    n_sq = n * beta
    return 4.0 + 8.0 * n_sq + 8.0 * math.sqrt(n_sq * (1.0 + n_sq))


def gaussian_qfi_squeezing_max(n: float) -> float:
    """Squeezed-vacuum squeezing QFI ``8 N^2 + 8 N + 2``, the fixed-energy Gaussian optimum."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    return 8.0 * n * n + 8.0 * n + 2.0


def gaussian_qfi_squeezing(n_alpha: float, n_sq: float, phi: float | None = None) -> float:
    """Squeezing QFI of ``D(alpha) S(r)|0>``.

    ``2 cosh^2(2r) + 4 N_alpha (e^{2r} cos^2 phi + e^{-2r} sin^2 phi)``.
    With ``phi=None`` the phase-optimal value (``phi = 0``) is returned.
    """
    if n_alpha < 0 or n_sq < 0:
        raise DomainError("photon numbers must be >= 0")
    r = math.asinh(math.sqrt(n_sq))
    if phi is None:
        phi = 0.0
    c, s = math.cos(phi), math.sin(phi)
    return 2.0 * math.cosh(2 * r) ** 2 + 4.0 * n_alpha * (math.exp(2 * r) * c * c + math.exp(-2 * r) * s * s)


def kerr_coherent_qfi_displacement(n: float, phi: float, gamma: float) -> float:
    """Displacement QFI of ``U_gamma |alpha>`` with ``|alpha|^2 = n``, ``arg alpha = phi``.

    Built from ``<a^k> = alpha^k e^{-i gamma k^2} exp(n(e^{-2ik gamma} - 1))``::

        4 + 8n [1 - e^{-4n sin^2 g} (1 + cos 2(phi - g - n sin 2g))
                   + e^{-2n sin^2 2g} cos(2 phi - 4g - n sin 4g)]
    """
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if gamma == 0 or n == 0:
        return 4.0
    g = gamma
    psi1 = phi - g - n * math.sin(2 * g)
    psi2 = 2 * phi - 4 * g - n * math.sin(4 * g)
    damp1 = math.exp(-4 * n * math.sin(g) ** 2)
    damp2 = math.exp(-2 * n * math.sin(2 * g) ** 2)
    bracket = -math.expm1(-4 * n * math.sin(g) ** 2) - damp1 * math.cos(2 * psi1) + damp2 * math.cos(psi2)
    return 4.0 + 8.0 * n * bracket


def kerr_coherent_qfi_squeezing(n: float, phi: float, gamma: float) -> float:
    """Squeezing QFI of ``U_gamma |alpha>``::

        2 + 2n {2 + n - n e^{-4n sin^2 2g} (1 + cos 2(2 phi - 4g - n sin 4g))
                      + n e^{-n(1 - cos 8g)} cos(4 phi - 16g - n sin 8g)}
    """
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    g = gamma
    if g == 0 or n == 0:
        return 2.0 + 4.0 * n
    psi2 = 2 * phi - 4 * g - n * math.sin(4 * g)
    psi4 = 4 * phi - 16 * g - n * math.sin(8 * g)
    damp2 = math.exp(-4 * n * math.sin(2 * g) ** 2)
    damp4 = math.exp(-n * (1 - math.cos(8 * g)))
    return 2.0 + 2.0 * n * (2.0 + n - n * damp2 * (1 + math.cos(2 * psi2)) + n * damp4 * math.cos(psi4))


# optimizers


def optimize_phase(
    spec: ProbeSpec,
    task,
    n_grid: int = PHI_GRID,
    tol: float = REFINE_TOL,
    verify_truncation: bool = False,
    leak_tol: float = LEAK_TOL,
) -> QfiResult:
    """Maximize the QFI over the displacement phase ``phi`` in ``[0, 2 pi)``.

    ``spec.phi`` is ignored. A grid of ``n_grid`` phases is followed by
    golden-section refinement around the best local maxima.
    """
    task = as_task(task)
    if n_grid < 64:
        raise DomainError("phase grid needs at least 64 points")
    dim = spec.resolved_dim()
    base = spec.with_(dim=dim)

    def f(phi):
        return qfi_pure(build_probe(base.with_(phi=phi), leak_tol), task, leak_tol)

    if spec.alpha_mag == 0:
        best_phi = 0.0
        best = f(0.0)
        grid_values = np.array([best])
    else:
        grid = np.linspace(0.0, 2 * math.pi, n_grid, endpoint=False)
        best_phi, best, grid_values = grid_then_refine(f, grid, 0.0, 2 * math.pi, tol, periodic=True)
    probe = base.with_(phi=best_phi)
    if verify_truncation:
        _verify(probe, task, dim, best, leak_tol)
    state = build_probe(probe, leak_tol)
    return QfiResult(
        best,
        probe,
        task,
        truncation_error(state),
        dim,
        optimal_phi=best_phi,
        extra={"grid_max": float(np.max(grid_values))},
    )


def optimize_phase_and_fraction(
    n: float,
    gamma: float,
    task,
    n_beta: int = BETA_GRID,
    n_phi: int = PHI_GRID,
    tol: float = REFINE_TOL,
    verify_truncation: bool = False,
    leak_tol: float = LEAK_TOL,
) -> QfiResult:
    """Maximize over squeezing fraction ``beta`` and phase at fixed total photons ``n``."""
    task = as_task(task)
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if n_beta < 41:
        raise DomainError("fraction grid needs at least 41 points")
    cache = {}

    def g(beta):
        beta = min(max(float(beta), 0.0), 1.0)
        if beta not in cache:
            spec = ProbeSpec.from_fraction(n, beta, gamma=gamma)
            cache[beta] = optimize_phase(spec, task, n_phi, tol, leak_tol=leak_tol)
        return cache[beta].value

    grid = np.linspace(0.0, 1.0, n_beta)
    best_beta, best, grid_values = grid_then_refine(g, grid, 0.0, 1.0, tol, periodic=False, n_candidates=2)
    res = cache[min(max(best_beta, 0.0), 1.0)]
    if verify_truncation:
        _verify(res.probe, task, res.dim, res.value, leak_tol)
    return QfiResult(
        res.value,
        res.probe,
        task,
        res.truncation_leakage,
        res.dim,
        optimal_phi=res.optimal_phi,
        optimal_beta=best_beta,
        extra={"grid_max": float(np.max(grid_values))},
    )


def qfi_finite_difference_check(
    spec: ProbeSpec, task, dlambda: float = 1e-3, lambda0: float = 0.0, leak_tol: float = LEAK_TOL
) -> float:
    """QFI from the fidelity between neighbouring members of the family.

    ``8 (1 - |<psi_l|psi_{l+dl}>|) / dl^2`` with ``psi_l = exp(-i l G) psi``
    built by dense matrix exponentiation. Independent of ``qfi_pure``.
    """
    task = as_task(task)
    if not 1e-6 <= dlambda <= 1e-2:
        raise DomainError(f"dlambda must lie in [1e-6, 1e-2], got {dlambda}")
    dim = spec.resolved_dim()
    state = build_probe(spec.with_(dim=dim), leak_tol)
    gen = task.generator(dim).matrix()
    psi0 = expm(-1j * lambda0 * gen) @ state.amplitudes if lambda0 else state.amplitudes
    psi1 = expm(-1j * (lambda0 + dlambda) * gen) @ state.amplitudes
    check_truncation(FockState(psi0), leak_tol, "evolved probe")
    check_truncation(FockState(psi1), leak_tol, "evolved probe")
    overlap = abs(np.vdot(psi0, psi1))
    return 8.0 * (1.0 - overlap) / dlambda**2
