"""Gaussian and Kerr-modified Gaussian probe states.

A probe is ``U_gamma D(alpha) S(r) |0>`` with

* ``S(r) = exp{(r/2)(a^dag^2 - a^2)}``; with this sign the ``x``
  quadrature is stretched, ``Var(x) = e^{2r}/2``, and ``p`` is squeezed,
* ``D(alpha) = exp(alpha a^dag - conj(alpha) a)``, ``alpha = |alpha| e^{i phi}``,
* ``U_gamma = exp(-i gamma n^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DomainError, NumericalInconsistencyError
from .fock import (
    DIM_CAP,
    LEAK_TOL,
    FockOperator,
    FockState,
    check_truncation,
    default_dim,
    make_annihilation,
    make_number,
    expectation,
)

PHOTON_NUMBER_RTOL = 1e-6
DIM_QUANTUM = 32


@dataclass(frozen=True)
class ProbeSpec:
    """Parameters of the probe ``|alpha, r, gamma>``.

    ``dim=0`` selects the truncation automatically from the photon
    statistics of the probe.
    """

    alpha_mag: float = 0.0
    phi: float = 0.0
    r: float = 0.0
    gamma: float = 0.0
    dim: int = 0

    def __post_init__(self):
        for name in ("alpha_mag", "r", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise DomainError(f"{name} must be finite and >= 0, got {value!r}")
        if not math.isfinite(self.phi):
            raise DomainError(f"phi must be finite, got {self.phi!r}")
        if self.dim != 0 and self.dim < 2:
            raise DomainError(f"dim must be 0 (auto) or >= 2, got {self.dim!r}")

    @classmethod
    def from_photons(cls, n_alpha=0.0, n_sq=0.0, phi=0.0, gamma=0.0, dim=0):
        """Build from amplitude photons ``|alpha|^2`` and squeezing photons ``sinh^2 r``."""
        if n_alpha < 0 or n_sq < 0:
            raise DomainError("photon numbers must be >= 0")
        return cls(math.sqrt(n_alpha), phi, math.asinh(math.sqrt(n_sq)), gamma, dim)

    @classmethod
    def from_fraction(cls, n_total, beta, phi=0.0, gamma=0.0, dim=0):
        """Split ``n_total`` photons with squeezing fraction ``beta``."""
        if n_total < 0 or not 0.0 <= beta <= 1.0:
            raise DomainError(f"need n_total >= 0 and 0 <= beta <= 1, got {n_total}, {beta}")
        return cls.from_photons((1.0 - beta) * n_total, beta * n_total, phi, gamma, dim)

    @property
    def alpha(self) -> complex:
        return self.alpha_mag * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def n_alpha(self) -> float:
        return self.alpha_mag**2

    @property
    def n_sq(self) -> float:
        return math.sinh(self.r) ** 2

    @property
    def n_total(self) -> float:
        return self.n_sq + self.n_alpha

    @property
    def beta(self) -> float:
        n = self.n_total
        return self.n_sq / n if n > 0 else 0.0

    def number_variance_bound(self) -> float:
        """Largest photon-number variance over the displacement phase.

        ``|alpha|^2 e^{2r} + 2 sinh^2 r cosh^2 r``; Kerr evolution leaves the
        number distribution untouched, so this also covers ``gamma > 0``.
        """
        return self.n_alpha * math.exp(2 * self.r) + 2 * (math.sinh(self.r) * math.cosh(self.r)) ** 2

    def squeezing_cutoff(self) -> int:
        """Photon number past which the squeezed-vacuum tail is below ~1e-16.

        The weights fall geometrically, ``tanh(r)^{2m}`` per photon pair,
        which a variance-based rule underestimates.
        """
        if self.r == 0:
            return 0
        ratio = math.tanh(self.r) ** 2
        return 2 * math.ceil(math.log(1e-16) / math.log(ratio))

    def resolved_dim(self, cap: int = DIM_CAP) -> int:
        if self.dim:
            return self.dim
        dim = default_dim(self.n_total, self.number_variance_bound(), cap=10**9)
        if self.r > 0:
            spread = self.n_alpha * math.exp(2 * self.r)
            dim = max(dim, math.ceil(self.squeezing_cutoff() + self.n_alpha + 12 * math.sqrt(spread + 1) + 25))
        # round up so that nearby probes share cached eigendecompositions
        dim = DIM_QUANTUM * math.ceil(dim / DIM_QUANTUM)
        return int(min(dim, cap))

    def with_(self, **changes) -> "ProbeSpec":
        return replace(self, **changes)


def coherent(alpha_mag: float, phi: float = 0.0, dim: int = 0, leak_tol: float = LEAK_TOL) -> FockState:
    """Coherent state from the closed-form Poisson amplitudes."""
    if alpha_mag < 0:
        raise DomainError(f"alpha_mag must be >= 0, got {alpha_mag}")
    dim = dim or default_dim(alpha_mag**2)
    n = np.arange(dim)
    if alpha_mag == 0:
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
    else:
        log_mag = -0.5 * alpha_mag**2 + n * math.log(alpha_mag) - 0.5 * gammaln(n + 1)
        amps = np.exp(log_mag) * np.exp(1j * phi * n)
    return check_truncation(FockState(amps), leak_tol, "coherent state")


@lru_cache(maxsize=256)
def _squeezed_amplitudes(r: float, dim: int) -> np.ndarray:
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0 / math.sqrt(math.cosh(r))
    if r > 0:
        m = np.arange(1, (dim - 1) // 2 + 1)
        log_mag = (
            m * math.log(math.tanh(r))
            + 0.5 * gammaln(2 * m + 1)
            - m * math.log(2.0)
            - gammaln(m + 1)
            - 0.5 * math.log(math.cosh(r))
        )
        amps[2 * m] = np.exp(log_mag)
    amps.setflags(write=False)
    return amps


def squeezed_vacuum(r: float, dim: int = 0, leak_tol: float = LEAK_TOL) -> FockState:
    """``S(r)|0>`` with ``c_{2m} = tanh(r)^m sqrt((2m)!) / (2^m m! sqrt(cosh r))``."""
    if not r >= 0:
        raise DomainError(f"r must be >= 0, got {r}")
    if not dim:
        dim = ProbeSpec(r=r).resolved_dim()
    return check_truncation(FockState(_squeezed_amplitudes(float(r), int(dim))), leak_tol, "squeezed vacuum")


@lru_cache(maxsize=24)
def _displacement_eigh(dim: int):
    # i(a^dag - a) is hermitian, so exp(t(a^dag - a)) = V exp(-i t w) V^dag
    a = make_annihilation(dim).entries
    w, v = np.linalg.eigh(1j * (a.T - a))
    v.setflags(write=False)
    return w, v


def displace(state: FockState, alpha: complex, leak_tol: float = LEAK_TOL) -> FockState:
    """Apply ``D(alpha)`` through the eigendecomposition of the truncated generator.

    ``D(|alpha| e^{i phi}) = R(phi) exp(|alpha|(a^dag - a)) R(phi)^dag`` with
    ``R(phi) = exp(i phi n)``, so one eigendecomposition per dimension
    serves every amplitude and phase.
    """
    mag = abs(alpha)
    if mag == 0:
        return state
    phi = cmath.phase(complex(alpha))
    w, v = _displacement_eigh(state.dim)
    rot = np.exp(1j * phi * np.arange(state.dim))
    vec = rot.conj() * state.amplitudes
    vec = v @ (np.exp(-1j * mag * w) * (v.conj().T @ vec))
    out = FockState(rot * vec)
    return check_truncation(out, leak_tol, "displaced state")


def displacement_operator(alpha: complex, dim: int) -> FockOperator:
    """Dense ``D(alpha)`` by scaling-and-squaring matrix exponential."""
    a = make_annihilation(dim).entries
    gen = alpha * a.conj().T - np.conj(alpha) * a
    return FockOperator("dense", expm(gen))


def squeeze_operator(r: float, dim: int) -> FockOperator:
    """Dense ``S(r)`` by matrix exponential."""
    a = make_annihilation(dim).entries
    a2 = a @ a
    return FockOperator("dense", expm(0.5 * r * (a2.conj().T - a2)))


def displaced_squeezed(spec: ProbeSpec, leak_tol: float = LEAK_TOL) -> FockState:
    """``D(alpha) S(r)|0>``; ``spec.gamma`` is not applied here."""
    dim = spec.resolved_dim()
    sq = squeezed_vacuum(spec.r, dim, leak_tol)
    return displace(sq, spec.alpha, leak_tol)


def apply_kerr(state: FockState, gamma: float) -> FockState:
    """``c_n -> exp(-i gamma n^2) c_n``."""
    if gamma == 0:
        return state
    n = np.arange(state.dim, dtype=float)
    return FockState(np.exp(-1j * gamma * n * n) * state.amplitudes)


def build_probe(spec: ProbeSpec, leak_tol: float = LEAK_TOL, check_photons: bool = True) -> FockState:
    """Construct ``U_gamma D(alpha) S(r)|0>``."""
    if spec.r == 0:
        # closed form is exact and cheaper; avoids the eigendecomposition
        state = coherent(spec.alpha_mag, spec.phi, spec.resolved_dim(), leak_tol)
    else:
        state = displaced_squeezed(spec, leak_tol)
    state = apply_kerr(state, spec.gamma)
    if check_photons:
        n_num = expectation(state, make_number(state.dim)).real
        n_exp = spec.n_total
        if abs(n_num - n_exp) > PHOTON_NUMBER_RTOL * max(1.0, n_exp):
            raise NumericalInconsistencyError(
                f"photon number {n_num:.10g} differs from sinh^2 r + |alpha|^2 = {n_exp:.10g}"
            )
    return state
