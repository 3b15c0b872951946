"""Entropic non-Gaussianity of pure single-mode states.

For a pure state the measure reduces to the von Neumann entropy of the
Gaussian state with the same first and second moments. Entropies are in
nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import DomainError, NumericalInconsistencyError
from .fock import LEAK_TOL, FockState, check_truncation

NU_CLAMP = 1e-9
MOMENT_TOL = 1e-10


@dataclass(frozen=True)
class Moments:
    mean_a: complex
    mean_n: float
    mean_a2: complex

    def __post_init__(self):
        if self.mean_n < abs(self.mean_a) ** 2 - MOMENT_TOL * max(1.0, self.mean_n):
            raise NumericalInconsistencyError(
                f"<n> = {self.mean_n:.12g} below |<a>|^2 = {abs(self.mean_a) ** 2:.12g}"
            )


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetrized quadrature covariances, vacuum = diag(1/2, 1/2)."""

    xx: float
    pp: float
    xp: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.xx, self.xp], [self.xp, self.pp]])

    @property
    def det(self) -> float:
        return self.xx * self.pp - self.xp * self.xp

    @property
    def symplectic_eigenvalue(self) -> float:
        return math.sqrt(max(self.det, 0.0))


def _ladder(vec: np.ndarray):
    """``a psi`` and ``a^dag psi`` without losing the top component."""
    n = np.arange(1, vec.shape[0] + 1)
    a_psi = np.zeros(vec.shape[0] + 1, dtype=complex)
    a_psi[:-2] = np.sqrt(n[:-1]) * vec[1:]
    ad_psi = np.zeros(vec.shape[0] + 1, dtype=complex)
    ad_psi[1:] = np.sqrt(n) * vec
    return a_psi, ad_psi


def moments(state: FockState, leak_tol: float = LEAK_TOL) -> Moments:
    """``<a>``, ``<a^dag a>`` and ``<a^2>``."""
    check_truncation(state, leak_tol, "state")
    psi = state.amplitudes
    a_psi, _ = _ladder(psi)
    a_psi = a_psi[:-1]
    mean_a = complex(np.vdot(psi, a_psi))
    mean_n = float(np.vdot(a_psi, a_psi).real)
    a2_psi, _ = _ladder(a_psi)
    mean_a2 = complex(np.vdot(psi, a2_psi[:-1]))
    return Moments(mean_a, mean_n, mean_a2)


def covariance(m: Moments) -> CovarianceMatrix:
    """Quadrature covariance matrix of the moments.

    With ``s = <n> - |<a>|^2`` and ``c = <a^2> - <a>^2``::

        xx = 1/2 + s + Re c,   pp = 1/2 + s - Re c,   xp = Im c
    """
    s = m.mean_n - abs(m.mean_a) ** 2
    c = m.mean_a2 - m.mean_a**2
    cov = CovarianceMatrix(0.5 + s + c.real, 0.5 + s - c.real, c.imag)
    if cov.det < 0.25 - NU_CLAMP:
        raise NumericalInconsistencyError(f"covariance violates the uncertainty bound: det = {cov.det:.12g}")
    return cov


def symplectic_excess(state: FockState) -> float:
    """``det(sigma) - 1/4`` evaluated without cancellation.

    With ``u = (a - <a>) psi`` and ``w = (a^dag - <a^dag>) psi`` one has
    ``det(sigma) - 1/4 = ||u||^2 ||w||^2 - |<w|u>|^2``, a Gram determinant,
    computed here as ``||u||^2`` times the squared residual of ``w`` after
    projecting out ``u``.
    """
    psi = np.concatenate((state.amplitudes, [0.0]))
    a_psi, ad_psi = _ladder(state.amplitudes)
    mean_a = np.vdot(psi, a_psi)
    u = a_psi - mean_a * psi
    w = ad_psi - np.conj(mean_a) * psi
    uu = float(np.vdot(u, u).real)
    if uu == 0.0:
        return 0.0
    for _ in range(2):
        w = w - (np.vdot(u, w) / uu) * u
    return uu * float(np.vdot(w, w).real)


def entropy_from_nu(nu: float) -> float:
    """Gaussian entropy ``(nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2)``."""
    if nu < 0.5 - NU_CLAMP:
        raise NumericalInconsistencyError(f"symplectic eigenvalue {nu:.12g} below 1/2")
    if nu <= 0.5:
        return 0.0
    return float(xlogy(nu + 0.5, nu + 0.5) - xlogy(nu - 0.5, nu - 0.5))


def entropy_from_thermal(nbar: float) -> float:
    """Same entropy written with the thermal number ``nbar = nu - 1/2``."""
    if nbar < -NU_CLAMP:
        raise NumericalInconsistencyError(f"thermal number {nbar:.12g} is negative")
    if nbar <= 0:
        return 0.0
    return float((nbar + 1.0) * math.log1p(nbar) - xlogy(nbar, nbar))


def thermal_number(state: FockState) -> float:
    """``nu - 1/2`` for the Gaussian reference of ``state``."""
    excess = symplectic_excess(state)
    # nu - 1/2 = (nu^2 - 1/4) / (nu + 1/2)
    nu = math.sqrt(0.25 + excess)
    return excess / (nu + 0.5)


def nong_entropic(state: FockState, leak_tol: float = LEAK_TOL) -> float:
    """Entropic non-Gaussianity ``S(tau)`` of a pure state."""
    check_truncation(state, leak_tol, "state")
    return entropy_from_nu(0.5 + thermal_number(state))


def nong_entropic_thermal(state: FockState, leak_tol: float = LEAK_TOL) -> float:
    """Second route to ``nong_entropic`` through the thermal-number entropy."""
    check_truncation(state, leak_tol, "state")
    return entropy_from_thermal(thermal_number(state))


def nong_max(n: float) -> float:
    """``(N + 1) ln(N + 1) - N ln N``, reached by the number state ``|N>``."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    return entropy_from_thermal(n)


def nong_normalized(state: FockState, n_alpha: float, leak_tol: float = LEAK_TOL) -> float:
    """Non-Gaussianity relative to the maximum at ``n_alpha`` photons."""
    if not n_alpha > 0:
        raise DomainError(f"n_alpha must be > 0, got {n_alpha}")
    return nong_entropic(state, leak_tol) / nong_max(n_alpha)
