"""Truncated Fock-space states and operators for a single bosonic mode.

Quadrature convention used throughout the package::

    x = (a + a^dag) / sqrt(2),    p = (a - a^dag) / (i sqrt(2))

so that the vacuum has ``Var(x) = Var(p) = 1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    NotHermitianError,
    TruncationError,
)

LEAK_TOL = 1e-8
HERMITIAN_TOL = 1e-12
VARIANCE_FLOOR = -1e-10
TAIL_WIDTH = 4
MIN_DIM = 64
DIM_CAP = 1024


def _frozen(arr, dtype=complex):
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _check_dim(dim):
    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"truncation dimension must be an integer >= 2, got {dim!r}")
    return int(dim)


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state given by its amplitudes in the photon-number basis.

    ``amplitudes[n]`` is the coefficient of ``|n>``. The array is stored
    read-only; build a new state instead of mutating one.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes)
        if amps.ndim != 1:
            raise InvalidDimensionError("amplitudes must be a 1-d vector")
        _check_dim(amps.shape[0])
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def padded(self, dim: int) -> "FockState":
        """Embed into a larger space by appending zero amplitudes."""
        if dim < self.dim:
            raise InvalidDimensionError(f"cannot pad a dim={self.dim} state down to {dim}")
        out = np.zeros(dim, dtype=complex)
        out[: self.dim] = self.amplitudes
        return FockState(out)

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockState":
        """Number state ``|n>``."""
        dim = _check_dim(dim)
        if not 0 <= n < dim:
            raise InvalidDimensionError(f"basis index {n} outside 0..{dim - 1}")
        amps = np.zeros(dim, dtype=complex)
        amps[n] = 1.0
        return cls(amps)

    @classmethod
    def vacuum(cls, dim: int) -> "FockState":
        return cls.basis(0, dim)


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Operator on the truncated space, stored dense or as a diagonal.

    When ``hermitian`` is set the entries are checked against their
    adjoint at construction.
    """

    kind: str
    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if self.kind == "dense":
            if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
                raise InvalidDimensionError("dense operator needs a square matrix")
        elif self.kind == "diagonal":
            if entries.ndim != 1:
                raise InvalidDimensionError("diagonal operator needs a vector")
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        _check_dim(entries.shape[0])
        object.__setattr__(self, "entries", _frozen(entries))
        if self.hermitian:
            if self.kind == "dense":
                dev = np.max(np.abs(self.entries - self.entries.conj().T))
            else:
                dev = np.max(np.abs(self.entries.imag))
            if dev > HERMITIAN_TOL:
                raise NotHermitianError(f"operator flagged hermitian deviates by {dev:.3e}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def matrix(self) -> np.ndarray:
        if self.kind == "dense":
            return self.entries
        return np.diag(self.entries)

    def dagger(self) -> "FockOperator":
        if self.kind == "dense":
            return FockOperator("dense", self.entries.conj().T, self.hermitian)
        return FockOperator("diagonal", self.entries.conj(), self.hermitian)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        if vec.shape[0] != self.dim:
            raise DimensionMismatchError(f"operator dim {self.dim} vs vector dim {vec.shape[0]}")
        if self.kind == "dense":
            return self.entries @ vec
        return self.entries * vec

    def __matmul__(self, other):
        if isinstance(other, FockState):
            return FockState(self.apply(other.amplitudes))
        if not isinstance(other, FockOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatchError(f"operator dims {self.dim} and {other.dim} differ")
        if self.kind == "diagonal" and other.kind == "diagonal":
            return FockOperator("diagonal", self.entries * other.entries)
        return FockOperator("dense", self.matrix() @ other.matrix())

    def __add__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatchError(f"operator dims {self.dim} and {other.dim} differ")
        herm = self.hermitian and other.hermitian
        if self.kind == "diagonal" and other.kind == "diagonal":
            return FockOperator("diagonal", self.entries + other.entries, herm)
        return FockOperator("dense", self.matrix() + other.matrix(), herm)

    def __sub__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self + other.scaled(-1.0)

    def scaled(self, factor) -> "FockOperator":
        herm = self.hermitian and np.isreal(factor)
        return FockOperator(self.kind, self.entries * factor, bool(herm))


@lru_cache(maxsize=64)
def make_annihilation(dim: int) -> FockOperator:
    """Ladder operator ``a`` with ``a[n-1, n] = sqrt(n)``."""
    dim = _check_dim(dim)
    mat = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    return FockOperator("dense", mat)


@lru_cache(maxsize=64)
def make_creation(dim: int) -> FockOperator:
    return make_annihilation(dim).dagger()


@lru_cache(maxsize=64)
def make_number(dim: int) -> FockOperator:
    dim = _check_dim(dim)
    return FockOperator("diagonal", np.arange(dim, dtype=float), hermitian=True)


@lru_cache(maxsize=64)
def displacement_generator(dim: int) -> FockOperator:
    """``a^dag + a``."""
    a = make_annihilation(dim).entries
    return FockOperator("dense", a + a.T, hermitian=True)


@lru_cache(maxsize=64)
def squeezing_generator(dim: int) -> FockOperator:
    """``(a^dag^2 + a^2) / 2``."""
    a = make_annihilation(dim).entries
    a2 = a @ a
    return FockOperator("dense", 0.5 * (a2 + a2.T), hermitian=True)


def kerr_operator(gamma: float, dim: int) -> FockOperator:
    """Diagonal Kerr unitary ``exp(-i gamma n^2)``."""
    n = np.arange(_check_dim(dim), dtype=float)
    return FockOperator("diagonal", np.exp(-1j * gamma * n * n))


def rotation_operator(theta: float, dim: int) -> FockOperator:
    """Phase rotation ``exp(i theta n)``."""
    n = np.arange(_check_dim(dim), dtype=float)
    return FockOperator("diagonal", np.exp(1j * theta * n))


def quadrature_x(dim: int) -> FockOperator:
    a = make_annihilation(dim).entries
    return FockOperator("dense", (a + a.T) / math.sqrt(2.0), hermitian=True)


def quadrature_p(dim: int) -> FockOperator:
    a = make_annihilation(dim).entries
    return FockOperator("dense", (a - a.T) / (1j * math.sqrt(2.0)), hermitian=True)


def _check_pair(state, op):
    if state.dim != op.dim:
        raise DimensionMismatchError(f"state dim {state.dim} vs operator dim {op.dim}")


def expectation(state: FockState, op: FockOperator) -> complex:
    """``<psi|A|psi>``."""
    _check_pair(state, op)
    return complex(np.vdot(state.amplitudes, op.apply(state.amplitudes)))


def variance(state: FockState, op: FockOperator) -> float:
    """``<A^2> - <A>^2`` for a hermitian operator.

    ``<A^2>`` is evaluated as ``||A psi||^2``. Values in the band
    ``[-1e-10, 0)`` are clamped to zero.
    """
    if not op.hermitian:
        raise NotHermitianError("variance requires a hermitian operator")
    _check_pair(state, op)
    a_psi = op.apply(state.amplitudes)
    mean = np.vdot(state.amplitudes, a_psi).real
    second = np.vdot(a_psi, a_psi).real
    var = float(second - mean * mean)
    if var < 0.0:
        if var < VARIANCE_FLOOR * max(1.0, second):
            raise ValueError(f"negative variance {var:.3e}")
        var = 0.0
    return var


def leakage(state: FockState) -> float:
    """Probability mass missing from the truncated state, ``1 - ||psi||^2``."""
    return max(0.0, 1.0 - state.norm2)


def tail_mass(state: FockState, k: int = TAIL_WIDTH) -> float:
    """Mass carried by the top ``k`` number states ``n >= dim - k``."""
    k = min(max(int(k), 1), state.dim)
    return float(np.sum(np.abs(state.amplitudes[-k:]) ** 2))


def truncation_error(state: FockState, k: int = TAIL_WIDTH) -> float:
    """Largest of the norm deficit and the edge tail mass.

    States built through truncated unitaries keep unit norm, so only the
    tail reveals that the cutoff was hit.
    """
    return max(leakage(state), tail_mass(state, k))


def check_truncation(state: FockState, leak_tol: float = LEAK_TOL, what: str = "state") -> FockState:
    err = truncation_error(state)
    if err > leak_tol:
        raise TruncationError(
            f"{what}: truncation error {err:.3e} exceeds tolerance {leak_tol:.1e} at dim={state.dim}",
            leakage=err,
            dim=state.dim,
        )
    return state


def default_dim(mean_n: float, var_n: float | None = None, cap: int = DIM_CAP) -> int:
    """Auto truncation ``max(64, ceil(N + 12 sqrt(V + 1) + 25))``, capped.

    ``V`` is the photon-number variance; it defaults to ``N`` (Poisson),
    which recovers ``N + 12 sqrt(N + 1) + 25``.
    """
    if var_n is None:
        var_n = mean_n
    dim = max(MIN_DIM, math.ceil(mean_n + 12.0 * math.sqrt(var_n + 1.0) + 25.0))
    return int(min(dim, cap))
