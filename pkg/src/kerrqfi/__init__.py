"""Quantum Fisher information of Kerr-modified Gaussian probes."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DomainError,
    KerrQfiError,
    NumericalInconsistencyError,
    TruncationError,
    TruncationSensitivityError,
)
from .fock import FockOperator, FockState, expectation, leakage, tail_mass, variance  # noqa: E402
from .nong import covariance, moments, nong_entropic, nong_normalized  # noqa: E402
from .probes import ProbeSpec, apply_kerr, build_probe, coherent, displaced_squeezed, squeezed_vacuum  # noqa: E402
from .qfi import (  # noqa: E402
    EstimationTask,
    QfiResult,
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
