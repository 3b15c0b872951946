"""Closed form versus Fock-space numerics on a fixed grid."""

from __future__ import annotations

import math

from .probes import ProbeSpec, build_probe, coherent, squeezed_vacuum
from .qfi import (
    gaussian_qfi_displacement,
    gaussian_qfi_squeezing_max,
    kerr_coherent_qfi_displacement,
    kerr_coherent_qfi_squeezing,
    qfi_pure,
)

ORACLE_N = (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
ORACLE_GAMMA = (1e-6, 1e-4, 1e-2)
ORACLE_PHI = (0.0, math.pi / 5, math.pi / 2)
RTOL = 1e-6


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def oracle_checks():
    """Yield ``(name, ok, worst_relative_error)`` for each check family."""
    worst_d = worst_s = 0.0
    for n in ORACLE_N:
        for g in ORACLE_GAMMA:
            for phi in ORACLE_PHI:
                state = build_probe(ProbeSpec.from_photons(n, 0.0, phi, g))
                worst_d = max(worst_d, _rel(kerr_coherent_qfi_displacement(n, phi, g), qfi_pure(state, "displacement")))
                worst_s = max(worst_s, _rel(kerr_coherent_qfi_squeezing(n, phi, g), qfi_pure(state, "squeezing")))
    yield "kerr-coherent displacement formula vs Fock", worst_d <= RTOL, worst_d
    yield "kerr-coherent squeezing formula vs Fock", worst_s <= RTOL, worst_s

    worst = 0.0
    for alpha in (0.0, 0.7, 1.3, 3.0):
        worst = max(worst, abs(qfi_pure(coherent(alpha, 0.7), "displacement") - 4.0))
    yield "coherent displacement QFI = 4", worst <= 1e-8, worst

    worst = 0.0
    for n in (0.5, 1.0, 2.0, 3.0):
        sv = squeezed_vacuum(math.asinh(math.sqrt(n)))
        worst = max(worst, _rel(qfi_pure(sv, "displacement"), gaussian_qfi_displacement(n, 1.0)))
    yield "squeezed-vacuum displacement QFI", worst <= RTOL, worst

    worst = 0.0
    for n in (0.0, 1.0, 2.0, 5.0):
        sv = squeezed_vacuum(math.asinh(math.sqrt(n)))
        worst = max(worst, _rel(qfi_pure(sv, "squeezing"), gaussian_qfi_squeezing_max(n)))
    yield "squeezed-vacuum squeezing QFI", worst <= RTOL, worst


def run(stream=None) -> bool:
    ok_all = True
    for name, ok, err in oracle_checks():
        ok_all &= ok
        line = f"[{'PASS' if ok else 'FAIL'}] {name}: worst error {err:.3e}"
        if stream is not None:
            print(line, file=stream)
    return ok_all
