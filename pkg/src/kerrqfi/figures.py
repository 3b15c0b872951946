"""Preset sweeps regenerating the QFI figures.

Grid densities are not fixed by the source figures; the presets use

* QFI vs ``N_alpha`` panels: 60 log-spaced points on ``[0.1, 100]``
  plus the integers 1, 2, 3;
* QFI vs non-Gaussianity panels: 15 points per curve on ``(0, 3]`` in
  ``N_alpha`` or ``(0, 0.1]`` in ``gamma``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field


from .output import Curve, atomic_write, csv_text, svg_text
from .sweep import COLUMNS, SweepAxis, SweepConfig, default_output_dir, reference_values, run_sweep

NALPHA_AXIS = SweepAxis("nalpha", 0.1, 100.0, 60, log=True, include=(1.0, 2.0, 3.0))
NONG_NALPHA_AXIS = SweepAxis("nalpha", 0.2, 3.0, 15)
NONG_GAMMA_AXIS = SweepAxis("gamma", 0.1 / 15, 0.1, 15)
REFERENCE_NSQ = (1.0, 2.0, 3.0)


@dataclass
class FigurePreset:
    name: str
    title: str
    solid: list
    dashed: list = field(default_factory=list)
    reference_nsq: tuple = ()
    x: str = "axis"
    x_label: str = "N_alpha"
    y_label: str = "QFI"
    log_x: bool = False
    log_y: bool = False


def _qfi_vs_nalpha(name, title, task, family, gammas, n_sq=None):
    fixed_base = {} if n_sq is None else {"nsq": n_sq}
    solid = [
        SweepConfig(task, family, NALPHA_AXIS, {**fixed_base, "gamma": g}, ("phi",), REFERENCE_NSQ, label=f"gamma={g:g}")
        for g in gammas
    ]
    return FigurePreset(name, title, solid, reference_nsq=REFERENCE_NSQ, log_x=True, log_y=True)


def _qfi_vs_nong(name, title, task):
    solid = [
        SweepConfig(task, "kerr-coherent", NONG_NALPHA_AXIS, {"gamma": g}, ("phi",), label=f"gamma={g:g}")
        for g in (0.04, 0.06, 0.10)
    ]
    dashed = [
        SweepConfig(task, "kerr-coherent", NONG_GAMMA_AXIS, {"nalpha": n}, ("phi",), label=f"N_alpha={n:g}")
        for n in (3.0, 2.0, 1.0)
    ]
    return FigurePreset(name, title, solid, dashed, x="nong_normalized", x_label="delta_R (nats / max at N_alpha)")


PRESETS = {
    "fig1-top": _qfi_vs_nalpha(
        "fig1-top", "Displacement QFI, Kerr-modified coherent probes", "displacement", "kerr-coherent",
        (1e-2, 1e-4, 1e-6),
    ),
    "fig1-bottom": _qfi_vs_nalpha(
        "fig1-bottom", "Displacement QFI, Kerr-modified displaced squeezed probes (N_sq=2)", "displacement",
        "kerr-squeezed", (0.01, 0.008, 0.005), n_sq=2.0,
    ),
    "fig2-top": _qfi_vs_nalpha(
        "fig2-top", "Squeezing QFI, Kerr-modified coherent probes", "squeezing", "kerr-coherent",
        (1e-2, 1e-4, 1e-6),
    ),
    "fig2-bottom": _qfi_vs_nalpha(
        "fig2-bottom", "Squeezing QFI, Kerr-modified displaced squeezed probes (N_sq=2)", "squeezing",
        "kerr-squeezed", (0.01, 0.005, 0.001), n_sq=2.0,
    ),
    "fig3-top": _qfi_vs_nong("fig3-top", "Displacement QFI vs normalized non-Gaussianity", "displacement"),
    "fig3-bottom": _qfi_vs_nong("fig3-bottom", "Squeezing QFI vs normalized non-Gaussianity", "squeezing"),
}


@dataclass
class FigureResult:
    preset: FigurePreset
    solid: list
    dashed: list
    references: list

    def rows(self):
        for res in self.solid + self.dashed:
            for row in res.rows:
                yield {"curve": res.config.label, **row}

    def csv(self) -> str:
        return csv_text(list(self.rows()), ("curve",) + COLUMNS)

    def svg(self) -> str:
        p = self.preset
        curves = [Curve(r.config.label, r.column(p.x), r.column("qfi")) for r in self.solid]
        curves += [Curve(r.config.label, r.column(p.x), r.column("qfi"), dashed=True) for r in self.dashed]
        curves += self.references
        return svg_text(curves, p.title, p.x_label, p.y_label, p.log_x, p.log_y)


def run_figure(name: str, workers: int = 1) -> FigureResult:
    preset = PRESETS[name]
    solid = [run_sweep(cfg, workers) for cfg in preset.solid]
    dashed = [run_sweep(cfg, workers) for cfg in preset.dashed]
    refs = []
    if preset.reference_nsq:
        xs = preset.solid[0].sweep.values()
        task = preset.solid[0].task
        for n_sq in preset.reference_nsq:
            refs.append(Curve(f"Gaussian N_sq={n_sq:g}", xs, reference_values(task, n_sq, xs), dashed=True))
    return FigureResult(preset, solid, dashed, refs)


def write_figure(name: str, out_dir: str | None = None, workers: int = 1) -> tuple[str, str]:
    """Run a preset and write ``<name>.csv``, ``<name>.svg`` and ``<name>.meta.json``."""
    out_dir = out_dir or default_output_dir()
    os.makedirs(out_dir, exist_ok=True)
    fig = run_figure(name, workers)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    svg_path = os.path.join(out_dir, f"{name}.svg")
    atomic_write(csv_path, fig.csv())
    atomic_write(svg_path, fig.svg())
    meta = {
        "preset": name,
        "curves": [r.metadata for r in fig.solid + fig.dashed],
        "reference_nsq": list(fig.preset.reference_nsq),
        "grid_points": {r.config.label: len(r.rows) for r in fig.solid + fig.dashed},
    }
    atomic_write(os.path.join(out_dir, f"{name}.meta.json"), json.dumps(meta, indent=2, default=str) + "\n")
    return csv_path, svg_path
