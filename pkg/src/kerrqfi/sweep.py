"""Declarative parameter sweeps over probe families."""

from __future__ import annotations

import configparser
import datetime as _dt
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import ConfigError, DomainError, KerrQfiError
from .fock import DIM_CAP, LEAK_TOL
from .nong import nong_entropic, nong_max
from .probes import ProbeSpec, build_probe
from .qfi import (
    EstimationTask,
    as_task,
    gaussian_qfi_displacement,
    gaussian_qfi_squeezing,
    optimize_phase,
    optimize_phase_and_fraction,
    qfi_probe,
)

FAMILIES = ("coherent", "squeezed", "gaussian", "kerr-coherent", "kerr-squeezed")
PARAMS = ("nalpha", "nsq", "gamma", "phi", "beta", "n")
OPTIMIZABLE = ("phi", "beta")
COLUMNS = ("axis", "qfi", "optimal_phi", "optimal_beta", "nong", "nong_normalized", "leakage", "dim_used")


@dataclass(frozen=True)
class SweepAxis:
    param: str
    start: float
    stop: float
    count: int
    log: bool = False
    include: tuple = ()

    def __post_init__(self):
        if self.param not in PARAMS:
            raise ConfigError(f"cannot sweep {self.param!r}; choose from {', '.join(PARAMS)}")
        if self.count < 2:
            raise ConfigError("sweep count must be >= 2")
        if not self.start < self.stop:
            raise ConfigError(f"sweep needs start < stop, got {self.start} >= {self.stop}")
        if self.log and self.start <= 0:
            raise ConfigError("log spacing needs start > 0")

    @classmethod
    def parse(cls, text: str) -> "SweepAxis":
        """``param:start:stop:count[:log]``."""
        parts = text.split(":")
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] not in ("log", "lin")):
            raise ConfigError(f"bad sweep {text!r}; expected param:start:stop:count[:log]")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]), len(parts) == 5 and parts[4] == "log")
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        if self.log:
            grid = np.geomspace(self.start, self.stop, self.count)
        else:
            grid = np.linspace(self.start, self.stop, self.count)
        if self.include:
            grid = np.unique(np.concatenate((grid, np.asarray(self.include, dtype=float))))
        return grid


@dataclass(frozen=True)
class SweepConfig:
    task: EstimationTask
    probe_family: str
    sweep: SweepAxis
    fixed: dict = field(default_factory=dict)
    optimize: tuple = ()
    reference_curves: tuple = ()
    dim: int = 0
    dim_cap: int = DIM_CAP
    verify_truncation: bool = False
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "task", as_task(self.task))
        if self.probe_family not in FAMILIES:
            raise ConfigError(f"unknown probe family {self.probe_family!r}")
        for key, value in self.fixed.items():
            if key not in PARAMS:
                raise ConfigError(f"unknown fixed parameter {key!r}")
            if key != "phi" and value < 0:
                raise ConfigError(f"{key} must be >= 0, got {value}")
        if "beta" in self.fixed and not 0 <= self.fixed["beta"] <= 1:
            raise ConfigError("beta must lie in [0, 1]")
        for opt in self.optimize:
            if opt not in OPTIMIZABLE:
                raise ConfigError(f"cannot optimize {opt!r}")
        if self.sweep.param in self.optimize:
            raise ConfigError(f"{self.sweep.param} is both swept and optimized")

    def describe(self) -> dict:
        out = asdict(self)
        out["task"] = self.task.value
        return out


@dataclass
class SweepResult:
    rows: list
    config: SweepConfig
    metadata: dict = field(default_factory=dict)

    def column(self, name):
        return np.array([np.nan if row[name] is None else row[name] for row in self.rows], dtype=float)


class SweepPointError(KerrQfiError):
    def __init__(self, message, axis_value):
        super().__init__(message)
        self.axis_value = axis_value


def _point_spec(cfg: SweepConfig, value: float):
    """Resolve total photons, fraction and the probe spec at one grid point."""
    p = dict(cfg.fixed)
    p[cfg.sweep.param] = value
    fam = cfg.probe_family
    gamma = p.get("gamma", 0.0) if fam.startswith("kerr") else 0.0
    if fam in ("coherent", "kerr-coherent"):
        p["nsq"] = 0.0
    elif fam == "squeezed":
        p["nalpha"] = 0.0
    if "beta" in p and fam in ("gaussian", "kerr-squeezed"):
        n_total = p.get("n", p.get("nalpha", 0.0) + p.get("nsq", 0.0))
        p["nalpha"], p["nsq"] = (1 - p["beta"]) * n_total, p["beta"] * n_total
    elif "n" in p and "nalpha" not in p and "nsq" not in p and fam != "squeezed":
        p["nalpha"] = p["n"] - p.get("nsq", 0.0)
    n_total = p.get("n", p.get("nalpha", 0.0) + p.get("nsq", 0.0))
    spec = ProbeSpec.from_photons(p.get("nalpha", 0.0), p.get("nsq", 0.0), p.get("phi", 0.0), gamma, cfg.dim)
    return spec, n_total, gamma


def evaluate_point(cfg: SweepConfig, value: float) -> dict:
    spec, n_total, gamma = _point_spec(cfg, value)
    if not cfg.dim:
        dim = min(spec.resolved_dim(cfg.dim_cap), cfg.dim_cap)
        spec = spec.with_(dim=dim)
    if "beta" in cfg.optimize:
        res = optimize_phase_and_fraction(n_total, gamma, cfg.task, verify_truncation=cfg.verify_truncation)
    elif "phi" in cfg.optimize:
        res = optimize_phase(spec, cfg.task, verify_truncation=cfg.verify_truncation)
    else:
        res = qfi_probe(spec, cfg.task, verify_truncation=cfg.verify_truncation)
    state = build_probe(res.probe)
    nong = nong_entropic(state)
    n_mean = res.probe.n_total
    # normalize by the probe's own photon number so that delta_R <= 1
    nong_r = nong / nong_max(n_mean) if n_mean > 0 else math.nan
    return {
        "axis": float(value),
        "qfi": res.value,
        "optimal_phi": res.optimal_phi,
        "optimal_beta": res.optimal_beta,
        "nong": nong,
        "nong_normalized": nong_r,
        "leakage": res.truncation_leakage,
        "dim_used": res.dim,
    }


def _evaluate_safe(args):
    cfg, value = args
    try:
        return evaluate_point(cfg, value)
    except (KerrQfiError, DomainError) as exc:
        raise SweepPointError(f"sweep point {cfg.sweep.param}={value:.12g}: {exc}", value) from exc


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; rows come back ordered by axis value."""
    values = cfg.sweep.values()
    jobs = [(cfg, float(v)) for v in values]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_safe, jobs))
    else:
        rows = [_evaluate_safe(job) for job in jobs]
    for row in rows:
        if row["leakage"] > LEAK_TOL:
            raise SweepPointError(f"leakage {row['leakage']:.3e} at axis={row['axis']}", row["axis"])
    meta = {
        "config": cfg.describe(),
        "engine_version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    return SweepResult(rows, cfg, meta)


def reference_values(task, n_sq: float, n_alpha) -> np.ndarray:
    """Gaussian baseline for the dashed curves.

    Displacement: squeezed vacuum with ``n_sq`` photons (flat). Squeezing:
    displaced squeezed probe with ``n_sq`` squeezing photons and the same
    amplitude photons, phase optimized.
    """
    task = as_task(task)
    n_alpha = np.atleast_1d(np.asarray(n_alpha, dtype=float))
    if task is EstimationTask.DISPLACEMENT:
        return np.full(n_alpha.shape, gaussian_qfi_displacement(n_sq, 1.0))
    return np.array([gaussian_qfi_squeezing(x, n_sq) for x in n_alpha])


# config files

_FLOAT_KEYS = PARAMS


def load_config(path, overrides: dict | None = None) -> tuple[SweepConfig, dict]:
    """Read an INI-style sweep file; ``overrides`` (from flags) win.

    Returns the config and a dict of output settings (``csv``, ``svg``).
    """
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return config_from_mapping(_flatten(parser), overrides)


def _flatten(parser):
    flat = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            flat[key if section in ("sweep", "output") else f"{section}.{key}"] = value
    return flat


def config_from_mapping(values: dict, overrides: dict | None = None) -> tuple[SweepConfig, dict]:
    values = dict(values)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    known = {"task", "probe", "sweep", "optimize", "references", "dim", "dim_cap", "verify_truncation",
             "label", "csv", "svg", "workers"}
    fixed = {}
    for key in list(values):
        name = key.split(".", 1)[1] if key.startswith("fixed.") else key
        if name in _FLOAT_KEYS:
            try:
                fixed[name] = float(values.pop(key))
            except ValueError:
                raise ConfigError(f"{name} must be a number") from None
        elif key not in known:
            raise ConfigError(f"unknown config key {key!r}")
    if "sweep" not in values:
        raise ConfigError("config needs a sweep axis (param:start:stop:count[:log])")
    axis = values["sweep"]
    axis = axis if isinstance(axis, SweepAxis) else SweepAxis.parse(str(axis))
    fixed.pop(axis.param, None)
    try:
        cfg = SweepConfig(
            task=values.get("task", "displacement"),
            probe_family=values.get("probe", "kerr-coherent"),
            sweep=axis,
            fixed=fixed,
            optimize=_as_tuple(values.get("optimize", ""), str),
            reference_curves=_as_tuple(values.get("references", ""), float),
            dim=int(values.get("dim", 0)),
            dim_cap=int(values.get("dim_cap", DIM_CAP)),
            verify_truncation=_as_bool(values.get("verify_truncation", False)),
            label=str(values.get("label", "")),
        )
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    outputs = {k: values[k] for k in ("csv", "svg", "workers") if k in values}
    return cfg, outputs


def _as_tuple(value, kind):
    if isinstance(value, (list, tuple)):
        return tuple(kind(v) for v in value)
    parts = [p.strip() for p in str(value).split(",") if p.strip()]
    try:
        return tuple(kind(p) for p in parts)
    except ValueError:
        raise ConfigError(f"cannot parse list {value!r}") from None


def _as_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def default_output_dir() -> str:
    return os.environ.get("KERRQFI_OUTPUT_DIR", ".")
