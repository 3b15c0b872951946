"""Command line interface: ``kerrqfi {qfi,sweep,figures,selftest}``."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConfigError, KerrQfiError
from .figures import PRESETS, write_figure
from .output import Curve, emit_csv, emit_svg
from .probes import ProbeSpec
from .qfi import optimize_phase, optimize_phase_and_fraction, qfi_probe
from .sweep import FAMILIES, SweepAxis, config_from_mapping, default_output_dir, load_config, reference_values, run_sweep

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _optimize_list(text):
    return tuple(p.strip() for p in text.split(",") if p.strip())


def _add_probe_flags(p, defaults):
    p.add_argument("--task", choices=("displacement", "squeezing"), default=defaults)
    p.add_argument("--probe", choices=FAMILIES, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--nalpha", type=float, default=None)
    p.add_argument("--nsq", type=float, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--optimize", type=_optimize_list, default=None, help="comma list of phi,beta")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--verify-truncation", action="store_true", default=None)


def build_parser():
    parser = _Parser(prog="kerrqfi", description="QFI of Kerr-modified Gaussian probes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("qfi", help="evaluate one probe")
    _add_probe_flags(q, "displacement")

    s = sub.add_parser("sweep", help="run a parameter sweep")
    _add_probe_flags(s, None)
    s.add_argument("--config", help="INI-style sweep file")
    s.add_argument("--sweep", dest="sweep_axis", help="param:start:stop:count[:log]")
    s.add_argument("--references", help="comma list of N_sq baselines for the SVG")
    s.add_argument("--out-csv")
    s.add_argument("--out-svg")
    s.add_argument("--workers", type=int, default=None)

    f = sub.add_parser("figures", help="regenerate figure presets")
    f.add_argument("names", nargs="*", help=f"presets ({', '.join(PRESETS)}); default all")
    f.add_argument("--out-dir", default=None)
    f.add_argument("--workers", type=int, default=1)

    sub.add_parser("selftest", help="closed forms vs Fock numerics")
    return parser


def _cmd_qfi(args):
    family = args.probe or "coherent"
    nalpha = args.nalpha or 0.0
    nsq = 0.0 if family in ("coherent", "kerr-coherent") else (args.nsq or 0.0)
    if family == "squeezed":
        nalpha = 0.0
    gamma = (args.gamma or 0.0) if family.startswith("kerr") else 0.0
    spec = ProbeSpec.from_photons(nalpha, nsq, args.phi or 0.0, gamma, args.dim or 0)
    optimize = args.optimize or ()
    if "beta" in optimize:
        res = optimize_phase_and_fraction(nalpha + nsq, gamma, args.task, verify_truncation=bool(args.verify_truncation))
    elif "phi" in optimize:
        res = optimize_phase(spec, args.task, verify_truncation=bool(args.verify_truncation))
    else:
        res = qfi_probe(spec, args.task, verify_truncation=bool(args.verify_truncation))
    print(res.to_text())
    return EXIT_OK


def _cmd_sweep(args):
    overrides = {
        "task": args.task,
        "probe": args.probe,
        "gamma": args.gamma,
        "nalpha": args.nalpha,
        "nsq": args.nsq,
        "phi": args.phi,
        "optimize": args.optimize,
        "sweep": args.sweep_axis,
        "dim": args.dim,
        "verify_truncation": args.verify_truncation,
        "references": args.references,
        "csv": args.out_csv,
        "svg": args.out_svg,
        "workers": args.workers,
    }
    if args.config:
        cfg, outputs = load_config(args.config, overrides)
    else:
        cfg, outputs = config_from_mapping({}, overrides)
    workers = int(outputs.get("workers") or 1)
    out_dir = default_output_dir()
    csv_path = outputs.get("csv") or os.path.join(out_dir, "sweep.csv")
    result = run_sweep(cfg, workers)
    emit_csv(result, csv_path)
    print(f"wrote {csv_path} ({len(result.rows)} rows)")
    if outputs.get("svg"):
        xs = cfg.sweep.values()
        refs = [
            Curve(f"Gaussian N_sq={n:g}", xs, reference_values(cfg.task, n, xs), dashed=True)
            for n in cfg.reference_curves
        ]
        emit_svg(result, outputs["svg"], refs, x_label=cfg.sweep.param, y_label="QFI")
        print(f"wrote {outputs['svg']}")
    return EXIT_OK


def _cmd_figures(args):
    names = args.names or list(PRESETS)
    for name in names:
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    for name in names:
        csv_path, svg_path = write_figure(name, args.out_dir, args.workers)
        print(f"{name}: wrote {csv_path} and {svg_path}")
    return EXIT_OK


def _cmd_selftest(args):
    from . import selftest

    return EXIT_OK if selftest.run(sys.stdout) else EXIT_COMPUTE


def main(argv=None) -> int:
    handlers = {"qfi": _cmd_qfi, "sweep": _cmd_sweep, "figures": _cmd_figures, "selftest": _cmd_selftest}
    try:
        args = build_parser().parse_args(argv)
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KerrQfiError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
