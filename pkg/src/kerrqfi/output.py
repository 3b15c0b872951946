"""CSV and self-contained SVG writers for sweep results."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import PlotError
from .sweep import COLUMNS


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.12g}"


def _parse(value: str):
    if value == "":
        return None
    try:
        return int(value)
    except ValueError:
        return float(value)


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    if not path:
        raise ValueError("output path is empty")
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(rows, columns=COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def emit_csv(result, path, columns=COLUMNS) -> None:
    """Write one header line and one line per row, 12 significant digits."""
    rows = result.rows if hasattr(result, "rows") else result
    atomic_write(path, csv_text(rows, columns))


def read_csv(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        return [{k: (v if k == "curve" else _parse(v)) for k, v in row.items()} for row in reader]


@dataclass
class Curve:
    label: str
    x: np.ndarray
    y: np.ndarray
    dashed: bool = False


PALETTE = ("#222222", "#666666", "#999999", "#1f4e9c", "#c0392b", "#2e8b57")


def _ticks(lo, hi, log):
    if log:
        lo_e, hi_e = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
        return [10.0**e for e in range(lo_e, hi_e + 1)]
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / 5)) if span > 0 else 1.0
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= 6:
            step *= mult
            break
    start = math.ceil(lo / step) * step
    return [start + i * step for i in range(int((hi - start) / step + 1e-9) + 1)]


def svg_text(curves, title="", x_label="", y_label="", log_x=False, log_y=False, width=640, height=440) -> str:
    curves = [c for c in curves]
    if not curves:
        raise PlotError("nothing to plot")
    for c in curves:
        mask = np.isfinite(c.x) & np.isfinite(c.y)
        if log_x:
            mask &= c.x > 0
        if log_y:
            mask &= c.y > 0
        if np.count_nonzero(mask) < 2:
            raise PlotError(f"curve {c.label!r} has fewer than 2 plottable points")
    xs = np.concatenate([c.x for c in curves])
    ys = np.concatenate([c.y for c in curves])
    ok = np.isfinite(xs) & np.isfinite(ys)
    if log_x:
        ok &= xs > 0
    if log_y:
        ok &= ys > 0
    xs, ys = xs[ok], ys[ok]
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    if not log_y:
        pad = 0.05 * (y1 - y0)
        y0, y1 = y0 - pad, y1 + pad

    ml, mr, mt, mb = 70, 150, 40, 55
    pw, ph = width - ml - mr, height - mt - mb

    def tx(v):
        v = np.asarray(v, dtype=float)
        t = (np.log10(v) - math.log10(x0)) / (math.log10(x1) - math.log10(x0)) if log_x else (v - x0) / (x1 - x0)
        return ml + t * pw

    def ty(v):
        v = np.asarray(v, dtype=float)
        t = (np.log10(v) - math.log10(y0)) / (math.log10(y1) - math.log10(y0)) if log_y else (v - y0) / (y1 - y0)
        return mt + ph - t * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{ml + pw / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for t in _ticks(x0, x1, log_x):
        if x0 <= t <= x1:
            px = float(tx(t))
            out.append(f'<line x1="{px:.2f}" y1="{mt + ph}" x2="{px:.2f}" y2="{mt + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{px:.2f}" y="{mt + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1, log_y):
        if y0 <= t <= y1:
            py = float(ty(t))
            out.append(f'<line x1="{ml - 5}" y1="{py:.2f}" x2="{ml}" y2="{py:.2f}" stroke="black"/>')
            out.append(f'<text x="{ml - 8}" y="{py + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">{escape(x_label)}</text>')
    out.append(
        f'<text x="18" y="{mt + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {mt + ph / 2:.1f})">{escape(y_label)}</text>'
    )
    for i, c in enumerate(curves):
        mask = np.isfinite(c.x) & np.isfinite(c.y)
        if log_x:
            mask &= c.x > 0
        if log_y:
            mask &= c.y > 0
        order = np.argsort(c.x[mask], kind="stable")
        px, py = tx(c.x[mask][order]), ty(c.y[mask][order])
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
        color = PALETTE[i % len(PALETTE)]
        dash = ' stroke-dasharray="6,4"' if c.dashed else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{pts}"/>')
        ly = mt + 14 + 16 * i
        out.append(
            f'<line x1="{ml + pw + 10}" y1="{ly}" x2="{ml + pw + 34}" y2="{ly}" stroke="{color}" stroke-width="1.6"{dash}/>'
        )
        out.append(f'<text x="{ml + pw + 40}" y="{ly + 4}">{escape(c.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(results, path, reference_curves=(), x="axis", y="qfi", **style) -> None:
    """Plot one solid line per sweep result plus dashed reference curves.

    ``results`` is a SweepResult or a list of them; ``reference_curves``
    holds :class:`Curve` objects drawn dashed.
    """
    if hasattr(results, "rows"):
        results = [results]
    curves = []
    for res in results:
        label = res.config.label or res.config.probe_family
        curves.append(Curve(label, res.column(x), res.column(y)))
    for ref in reference_curves:
        curves.append(Curve(ref.label, np.asarray(ref.x, float), np.asarray(ref.y, float), True))
    atomic_write(path, svg_text(curves, **style))
