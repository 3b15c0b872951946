"""Coarse grid plus golden-section refinement for 1-d maximization."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f, a, b, tol=1e-6):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    Iterates until the bracket is narrower than ``tol``. The endpoints are
    never evaluated, so callers that care about them check them separately.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    if yc > yd:
        return c, yc
    return d, yd


def grid_then_refine(f, grid, lo, hi, tol=1e-6, periodic=False, n_candidates=3, tie_rtol=1e-12):
    """Evaluate ``f`` on ``grid`` and refine around the best local maxima.

    Returns ``(x_best, f_best, grid_values)``. The result is never below the
    best grid value. Maxima within ``tie_rtol`` (relative) of the best count
    as ties and the lowest ``x`` among them is reported.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.array([f(x) for x in grid])
    m = len(grid)
    if periodic:
        left = np.roll(values, 1)
        right = np.roll(values, -1)
    else:
        left = np.concatenate(([-np.inf], values[:-1]))
        right = np.concatenate((values[1:], [-np.inf]))
    peaks = np.flatnonzero((values >= left) & (values >= right))
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(values))])
    # stable sort keeps the lowest index among equal values
    peaks = peaks[np.argsort(-values[peaks], kind="stable")][:n_candidates]

    i0 = int(np.argmax(values))
    found = [(float(grid[i0]), float(values[i0]))]
    for i in peaks:
        if periodic:
            step = (hi - lo) / m
            a, b = grid[i] - step, grid[i] + step
        else:
            a = grid[i - 1] if i > 0 else grid[i]
            b = grid[i + 1] if i < m - 1 else grid[i]
        if b - a <= 0:
            continue
        x, y = golden_section_max(f, a, b, tol)
        if periodic:
            x = lo + math.fmod(x - lo, hi - lo)
            if x < lo:
                x += hi - lo
        found.append((float(x), float(y)))
    best_y = max(y for _, y in found)
    # symmetric maxima agree only to rounding; keep the lowest x among them
    cutoff = best_y - tie_rtol * abs(best_y)
    best_x = min(x for x, y in found if y >= cutoff)
    return best_x, best_y, values
