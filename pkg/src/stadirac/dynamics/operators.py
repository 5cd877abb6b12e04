"""Finite-difference stencils (periodic in space, one-sided at trajectory ends in time)."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError


def _padded(a: np.ndarray, axis: int):
    n = a.shape[axis]
    ext = np.take(a, np.arange(-2, n + 2) % n, axis=axis)

    def shifted(k: int) -> np.ndarray:
        index = [slice(None)] * a.ndim
        index[axis] = slice(2 + k, 2 + k + n)
        return ext[tuple(index)]

    return shifted


def d1(a: np.ndarray, dx: float, axis: int) -> np.ndarray:
    """Fourth-order centered first derivative with periodic wrap."""
    s = _padded(a, axis)
    return (8.0 * (s(1) - s(-1)) - (s(2) - s(-2))) / (12.0 * dx)


def d2(a: np.ndarray, dx: float, axis: int) -> np.ndarray:
    """Fourth-order centered second derivative with periodic wrap."""
    s = _padded(a, axis)
    return (16.0 * (s(1) + s(-1)) - (s(2) + s(-2)) - 30.0 * a) / (12.0 * dx * dx)


# one-sided fourth-order first-derivative weights at the first two points
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0
_CENTER4 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def time_derivative(series: np.ndarray, dt: float) -> np.ndarray:
    """First derivative along axis 0 of a uniformly sampled series.

    Fourth order everywhere when there are at least five samples (one-sided
    stencils at both ends), second order for three or four samples.
    """
    n = series.shape[0]
    if n < 3:
        raise DomainError("a time derivative needs at least 3 slices")
    out = np.empty_like(series)
    if n < 5:
        out[1:-1] = (series[2:] - series[:-2]) / (2.0 * dt)
        out[0] = (-3.0 * series[0] + 4.0 * series[1] - series[2]) / (2.0 * dt)
        out[-1] = (3.0 * series[-1] - 4.0 * series[-2] + series[-3]) / (2.0 * dt)
        return out
    w = _CENTER4
    out[2:-2] = (
        w[0] * series[:-4] + w[1] * series[1:-3] + w[3] * series[3:-1] + w[4] * series[4:]
    ) / dt
    for k, weights in ((0, _EDGE0), (1, _EDGE1)):
        out[k] = np.tensordot(weights, series[:5], axes=(0, 0)) / dt
        out[n - 1 - k] = -np.tensordot(weights, series[::-1][:5], axes=(0, 0)) / dt
    return out


def uniform_step(times) -> float:
    """Common spacing of ``times``; raises on nonuniform sampling."""
    times = np.asarray(times, dtype=float)
    if times.size < 2:
        raise DomainError("need at least two time slices")
    steps = np.diff(times)
    h = float(steps.mean())
    if not h > 0 or np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
        raise DomainError("time slices are not uniformly spaced")
    return h
