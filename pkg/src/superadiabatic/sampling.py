"""Uniformly sampled functions on [0, tf] and the grid calculus used on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

# 4th-order one-sided first-derivative stencils for the first two samples
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


@dataclass(frozen=True)
class SampledFunction:
    """Real samples on the uniform grid ``t_k = k * tf / (n - 1)``."""

    tf: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ValueError("a sampled function needs at least 3 samples")
        if not self.tf > 0:
            raise ValueError("tf must be positive")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return self.values.size

    @property
    def dt(self) -> float:
        return self.tf / (self.n_samples - 1)

    @property
    def t(self) -> np.ndarray:
        return time_grid(self.tf, self.n_samples)

    def same_grid(self, other: "SampledFunction") -> bool:
        return self.n_samples == other.n_samples and np.isclose(self.tf, other.tf)


def time_grid(tf: float, n_samples: int) -> np.ndarray:
    return np.linspace(0.0, tf, n_samples)


def finite_difference(values: np.ndarray, dt: float, breaks=None) -> np.ndarray:
    """4th-order first derivative along axis 0 of ``values``.

    ``breaks`` is an optional boolean mask of samples where the function is not
    smooth; central stencils never straddle a flagged sample and one-sided
    stencils are used on each side instead.
    """
    f = np.asarray(values)
    n = f.shape[0]
    if n < 5:
        raise ValueError("4th-order differentiation needs at least 5 samples")
    if breaks is not None and np.any(breaks):
        idx = np.flatnonzero(breaks)
        out = np.empty_like(f, dtype=np.result_type(f, float))
        start = 0
        for b in list(idx) + [n - 1]:
            # each segment [start, b] is smooth, including its endpoints
            seg = slice(start, b + 1)
            if b + 1 - start >= 5:
                out[seg] = finite_difference(f[seg], dt)
            elif b + 1 - start >= 2:
                out[seg] = np.gradient(f[seg], dt, axis=0)
            start = b
        return out

    g = np.empty_like(f, dtype=np.result_type(f, float))
    g[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * dt)
    g[0] = np.tensordot(_EDGE0, f[:5], axes=1) / dt
    g[1] = np.tensordot(_EDGE1, f[:5], axes=1) / dt
    g[-1] = -np.tensordot(_EDGE0, f[::-1][:5], axes=1) / dt
    g[-2] = -np.tensordot(_EDGE1, f[::-1][:5], axes=1) / dt
    return g


def derivative(f: SampledFunction) -> SampledFunction:
    """4th-order derivative of a sampled function (needs >= 5 samples)."""
    return SampledFunction(f.tf, finite_difference(f.values, f.dt))


def cumulative_integral(values: np.ndarray, dt: float) -> np.ndarray:
    """Running integral from t=0 by composite Simpson; starts at exactly 0."""
    values = np.asarray(values)
    out = np.zeros_like(values, dtype=np.result_type(values, float))
    out[1:] = cumulative_simpson(values, dx=dt, axis=0)
    return out


def integral(f: SampledFunction) -> SampledFunction:
    return SampledFunction(f.tf, cumulative_integral(f.values, f.dt))


def midpoints(values: np.ndarray) -> np.ndarray:
    """Cubic (4-point Lagrange) interpolation at the interval midpoints."""
    f = np.asarray(values)
    n = f.shape[0]
    if n < 4:
        raise ValueError("cubic midpoint interpolation needs at least 4 samples")
    m = np.empty((n - 1,) + f.shape[1:], dtype=f.dtype)
    m[1:-1] = (-f[:-3] + 9 * f[1:-2] + 9 * f[2:-1] - f[3:]) / 16
    m[0] = (5 * f[0] + 15 * f[1] - 5 * f[2] + f[3]) / 16
    m[-1] = (5 * f[-1] + 15 * f[-2] - 5 * f[-3] + f[-4]) / 16
    return m
