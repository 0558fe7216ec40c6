"""Sampled control fields (Rabi frequency and detuning) defining H0(t)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .jets import Jet
from .pauli import CartesianTriple
from .sampling import finite_difference, time_grid

# (order) -> (omega derivatives, delta derivatives), each shaped (order+1, n)
DerivativeSource = Callable[[int], "tuple[np.ndarray, np.ndarray]"]


@dataclass(frozen=True)
class ControlProtocol:
    """Rabi frequency ``omega_r(t)`` and detuning ``delta(t)`` on a uniform grid.

    H0 = (1/2) [[-delta, omega_r], [omega_r, delta]], i.e. x = omega_r/2,
    y = 0, z = -delta/2.  ``derivative_source`` supplies exact time
    derivatives when the protocol is known in closed form; otherwise they are
    estimated with repeated 4th-order finite differences.
    """

    tf: float
    omega_r: np.ndarray
    delta: np.ndarray
    name: str = "sampled"
    derivative_source: Optional[DerivativeSource] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        om = np.asarray(self.omega_r, dtype=float)
        de = np.asarray(self.delta, dtype=float)
        if om.shape != de.shape or om.ndim != 1:
            raise ValueError("omega_r and delta must be 1-D arrays of equal length")
        if om.size < 3:
            raise ValueError("a protocol needs at least 3 samples")
        if not self.tf > 0:
            raise ValueError("tf must be positive")
        if not (np.all(np.isfinite(om)) and np.all(np.isfinite(de))):
            raise ValueError("control fields must be finite")
        for a in (om, de):
            a.setflags(write=False)
        object.__setattr__(self, "omega_r", om)
        object.__setattr__(self, "delta", de)

    @property
    def n_samples(self) -> int:
        return self.omega_r.size

    @property
    def dt(self) -> float:
        return self.tf / (self.n_samples - 1)

    @property
    def t(self) -> np.ndarray:
        return time_grid(self.tf, self.n_samples)

    def cartesian(self) -> CartesianTriple:
        return CartesianTriple(self.omega_r / 2, np.zeros_like(self.omega_r), -self.delta / 2)

    def derivatives(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """Stacked derivatives ``d^k/dt^k`` for k = 0..order of both fields."""
        if self.derivative_source is not None:
            om, de = self.derivative_source(order)
            return np.asarray(om, float)[: order + 1], np.asarray(de, float)[: order + 1]
        out = []
        for f in (self.omega_r, self.delta):
            stack = [f]
            for _ in range(order):
                stack.append(finite_difference(stack[-1], self.dt))
            out.append(np.array(stack))
        return out[0], out[1]

    def jets(self, order: int) -> tuple[Jet, Jet]:
        om, de = self.derivatives(order)
        return Jet.from_derivatives(om), Jet.from_derivatives(de)

    def is_static(self) -> bool:
        return bool(np.ptp(self.omega_r) == 0 and np.ptp(self.delta) == 0)


def static_protocol(omega_r: float, delta: float, tf: float, n_samples: int) -> ControlProtocol:
    """Time-independent fields, with exact (vanishing) derivatives."""

    def source(order):
        om = np.zeros((order + 1, n_samples))
        de = np.zeros((order + 1, n_samples))
        om[0] = omega_r
        de[0] = delta
        return om, de

    return ControlProtocol(
        tf,
        np.full(n_samples, float(omega_r)),
        np.full(n_samples, float(delta)),
        name="static",
        derivative_source=source,
    )
