"""Fixed-step Schroedinger propagation of sampled 2x2 Hamiltonians."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .engine import FrameTrajectory, IterationStack
from .pauli import CartesianTriple, compose, dagger
from .sampling import cumulative_integral, midpoints

NORM_TOLERANCE = 1e-7
MIN_SAMPLES = 1001


class NormDriftWarning(UserWarning):
    """The propagated state lost normalization beyond tolerance."""


@dataclass(frozen=True)
class StateTrajectory:
    tf: float
    psi: np.ndarray  # (n, 2) complex amplitudes in the bare basis

    @property
    def n_samples(self) -> int:
        return self.psi.shape[0]

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.tf, self.n_samples)

    @property
    def final(self) -> np.ndarray:
        return self.psi[-1]

    def norm_drift(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self.psi, axis=1) - 1.0)))


@dataclass(frozen=True)
class PopulationTrace:
    tf: float
    p1: np.ndarray
    p2: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.tf, self.p1.size)


def _check_state(psi0) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex).reshape(2)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-9:
        raise ValueError("initial state must be normalized")
    return psi0


def propagate(h: CartesianTriple, psi0, tf: float) -> StateTrajectory:
    """Integrate ``i dpsi/dt = H psi`` with classical RK4, one step per sample.

    The Hamiltonian at half steps comes from cubic interpolation of the
    Cartesian components.  No renormalization is applied; a
    :class:`NormDriftWarning` is emitted when the norm drifts by more than
    1e-7.
    """
    psi0 = _check_state(psi0)
    x, y, z = (np.asarray(v, dtype=float) for v in h)
    n = x.size
    if n < MIN_SAMPLES:
        raise ValueError(f"propagation needs at least {MIN_SAMPLES} samples, got {n}")
    dt = tf / (n - 1)

    # -i H psi with H = [[z, x - iy], [x + iy, -z]]
    diag = (-1j * z).tolist()
    upper = (-1j * (x - 1j * y)).tolist()
    lower = (-1j * (x + 1j * y)).tolist()
    xm, ym, zm = midpoints(x), midpoints(y), midpoints(z)
    diag_m = (-1j * zm).tolist()
    upper_m = (-1j * (xm - 1j * ym)).tolist()
    lower_m = (-1j * (xm + 1j * ym)).tolist()

    a, b = complex(psi0[0]), complex(psi0[1])
    out_a = [a]
    out_b = [b]
    half = 0.5 * dt
    sixth = dt / 6.0
    for k in range(n - 1):
        d0, u0, l0 = diag[k], upper[k], lower[k]
        dm, um, lm = diag_m[k], upper_m[k], lower_m[k]
        d1, u1, l1 = diag[k + 1], upper[k + 1], lower[k + 1]
        k1a = d0 * a + u0 * b
        k1b = l0 * a - d0 * b
        ta, tb = a + half * k1a, b + half * k1b
        k2a = dm * ta + um * tb
        k2b = lm * ta - dm * tb
        ta, tb = a + half * k2a, b + half * k2b
        k3a = dm * ta + um * tb
        k3b = lm * ta - dm * tb
        ta, tb = a + dt * k3a, b + dt * k3b
        k4a = d1 * ta + u1 * tb
        k4b = l1 * ta - d1 * tb
        a = a + sixth * (k1a + 2 * k2a + 2 * k3a + k4a)
        b = b + sixth * (k1b + 2 * k2b + 2 * k3b + k4b)
        out_a.append(a)
        out_b.append(b)

    traj = StateTrajectory(tf, np.column_stack([out_a, out_b]))
    drift = traj.norm_drift()
    if drift > NORM_TOLERANCE:
        warnings.warn(
            f"norm drift {drift:.3g} exceeds {NORM_TOLERANCE:g}; refine the grid",
            NormDriftWarning,
            stacklevel=2,
        )
    return traj


def populations(traj: StateTrajectory) -> PopulationTrace:
    """Bare-state populations ``|c1|^2`` and ``|c2|^2``."""
    p = np.abs(traj.psi) ** 2
    return PopulationTrace(traj.tf, p[:, 0], p[:, 1])


def adiabatic_overlap(traj: StateTrajectory, frame0: FrameTrajectory) -> PopulationTrace:
    """Populations in the instantaneous eigenbasis of the frame (lower, upper)."""
    if traj.n_samples != frame0.n_samples or not np.isclose(traj.tf, frame0.tf):
        raise ValueError("state trajectory and frame must share the same grid")
    a = frame0.rotation()
    amps = np.einsum("nij,nj->ni", dagger(a), traj.psi)
    p = np.abs(amps) ** 2
    return PopulationTrace(traj.tf, p[:, 0], p[:, 1])


def superadiabatic_approximation(stack: IterationStack, j: int, psi0) -> StateTrajectory:
    """Uncoupled evolution in interaction picture ``j`` mapped back to the lab.

    psi(t) = B_j(t) U_j(t) B_j(0)^dag psi0, where ``U_j`` is diagonal with the
    phases accumulated by the eigenvalues ``-+R_{j-1}`` of frame ``j-1``.  It is
    the exact solution for ``H0^(j)``.
    """
    psi0 = _check_state(psi0)
    if j < 1:
        raise ValueError("the superadiabatic approximation is defined for j >= 1")
    if j > stack.j_max + 1:
        raise ValueError(f"order {j} exceeds the stack depth (j_max={stack.j_max})")
    frame = stack.frames[j - 1]
    phase = cumulative_integral(frame.r, frame.dt)
    b = stack.products[j]
    c = dagger(b[0]) @ psi0
    evolved = np.column_stack([np.exp(1j * phase) * c[0], np.exp(-1j * phase) * c[1]])
    psi = np.einsum("nij,nj->ni", b, evolved)
    return StateTrajectory(stack.tf, psi)


def propagate_modified(stack: IterationStack, j: int, psi0) -> StateTrajectory:
    """Exact dynamics under ``H0^(j)`` (``j = 0`` is the bare protocol)."""
    return propagate(stack.modified[j], psi0, stack.tf)


def hamiltonian_matrices(h: CartesianTriple) -> np.ndarray:
    return compose(h)
