"""Two-level Hermitian algebra in the Pauli (Cartesian) representation.

Units throughout the package: hbar = 1, frequencies in rad/us, time in us.
All functions broadcast over leading array dimensions, so a whole sampled
trajectory can be handled in one call.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class CartesianTriple(NamedTuple):
    """Components of ``x*sx + y*sy + z*sz`` (scalars or equal-shape arrays)."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray


class SphericalTriple(NamedTuple):
    """Polar angle in [0, pi], azimuth in [0, 2pi), radius >= 0.

    ``degenerate`` marks samples where the azimuth is undefined (in-plane
    radius zero) and was filled in by convention.
    """

    theta: np.ndarray
    phi: np.ndarray
    r: np.ndarray
    degenerate: np.ndarray


def compose(c: CartesianTriple) -> np.ndarray:
    """Matrix ``[[z, x - iy], [x + iy, -z]]``, shape ``(..., 2, 2)``."""
    x, y, z = (np.asarray(v, dtype=float) for v in c)
    x, y, z = np.broadcast_arrays(x, y, z)
    m = np.empty(x.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = z
    m[..., 0, 1] = x - 1j * y
    m[..., 1, 0] = x + 1j * y
    m[..., 1, 1] = -z
    return m


def decompose(m: np.ndarray) -> CartesianTriple:
    """Cartesian components of the traceless Hermitian part of ``m``."""
    m = np.asarray(m)
    x = 0.5 * (m[..., 1, 0] + m[..., 0, 1]).real
    y = 0.5 * (m[..., 1, 0] - m[..., 0, 1]).imag
    z = 0.5 * (m[..., 0, 0] - m[..., 1, 1]).real
    return CartesianTriple(x, y, z)


def to_spherical(c: CartesianTriple, atol: float = 0.0) -> SphericalTriple:
    """Spherical coordinates of a Cartesian triple.

    Along a 1-D trajectory, samples with in-plane radius ``<= atol`` reuse the
    azimuth of the previous sample (0 at the first one).  A zero vector gets
    ``theta = pi``.
    """
    x, y, z = (np.asarray(v, dtype=float) for v in c)
    x, y, z = np.broadcast_arrays(x, y, z)
    p = np.hypot(x, y)
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arctan2(p, z)
    theta = np.where(r > 0, theta, np.pi)
    phi = np.mod(np.arctan2(y, x), 2 * np.pi)
    degenerate = p <= atol
    if degenerate.any():
        phi = np.array(phi, dtype=float, copy=True)
        if phi.ndim == 0:
            phi = np.asarray(0.0)
        else:
            flat = phi.reshape(-1)
            flags = degenerate.reshape(-1)
            last = 0.0
            for k in range(flat.size):
                if flags[k]:
                    flat[k] = last
                else:
                    last = flat[k]
    # 2pi can appear from rounding in the mod
    phi = np.where(phi >= 2 * np.pi, 0.0, phi)
    return SphericalTriple(theta, phi, r, degenerate)


def from_spherical(s: SphericalTriple) -> CartesianTriple:
    st = np.sin(s.theta)
    return CartesianTriple(
        s.r * st * np.cos(s.phi), s.r * st * np.sin(s.phi), s.r * np.cos(s.theta)
    )


def frame_rotation(theta, phi, eps) -> np.ndarray:
    """Unitary whose columns are the two eigenvectors of the frame.

    Column 0 is the lower eigenvector (eigenvalue ``-r``), column 1 the upper
    one, both carrying the gauge phase ``eps``.  At ``theta = pi, phi = eps = 0``
    this is the identity.
    """
    theta, phi, eps = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (theta, phi, eps))
    )
    s = np.sin(theta / 2)
    c = np.cos(theta / 2)
    a = np.empty(theta.shape + (2, 2), dtype=complex)
    a[..., 0, 0] = s * np.exp(1j * (eps - phi / 2))
    a[..., 0, 1] = c * np.exp(1j * (-eps - phi / 2))
    a[..., 1, 0] = -c * np.exp(1j * (eps + phi / 2))
    a[..., 1, 1] = s * np.exp(1j * (-eps + phi / 2))
    return a


def eigensystem(s: SphericalTriple, eps=0.0):
    """Eigenvectors ``(lower, upper)`` and eigenvalues ``(-r, r)``."""
    a = frame_rotation(s.theta, s.phi, eps)
    return a[..., :, 0], a[..., :, 1], -np.asarray(s.r), np.asarray(s.r)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def rotation_matrix(u: np.ndarray) -> np.ndarray:
    """SO(3) matrix ``R`` with ``u (v . sigma) u^dag = (R v) . sigma``."""
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for a, sa in enumerate(PAULI):
        for b, sb in enumerate(PAULI):
            r[a, b] = 0.5 * np.trace(sa @ u @ sb @ dagger(u)).real
    return r


def is_unitary(u: np.ndarray, atol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=complex)
    return u.shape == (2, 2) and np.allclose(u @ dagger(u), IDENTITY, atol=atol)


def operator_norm(m: np.ndarray) -> np.ndarray:
    """Spectral norm over the trailing 2x2 axes."""
    return np.linalg.norm(m, ord=2, axis=(-2, -1))
