"""Superadiabatic iteration for a two-level Hamiltonian in a constant basis.

Frame ``j`` is the traceless Hamiltonian ``H_j = X_j sx + Y_j sy + Z_j sz`` of
the ``j``-th interaction picture.  Its parallel-transported eigenframe
``A_j`` gives the coupling ``K_j = i dA_j/dt A_j^dag`` and the next frame
``H_{j+1} = A_j^dag (H_j - K_j) A_j``.  The counterdiabatic term of order ``j``
in the lab frame is ``B_j K_j B_j^dag`` with ``B_j = A_0 ... A_{j-1}``.

Every frame carries exact Taylor jets of its components, so the derivative
chain (one extra derivative per order) is propagated analytically rather than
by nested finite differences.

Where the in-plane part (X, Y) of a frame passes through zero the azimuth
jumps by pi and the polar angle has a kink.  Frames are therefore evaluated on
a continuous branch (signed in-plane radius, unwrapped azimuth, no jumps in the
gauge phase); the canonical angles in [0, pi] x [0, 2pi) and the matching
gauge phase are stored alongside for reporting.  Both parametrize the same
eigenvectors, so the lifted components agree wherever the canonical form is
defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .control import ControlProtocol
from .jets import Jet
from .pauli import (
    IDENTITY,
    CartesianTriple,
    compose,
    dagger,
    decompose,
    frame_rotation,
    is_unitary,
    operator_norm,
    rotation_matrix,
)
from .sampling import SampledFunction, cumulative_integral, finite_difference

# in-plane radius below this fraction of max |H| counts as gauge-degenerate
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class _BranchJets:
    x: Jet
    y: Jet
    z: Jet
    theta: Jet
    phi: Jet
    r: Jet
    eps: Jet
    theta_dot: Jet
    phi_dot: Jet


@dataclass(frozen=True)
class FrameTrajectory:
    """One superadiabatic frame sampled on the grid.

    ``theta``, ``phi``, ``eps`` and the rates are canonical (polar angle in
    [0, pi], azimuth in [0, 2pi)); ``eps`` includes the +-pi/2 steps that
    accompany azimuth jumps at gauge-degenerate points.
    """

    order: int
    tf: float
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    r: np.ndarray
    eps: np.ndarray
    theta_dot: np.ndarray
    phi_dot: np.ndarray
    degenerate: np.ndarray
    branch: _BranchJets = field(repr=False)

    @property
    def n_samples(self) -> int:
        return self.x.size

    @property
    def dt(self) -> float:
        return self.tf / (self.n_samples - 1)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.tf, self.n_samples)

    @property
    def jet_order(self) -> int:
        return self.branch.x.order

    def cartesian(self) -> CartesianTriple:
        return CartesianTriple(self.x, self.y, self.z)

    def hamiltonian(self) -> np.ndarray:
        return compose(self.cartesian())

    def rotation(self) -> np.ndarray:
        """Eigenframe ``A_j(t)``; columns are the lower and upper eigenvectors."""
        b = self.branch
        return frame_rotation(b.theta.value, b.phi.value, b.eps.value)


def _patch_degenerate(jet: Jet, mask: np.ndarray, dt: float) -> Jet:
    """Replace flagged samples by the average of their neighbours' expansions."""
    if not mask.any():
        return jet
    c = jet.c.copy()
    n = c.shape[1]
    good = ~mask
    for k in np.flatnonzero(mask):
        left = k - 1
        while left >= 0 and not good[left]:
            left -= 1
        right = k + 1
        while right < n and not good[right]:
            right += 1
        est = []
        if left >= 0:
            est.append(Jet(jet.c[:, [left]]).shifted((k - left) * dt)[:, 0])
        if right < n:
            est.append(Jet(jet.c[:, [right]]).shifted((k - right) * dt)[:, 0])
        c[:, k] = np.mean(est, axis=0) if est else 0.0
    return Jet(c)


def _safe_quotient(num: Jet, den: Jet, mask: np.ndarray) -> Jet:
    den_c = den.truncate(num.order).c.copy()
    den_c[0, mask] = 1.0
    q = num / Jet(den_c)
    q.c[:, mask] = 0.0
    return q


def build_frame(order: int, tf: float, x: Jet, y: Jet, z: Jet) -> FrameTrajectory:
    """Spherical data, gauge phase and rates of the frame with components x, y, z."""
    m = min(x.order, y.order, z.order)
    if m < 1:
        raise ValueError("a frame needs component jets of order >= 1")
    x, y, z = x.truncate(m), y.truncate(m), z.truncate(m)
    n = x.c.shape[1]
    dt = tf / (n - 1)

    r2 = x * x + y * y + z * z
    p2 = x * x + y * y
    rv = np.sqrt(r2.value)
    pv = np.sqrt(p2.value)
    scale = max(float(rv.max()), np.finfo(float).tiny)
    flat = pv <= DEGENERACY_RTOL * scale
    zero = rv <= DEGENERACY_RTOL * scale

    # continuous azimuth: carry across degenerate samples, unwrap modulo pi
    raw = np.arctan2(y.value, x.value)
    phi_v = np.empty(n)
    last = 0.0
    for k in range(n):
        if flat[k]:
            phi_v[k] = last
        else:
            phi_v[k] = last = raw[k]
    phi_v = np.unwrap(phi_v, period=np.pi)

    phi_rate = _safe_quotient(x * y.diff() - y * x.diff(), p2, flat)
    phi_rate = _patch_degenerate(phi_rate, flat & ~zero, dt)
    phi = Jet.integrate(phi_rate, phi_v)
    sin_phi, cos_phi = phi.sincos()
    p_signed = x * cos_phi + y * sin_phi

    theta_v = np.unwrap(np.where(zero, np.pi, np.arctan2(p_signed.value, z.value)))
    theta_rate = _safe_quotient(z * p_signed.diff() - p_signed * z.diff(), r2, zero)
    theta = Jet.integrate(theta_rate, theta_v)

    r_c = r2.c.copy()
    r_c[0, zero] = 1.0
    r = Jet(r_c).sqrt()
    r.c[:, zero] = 0.0

    eps_rate = -0.5 * phi_rate * theta.truncate(phi_rate.order).cos()
    eps = Jet.integrate(eps_rate, cumulative_integral(eps_rate.value, dt))

    # canonical representation of the same eigenvectors
    mirrored = p_signed.value < 0
    theta_c = np.where(zero, np.pi, np.arctan2(pv, z.value))
    phi_c = np.mod(np.where(mirrored, phi_v + np.pi, phi_v), 2 * np.pi)
    phi_c = np.where(phi_c >= 2 * np.pi, 0.0, phi_c)
    a_branch = frame_rotation(theta.value, phi.value, eps.value)[..., :, 0]
    a_canon = frame_rotation(theta_c, phi_c, 0.0)[..., :, 0]
    eps_c = np.angle(np.sum(np.conj(a_canon) * a_branch, axis=-1))

    branch = _BranchJets(x, y, z, theta, phi, r, eps, theta_rate, phi_rate)
    return FrameTrajectory(
        order=order,
        tf=tf,
        x=x.value,
        y=y.value,
        z=z.value,
        theta=theta_c,
        phi=phi_c,
        r=r.value,
        eps=eps_c,
        theta_dot=np.where(mirrored, -theta_rate.value, theta_rate.value),
        phi_dot=phi_rate.value,
        degenerate=flat,
        branch=branch,
    )


def _coupling_jets(frame: FrameTrajectory) -> tuple[Jet, Jet, Jet]:
    b = frame.branch
    th_dot, ph_dot = b.theta_dot, b.phi_dot
    m = th_dot.order
    s_ph, c_ph = b.phi.truncate(m).sincos()
    s_th, c_th = b.theta.truncate(m).sincos()
    s_2th = 2.0 * s_th * c_th
    kx = 0.5 * (-1.0 * th_dot * s_ph - 0.5 * ph_dot * c_ph * s_2th)
    ky = 0.5 * (th_dot * c_ph - 0.5 * ph_dot * s_ph * s_2th)
    kz = 0.5 * ph_dot * s_th * s_th
    return kx, ky, kz


def coupling(frame: FrameTrajectory) -> CartesianTriple:
    """Coupling ``K_j = i dA_j/dt A_j^dag`` of a frame, as Cartesian components."""
    kx, ky, kz = _coupling_jets(frame)
    return CartesianTriple(kx.value, ky.value, kz.value)


def lift_frame(frame: FrameTrajectory, basis: Optional[np.ndarray] = None) -> FrameTrajectory:
    """Frame ``j+1`` from frame ``j``.

    ``basis`` is the constant unitary whose columns are the reference states
    labelling the eigenvectors (identity for the bare basis).
    """
    if frame.jet_order < 2:
        raise ValueError(
            f"frame {frame.order} carries order-{frame.jet_order} jets; "
            "lifting needs order >= 2 (iterate with a larger j_max)"
        )
    b = frame.branch
    m = b.theta_dot.order
    s2e, c2e = (2.0 * b.eps.truncate(m)).sincos()
    s_th = b.theta.truncate(m).sin()
    x = 0.5 * (b.theta_dot * s2e - b.phi_dot * s_th * c2e)
    y = 0.5 * (-1.0 * b.theta_dot * c2e - b.phi_dot * s_th * s2e)
    z = -1.0 * b.r.truncate(m)
    if basis is not None:
        x, y, z = _rotate_jets(rotation_matrix(basis), (x, y, z))
    return build_frame(frame.order + 1, frame.tf, x, y, z)


def _rotate_jets(rot: np.ndarray, comps) -> tuple[Jet, Jet, Jet]:
    return tuple(
        Jet(sum(rot[a, b] * comps[b].c for b in range(3))) for a in range(3)
    )


def parallel_phase(theta: SampledFunction, phi: SampledFunction) -> SampledFunction:
    """Gauge phase ``eps(t) = -1/2 int_0^t dphi/dt cos(theta) dt'``."""
    if not theta.same_grid(phi):
        raise ValueError("theta and phi must share the same grid")
    phi_dot = finite_difference(phi.values, phi.dt)
    return SampledFunction(
        theta.tf, cumulative_integral(-0.5 * phi_dot * np.cos(theta.values), theta.dt)
    )


@dataclass(frozen=True)
class IterationStack:
    """Frames ``0..j_max`` of a protocol with all derived operators.

    ``couplings[j]`` and ``cd_terms[j]`` hold ``K_j`` and the lab-frame
    counterdiabatic term of order ``j`` (j = 0..j_max); ``modified[j]`` is
    ``H0^(j) = H0 + cd_terms[j-1]`` (j = 0..j_max+1, ``modified[0] = H0``);
    ``products[j]`` is ``B_j = A_0 ... A_{j-1}`` (j = 0..j_max+1).
    """

    protocol: ControlProtocol
    frames: tuple
    couplings: tuple
    cd_terms: tuple
    modified: tuple
    products: tuple
    basis: np.ndarray

    @property
    def j_max(self) -> int:
        return len(self.frames) - 1

    @property
    def tf(self) -> float:
        return self.protocol.tf

    @property
    def t(self) -> np.ndarray:
        return self.protocol.t

    def max_components(self, j: int) -> tuple[float, float, float]:
        """Maxima of |X|, |Y|, |Z| of ``H0^(j)`` over the grid."""
        c = self.modified[j]
        return tuple(float(np.max(np.abs(v))) for v in c)


def iterate(
    protocol: ControlProtocol, j_max: int, basis: Optional[np.ndarray] = None
) -> IterationStack:
    """Run the superadiabatic iteration up to frame ``j_max``."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    if basis is None:
        basis = IDENTITY
    elif not is_unitary(basis):
        raise ValueError("basis must be a 2x2 unitary")
    basis = np.asarray(basis, dtype=complex)
    u_dag = dagger(basis)

    omega, delta = protocol.jets(j_max + 1)
    x0 = 0.5 * omega
    frames = [build_frame(0, protocol.tf, x0, 0.0 * omega, -0.5 * delta)]
    for _ in range(j_max):
        frames.append(lift_frame(frames[-1], basis))

    n = protocol.n_samples
    b = np.broadcast_to(IDENTITY, (n, 2, 2)).copy()
    products = [b]
    couplings, cd_terms = [], []
    for frame in frames:
        k = coupling(frame)
        couplings.append(k)
        cd_terms.append(decompose(b @ compose(k) @ dagger(b)))
        b = b @ frame.rotation() @ u_dag
        products.append(b)

    h0 = protocol.cartesian()
    modified = [h0] + [
        CartesianTriple(*(h0[i] + cd[i] for i in range(3))) for cd in cd_terms
    ]
    return IterationStack(
        protocol=protocol,
        frames=tuple(frames),
        couplings=tuple(couplings),
        cd_terms=tuple(cd_terms),
        modified=tuple(modified),
        products=tuple(products),
        basis=basis,
    )


def basis_equivalence_check(
    protocol: ControlProtocol,
    j: int,
    u: np.ndarray,
    reference: Optional[IterationStack] = None,
) -> float:
    """Max over t of ||H_cd^(j)[basis u] - H_cd^(j)[bare basis]|| (spectral norm)."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("u must be a 2x2 unitary")
    if reference is None or reference.j_max < j:
        reference = iterate(protocol, j)
    other = iterate(protocol, j, basis=u)
    diff = compose(reference.cd_terms[j]) - compose(other.cd_terms[j])
    return float(np.max(operator_norm(diff)))
