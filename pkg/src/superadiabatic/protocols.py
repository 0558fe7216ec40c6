"""Reference protocols and the analyses run on them.

* Landau-Zener sweep: linear detuning chirp at constant Rabi frequency.
* Invariant-based inverse engineering: controls designed from a prescribed
  dynamical invariant with polynomial angle profiles.
* Adiabaticity margin, feasibility window and boundary checks that decide
  whether a counterdiabatic Hamiltonian is a shortcut to adiabaticity.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .control import ControlProtocol
from .engine import IterationStack
from .pauli import compose, operator_norm
from .sampling import SampledFunction, time_grid

DEFAULT_RATIO_THRESHOLD = 10.0
FEASIBILITY_MARGIN = 10.0
MIN_SIN_BETA = 0.1


# --------------------------------------------------------------------------
# Landau-Zener


@dataclass(frozen=True)
class LZParams:
    """Chirp ``alpha`` (rad/us^2), Rabi frequency ``omega0`` (rad/us), duration ``tf`` (us)."""

    alpha: float
    omega0: float
    tf: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        if not self.tf > 0:
            raise ValueError("tf must be positive")


SLOW_SWEEP = LZParams(alpha=-20.0, omega0=0.2, tf=0.2)
FAST_SWEEP = LZParams(alpha=-2800.0, omega0=30.0, tf=0.2)


def landau_zener(p: LZParams, n_samples: int) -> ControlProtocol:
    """delta(t) = alpha (t - tf/2), omega_r(t) = omega0, with exact derivatives."""
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3")
    t = time_grid(p.tf, n_samples)
    delta = p.alpha * (t - p.tf / 2)
    omega = np.full(n_samples, float(p.omega0))

    def source(order):
        om = np.zeros((order + 1, n_samples))
        de = np.zeros((order + 1, n_samples))
        om[0] = omega
        de[0] = delta
        if order >= 1:
            de[1] = p.alpha
        return om, de

    return ControlProtocol(p.tf, omega, delta, name="landau_zener", derivative_source=source)


def adiabaticity_margin(protocol: ControlProtocol) -> float:
    """max_t |Omega_a| / (2 |Omega|); values much below 1 mean adiabatic.

    Omega_a = (omega_r d(delta)/dt - d(omega_r)/dt delta) / Omega^2 and
    Omega = sqrt(delta^2 + omega_r^2).
    """
    om, de = protocol.derivatives(1)
    big = np.hypot(om[0], de[0])
    if np.any(big == 0):
        raise ValueError("Omega vanishes at some sample (level crossing)")
    omega_a = (om[0] * de[1] - om[1] * de[0]) / big**2
    return float(np.max(np.abs(omega_a) / (2 * big)))


@dataclass(frozen=True)
class LZFeasibility:
    """Bounds on |alpha| for an adiabatic sweep with bare states at the edges.

    ``lower = 2 omega0 / tf`` comes from the edge condition, ``upper = 2 omega0^2``
    from adiabaticity; both must hold with ``margin`` to spare.
    """

    alpha: float
    lower: float
    upper: float
    margin: float

    @property
    def interval(self) -> tuple[float, float]:
        return self.margin * self.lower, self.upper / self.margin

    @property
    def region_nonempty(self) -> bool:
        lo, hi = self.interval
        return lo < hi

    @property
    def boundary_ok(self) -> bool:
        return abs(self.alpha) >= self.interval[0] * (1 - 1e-12)

    @property
    def adiabatic_ok(self) -> bool:
        return abs(self.alpha) <= self.interval[1] * (1 + 1e-12)

    @property
    def feasible(self) -> bool:
        lo, hi = self.interval
        return lo < abs(self.alpha) < hi


def lz_feasibility(p: LZParams, margin: float = FEASIBILITY_MARGIN) -> LZFeasibility:
    return LZFeasibility(p.alpha, 2 * p.omega0 / p.tf, 2 * p.omega0**2, margin)


def feasibility_curves(omega0: np.ndarray, tf: float, margin: float = FEASIBILITY_MARGIN):
    """Lower (``2 margin omega0 / tf``) and upper (``2 omega0^2 / margin``) curves."""
    omega0 = np.asarray(omega0, dtype=float)
    return 2 * margin * omega0 / tf, 2 * omega0**2 / margin


def feasibility_onset(omega0: np.ndarray, tf: float, margin: float = FEASIBILITY_MARGIN) -> float:
    """First grid value of omega0 where the feasible |alpha| window is nonempty."""
    lower, upper = feasibility_curves(omega0, tf, margin)
    hit = np.flatnonzero(lower < upper)
    return float(np.asarray(omega0)[hit[0]]) if hit.size else float("nan")


# --------------------------------------------------------------------------
# Boundary conditions for shortcuts


@dataclass(frozen=True)
class BoundaryRatio:
    """Z^2 / (X^2 + Y^2) of one frame at both ends of the protocol."""

    order: int
    start: float
    end: float
    passed: bool


@dataclass(frozen=True)
class AnalysisReport:
    order: int
    ratio_threshold: float
    required: tuple
    reference: BoundaryRatio
    final_permutation: bool
    adiabaticity: float | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def verdict(self) -> bool:
        return all(b.passed for b in self.required)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d


def _edge_ratio(x, y, z) -> float:
    inplane = x * x + y * y
    return float("inf") if inplane == 0 else float(z * z / inplane)


def boundary_ratios(stack: IterationStack, order: int, ratio_threshold: float) -> BoundaryRatio:
    f = stack.frames[order]
    start = _edge_ratio(f.x[0], f.y[0], f.z[0])
    end = _edge_ratio(f.x[-1], f.y[-1], f.z[-1])
    need = ratio_threshold**2
    return BoundaryRatio(order, start, end, start >= need and end >= need)


def shortcut_bc_check(
    stack: IterationStack, j: int, ratio_threshold: float = DEFAULT_RATIO_THRESHOLD
) -> AnalysisReport:
    """Does ``H0^(j)`` reproduce the adiabatic final populations?

    Frames ``1..j-1`` must have the bare states as eigenvectors at both
    ends, i.e. ``Z^2 >> X^2 + Y^2`` there, with ``>>`` meaning a factor
    ``ratio_threshold`` in amplitude.  ``j = 1`` needs nothing.  Frame 0 is
    reported separately (``reference``); at ``tf`` its eigenvectors may be the
    bare states in swapped order, flagged by ``final_permutation``.
    """
    if j < 1:
        raise ValueError("boundary checks apply to orders j >= 1")
    if j - 1 > stack.j_max:
        raise ValueError(f"order {j} needs frames up to {j - 1}; stack has {stack.j_max}")
    required = tuple(boundary_ratios(stack, jp, ratio_threshold) for jp in range(1, j))
    f0 = stack.frames[0]
    return AnalysisReport(
        order=j,
        ratio_threshold=ratio_threshold,
        required=required,
        reference=boundary_ratios(stack, 0, ratio_threshold),
        final_permutation=bool(f0.z[-1] > 0),
    )


# --------------------------------------------------------------------------
# Invariant-based inverse engineering


def _poly_derivative(coeffs: np.ndarray, t, order: int = 0) -> np.ndarray:
    p = np.polynomial.Polynomial(coeffs)
    return p.deriv(order)(t) if order else p(t)


@dataclass(frozen=True)
class InvariantAnsatz:
    """Polynomial angles of the invariant ``I = (nu/2) [[cos g, sin g e^{ib}], [., -cos g]]``.

    gamma: cubic with gamma(0) = pi, gamma(tf) = 0, zero slope at both ends.
    beta: quartic with beta = -pi/2 at 0, tf/2 and tf, slopes +pi/(2tf) at 0
    and -pi/(2tf) at tf.
    """

    tf: float
    gamma_coeffs: np.ndarray
    beta_coeffs: np.ndarray
    nu: float = 1.0

    @classmethod
    def from_boundary_conditions(cls, tf: float, nu: float = 1.0) -> "InvariantAnsatz":
        if not tf > 0:
            raise ValueError("tf must be positive")
        if not nu > 0:
            raise ValueError("nu must be positive")

        def rows(t, deriv, degree):
            return [
                0.0 if k < deriv else float(np.prod(range(k - deriv + 1, k + 1))) * t ** (k - deriv)
                for k in range(degree + 1)
            ]

        g = np.linalg.solve(
            np.array([rows(0, 0, 3), rows(tf, 0, 3), rows(0, 1, 3), rows(tf, 1, 3)]),
            np.array([np.pi, 0.0, 0.0, 0.0]),
        )
        b = np.linalg.solve(
            np.array(
                [rows(0, 0, 4), rows(tf / 2, 0, 4), rows(tf, 0, 4), rows(0, 1, 4), rows(tf, 1, 4)]
            ),
            np.array([-np.pi / 2] * 3 + [np.pi / (2 * tf), -np.pi / (2 * tf)]),
        )
        return cls(tf, g, b, nu)

    def gamma(self, t, order: int = 0):
        return _poly_derivative(self.gamma_coeffs, t, order)

    def beta(self, t, order: int = 0):
        return _poly_derivative(self.beta_coeffs, t, order)

    def _gamma_offset(self, t):
        # gamma - pi near t=0 without cancellation against pi
        c = self.gamma_coeffs.copy()
        c[0] -= np.pi
        return _poly_derivative(c, t)

    def edge_detuning(self, t_edge: float) -> float:
        """Finite limit of beta' - gamma' cos(beta) cot(gamma) / sin(beta) at an edge.

        With gamma' = 0, gamma in {0, pi} and cos(beta) = 0 at the edge,
        expanding in s = t - t_edge gives gamma' cot(gamma) -> 2 / s and
        cos(beta) -> -sin(beta_e) beta'_e s, so the product tends to
        -2 beta'_e and the detuning to 3 beta'_e.
        """
        if abs(self.gamma(t_edge, 1)) > 1e-12 or abs(np.cos(self.beta(t_edge))) > 1e-12:
            raise ValueError("edge limit needs gamma' = 0 and cos(beta) = 0 at the edge")
        if abs(self.gamma(t_edge, 2)) == 0:
            raise ValueError("edge limit needs gamma'' != 0")
        return 3.0 * float(self.beta(t_edge, 1))


def invariant_profiles(tf: float, n_samples: int, nu: float = 1.0):
    """Sampled gamma(t) and beta(t) of the polynomial ansatz."""
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3")
    ans = InvariantAnsatz.from_boundary_conditions(tf, nu)
    t = time_grid(tf, n_samples)
    return SampledFunction(tf, ans.gamma(t)), SampledFunction(tf, ans.beta(t))


def invariant_to_controls(ansatz: InvariantAnsatz, n_samples: int) -> ControlProtocol:
    """Controls for which the ansatz invariant is exact.

    omega_r = gamma' / sin(beta), delta = beta' - omega_r cos(beta) cot(gamma);
    the two edge samples use the analytic limit of the 0 * inf product.
    """
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3")
    t = time_grid(ansatz.tf, n_samples)
    beta = ansatz.beta(t)
    sin_b = np.sin(beta)
    if np.min(np.abs(sin_b)) < MIN_SIN_BETA:
        raise ValueError("|sin(beta)| < 0.1 somewhere: ansatz outside its validity range")
    gdot = ansatz.gamma(t, 1)
    omega = gdot / sin_b

    # cot(gamma) without cancellation: use gamma - pi in the first half
    gamma = ansatz.gamma(t)
    offset = ansatz._gamma_offset(t)
    first = t < ansatz.tf / 2
    small = np.where(first, offset, gamma)
    inner = slice(1, n_samples - 1)
    cot = np.full(n_samples, np.nan)
    cot[inner] = 1.0 / np.tan(small[inner])
    delta = np.empty(n_samples)
    delta[inner] = ansatz.beta(t[inner], 1) - omega[inner] * np.cos(beta[inner]) * cot[inner]
    delta[0] = ansatz.edge_detuning(0.0)
    delta[-1] = ansatz.edge_detuning(ansatz.tf)
    omega[0] = omega[-1] = 0.0
    return ControlProtocol(ansatz.tf, omega, delta, name="invariant")


def invariant_matrix(gamma, beta, nu: float = 1.0) -> np.ndarray:
    """``(nu/2) [[cos g, sin g e^{ib}], [sin g e^{-ib}, -cos g]]`` (broadcasts)."""
    gamma, beta = np.broadcast_arrays(np.asarray(gamma, float), np.asarray(beta, float))
    m = np.empty(gamma.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = np.cos(gamma)
    m[..., 0, 1] = np.sin(gamma) * np.exp(1j * beta)
    m[..., 1, 0] = np.sin(gamma) * np.exp(-1j * beta)
    m[..., 1, 1] = -np.cos(gamma)
    return 0.5 * nu * m


def invariant_rate(ansatz: InvariantAnsatz, t) -> np.ndarray:
    """Explicit time derivative of the invariant along the ansatz."""
    g, b = ansatz.gamma(t), ansatz.beta(t)
    gd, bd = ansatz.gamma(t, 1), ansatz.beta(t, 1)
    m = np.empty(np.shape(t) + (2, 2), dtype=complex)
    m[..., 0, 0] = -np.sin(g) * gd
    m[..., 0, 1] = (np.cos(g) * gd + 1j * np.sin(g) * bd) * np.exp(1j * b)
    m[..., 1, 0] = np.conj(m[..., 0, 1])
    m[..., 1, 1] = np.sin(g) * gd
    return 0.5 * ansatz.nu * m


def invariance_residual(ansatz: InvariantAnsatz, protocol: ControlProtocol) -> np.ndarray:
    """Spectral norm of dI/dt - i [I, H0] at every sample."""
    t = protocol.t
    inv = invariant_matrix(ansatz.gamma(t), ansatz.beta(t), ansatz.nu)
    h = compose(protocol.cartesian())
    res = invariant_rate(ansatz, t) - 1j * (inv @ h - h @ inv)
    return operator_norm(res)


def edge_commutators(ansatz: InvariantAnsatz, protocol: ControlProtocol) -> tuple[float, float]:
    """Spectral norm of [I, H0] at t = 0 and t = tf."""
    t = protocol.t[[0, -1]]
    inv = invariant_matrix(ansatz.gamma(t), ansatz.beta(t), ansatz.nu)
    h = compose(protocol.cartesian())[[0, -1]]
    c = operator_norm(inv @ h - h @ inv)
    return float(c[0]), float(c[1])
