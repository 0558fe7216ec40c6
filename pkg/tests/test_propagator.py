import warnings

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from superadiabatic import (
    SLOW_SWEEP,
    CartesianTriple,
    NormDriftWarning,
    StateTrajectory,
    adiabatic_overlap,
    iterate,
    landau_zener,
    populations,
    propagate,
    propagate_modified,
    static_protocol,
    superadiabatic_approximation,
)
from superadiabatic.pauli import compose

UP = np.array([1, 0], dtype=complex)
N = 2001


def constant(x, y, z, n=N):
    return CartesianTriple(np.full(n, x), np.full(n, y), np.full(n, z))


# --- propagate -------------------------------------------------------------


def test_full_rabi_flop():
    omega = 3.0
    traj = propagate(constant(omega / 2, 0, 0), UP, np.pi / omega)
    pop = populations(traj)
    assert pop.p1[-1] < 1e-8
    np.testing.assert_allclose(pop.p1, np.cos(omega * traj.t / 2) ** 2, atol=1e-8)


def test_zero_hamiltonian_leaves_state_unchanged():
    psi0 = np.array([0.6, 0.8j])
    traj = propagate(constant(0, 0, 0), psi0, 1.0)
    assert np.all(traj.psi == psi0)


def test_diagonal_phase():
    delta = 5.0
    psi0 = np.array([1, 1]) / np.sqrt(2)
    traj = propagate(constant(0, 0, delta / 2), psi0, 1.0)
    pop = populations(traj)
    np.testing.assert_allclose(pop.p1, 0.5, atol=1e-8)
    rel = traj.psi[:, 0] * np.conj(traj.psi[:, 1])
    np.testing.assert_allclose(rel, 0.5 * np.exp(-1j * delta * traj.t), atol=1e-8)


def test_matches_adaptive_solver():
    p = landau_zener(SLOW_SWEEP, 4001)
    h = p.cartesian()
    traj = propagate(h, UP, p.tf)
    t = p.t

    def rhs(tt, psi):
        x = np.interp(tt, t, h.x)
        z = np.interp(tt, t, h.z)  # both linear in t, interpolation is exact
        return -1j * np.array([[z, x], [x, -z]]) @ psi

    ref = solve_ivp(rhs, (0, p.tf), UP, method="DOP853", rtol=1e-12, atol=1e-12)
    assert np.max(np.abs(traj.final - ref.y[:, -1])) < 1e-9


def test_fourth_order_convergence():
    stack_n = [iterate(landau_zener(SLOW_SWEEP, n), 1) for n in (2001, 4001, 8001)]
    finals = [propagate_modified(s, 1, UP).final for s in stack_n]
    d1 = np.max(np.abs(finals[0] - finals[1]))
    d2 = np.max(np.abs(finals[1] - finals[2]))
    assert d1 / d2 > 8  # at least third order
    assert d1 < 16 * d2 * 1.5


def test_rejects_unnormalized_state():
    with pytest.raises(ValueError):
        propagate(constant(1, 0, 0), [1, 1], 1.0)


def test_rejects_coarse_grid():
    with pytest.raises(ValueError):
        propagate(constant(1, 0, 0, 101), UP, 1.0)


def test_norm_drift_warning():
    # 1000 rad/us over 1 us on 1001 samples: dt * |H| = 1
    with pytest.warns(NormDriftWarning):
        propagate(constant(1000, 0, 0, 1001), UP, 1.0)


def test_no_warning_on_fine_grid():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        traj = propagate(constant(1, 0.5, -0.3), UP, 1.0)
    assert traj.norm_drift() < 1e-12


# --- populations -------------------------------------------------------------


def test_populations_basis_state():
    traj = StateTrajectory(1.0, np.tile(UP, (11, 1)))
    pop = populations(traj)
    assert np.all(pop.p1 == 1) and np.all(pop.p2 == 0)


def test_populations_equal_superposition():
    traj = StateTrajectory(1.0, np.tile(np.array([1, 1j]) / np.sqrt(2), (11, 1)))
    np.testing.assert_allclose(populations(traj).p1, 0.5, rtol=1e-15)


# --- adiabatic_overlap ---------------------------------------------------------


def test_overlap_of_eigenstate(slow_stack):
    f0 = slow_stack.frames[0]
    traj = StateTrajectory(f0.tf, f0.rotation()[:, :, 0])
    pop = adiabatic_overlap(traj, f0)
    np.testing.assert_allclose(pop.p1, 1, atol=1e-14)
    np.testing.assert_allclose(pop.p2, 0, atol=1e-14)


@pytest.mark.parametrize("stack_name", ["slow_stack", "fast_stack"])
def test_first_order_shortcut_keeps_adiabatic_populations(stack_name, request):
    stack = request.getfixturevalue(stack_name)
    pop = adiabatic_overlap(propagate_modified(stack, 1, UP), stack.frames[0])
    assert np.ptp(pop.p1) < 1e-6 and np.ptp(pop.p2) < 1e-6


def test_bare_sweep_is_not_adiabatic(slow_stack):
    pop = adiabatic_overlap(propagate_modified(slow_stack, 0, UP), slow_stack.frames[0])
    assert np.ptp(pop.p1) > 0.1


def test_overlap_rejects_mismatched_grid(slow_stack):
    traj = StateTrajectory(slow_stack.tf, np.tile(UP, (101, 1)))
    with pytest.raises(ValueError):
        adiabatic_overlap(traj, slow_stack.frames[0])


# --- superadiabatic_approximation -----------------------------------------------


def test_approximation_starts_at_initial_state(slow_stack):
    psi0 = np.array([0.6, 0.8j])
    for j in range(1, slow_stack.j_max + 2):
        traj = superadiabatic_approximation(slow_stack, j, psi0)
        np.testing.assert_allclose(traj.psi[0], psi0, atol=1e-14)


def test_approximation_static_hamiltonian():
    p = static_protocol(0.7, -1.1, 2.0, 2001)
    stack = iterate(p, 2)
    psi0 = np.array([1, 1j]) / np.sqrt(2)
    # exact evolution by eigendecomposition
    e, v = np.linalg.eigh(compose(p.cartesian())[0])
    c = v.conj().T @ psi0
    exact = (v @ (np.exp(-1j * np.outer(e, p.t)) * c[:, None])).T
    for j in (1, 2, 3):
        approx = superadiabatic_approximation(stack, j, psi0)
        assert np.max(np.abs(approx.psi - exact)) < 1e-8
    assert np.max(np.abs(propagate(p.cartesian(), psi0, p.tf).psi - exact)) < 1e-8


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_exactness_table1(slow_stack, j):
    exact = propagate_modified(slow_stack, j, UP)
    approx = superadiabatic_approximation(slow_stack, j, UP)
    assert np.max(np.linalg.norm(exact.psi - approx.psi, axis=1)) < 1e-6


def test_approximation_order_bounds(slow_stack):
    with pytest.raises(ValueError):
        superadiabatic_approximation(slow_stack, 0, UP)
    with pytest.raises(ValueError):
        superadiabatic_approximation(slow_stack, slow_stack.j_max + 2, UP)


def test_first_order_approximation_follows_eigenstate(fast_stack):
    # for j = 1 the state stays on the instantaneous eigenvector up to a phase
    traj = superadiabatic_approximation(fast_stack, 1, UP)
    pop = adiabatic_overlap(traj, fast_stack.frames[0])
    assert np.ptp(pop.p1) < 1e-12
