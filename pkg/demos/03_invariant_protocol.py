"""Inverse engineering from a dynamical invariant.

The invariant I = (nu/2)[[cos g, sin g e^{ib}], [sin g e^{-ib}, -cos g]] with a
cubic g(t) and a quartic b(t) fixes the controls.  The state that starts on
an eigenvector of I stays on it, so population goes from |1> to |2>.
"""
import numpy as np

from superadiabatic import (
    InvariantAnsatz,
    edge_commutators,
    invariance_residual,
    invariant_to_controls,
    populations,
    propagate,
)

ansatz = InvariantAnsatz.from_boundary_conditions(tf=0.2)
print("gamma coefficients:", ansatz.gamma_coeffs)
print("beta coefficients: ", ansatz.beta_coeffs)

protocol = invariant_to_controls(ansatz, 20001)
i = np.argmax(np.abs(protocol.omega_r))
print(f"peak Rabi frequency {protocol.omega_r[i]:.2f} rad/us at t = {protocol.t[i]:.3f} us")
print(f"detuning at the edges {protocol.delta[0]:.3f}, {protocol.delta[-1]:.3f} rad/us")

traj = propagate(protocol.cartesian(), [1, 0], protocol.tf)
print(f"final P1 = {populations(traj).p1[-1]:.2e}")
print(f"max |dI/dt - i[I, H]| = {np.max(invariance_residual(ansatz, protocol)):.2e}")
print("[I, H] at the edges:", edge_commutators(ansatz, protocol))
