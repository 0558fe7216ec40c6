"""Walk through the superadiabatic iteration for a Landau-Zener sweep.

Run with ``python3 demos/01_superadiabatic_frames.py``.
"""
import numpy as np

from superadiabatic import SLOW_SWEEP, iterate, landau_zener

# A slow chirp with a weak Rabi frequency: alpha = -20 rad/us^2, omega0 = 0.2 rad/us,
# tf = 0.2 us.  The detuning sweeps from +2 to -2 rad/us.
protocol = landau_zener(SLOW_SWEEP, 20001)
print("detuning at the edges:", protocol.delta[0], protocol.delta[-1])

# Build frames 0..4.  Frame j is the Hamiltonian seen in the j-th interaction
# picture; each frame hands its coupling K_j to the next one.
stack = iterate(protocol, 4)

# The table below lists the largest |X| and |Y| of every modified Hamiltonian
# H0^(j) = H0 + H_cd^(j-1).  The first correction is a huge sigma_y pulse, the
# second turns it back into a sigma_x pulse, and so on.
print(f"{'H':>6s} {'|X|max':>10s} {'|Y|max':>10s}")
for j in range(stack.j_max + 2):
    x, y, _ = stack.max_components(j)
    print(f"H0^({j}) {x:10.4f} {y:10.4f}")

# Every frame beyond the first points straight down in the rotating basis and
# has its azimuth locked to pi/2 or 3pi/2; the gauge phase stays on multiples of pi/2.
for j, f in enumerate(stack.frames):
    print(f"frame {j}: phi values {np.unique(np.round(f.phi[~f.degenerate], 9))},"
          f" eps values {np.unique(np.round(f.eps, 9))}")
