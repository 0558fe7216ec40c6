"""Where can a Landau-Zener sweep be both adiabatic and start in bare states?

Edges need |alpha| > 2 omega0 / tf, adiabaticity needs |alpha| < 2 omega0^2.
With a factor of 10 on both sides the window opens at omega0 = 100 / tf.
"""
import numpy as np

from superadiabatic import (
    SLOW_SWEEP,
    adiabaticity_margin,
    feasibility_curves,
    feasibility_onset,
    landau_zener,
    lz_feasibility,
)

omega = np.linspace(0, 1000, 10001)
for tf in (2.0, 0.2):
    lower, upper = feasibility_curves(omega, tf)
    print(f"tf = {tf}: window opens at omega0 = {feasibility_onset(omega, tf):.1f}"
          f" (expected {100 / tf:g})")
    k = np.searchsorted(omega, 2 * 100 / tf)
    print(f"   at omega0 = {omega[k]:.0f}: {lower[k]:.0f} < |alpha| < {upper[k]:.0f}")

# The slow sweep sits on the edge side of the window but is far from adiabatic.
f = lz_feasibility(SLOW_SWEEP)
print("slow sweep: edges ok", f.boundary_ok, "| adiabatic", f.adiabatic_ok)
print("adiabaticity margin:", adiabaticity_margin(landau_zener(SLOW_SWEEP, 1001)))
