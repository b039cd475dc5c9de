"""The two Bohm equations on sampled wavefunctions.

The Liouville and anticommutator residuals are evaluated on grids for a
free Gaussian packet and a plane wave, then the grid is refined.  Halving
both steps divides the residuals by about four.  The plane wave is an exact
discrete solution of the conservation equation, so there only the
anticommutator residual shows the second-order trend.

Run: python3 demos/03_bohm_residuals.py
"""
import numpy as np

from cliffproc.bohm import (GaussianPacket, PlaneWave, convergence_ratios, decompose_polar,
                            gaussian_quantum_potential, quantum_potential, residual_table,
                            sample, uniform_axis)

cases = {
    "gaussian": (GaussianPacket(sigma=1.0, k0=1.0), -5.0, 5.0, 0.1, 0.02),
    "plane_wave": (PlaneWave(k=(1.3,)), 0.0, 2.0, 0.02, 0.02),
}
keys = ("liouville", "conservation", "anticommutator", "qhj")
for name, (spec, lo, hi, h, dt) in cases.items():
    rows = residual_table(spec, lo, hi, h, dt, t=0.3, levels=4)
    print(f"\n{name}")
    print("  h        dt       " + "".join(k.rjust(16) for k in keys))
    for r in rows:
        print(f"  {r['h']:<8.4g} {r['dt']:<8.4g}" + "".join(f"{r[k]:16.3e}" for k in keys))
    for k in keys:
        print(f"  {k:15s} ratios", np.round(convergence_ratios(rows, k), 3))

x = uniform_axis(-3, 3, 0.01)
q = quantum_potential(decompose_polar(sample(GaussianPacket(sigma=1.0), [x], 0.0)), 1.0)
exact = gaussian_quantum_potential(x, 1.0)
print("\nquantum potential of a Gaussian (h = 0.01), numeric against closed form")
for xi, qn, qa in list(zip(x, q, exact))[50:-1:50]:
    print(f"  x = {xi:5.2f}  Q = {qn:9.5f}  exact {qa:9.5f}")
