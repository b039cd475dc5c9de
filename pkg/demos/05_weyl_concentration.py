"""Concentration of the position idempotent as the order grows.

The idempotent eps_0 has weight 1/n on each R(0, k).  With the balanced
lattice scale eta = sqrt(2 pi / n), the element sum_k c_k exp(i k eta q)
seen as a function of a continuous position q is a Dirichlet kernel.  Its
main lobe has width of order sqrt(2 pi / n), so it narrows like a delta
function while its period sqrt(2 pi n) grows.

This prints a profile; it is illustrative and makes no pass/fail claim.

Run: python3 demos/05_weyl_concentration.py
"""
import numpy as np

from cliffproc.weyl import WeylAlgebra

print("   n    weight per R(0,k)   lobe width   period   fraction of |f|^2 within |q| < 0.5")
for n in (4, 8, 16, 32, 64):
    c = WeylAlgebra(n).idempotent_x(0).coeffs[0]          # coefficients on R(0, k)
    eta = np.sqrt(2 * np.pi / n)
    period = 2 * np.pi / eta
    q = np.linspace(-period / 2, period / 2, 20001)
    f = np.exp(1j * eta * np.outer(q, np.arange(n))) @ c
    w = np.abs(f) ** 2
    inside = w[np.abs(q) < 0.5].sum() / w.sum()
    print(f"{n:4d}    {abs(c[0]):.6f}           {2 * eta:.4f}       {period:6.2f}   {inside:.4f}")
