"""Rotations, boosts and light rays.

A rotor turns e1 continuously towards e2; a boost in C(1,1) rescales the two
light rays e0 + e1 and e0 - e1 by 1/k and k.  Four real numbers in the even
part of C(3,0) produce a null vector through the Hopf map.

Run: python3 demos/02_light_cones.py
"""
import math

import numpy as np

from cliffproc.algebra import quaternion, spacetime2
from cliffproc.spinors import hopf_map, lift_null_vector
from cliffproc.versors import boost, k_factor, rotor, velocity_add

alg = quaternion()
for theta in np.linspace(0, math.pi, 5):
    g = rotor(alg.e(1, 2), theta)
    print(f"theta = {theta:5.3f}: g e1 g^-1 = {g(alg.e(1))}")

st = spacetime2()
e0, e1 = st.e(0), st.e(1)
for v in (0.3, 0.6, 0.9):
    g = boost(v)
    print(f"\nv = {v}: k = {k_factor(v):.6f}")
    print("  e0 + e1 ->", g(e0 + e1))
    print("  e0 - e1 ->", g(e0 - e1))

v1, v2 = 0.5, 0.7
print(f"\nk({v1}) k({v2}) = {k_factor(v1) * k_factor(v2):.12f}")
print(f"k({v1} (+) {v2}) = {k_factor(velocity_add(v1, v2)):.12f}")

rng = np.random.default_rng(1)
print("\nHopf map samples (t, x, y, z) and their Minkowski square:")
for g in rng.normal(size=(4, 4)):
    v = np.array(hopf_map(*g))
    lifted = lift_null_vector(v)
    print("  ", np.round(v, 6), f"  square = {(lifted * lifted).scalar:+.2e}")
