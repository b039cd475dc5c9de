"""Translating the light cone at the origin.

A bi-twistor whose second pair of blocks vanishes describes the light cone
through the origin.  The translation element exp(a.P/2) of the conformal
algebra moves it to the point a; the displaced blocks come out as Pauli
combinations of a acting on the original ones.

Run: python3 demos/04_twistor_translation.py
"""
import numpy as np

from cliffproc.twistor import (BiTwistor, kernel_bitwistors, represent, translate_bitwistor,
                               translate_blocks, translation_operator, xi_system_residuals)

rng = np.random.default_rng(2)
psi = BiTwistor.origin(rng.normal(size=2) + 1j * rng.normal(size=2),
                       rng.normal(size=2) + 1j * rng.normal(size=2))
a = np.array([0.5, 0.2, -0.3, 0.1])
u = translation_operator(a)
moved = translate_bitwistor(u, psi)
print("translation element has", np.count_nonzero(np.abs(u.coeffs) > 1e-15), "nonzero blades")
print("moved blocks, algebra route:", np.round(moved.pack(), 4))
print("moved blocks, block formulas:", np.round(translate_blocks(a, psi).pack(), 4))
print("8x8 unipotent:", np.allclose(np.linalg.matrix_power(represent(u) - np.eye(8), 2), 0))

xi = np.array([0, 0, 0, 0, 1, 1.0])
kern = kernel_bitwistors(xi)
print(f"\nthe origin point xi = {xi} annihilates {len(kern)} independent bi-twistors;")
print("worst residual of the incidence system:", max(xi_system_residuals(xi, k).max() for k in kern))
