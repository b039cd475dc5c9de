"""Primitive idempotents, minimal ideals, density elements and light rays.

A spinor is held as an element ``psi * eps`` of a minimal left ideal, where
``eps`` is a primitive idempotent and ``psi`` is taken from the even
subalgebra.  The right ideal partner is ``eps * conj(psi)`` (Clifford
conjugate), and their product is the Clifford density element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Algebra, Multivector, dirac, lightcone31, pauli
from .versors import sandwich


class ConfigurationError(TypeError):
    """The operation needs a complex scalar ring."""


class NotNullError(ValueError):
    def __init__(self, residual: float):
        super().__init__(f"vector is not null: |v0^2 - |v|^2| = {residual:.3e}")
        self.residual = residual


@dataclass(frozen=True)
class Idempotent:
    value: Multivector

    def __post_init__(self):
        v = self.value
        if not (v * v - v).norm() <= 1e-12 * max(1.0, v.norm()):
            raise ValueError("element is not idempotent")

    @property
    def algebra(self) -> Algebra:
        return self.value.algebra

    def complement(self) -> "Idempotent":
        return Idempotent(1 - self.value)


def make_idempotent(direction: Multivector, atol: float = 1e-12) -> Idempotent:
    """``(1 + u)/2`` for an element ``u`` with ``u^2 = +1``."""
    sq = direction * direction
    if not (sq - 1).norm() <= atol:
        raise ValueError(f"direction must square to +1, got {sq!r}")
    return Idempotent((1 + direction) / 2)


def unit_idempotent(algebra: Algebra) -> Idempotent:
    """The identity, the only idempotent of the Schrodinger algebra C(0,1)."""
    return Idempotent(algebra.scalar(1))


@dataclass(frozen=True)
class IdealElement:
    """``even_part * eps`` (left) or ``eps * conj(even_part)`` (right)."""
    even_part: Multivector
    idempotent: Idempotent
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if self.even_part.algebra != self.idempotent.algebra:
            raise ValueError("even part and idempotent live in different algebras")

    @property
    def algebra(self) -> Algebra:
        return self.even_part.algebra

    @property
    def value(self) -> Multivector:
        eps = self.idempotent.value
        if self.side == "left":
            return self.even_part * eps
        return eps * self.even_part.conjugate()

    def partner(self) -> "IdealElement":
        return IdealElement(self.even_part, self.idempotent,
                            "right" if self.side == "left" else "left")


@dataclass(frozen=True)
class DensityElement:
    value: Multivector

    def trace(self):
        return self.value.trace()


def density(psi: IdealElement) -> DensityElement:
    """``rho = psi_L eps psi_R`` with ``psi_R = conj(psi_L)``."""
    if psi.side != "left":
        raise ValueError("density expects a left ideal element")
    p = psi.even_part
    return DensityElement(p * psi.idempotent.value * p.conjugate())


# -- Pauli spinors --------------------------------------------------------

def pauli_idempotent(algebra: Algebra | None = None) -> Idempotent:
    alg = algebra or pauli()
    return make_idempotent(alg.e(3))


def pauli_spinor(psi1: complex, psi2: complex, algebra: Algebra | None = None) -> IdealElement:
    """Ideal element for the column spinor ``(psi1, psi2)``, with idempotent (1+e3)/2.

    Writing ``psi1 = a + i d`` and ``psi2 = c + i b``, the even part is
    ``a + d e12 + b e23 - c e31``; the pseudoscalar e123 plays the part of i.
    """
    alg = algebra or pauli()
    a, d = float(np.real(psi1)), float(np.imag(psi1))
    c, b = float(np.real(psi2)), float(np.imag(psi2))
    even = a + d * alg.e("e12") + b * alg.e("e23") - c * alg.e("e31")
    return IdealElement(even, pauli_idempotent(alg))


def pauli_spinor_odd_form(psi1: complex, psi2: complex, algebra: Algebra | None = None) -> Multivector:
    """The same element written as ``(a + e123 d) eps + (c + e123 b)(e1 + e13)/2``."""
    alg = algebra or pauli()
    a, d = float(np.real(psi1)), float(np.imag(psi1))
    c, b = float(np.real(psi2)), float(np.imag(psi2))
    i3 = alg.e("e123")
    eps = (1 + alg.e(3)) / 2
    return (a + i3 * d) * eps + (c + i3 * b) * (alg.e(1) + alg.e("e13")) / 2


def pauli_components(psi: IdealElement) -> tuple[complex, complex]:
    """Inverse of :func:`pauli_spinor`."""
    p = psi.even_part
    return complex(p.scalar, p["e12"]), complex(-p["e31"], p["e23"])


# -- Hopf map and light rays ---------------------------------------------

def hopf_even_part(g, algebra: Algebra | None = None) -> Multivector:
    alg = algebra or pauli()
    g0, g1, g2, g3 = g
    return g0 + g1 * alg.e("e23") + g2 * alg.e("e31") + g3 * alg.e("e12")


def hopf_map(g0: float, g1: float, g2: float, g3: float) -> tuple[float, float, float, float]:
    """Components of ``psi_L (1+e3) psi_R`` in C(3,0), computed by the product."""
    alg = pauli()
    psi = hopf_even_part((g0, g1, g2, g3), alg)
    v = psi * (1 + alg.e(3)) * psi.conjugate()
    return (float(v.scalar), float(v["e1"]), float(v["e2"]), float(v["e3"]))


def hopf_closed_form(g0: float, g1: float, g2: float, g3: float) -> tuple[float, float, float, float]:
    """The same components written out as quadratic forms in ``g``."""
    return (g0 * g0 + g1 * g1 + g2 * g2 + g3 * g3,
            2 * (g1 * g3 - g0 * g2),
            2 * (g0 * g1 + g2 * g3),
            g0 * g0 - g1 * g1 - g2 * g2 + g3 * g3)


def null_residual(v) -> float:
    v0, v1, v2, v3 = v
    return abs(v0 * v0 - v1 * v1 - v2 * v2 - v3 * v3)


def lift_null_vector(v, tol: float = 1e-10) -> Multivector:
    """Lift ``(v0, v1, v2, v3)`` to ``v0 e0 + v_i e_i`` in C(3,1) with e0^2 = -1."""
    r = null_residual(v)
    if r > tol * max(1.0, float(v[0]) ** 2):
        raise NotNullError(r)
    return lightcone31().vector([float(x) for x in v])


def penrose_matrix(psi1: complex, psi2: complex) -> tuple[float, float, float, float]:
    """``(t, x, y, z)`` read off ``|psi><psi|`` against Penrose's light-ray matrix."""
    c = np.conj
    t = abs(psi1) ** 2 + abs(psi2) ** 2
    x = psi1 * c(psi2) + c(psi1) * psi2
    y = 1j * (psi1 * c(psi2) - c(psi1) * psi2)
    z = abs(psi1) ** 2 - abs(psi2) ** 2
    return (float(t), float(np.real(x)), float(np.real(y)), float(z))


def light_ray_matrix(t, x, y, z) -> np.ndarray:
    return np.array([[t + z, x - 1j * y], [x + 1j * y, t - z]])


def _signed_permutations(n: int):
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            m = np.zeros((n, n))
            for row, (col, s) in enumerate(zip(perm, signs)):
                m[row, col] = s
            yield m


def _apply_identification(m: np.ndarray, g) -> tuple[complex, complex]:
    r = m @ np.asarray(g, dtype=float)
    return complex(r[0], r[1]), complex(r[2], r[3])


@lru_cache(maxsize=None)
def _solve_identification() -> tuple[tuple[float, ...], ...]:
    probes = [np.eye(4)[i] for i in range(4)]
    probes += [np.array([1.0, 2.0, -0.5, 0.25]), np.array([0.3, -1.1, 0.7, 2.0])]
    matches = []
    for m in _signed_permutations(4):
        ok = all(np.allclose(penrose_matrix(*_apply_identification(m, g)), hopf_map(*g),
                             atol=1e-12) for g in probes)
        if ok:
            matches.append(m)
    if not matches:
        raise RuntimeError("no signed-permutation identification reproduces the Hopf map")
    # The match is unique up to a global phase in {1, i, -1, -i}; fix it by Re(psi1) = +g0.
    best = next((m for m in matches if m[0, 0] == 1), matches[0])
    return tuple(tuple(row) for row in best)


def spinor_identification() -> np.ndarray:
    """4x4 matrix taking ``g`` to ``(Re psi1, Im psi1, Re psi2, Im psi2)``.

    Found by searching signed permutations for the map under which
    :func:`penrose_matrix` reproduces :func:`hopf_map` on a set of probes.
    """
    return np.array(_solve_identification())


def hopf_to_spinor(g) -> tuple[complex, complex]:
    return _apply_identification(spinor_identification(), g)


# -- Dirac algebra: chirality -------------------------------------------

def chirality_operator(algebra: Algebra) -> Multivector:
    """``i * I`` with ``I`` the pseudoscalar; must square to +1."""
    if not algebra.is_complex:
        raise ConfigurationError("chirality projection needs a complex algebra")
    op = 1j * algebra.pseudoscalar()
    if not (op * op - 1).norm() <= 1e-12:
        raise ConfigurationError("i * pseudoscalar does not square to +1 in this algebra")
    return op


def chirality_projector(algebra: Algebra, sign: int) -> Multivector:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return (1 + sign * chirality_operator(algebra)) / 2


def chirality_project(psi: Multivector, sign: int) -> Multivector:
    """``(1 +- i e0123)/2 * psi``."""
    return chirality_projector(psi.algebra, sign) * psi


def dirac_helicity_basis(algebra: Algebra | None = None) -> dict[str, Multivector]:
    """Basis of the left ideal generated by ``(1 - i e5)(1 - e03)/4`` (``e5 = e0123``).

    The ``minus`` pair spans the ``-1`` eigenspace of ``i e5``, the ``plus``
    pair the ``+1`` eigenspace.
    """
    alg = algebra or dirac(complex=True)
    i5 = 1j * alg.pseudoscalar()
    m, p = (1 - i5) / 4, (1 + i5) / 4
    return {
        "minus_0": m * (1 - alg.e("e03")),
        "minus_1": m * (alg.e("e13") + alg.e("e01")),
        "plus_0": p * (alg.e(0) - alg.e(3)),
        "plus_1": p * (alg.e(2) + alg.e("e023")),
    }


def frame_idempotent(g, direction: Multivector) -> Idempotent:
    """Idempotent of a rotated frame: ``(1 + g u g^-1)/2``."""
    return make_idempotent(sandwich(g, direction))
