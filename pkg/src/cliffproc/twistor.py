"""Conformal algebra C(2,4), bi-twistors and conformal translations.

The generators beta_0..beta_5 (metric + - - - - +) are realized as 8x8
complex matrices ``beta_mu = 1 x gamma_mu``, ``beta_4 = s1 x gamma_5`` and
``beta_5 = s1 s3 x gamma_5`` with Dirac matrices in the chiral basis

    gamma_0 = [[0, 1], [1, 0]],   gamma_i = [[0, -s_i], [s_i, 0]],
    gamma_5 = gamma_0 gamma_1 gamma_2 gamma_3   (gamma_5^2 = -1).

A bi-twistor is a column of eight complex numbers.  With the outer
(Pauli) index first, the upper half holds the "2" Weyl pair and the lower
half the "1" pair; each half is ``(psi_lambda, psi_rho)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Multivector, conformal

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2 = np.eye(2, dtype=complex)
METRIC = (1, -1, -1, -1, -1, 1)


class PointAtInfinity(ZeroDivisionError):
    """xi^4 + xi^5 = 0: the six-vector projects to the light cone at infinity."""


def gamma_matrices() -> list[np.ndarray]:
    z = np.zeros((2, 2), dtype=complex)
    g0 = np.block([[z, I2], [I2, z]])
    gs = [np.block([[z, -s], [s, z]]) for s in SIGMA]
    return [g0, *gs]


def gamma5() -> np.ndarray:
    g = gamma_matrices()
    return g[0] @ g[1] @ g[2] @ g[3]


@lru_cache(maxsize=None)
def _beta_cached() -> tuple[np.ndarray, ...]:
    g, g5 = gamma_matrices(), gamma5()
    betas = [np.kron(I2, gm) for gm in g]
    betas.append(np.kron(SIGMA[0], g5))
    betas.append(np.kron(SIGMA[0] @ SIGMA[2], g5))
    for b in betas:
        b.setflags(write=False)
    return tuple(betas)


def beta_matrices() -> list[np.ndarray]:
    return list(_beta_cached())


def clifford_relation_residual() -> float:
    """Largest deviation from ``{beta_A, beta_B} = 2 g_AB`` over all pairs."""
    b = _beta_cached()
    worst = 0.0
    for i in range(6):
        for j in range(6):
            target = 2 * METRIC[i] * (i == j) * np.eye(8)
            worst = max(worst, float(np.abs(b[i] @ b[j] + b[j] @ b[i] - target).max()))
    return worst


def represent(x: Multivector) -> np.ndarray:
    """8x8 matrix of an element of the conformal algebra."""
    alg = x.algebra
    if alg.metric != METRIC:
        raise ValueError("expected an element of the conformal algebra (+ - - - - +)")
    b = _beta_cached()
    out = np.zeros((8, 8), dtype=complex)
    for mask in np.flatnonzero(x.coeffs):
        m = np.eye(8, dtype=complex)
        for i in range(6):
            if mask >> i & 1:
                m = m @ b[i]
        out += x.coeffs[mask] * m
    return out


# -- six-vectors and projective coordinates ------------------------------

def projective_coords(xi) -> np.ndarray:
    """Minkowski point ``x^mu = xi^mu / (xi^4 + xi^5)``."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (6,):
        raise ValueError("a six-vector has six components")
    den = xi[4] + xi[5]
    if den == 0 or abs(den) <= 1e-15 * max(1.0, float(np.abs(xi).max())):
        raise PointAtInfinity("xi^4 + xi^5 = 0")
    return xi[:4] / den


def six_vector_square(xi) -> float:
    xi = np.asarray(xi, dtype=float)
    return float(np.dot(METRIC, xi * xi))


def xi_operator(xi) -> np.ndarray:
    """Matrix of ``beta_A xi^A``."""
    b = _beta_cached()
    return sum(x * bm for x, bm in zip(np.asarray(xi, dtype=float), b))


# -- bi-twistors -------------------------------------------------------------

@dataclass(frozen=True)
class BiTwistor:
    lambda1: np.ndarray
    lambda2: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "rho1", "rho2"):
            v = np.asarray(getattr(self, name), dtype=complex).reshape(2)
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @classmethod
    def origin(cls, lambda1, rho1) -> "BiTwistor":
        z = np.zeros(2)
        return cls(lambda1, z, rho1, z)

    def pack(self) -> np.ndarray:
        v = np.empty(8, dtype=complex)
        v[0:2], v[2:4] = self.lambda2, self.rho2
        v[4:6], v[6:8] = self.lambda1, self.rho1
        return v

    @classmethod
    def unpack(cls, v) -> "BiTwistor":
        v = np.asarray(v, dtype=complex)
        if v.shape != (8,):
            raise ValueError("a bi-twistor has eight components")
        return cls(v[4:6], v[0:2], v[6:8], v[2:4])

    def allclose(self, other: "BiTwistor", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.pack(), other.pack(), atol=atol, rtol=0))


@dataclass(frozen=True)
class Twistor:
    """A Penrose twistor: a pair of Weyl spinors ``(omega, pi)``."""
    omega: np.ndarray
    pi: np.ndarray


def split_twistors(psi: BiTwistor) -> tuple[Twistor, Twistor]:
    return Twistor(psi.lambda1, psi.rho2), Twistor(psi.lambda2, psi.rho1)


def merge_twistors(t1: Twistor, t2: Twistor) -> BiTwistor:
    return BiTwistor(t1.omega, t2.omega, t2.pi, t1.pi)


# -- translations ------------------------------------------------------------

def translation_generators(algebra=None) -> list[Multivector]:
    """``P_mu = beta_mu (beta_4 - beta_5) / 2`` as algebra elements."""
    alg = algebra or conformal(complex=True)
    b = alg.generators()
    null = b[4] - b[5]
    return [b[m] * null / 2 for m in range(4)]


def translation_operator(dx, algebra=None) -> Multivector:
    """``U(dx) = 1 - dx^mu P_mu``."""
    alg = algebra or conformal(complex=True)
    dx = np.asarray(dx, dtype=float)
    if dx.shape != (4,):
        raise ValueError("displacement has four components")
    out = alg.scalar(1)
    for d, p in zip(dx, translation_generators(alg)):
        out = out - d * p
    return out


def translate_bitwistor(u: Multivector, psi: BiTwistor) -> BiTwistor:
    """Act with an algebra element on a bi-twistor through the 8x8 representation."""
    return BiTwistor.unpack(represent(u) @ psi.pack())


def pauli_combination(dx, sign: int) -> np.ndarray:
    """``dx^0 + sign * sigma.dx`` as a 2x2 matrix."""
    dx = np.asarray(dx, dtype=float)
    return dx[0] * I2 + sign * sum(d * s for d, s in zip(dx[1:], SIGMA))


def translate_blocks(dx, psi: BiTwistor) -> BiTwistor:
    """Closed-form block action of ``U(dx)``.

    lambda1 and rho1 are unchanged; lambda2 gains ``-i (dx0 - s.dx) rho1`` and
    rho2 gains ``+i (dx0 + s.dx) lambda1``.
    """
    lam2 = psi.lambda2 - 1j * pauli_combination(dx, -1) @ psi.rho1
    rho2 = psi.rho2 + 1j * pauli_combination(dx, +1) @ psi.lambda1
    return BiTwistor(psi.lambda1, lam2, psi.rho1, rho2)


def xi_system_residuals(xi, psi: BiTwistor) -> np.ndarray:
    """Residuals of the four block equations equivalent to ``(beta.xi) psi = 0``.

        (xi4 + xi5) lambda2 = -i (xi0 - s.xi) rho1
        (xi4 - xi5) lambda1 = -i (xi0 - s.xi) rho2
        (xi4 + xi5) rho2    =  i (xi0 + s.xi) lambda1
        (xi4 - xi5) rho1    =  i (xi0 + s.xi) lambda2
    """
    xi = np.asarray(xi, dtype=float)
    plus, minus = xi[4] + xi[5], xi[4] - xi[5]
    xm, xp = pauli_combination(xi[:4], -1), pauli_combination(xi[:4], +1)
    rows = [
        plus * psi.lambda2 + 1j * xm @ psi.rho1,
        minus * psi.lambda1 + 1j * xm @ psi.rho2,
        plus * psi.rho2 - 1j * xp @ psi.lambda1,
        minus * psi.rho1 - 1j * xp @ psi.lambda2,
    ]
    return np.array([float(np.abs(r).max()) for r in rows])


def kernel_bitwistors(xi, atol: float = 1e-10) -> list[BiTwistor]:
    """Basis of bi-twistors annihilated by ``beta.xi`` (non-empty only for null xi)."""
    m = xi_operator(xi)
    _, s, vh = np.linalg.svd(m)
    scale = max(1.0, float(s[0]))
    return [BiTwistor.unpack(vh[k].conj()) for k in range(8) if s[k] <= atol * scale]
