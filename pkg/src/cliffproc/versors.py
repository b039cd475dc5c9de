"""Rotors, boosts, light-cone coordinates and infinitesimal Lorentz maps."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Multivector, spacetime2


@dataclass(frozen=True)
class Versor:
    """Normalized Clifford-group element; ``value * reverse(value) = 1``."""
    value: Multivector
    kind: str

    def __post_init__(self):
        vv = self.value * self.value.reverse()
        if not (vv - 1).norm() <= 1e-12 * max(1.0, vv.norm()):
            raise ValueError(f"versor is not normalized: g g~ = {vv!r}")

    @property
    def algebra(self) -> Algebra:
        return self.value.algebra

    def inverse(self) -> "Versor":
        return Versor(self.value.reverse(), self.kind)

    def __mul__(self, other: "Versor") -> "Versor":
        kind = self.kind if self.kind == other.kind else "mixed"
        return Versor(self.value * other.value, kind)

    def __call__(self, a: Multivector) -> Multivector:
        return sandwich(self, a)


def rotor(plane: Multivector, angle: float, atol: float = 1e-12) -> Versor:
    """Exponential of ``plane * angle / 2``.

    ``plane`` must be a bivector squaring to -1 (rotation by ``angle``) or +1
    (boost with rapidity ``angle``).
    """
    if not np.allclose(plane.coeffs, plane.grade(2).coeffs, atol=atol, rtol=0):
        raise ValueError("plane must be a pure bivector")
    sq = plane * plane
    if not sq.is_scalar(atol):
        raise ValueError("plane is not a blade: its square is not a scalar")
    s = float(np.real(sq.scalar))
    if abs(s + 1) <= atol:
        return Versor(math.cos(angle / 2) + plane * math.sin(angle / 2), "rotation")
    if abs(s - 1) <= atol:
        return Versor(math.cosh(angle / 2) + plane * math.sinh(angle / 2), "boost")
    raise ValueError(f"plane must square to +1 or -1, got {s:g}")


def sandwich(g, a: Multivector) -> Multivector:
    """``g a g^-1`` for a :class:`Versor` or a raw invertible multivector."""
    if isinstance(g, Versor):
        return g.value * a * g.value.reverse()
    if isinstance(g, Multivector):
        return g * a * g.inverse()
    return a  # a plain nonzero scalar acts trivially


def _check_velocity(v: float):
    if not abs(v) < 1:
        raise ValueError(f"|v| must be < 1 (units of c), got {v}")


def rapidity(v: float) -> float:
    _check_velocity(v)
    return math.atanh(v)


def k_factor(v: float) -> float:
    """Bondi's k = sqrt((1+v)/(1-v))."""
    _check_velocity(v)
    return math.sqrt((1 + v) / (1 - v))


def velocity_add(v1: float, v2: float) -> float:
    _check_velocity(v1)
    _check_velocity(v2)
    return (v1 + v2) / (1 + v1 * v2)


def boost(v: float, algebra: Algebra | None = None) -> Versor:
    """Boost along e1 in C(1,1).

    Positive ``v`` is the direction of ``e01``; the light ray ``e0 + e1`` is
    scaled by ``1/k`` and ``e0 - e1`` by ``k``.
    """
    alg = algebra or spacetime2()
    return rotor(alg.e(0, 1) if alg.first_index == 0 else alg.e(1, 2), rapidity(v))


# -- light-cone bookkeeping ---------------------------------------------

def lightcone_coords(t, x):
    return t + x, t - x


def from_lightcone(u, w):
    return (u + w) / 2, (u - w) / 2


def radar_times(t, x):
    """Emission and reception times ``(t1, t2)`` of a radar echo from event (t, x)."""
    return t - x, t + x


def radar_events(t1, t2):
    """Event ``(t, x)`` located by a radar signal sent at ``t1`` and received at ``t2``."""
    return (t2 + t1) / 2, (t2 - t1) / 2


def boost_lightcone(u, w, v: float):
    """Light-cone coordinates seen by an observer moving with velocity ``v``."""
    k = k_factor(v)
    return u / k, k * w


# -- Sl(2, C) and infinitesimal Lorentz transformations ---------------

@dataclass(frozen=True)
class Sl2Params:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    @classmethod
    def from_matrix(cls, m) -> "Sl2Params":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]], dtype=complex)

    def det(self) -> complex:
        return self.alpha * self.delta - self.beta * self.gamma

    def trace(self) -> complex:
        return self.alpha + self.delta

    def conjugate_rep(self) -> "Sl2Params":
        """Parameters (A, B, Gamma, Delta) of the conjugate representation."""
        c = np.conj
        return Sl2Params(complex(c(self.delta)), complex(-c(self.gamma)),
                         complex(-c(self.beta)), complex(c(self.alpha)))


def _a_coefficients(p: Sl2Params) -> np.ndarray:
    al, be, ga, de = p.alpha, p.beta, p.gamma, p.delta
    c = np.conj
    two_a = np.array([
        1j * (-be + c(be) - ga + c(ga)),
        be + c(be) - ga - c(ga),
        1j * (-al + c(al) + de - c(de)),
        -be - c(be) - ga - c(ga),
        1j * (-be + c(be) + ga - c(ga)),
        -al - c(al) + de + c(de),
    ])
    return (two_a / 2).real


def infinitesimal_lorentz(params: Sl2Params, representation: str = "fundamental") -> np.ndarray:
    """4x4 generator ``w`` with ``dx/d(eps) = w @ x`` for the spinor map ``1 + eps*M``.

    For the fundamental representation ``x = (|xi|^2+|eta|^2, 2 Re(xi eta*),
    -2 Im(xi eta*), |xi|^2-|eta|^2)`` (see :func:`future_null_vector`).  For
    ``"conjugate"`` the parameters are those of the conjugate representation
    acting on ``(sigma, tau)``; they are mapped back to the fundamental ones
    and the same generator applies to the past-cone vector
    :func:`past_null_vector`.  Only the trace-free part of ``M`` is captured;
    a trace adds an overall dilation.
    """
    if representation == "conjugate":
        params = params.conjugate_rep()  # the map is an involution
    elif representation != "fundamental":
        raise ValueError("representation must be 'fundamental' or 'conjugate'")
    a1, a2, a3, a4, a5, a6 = _a_coefficients(params)
    return np.array([
        [0, -a4, -a5, -a6],
        [-a4, 0, a3, -a2],
        [-a5, -a3, 0, a1],
        [-a6, a2, -a1, 0],
    ])


def future_null_vector(xi: complex, eta: complex) -> np.ndarray:
    c = np.conj
    return np.array([abs(xi) ** 2 + abs(eta) ** 2,
                     (xi * c(eta) + c(xi) * eta).real,
                     (1j * (xi * c(eta) - c(xi) * eta)).real,
                     abs(xi) ** 2 - abs(eta) ** 2])


def past_null_vector(sigma: complex, tau: complex) -> np.ndarray:
    c = np.conj
    return np.array([-(abs(sigma) ** 2 + abs(tau) ** 2),
                     (sigma * c(tau) + c(sigma) * tau).real,
                     (1j * (sigma * c(tau) - c(sigma) * tau)).real,
                     abs(sigma) ** 2 - abs(tau) ** 2])


CONJ_INTERTWINER = np.array([[0, 1], [-1, 0]], dtype=complex)


def conjugate_generator(m: np.ndarray) -> np.ndarray:
    """``C conj(M) C^-1``: the conjugate-representation generator of ``M``."""
    c = CONJ_INTERTWINER
    return c @ np.conj(m) @ np.linalg.inv(c)
