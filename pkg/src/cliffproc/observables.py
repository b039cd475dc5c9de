"""Trace-based coefficient extraction and expectation values."""
from __future__ import annotations

import numpy as np

from .algebra import Algebra, Multivector
from .spinors import DensityElement, IdealElement, density


def _blade_mask(algebra: Algebra, blade) -> tuple[int, int]:
    if isinstance(blade, str):
        return algebra.parse_blade(blade)
    return 1, int(blade)


def extract_coefficient(b: Multivector, blade):
    """Coefficient of a basis blade, recovered through the trace.

    ``b^A = tr(B rev(e_A)) / (N scalar(e_A rev(e_A)))`` with ``N`` the matrix
    dimension.  ``blade`` is a name such as ``"e12"`` or ``"e21"`` (the sign of a
    non-canonical order is honoured) or a bitmask.
    """
    alg = b.algebra
    sign, mask = _blade_mask(alg, blade)
    e = alg.blade(mask, sign)
    er = e.reverse()
    return (b * er).trace() / (alg.trace_dimension * (e * er).scalar)


def bilinear_invariants(b: Multivector) -> dict[str, complex | float]:
    """All blade coefficients of ``b`` keyed by blade name, via :func:`extract_coefficient`."""
    alg = b.algebra
    return {alg.blade_name(m): extract_coefficient(b, m) for m in range(alg.dim)}


def reconstruct(algebra: Algebra, coefficients: dict) -> Multivector:
    out = algebra.zero()
    for name, c in coefficients.items():
        sign, mask = algebra.parse_blade(name)
        out = out + algebra.blade(mask, sign * c)
    return out


def _as_multivector(rho) -> Multivector:
    if isinstance(rho, DensityElement):
        return rho.value
    if isinstance(rho, IdealElement):
        return density(rho).value
    return rho


def expectation(b: Multivector, rho, normalize: bool = True, atol: float = 1e-14):
    """``tr(B rho)``, divided by ``tr(rho)`` when ``normalize`` is set."""
    r = _as_multivector(rho)
    val = (b * r).trace()
    if normalize:
        tr = r.trace()
        if abs(tr) <= atol:
            raise ValueError("density element has zero trace")
        val = val / tr
    return val


def spin_density(psi: IdealElement) -> Multivector:
    """``rho S = psi_L e3 psi_R`` for a Pauli spinor with idempotent (1+e3)/2."""
    alg = psi.algebra
    e3 = alg.e(3)
    if not psi.idempotent.value.allclose((1 + e3) / 2):
        raise ValueError("spin vector needs the idempotent (1 + e3)/2")
    p = psi.even_part
    return p * e3 * p.conjugate()


def spin_vector(psi: IdealElement, normalize: bool = True) -> np.ndarray:
    """``<S_j>`` as half the e_j coefficient of ``rho S``.

    With ``normalize`` the result is divided by ``rho = tr(rho_hat)``, so a
    normalized state has ``|<S>| = 1/2``.
    """
    rs = spin_density(psi)
    s = np.array([float(np.real(rs[f"e{j}"])) for j in (1, 2, 3)]) / 2
    if normalize:
        rho = float(np.real(density(psi).trace()))
        if rho <= 0:
            raise ValueError("state has zero density")
        s = s / rho
    return s


def differential_expectation(b: Multivector, psi: Multivector, dpsi: Multivector,
                             idempotent: Multivector | None = None, sign: int = 1):
    """``<B d>_+-`` from ``2<P> = tr[B (d psi) eps psi_R] +- tr[conj(B) psi eps (d psi_R)]``.

    ``psi`` and ``dpsi`` are the even part and its derivative at one site;
    ``psi_R`` is the Clifford conjugate.  With ``dpsi = psi`` and
    ``sign = +1`` this is the expectation of ``(B + conj(B))/2``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    for x in (psi, dpsi):
        if not np.all(np.isfinite(x.coeffs)):
            raise ValueError("field is not differentiable here (non-finite values)")
    eps = idempotent if idempotent is not None else psi.algebra.scalar(1)
    first = (b * dpsi * eps * psi.conjugate()).trace()
    second = (b.conjugate() * psi * eps * dpsi.conjugate()).trace()
    return (first + sign * second) / 2

