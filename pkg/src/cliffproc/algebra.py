"""Clifford algebras of arbitrary signature with a dense, bitmask-indexed basis.

A basis blade is identified by the bitmask of the generators it contains, in
strictly increasing generator order.  ``e21`` is therefore stored as ``-e12``.
Coefficients live in a numpy array of length ``2**n``.
"""
from __future__ import annotations

import numbers
import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_GENERATORS = 12


class SignatureMismatch(ValueError):
    """Operands belong to different algebras."""


class NotInvertible(ArithmeticError):
    """Element is not a versor (``g * reverse(g)`` is not a nonzero scalar)."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign picked up by sorting the generators of blade ``a`` followed by ``b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


class Algebra:
    """Real or complex Clifford algebra with a diagonal metric.

    ``metric`` lists the square (+1 or -1) of every generator in index order.
    ``first_index`` only affects blade names: with ``first_index=0`` the
    generators print as ``e0, e1, ...``.
    """

    def __init__(self, metric: Sequence[int], *, complex: bool = False,
                 first_index: int = 1, symbol: str = "e", name: str | None = None):
        metric = tuple(int(m) for m in metric)
        if any(m not in (1, -1) for m in metric):
            raise ValueError(f"generator squares must be +1 or -1, got {metric}")
        if len(metric) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators supported")
        self.metric = metric
        self.n = len(metric)
        self.dim = 1 << self.n
        self.is_complex = bool(complex)
        self.dtype = np.complex128 if complex else np.float64
        self.first_index = first_index
        self.symbol = symbol
        self.name = name
        self.p = metric.count(1)
        self.q = metric.count(-1)

    @classmethod
    def signature(cls, p: int, q: int = 0, **kwargs) -> "Algebra":
        """C(p, q): the first ``p`` generators square to +1, the rest to -1."""
        if p < 0 or q < 0:
            raise ValueError("p and q must be nonnegative")
        return cls([1] * p + [-1] * q, **kwargs)

    # -- identity -------------------------------------------------------
    def _key(self):
        return (self.metric, self.is_complex, self.first_index, self.symbol)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        ring = "complex" if self.is_complex else "real"
        label = f"{self.name}, " if self.name else ""
        return f"Algebra({label}C({self.p},{self.q}), metric={list(self.metric)}, {ring})"

    def complexified(self) -> "Algebra":
        return Algebra(self.metric, complex=True, first_index=self.first_index,
                       symbol=self.symbol, name=self.name)

    # -- tables ---------------------------------------------------------
    def blade_sign(self, a: int, b: int) -> int:
        """Sign s with e_a e_b = s e_(a^b)."""
        s = reorder_sign(a, b)
        common = a & b
        i = 0
        while common:
            if common & 1 and self.metric[i] < 0:
                s = -s
            common >>= 1
            i += 1
        return s

    @cached_property
    def sign_table(self) -> np.ndarray:
        n = self.dim
        table = np.empty((n, n), dtype=np.int8)
        for a in range(n):
            for b in range(n):
                table[a, b] = self.blade_sign(a, b)
        return table

    @cached_property
    def _xor(self) -> np.ndarray:
        idx = np.arange(self.dim)
        return idx[:, None] ^ idx[None, :]

    @cached_property
    def _gathered_signs(self) -> np.ndarray:
        # _gathered_signs[i, k] = sign(e_i e_(i^k)); row i contributes to out[k]
        return np.take_along_axis(self.sign_table, self._xor, axis=1).astype(float)

    @cached_property
    def grades(self) -> np.ndarray:
        return np.array([popcount(b) for b in range(self.dim)])

    @cached_property
    def reversion_signs(self) -> np.ndarray:
        k = self.grades
        return np.where((k * (k - 1) // 2) % 2, -1.0, 1.0)

    @cached_property
    def involution_signs(self) -> np.ndarray:
        return np.where(self.grades % 2, -1.0, 1.0)

    @property
    def trace_dimension(self) -> int:
        """Dimension of the matrix representation, ``2**floor(n/2)``."""
        return 1 << (self.n // 2)

    # -- blade names ----------------------------------------------------
    def _labels(self) -> list[str]:
        return [str(i + self.first_index) for i in range(self.n)]

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        labels = self._labels()
        parts = [labels[i] for i in range(self.n) if mask >> i & 1]
        sep = "_" if any(len(p) > 1 for p in labels) else ""
        return self.symbol + sep.join(parts)

    def parse_blade(self, name: str) -> tuple[int, int]:
        """Return ``(sign, mask)`` for a name like ``"e21"`` (non-canonical order allowed)."""
        if name in ("1", ""):
            return 1, 0
        if not name.startswith(self.symbol):
            raise KeyError(name)
        body = name[len(self.symbol):]
        labels = self._labels()
        if "_" in body or any(len(p) > 1 for p in labels):
            tokens = [t for t in re.split(r"_", body) if t]
        else:
            tokens = list(body)
        idx = []
        for t in tokens:
            if t not in labels:
                raise KeyError(f"unknown generator {t!r} in {name!r}")
            idx.append(labels.index(t))
        return self._indices_to_blade(idx)

    def _indices_to_blade(self, idx: Iterable[int]) -> tuple[int, int]:
        sign, mask = 1, 0
        for i in idx:
            bit = 1 << i
            sign *= self.blade_sign(mask, bit)
            mask ^= bit
        return sign, mask

    # -- constructors ---------------------------------------------------
    def mv(self, coeffs) -> "Multivector":
        return Multivector(self, coeffs)

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.dim, dtype=self.dtype))

    def scalar(self, value=1) -> "Multivector":
        c = np.zeros(self.dim, dtype=self.dtype)
        c[0] = self._coerce_scalar(value)
        return Multivector(self, c)

    def blade(self, mask: int, coeff=1) -> "Multivector":
        c = np.zeros(self.dim, dtype=self.dtype)
        c[mask] = self._coerce_scalar(coeff)
        return Multivector(self, c)

    def e(self, *labels) -> "Multivector":
        """Product of generators given by label, e.g. ``alg.e(1, 2)`` is e1 e2.

        A single string argument is parsed as a blade name: ``alg.e("e21")``.
        """
        if len(labels) == 1 and isinstance(labels[0], str):
            sign, mask = self.parse_blade(labels[0])
            return self.blade(mask, sign)
        idx = [int(l) - self.first_index for l in labels]
        if any(i < 0 or i >= self.n for i in idx):
            raise IndexError(f"generator label out of range: {labels}")
        sign, mask = self._indices_to_blade(idx)
        return self.blade(mask, sign)

    def generators(self) -> list["Multivector"]:
        return [self.blade(1 << i) for i in range(self.n)]

    def pseudoscalar(self) -> "Multivector":
        return self.blade(self.dim - 1)

    def vector(self, components: Sequence) -> "Multivector":
        if len(components) != self.n:
            raise ValueError(f"expected {self.n} components")
        c = np.zeros(self.dim, dtype=self.dtype)
        for i, x in enumerate(components):
            c[1 << i] = self._coerce_scalar(x)
        return Multivector(self, c)

    def random(self, rng: np.random.Generator, grades: Iterable[int] | None = None,
               scale: float = 1.0) -> "Multivector":
        c = rng.normal(scale=scale, size=self.dim)
        if self.is_complex:
            c = c + 1j * rng.normal(scale=scale, size=self.dim)
        if grades is not None:
            keep = np.isin(self.grades, list(grades))
            c = np.where(keep, c, 0)
        return Multivector(self, c)

    def _coerce_scalar(self, value):
        if isinstance(value, Multivector):
            raise TypeError("expected a scalar")
        if not self.is_complex and isinstance(value, complex) and value.imag != 0:
            raise TypeError(f"complex scalar {value} in real algebra {self!r}")
        if not self.is_complex:
            return float(np.real(value))
        return complex(value)


class Multivector:
    """Immutable element of an :class:`Algebra`."""

    __slots__ = ("algebra", "coeffs")
    __array_ufunc__ = None

    def __init__(self, algebra: Algebra, coeffs):
        arr = np.asarray(coeffs)
        if arr.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coefficients, got shape {arr.shape}")
        if np.iscomplexobj(arr) and not algebra.is_complex:
            if np.any(arr.imag != 0):
                raise TypeError(f"complex coefficients in real algebra {algebra!r}")
            arr = arr.real
        arr = np.array(arr, dtype=algebra.dtype)
        arr.flags.writeable = False
        self.algebra = algebra
        self.coeffs = arr

    # -- helpers --------------------------------------------------------
    def _check(self, other: "Multivector"):
        if other.algebra != self.algebra:
            raise SignatureMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def _wrap(self, c) -> "Multivector":
        return Multivector(self.algebra, c)

    def _as_mv(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, numbers.Number) or np.isscalar(other):
            return self.algebra.scalar(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._as_mv(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._as_mv(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._as_mv(other)
        if o is NotImplemented:
            return o
        return self._wrap(o.coeffs - self.coeffs)

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, numbers.Number) or np.isscalar(other):
            self.algebra._coerce_scalar(other)
            return self._wrap(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number) or np.isscalar(other):
            self.algebra._coerce_scalar(other)
            return self._wrap(other * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number) or np.isscalar(other):
            return self._wrap(self.coeffs / other)
        if isinstance(other, Multivector):
            return self * versor_inverse(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.algebra.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.algebra == other.algebra and np.array_equal(self.coeffs, other.coeffs)
        if isinstance(other, numbers.Number):
            return np.array_equal(self.coeffs, self.algebra.scalar(other).coeffs)
        return NotImplemented

    __hash__ = None

    def allclose(self, other, atol: float = 1e-12) -> bool:
        o = self._as_mv(other)
        return bool(np.max(np.abs(self.coeffs - o.coeffs), initial=0.0) <= atol)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (a tolerance measure, not the metric)."""
        return float(np.linalg.norm(self.coeffs))

    # -- structure ------------------------------------------------------
    def reverse(self) -> "Multivector":
        return self._wrap(self.coeffs * self.algebra.reversion_signs)

    def grade_involution(self) -> "Multivector":
        return self._wrap(self.coeffs * self.algebra.involution_signs)

    def conjugate(self) -> "Multivector":
        """Clifford conjugation (reversion composed with grade involution)."""
        a = self.algebra
        return self._wrap(self.coeffs * a.reversion_signs * a.involution_signs)

    def grade(self, k: int) -> "Multivector":
        return self._wrap(np.where(self.algebra.grades == k, self.coeffs, 0))

    def even(self) -> "Multivector":
        return self._wrap(np.where(self.algebra.grades % 2 == 0, self.coeffs, 0))

    def odd(self) -> "Multivector":
        return self._wrap(np.where(self.algebra.grades % 2 == 1, self.coeffs, 0))

    @property
    def scalar(self):
        return self.coeffs[0]

    def trace(self):
        return self.algebra.trace_dimension * self.coeffs[0]

    def inverse(self) -> "Multivector":
        return versor_inverse(self)

    def is_scalar(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs[1:]) <= atol))

    def __getitem__(self, blade: str | int):
        if isinstance(blade, str):
            sign, mask = self.algebra.parse_blade(blade)
            return sign * self.coeffs[mask]
        return self.coeffs[blade]

    def terms(self, atol: float = 0.0) -> dict[str, complex | float]:
        return {self.algebra.blade_name(m): c.item() for m, c in enumerate(self.coeffs)
                if abs(c) > atol}

    def __repr__(self):
        t = self.terms()
        if not t:
            return "0"
        return " + ".join(f"{c:g}" if name == "1" else f"{c:g}*{name}"
                          for name, c in t.items())


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    alg = a.algebra
    if alg.n <= 7:
        out = (a.coeffs[:, None] * b.coeffs[alg._xor] * alg._gathered_signs).sum(axis=0)
        return Multivector(alg, out)
    out = np.zeros(alg.dim, dtype=np.result_type(a.coeffs, b.coeffs))
    idx = np.arange(alg.dim)
    for i in np.flatnonzero(a.coeffs):
        out[i ^ idx] += a.coeffs[i] * alg.sign_table[i] * b.coeffs
    return Multivector(alg, out)


def reversion(a: Multivector) -> Multivector:
    return a.reverse()


def grade_involution(a: Multivector) -> Multivector:
    return a.grade_involution()


def clifford_conjugate(a: Multivector) -> Multivector:
    return a.conjugate()


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.algebra.n:
        raise ValueError(f"grade {k} outside 0..{a.algebra.n}")
    return a.grade(k)


def scalar_part(a: Multivector):
    return a.scalar


def trace(a: Multivector):
    """``2**floor(n/2)`` times the scalar part: the matrix trace in any faithful irrep."""
    return a.trace()


def versor_inverse(g: Multivector, atol: float = 1e-12) -> Multivector:
    """Inverse of a versor via ``g^-1 = reverse(g) / (g reverse(g))``."""
    rev = g.reverse()
    gg = g * rev
    scale = max(1.0, float(np.max(np.abs(gg.coeffs))))
    if not gg.is_scalar(atol * scale) or abs(gg.scalar) <= atol * scale:
        raise NotInvertible(f"g * reverse(g) = {gg!r} is not a nonzero scalar")
    return rev / gg.scalar


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return a * b - b * a


def anticommutator(a: Multivector, b: Multivector) -> Multivector:
    return a * b + b * a


# Named algebras used throughout, with the customary generator labels
# for each one.

def schrodinger(complex: bool = False) -> Algebra:
    """C(0,1) with generator ``e`` (e^2 = -1), isomorphic to the complex numbers."""
    return Algebra([-1], complex=complex, first_index=1, name="schrodinger")


def quaternion() -> Algebra:
    return Algebra.signature(0, 2, name="quaternion")


def spacetime2() -> Algebra:
    """C(1,1) with e0^2 = +1 (time), e1^2 = -1 (space)."""
    return Algebra.signature(1, 1, first_index=0, name="spacetime2")


def pauli(complex: bool = False) -> Algebra:
    return Algebra.signature(3, 0, complex=complex, name="pauli")


def dirac(complex: bool = False) -> Algebra:
    """C(1,3) with e0^2 = +1 and e1, e2, e3 squaring to -1."""
    return Algebra.signature(1, 3, complex=complex, first_index=0, name="dirac")


def lightcone31() -> Algebra:
    """C(3,1) for null-vector lifts: e0^2 = -1, e1..e3 square to +1."""
    return Algebra([-1, 1, 1, 1], first_index=0, name="lightcone31")


def conformal(complex: bool = False) -> Algebra:
    """Conformal algebra over beta_0..beta_5 with metric (+,-,-,-,-,+)."""
    return Algebra([1, -1, -1, -1, -1, 1], complex=complex, first_index=0,
                   name="conformal")


NAMED_ALGEBRAS = {
    "schrodinger": schrodinger,
    "quaternion": quaternion,
    "spacetime": spacetime2,
    "pauli": pauli,
    "dirac": dirac,
    "conformal": conformal,
}


def parse_algebra(spec: str) -> Algebra:
    """Parse ``cl(p,q)`` or a named algebra."""
    s = spec.strip().lower().replace(" ", "")
    m = re.fullmatch(r"(?:cl|c|r)?\((\d+),(\d+)\)", s)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if (p, q) == (1, 1):
            return spacetime2()
        if (p, q) == (1, 3):
            return dirac()
        return Algebra.signature(p, q)
    if s in NAMED_ALGEBRAS:
        return NAMED_ALGEBRAS[s]()
    raise ValueError(f"unknown algebra {spec!r}")
