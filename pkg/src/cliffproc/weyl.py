"""The finite Weyl (clock and shift) algebra.

Elements are stored as n x n complex coefficient arrays over the basis
``R(j, k) = tau^(-jk) U^j V^k`` with ``tau = exp(i pi/n)``, so ``tau^2 = omega``
and the half power of omega is single valued.  Products use structure
constants derived from ``V^k U^l = omega^(-kl) U^l V^k``; the matrix
representation (``U|k> = |k-1>``, ``V = diag(omega^k)``) is kept separate
and serves as an independent check.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

MIN_ORDER, MAX_ORDER = 2, 64


class WeylAlgebra:
    def __init__(self, n: int, dx: float = 1.0, dp: float = 1.0):
        if not MIN_ORDER <= n <= MAX_ORDER:
            raise ValueError(f"order must be in [{MIN_ORDER}, {MAX_ORDER}], got {n}")
        if dx <= 0 or dp <= 0:
            raise ValueError("lattice scales must be positive")
        self.n = int(n)
        self.dx = float(dx)
        self.dp = float(dp)
        self.omega = np.exp(2j * np.pi / n)
        self.tau = np.exp(1j * np.pi / n)

    def __repr__(self):
        return f"WeylAlgebra(n={self.n}, dx={self.dx:g}, dp={self.dp:g})"

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and (self.n, self.dx, self.dp) == (other.n, other.dx, other.dp)

    def __hash__(self):
        return hash((self.n, self.dx, self.dp))

    # -- structure constants -------------------------------------------
    def _tau_power(self, e):
        return np.exp(1j * np.pi * (np.asarray(e) % (2 * self.n)) / self.n)

    @cached_property
    def structure(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(phase, J, K)`` with ``R(j,k) R(l,m) = phase * R(J, K)``, arrays indexed [j,k,l,m]."""
        n = self.n
        j, k, l, m = np.meshgrid(*(np.arange(n),) * 4, indexing="ij")
        jj, kk = (j + l) % n, (k + m) % n
        expo = -j * k - l * m - 2 * k * l + jj * kk
        return self._tau_power(expo), jj, kk

    def phase(self, j, k, l, m) -> complex:
        n = self.n
        jj, kk = (j + l) % n, (k + m) % n
        return complex(self._tau_power(-j * k - l * m - 2 * k * l + jj * kk))

    # -- constructors --------------------------------------------------
    def element(self, coeffs) -> "WeylElement":
        return WeylElement(self, coeffs)

    def zero(self) -> "WeylElement":
        return WeylElement(self, np.zeros((self.n, self.n), dtype=complex))

    def basis(self, j: int, k: int, coeff=1.0) -> "WeylElement":
        c = np.zeros((self.n, self.n), dtype=complex)
        c[j % self.n, k % self.n] = coeff
        return WeylElement(self, c)

    def identity(self) -> "WeylElement":
        return self.basis(0, 0)

    @property
    def U(self) -> "WeylElement":
        return self.basis(1, 0)

    @property
    def V(self) -> "WeylElement":
        return self.basis(0, 1)

    def random(self, rng: np.random.Generator) -> "WeylElement":
        shape = (self.n, self.n)
        return WeylElement(self, rng.normal(size=shape) + 1j * rng.normal(size=shape))

    # -- matrix representation -------------------------------------------
    def shift_matrix(self) -> np.ndarray:
        """``U|k> = |k-1>`` (indices mod n)."""
        return np.roll(np.eye(self.n, dtype=complex), -1, axis=0)

    def clock_matrix(self) -> np.ndarray:
        return np.diag(self.omega ** np.arange(self.n))

    def basis_matrix(self, j: int, k: int) -> np.ndarray:
        u = np.linalg.matrix_power(self.shift_matrix(), j % self.n)
        v = np.linalg.matrix_power(self.clock_matrix(), k % self.n)
        return self._tau_power(-j * k) * (u @ v)

    @cached_property
    def _fourier_kernel(self) -> np.ndarray:
        a = np.arange(self.n)
        return self.omega ** (np.outer(a, a) % self.n)  # [k, b] -> omega^(kb)

    def _to_matrix(self, coeffs: np.ndarray) -> np.ndarray:
        # (U^j V^k)[a, b] = omega^(kb) when a = b - j (mod n)
        n = self.n
        a = np.arange(n)
        t = (coeffs * self._tau_power(-np.outer(a, a))) @ self._fourier_kernel
        m = np.zeros((n, n), dtype=complex)
        rows = (a[None, :] - a[:, None]) % n  # rows[j, b] = b - j
        m[rows, np.broadcast_to(a, (n, n))] = t
        return m

    def from_matrix(self, m) -> "WeylElement":
        """Expand an n x n matrix on the R(j, k) basis."""
        m = np.asarray(m, dtype=complex)
        n = self.n
        a = np.arange(n)
        t = m[(a[None, :] - a[:, None]) % n, np.broadcast_to(a, (n, n))]
        c = t @ self._fourier_kernel.conj() / n
        return WeylElement(self, c * self._tau_power(np.outer(a, a)))

    # -- idempotents and phase-space elements ----------------------------
    def idempotent_x(self, j: int) -> "WeylElement":
        """``eps_j = (1/n) sum_k omega^(-jk) R(0, k)``."""
        c = np.zeros((self.n, self.n), dtype=complex)
        c[0, :] = self.omega ** (-(j % self.n) * np.arange(self.n)) / self.n
        return WeylElement(self, c)

    def idempotent_p(self, j: int) -> "WeylElement":
        """``eps'_j = (1/n) sum_k omega^(-jk) R(k, 0)``."""
        c = np.zeros((self.n, self.n), dtype=complex)
        c[:, 0] = self.omega ** (-(j % self.n) * np.arange(self.n)) / self.n
        return WeylElement(self, c)

    def position_element(self) -> "WeylElement":
        """``X = dx sum_k k eps_k``."""
        out = self.zero()
        for k in range(self.n):
            out = out + (self.dx * k) * self.idempotent_x(k)
        return out

    def momentum_element(self) -> "WeylElement":
        """``P = dp sum_j j eps'_j``."""
        out = self.zero()
        for j in range(self.n):
            out = out + (self.dp * j) * self.idempotent_p(j)
        return out

    def translate_idempotent(self, eps: "WeylElement", family: str = "x", steps: int = 1) -> "WeylElement":
        """Move an idempotent one lattice step: ``eps_j -> eps_(j+1)``.

        Since ``U V = omega V U``, conjugation ``U eps_j U^-1`` lowers the
        label, so the x family is raised with ``U^-1 eps U``.  The p family
        is raised with ``V eps' V^-1``.
        """
        if family == "x":
            g, g_inv = self.U.power(-1), self.U
        elif family == "p":
            g, g_inv = self.V, self.V.power(-1)
        else:
            raise ValueError("family must be 'x' or 'p'")
        out = eps
        for _ in range(steps % self.n):
            out = g * out * g_inv
        return out

    # -- finite Fourier element ------------------------------------------
    def printed_fourier_element(self) -> "WeylElement":
        """``n^(-3/2) sum_{ijk} omega^(j(i-k)) R(j-i, k)``, coefficients taken literally."""
        n = self.n
        c = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c[(j - i) % n, k] += self.omega ** ((j * (i - k)) % n)
        return WeylElement(self, c / n ** 1.5)

    def dft_element(self, sign: int = 1) -> "WeylElement":
        """Element whose matrix is ``omega^(sign*a*b) / sqrt(n)``."""
        a = np.arange(self.n)
        f = self.omega ** (sign * np.outer(a, a) % self.n) / np.sqrt(self.n)
        return self.from_matrix(f)

    def fourier_candidates(self) -> list[tuple[str, "WeylElement"]]:
        return [("printed", self.printed_fourier_element()),
                ("dft+", self.dft_element(+1)),
                ("dft-", self.dft_element(-1))]

    def fourier_residual(self, z: "WeylElement") -> float:
        """``max_j |eps'_j - Z^-1 eps_j Z|`` measured in the matrix representation."""
        zm = z.to_matrix()
        if abs(np.linalg.det(zm)) < 1e-12:
            return float("inf")
        zi = np.linalg.inv(zm)
        return max(float(np.abs(zi @ self.idempotent_x(j).to_matrix() @ zm
                                - self.idempotent_p(j).to_matrix()).max())
                   for j in range(self.n))

    def fourier_element(self, tol: float = 1e-10, with_source: bool = False):
        """First candidate that satisfies ``eps'_j = Z^-1 eps_j Z`` for all j."""
        for name, z in self.fourier_candidates():
            if self.fourier_residual(z) <= tol:
                return (z, name) if with_source else z
        raise RuntimeError(f"no Fourier candidate passes at n={self.n}")


class WeylElement:
    __slots__ = ("algebra", "coeffs")
    __array_ufunc__ = None

    def __init__(self, algebra: WeylAlgebra, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.shape != (algebra.n, algebra.n):
            raise ValueError(f"expected {algebra.n}x{algebra.n} coefficients")
        c.setflags(write=False)
        self.algebra = algebra
        self.coeffs = c

    def _check(self, other: "WeylElement"):
        if self.algebra.n != other.algebra.n:
            raise ValueError(f"order mismatch: {self.algebra.n} vs {other.algebra.n}")

    def __add__(self, other):
        if isinstance(other, WeylElement):
            self._check(other)
            return WeylElement(self.algebra, self.coeffs + other.coeffs)
        return self + self.algebra.basis(0, 0, other)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.algebra, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_product(self, other)
        return WeylElement(self.algebra, self.coeffs * other)

    def __rmul__(self, other):
        return WeylElement(self.algebra, self.coeffs * other)

    def __truediv__(self, other):
        return WeylElement(self.algebra, self.coeffs / other)

    def power(self, k: int) -> "WeylElement":
        if k < 0:
            return self.inverse().power(-k)
        out = self.algebra.identity()
        for _ in range(k):
            out = out * self
        return out

    def to_matrix(self) -> np.ndarray:
        return self.algebra._to_matrix(self.coeffs)

    def inverse(self) -> "WeylElement":
        return self.algebra.from_matrix(np.linalg.inv(self.to_matrix()))

    def dagger(self) -> "WeylElement":
        return self.algebra.from_matrix(self.to_matrix().conj().T)

    def trace(self) -> complex:
        """Matrix trace in the n-dimensional representation: ``n * coeff[R(0,0)]``."""
        return complex(self.algebra.n * self.coeffs[0, 0])

    @property
    def scalar(self) -> complex:
        return complex(self.coeffs[0, 0])

    def allclose(self, other: "WeylElement", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=0))

    def __repr__(self):
        nz = np.argwhere(np.abs(self.coeffs) > 1e-14)
        terms = [f"({self.coeffs[j, k]:.4g})R({j},{k})" for j, k in nz]
        return " + ".join(terms) if terms else "0"


def weyl_product(x: WeylElement, y: WeylElement) -> WeylElement:
    """Bilinear extension of ``R(j,k) R(l,m) = phase(j,k,l,m) R(j+l, k+m)``.

    The phase factorizes as ``tau^(-jk) tau^(-lm) omega^(-kl) tau^(JK)``, so the
    sum is done on the ``U^j V^k`` basis one ``l`` at a time, as a cyclic
    convolution in the V index.
    """
    x._check(y)
    alg = x.algebra
    n = alg.n
    a = np.arange(n)
    jk = np.outer(a, a)
    xs = x.coeffs * alg._tau_power(-jk)
    ys = y.coeffs * alg._tau_power(-jk)
    circ = (a[None, :] - a[:, None]) % n  # circ[k, K] = (K - k) mod n
    out = np.zeros((n, n), dtype=complex)
    for l in range(n):
        row = xs * (alg.omega ** (-(a * l) % n))[None, :]
        out += np.roll(row @ ys[l][circ], l, axis=0)
    return WeylElement(alg, out * alg._tau_power(jk))


def weyl_product_tabulated(x: WeylElement, y: WeylElement) -> WeylElement:
    """Same product summed term by term over the tabulated phases (small n only)."""
    x._check(y)
    alg = x.algebra
    phase, jj, kk = alg.structure
    n = alg.n
    terms = x.coeffs[:, :, None, None] * y.coeffs[None, None, :, :] * phase
    out = np.zeros(n * n, dtype=complex)
    np.add.at(out, (jj * n + kk).ravel(), terms.ravel())
    return WeylElement(alg, out.reshape(n, n))
