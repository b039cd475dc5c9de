"""Dirac operators on flat grids and the two Bohm dynamical equations.

Fields are multivector-valued arrays of shape ``grid_shape + (2**n,)``.
Everything here is a residual check on sampled analytic solutions: nothing
is time stepped.  Derivatives are second-order central differences; with
``boundary="clamped"`` the sites whose stencil leaves the grid are set to
NaN and excluded from norms, with ``"periodic"`` the grid wraps.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .algebra import Algebra, Multivector, schrodinger

NODE_THRESHOLD = 1e-12


# -- fields --------------------------------------------------------------------

@dataclass(frozen=True)
class FieldGrid:
    algebra: Algebra
    values: np.ndarray
    spacing: tuple[float, ...]
    dt: float | None = None
    boundary: str = "clamped"
    generators: tuple[int, ...] | None = None

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape[-1] != self.algebra.dim:
            raise ValueError(f"last axis must have {self.algebra.dim} coefficients")
        d = v.ndim - 1
        if d not in (1, 2, 3):
            raise ValueError("grid dimension must be 1, 2 or 3")
        spacing = tuple(float(h) for h in np.broadcast_to(self.spacing, (d,)))
        if any(h <= 0 for h in spacing):
            raise ValueError("grid spacing must be positive")
        if self.boundary not in ("clamped", "periodic"):
            raise ValueError("boundary must be 'clamped' or 'periodic'")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "spacing", spacing)

    @property
    def dim(self) -> int:
        return self.values.ndim - 1

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape[:-1]

    def site(self, *index) -> Multivector:
        return Multivector(self.algebra, self.values[index])

    def with_values(self, values: np.ndarray) -> "FieldGrid":
        return replace(self, values=values)

    def axis_generators(self) -> tuple[int, ...]:
        """Generator index used for each spatial axis."""
        if self.generators is not None:
            if len(self.generators) != self.dim:
                raise ValueError("need one generator per grid axis")
            return tuple(self.generators)
        n = self.algebra.n
        if n == 1:
            return (0,) * self.dim  # C(0,1): the one generator serves every axis
        if n == self.dim:
            return tuple(range(n))
        if self.algebra.first_index == 0 and n == self.dim + 1:
            return tuple(range(1, n))  # spatial generators of a space-time algebra
        raise ValueError(f"{self.dim}-dimensional grid does not match {n} generators; "
                         "pass generators= explicitly")


def scalar_field(values, spacing, algebra: Algebra | None = None, **kw) -> FieldGrid:
    alg = algebra or schrodinger()
    values = np.asarray(values, dtype=alg.dtype)
    out = np.zeros(values.shape + (alg.dim,), dtype=alg.dtype)
    out[..., 0] = values
    return FieldGrid(alg, out, spacing, **kw)


def schrodinger_field(psi: np.ndarray, spacing, dt=None, boundary="clamped") -> FieldGrid:
    """``a + e b`` from a complex array ``a + i b``."""
    psi = np.asarray(psi)
    vals = np.stack([psi.real, psi.imag], axis=-1).astype(float)
    return FieldGrid(schrodinger(), vals, spacing, dt=dt, boundary=boundary)


# -- site-wise algebra ----------------------------------------------------------

def _product(alg: Algebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Geometric product at every site."""
    return np.einsum("...i,...ik,ik->...k", f, g[..., alg._xor], alg._gathered_signs)


def product_field(f: FieldGrid, g: FieldGrid) -> FieldGrid:
    if f.algebra != g.algebra:
        raise ValueError("fields live in different algebras")
    return f.with_values(_product(f.algebra, f.values, g.values))


def conjugate_values(alg: Algebra, f: np.ndarray) -> np.ndarray:
    return f * (alg.reversion_signs * alg.involution_signs)


def constant_values(x: Multivector, shape) -> np.ndarray:
    return np.broadcast_to(x.coeffs, tuple(shape) + x.coeffs.shape)


def _generator_action(alg: Algebra, bit: int, f: np.ndarray, side: str) -> np.ndarray:
    idx = np.arange(alg.dim) ^ bit
    if side == "left":   # (e f)[k] = sign(bit, k^bit) f[k^bit]
        sign = alg.sign_table[bit, idx]
    else:                # (f e)[k] = sign(k^bit, bit) f[k^bit]
        sign = alg.sign_table[idx, bit]
    return f[..., idx] * sign


# -- finite differences -----------------------------------------------------------

def central_difference(arr: np.ndarray, axis: int, h: float, boundary: str = "clamped") -> np.ndarray:
    """``(f[i+1] - f[i-1]) / 2h`` along ``axis``."""
    arr = np.asarray(arr)
    out = (np.roll(arr, -1, axis=axis) - np.roll(arr, 1, axis=axis)) / (2 * h)
    if boundary == "clamped":
        out = _blank_edges(out, axis, 1)
    return out


def second_difference(arr: np.ndarray, axis: int, h: float, boundary: str = "clamped") -> np.ndarray:
    """Compact three-point ``(f[i+1] - 2 f[i] + f[i-1]) / h^2``."""
    arr = np.asarray(arr)
    out = (np.roll(arr, -1, axis=axis) - 2 * arr + np.roll(arr, 1, axis=axis)) / (h * h)
    if boundary == "clamped":
        out = _blank_edges(out, axis, 1)
    return out


def laplacian(arr: np.ndarray, spacing: Sequence[float], boundary: str = "clamped") -> np.ndarray:
    """Compact Laplacian over the leading ``len(spacing)`` axes."""
    return sum(second_difference(arr, ax, h, boundary) for ax, h in enumerate(spacing))


def _blank_edges(arr: np.ndarray, axis: int, width: int) -> np.ndarray:
    arr = np.array(arr, dtype=np.result_type(arr, float))
    sl = [slice(None)] * arr.ndim
    sl[axis] = slice(0, width)
    arr[tuple(sl)] = np.nan
    sl[axis] = slice(arr.shape[axis] - width, None)
    arr[tuple(sl)] = np.nan
    return arr


def max_norm(arr) -> float:
    """Largest finite absolute value (NaN marks excluded sites)."""
    a = np.abs(np.asarray(arr))
    a = a[np.isfinite(a)]
    return float(a.max()) if a.size else float("nan")


# -- Dirac operators -----------------------------------------------------------------

def _dirac_axis(f: FieldGrid, axis: int, side: str) -> np.ndarray:
    gen = f.axis_generators()[axis]
    d = central_difference(f.values, axis, f.spacing[axis], f.boundary)
    return _generator_action(f.algebra, 1 << gen, d, side)


def _dirac(f: FieldGrid, side: str) -> FieldGrid:
    return f.with_values(sum(_dirac_axis(f, ax, side) for ax in range(f.dim)))


def dirac_left(f: FieldGrid) -> FieldGrid:
    """``D f = sum_j e_j d_j f``."""
    return _dirac(f, "left")


def dirac_right(f: FieldGrid) -> FieldGrid:
    """``f <-D = sum_j (d_j f) e_j``."""
    return _dirac(f, "right")


@dataclass(frozen=True)
class Hamiltonian:
    """``H = p^2/2m + V`` with ``p^2`` built from Dirac operators.

    The kinetic term is ``-sum_j (e_j d_j)^2 / (2m g_j)`` with ``g_j = e_j^2``,
    so that ``p^2`` is minus the Laplacian.  When every axis has its own
    generator the cross terms of ``D^2`` cancel and this is ``-D^2/(2m g)``;
    in C(0,1), where one generator serves all axes, it is ``D^2/2m`` per axis.
    """
    m: float
    potential: np.ndarray | float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")
        if not np.all(np.isfinite(self.potential)):
            raise ValueError("potential must be finite")

    def _apply(self, f: FieldGrid, side: str) -> FieldGrid:
        kin = np.zeros(f.values.shape, dtype=np.result_type(f.values, float))
        for ax, gen in enumerate(f.axis_generators()):
            once = f.with_values(_dirac_axis(f, ax, side))
            kin = kin + _dirac_axis(once, ax, side) / f.algebra.metric[gen]
        v = np.broadcast_to(np.asarray(self.potential, dtype=float), f.shape)[..., None]
        return f.with_values(-kin / (2 * self.m) + v * f.values)

    def apply_left(self, f: FieldGrid) -> FieldGrid:
        return self._apply(f, "left")

    def apply_right(self, f: FieldGrid) -> FieldGrid:
        return self._apply(f, "right")


# -- polar form (Schrodinger algebra) -------------------------------------------------

@dataclass(frozen=True)
class PolarField:
    R: np.ndarray
    S: np.ndarray
    nodes: np.ndarray
    spacing: tuple[float, ...]
    boundary: str = "clamped"

    @property
    def rho(self) -> np.ndarray:
        return self.R ** 2

    def node_sites(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in ix) for ix in np.argwhere(self.nodes)]


def _require_schrodinger(f: FieldGrid):
    if f.algebra.metric != (-1,):
        raise ValueError("polar decomposition needs a field in the Schrodinger algebra C(0,1)")


def decompose_polar(f: FieldGrid, threshold: float = NODE_THRESHOLD) -> PolarField:
    """``a + e b = R exp(e S)``.

    ``S`` is unwrapped along axis 0, then along each further axis starting
    from the already unwrapped lines, so that it is continuous away from
    nodes.  Sites with ``R < threshold`` are flagged and get ``S = NaN``.
    """
    _require_schrodinger(f)
    a, b = f.values[..., 0].real, f.values[..., 1].real
    R = np.hypot(a, b)
    S = np.arctan2(b, a)
    for axis in range(S.ndim):
        S = np.unwrap(S, axis=axis)
    nodes = R < threshold
    S = np.where(nodes, np.nan, S)
    return PolarField(R, S, nodes, f.spacing, f.boundary)


def _near_nodes(nodes: np.ndarray, boundary: str) -> np.ndarray:
    near = nodes.copy()
    for ax in range(nodes.ndim):
        near |= np.roll(nodes, 1, axis=ax) | np.roll(nodes, -1, axis=ax)
    return near


def bohm_momentum(polar: PolarField) -> np.ndarray:
    """``P = grad S`` as an array of shape ``(d,) + grid``; NaN next to nodes."""
    near = _near_nodes(polar.nodes, polar.boundary)
    comps = [np.where(near, np.nan, phase_gradient(polar.S, ax, h, polar.boundary))
             for ax, h in enumerate(polar.spacing)]
    return np.stack(comps)


def phase_gradient(S: np.ndarray, axis: int, h: float, boundary: str = "clamped") -> np.ndarray:
    """Central difference of a phase, with the step wrapped into ``(-pi, pi]``.

    Unwrapping cannot make a phase continuous across a periodic seam, so the
    wrap is applied to the difference instead.
    """
    d = np.roll(S, -1, axis=axis) - np.roll(S, 1, axis=axis)
    d = np.angle(np.exp(1j * d))
    if boundary == "clamped":
        d = _blank_edges(d, axis, 1)
    return d / (2 * h)


def _unwrapped_phase_series(polars: Sequence[PolarField]) -> np.ndarray:
    S = np.stack([p.S for p in polars])
    finite = np.isfinite(S)
    return np.where(finite, np.unwrap(np.where(finite, S, 0.0), axis=0), np.nan)


def _require_slices(series: Sequence, dt):
    if len(series) < 3:
        raise ValueError("need at least three time slices for central time differences")
    if dt is None or not dt > 0:
        raise ValueError("need a positive time step")


def bohm_energy(polars: Sequence[PolarField], dt: float) -> np.ndarray:
    """``E = -dS/dt`` on the interior time slices, shape ``(T-2,) + grid``."""
    _require_slices(polars, dt)
    S = _unwrapped_phase_series(polars)
    return -(S[2:] - S[:-2]) / (2 * dt)


def _bilinear(alg: Algebra, b: Multivector, psi: np.ndarray, dpsi: np.ndarray) -> np.ndarray:
    """``(tr[B dpsi psi~] + tr[B~ psi dpsi~]) / 2`` site by site (idempotent 1)."""
    bv = constant_values(b, psi.shape[:-1])
    bc = constant_values(b.conjugate(), psi.shape[:-1])
    first = _product(alg, _product(alg, bv, dpsi), conjugate_values(alg, psi))
    second = _product(alg, _product(alg, bc, psi), conjugate_values(alg, dpsi))
    return alg.trace_dimension * (first[..., 0] + second[..., 0]) / 2


def energy_element(alg: Algebra) -> Multivector:
    """``e`` in ``e d/dt``: its expectation density is ``rho E``."""
    return alg.e(1)


def momentum_element(alg: Algebra) -> Multivector:
    """``-e`` in ``-e grad``: its expectation density is ``rho grad S``."""
    return -alg.e(1)


def bohm_energy_bilinear(fields: Sequence[FieldGrid], dt: float,
                         threshold: float = NODE_THRESHOLD) -> np.ndarray:
    """``E`` from ``2 rho E = e[(d_t psi) psi~ - psi (d_t psi~)]``, interior slices."""
    _require_slices(fields, dt)
    for f in fields:
        _require_schrodinger(f)
    alg = fields[0].algebra
    v = np.stack([f.values for f in fields])
    psi, dpsi = v[1:-1], (v[2:] - v[:-2]) / (2 * dt)
    rho_e = _bilinear(alg, energy_element(alg), psi, dpsi)
    rho = alg.trace_dimension * _product(alg, psi, conjugate_values(alg, psi))[..., 0]
    return np.where(rho < threshold ** 2, np.nan, rho_e / np.where(rho == 0, 1, rho))


def bohm_momentum_bilinear(f: FieldGrid, threshold: float = NODE_THRESHOLD) -> np.ndarray:
    """``P_j`` from the expectation density of ``-e d_j``."""
    _require_schrodinger(f)
    alg = f.algebra
    rho = alg.trace_dimension * _product(alg, f.values, conjugate_values(alg, f.values))[..., 0]
    out = []
    for ax, h in enumerate(f.spacing):
        d = central_difference(f.values, ax, h, f.boundary)
        out.append(_bilinear(alg, momentum_element(alg), f.values, d))
    out = np.stack(out)
    return np.where(rho < threshold ** 2, np.nan, out / np.where(rho == 0, 1, rho))


def quantum_potential(polar: PolarField, m: float, threshold: float = NODE_THRESHOLD) -> np.ndarray:
    """``Q = -lap(R) / (2 m R)``; NaN where ``R < threshold``."""
    if not m > 0:
        raise ValueError("mass must be positive")
    R = polar.R
    lap = laplacian(R, polar.spacing, polar.boundary)
    small = R < threshold
    return np.where(small, np.nan, -lap / (2 * m * np.where(small, 1.0, R)))


def gaussian_quantum_potential(x, sigma: float, m: float = 1.0):
    """Closed form of Q for the amplitude ``exp(-x^2 / 4 sigma^2)``."""
    x = np.asarray(x, dtype=float)
    return 1 / (4 * m * sigma ** 2) - x ** 2 / (8 * m * sigma ** 4)


# -- residuals -------------------------------------------------------------------------

def _density_values(f: FieldGrid) -> np.ndarray:
    return _product(f.algebra, f.values, conjugate_values(f.algebra, f.values))


def liouville_residual(fields: Sequence[FieldGrid], ham: Hamiltonian, dt: float,
                       field_out: bool = False):
    """Max-norm of ``e d_t rho - [(H psi_L) psi_R - psi_L (psi_R H)]`` on interior slices."""
    _require_slices(fields, dt)
    alg = fields[0].algebra
    e = constant_values(energy_element(alg), fields[0].shape)
    rhos = np.stack([_density_values(f) for f in fields])
    lhs = _product(alg, np.broadcast_to(e, rhos[1:-1].shape), (rhos[2:] - rhos[:-2]) / (2 * dt))
    rhs = np.stack([_liouville_rhs(f, ham, sign=-1) for f in fields[1:-1]])
    res = lhs - rhs
    return res if field_out else max_norm(res)


def anticommutator_residual(fields: Sequence[FieldGrid], ham: Hamiltonian, dt: float,
                            field_out: bool = False):
    """Max-norm of ``e[(d_t psi_L) psi_R - psi_L (d_t psi_R)] - [(H psi_L) psi_R + psi_L (psi_R H)]``."""
    _require_slices(fields, dt)
    alg = fields[0].algebra
    v = np.stack([f.values for f in fields])
    psi, dpsi = v[1:-1], (v[2:] - v[:-2]) / (2 * dt)
    e = np.broadcast_to(constant_values(energy_element(alg), fields[0].shape), psi.shape)
    inner = (_product(alg, dpsi, conjugate_values(alg, psi))
             - _product(alg, psi, conjugate_values(alg, dpsi)))
    lhs = _product(alg, e, inner)
    rhs = np.stack([_liouville_rhs(f, ham, sign=+1) for f in fields[1:-1]])
    res = lhs - rhs
    return res if field_out else max_norm(res)


def _liouville_rhs(f: FieldGrid, ham: Hamiltonian, sign: int) -> np.ndarray:
    alg = f.algebra
    psi_r = f.with_values(conjugate_values(alg, f.values))
    left = _product(alg, ham.apply_left(f).values, psi_r.values)
    right = _product(alg, f.values, ham.apply_right(psi_r).values)
    return left + sign * right


def conservation_residual(polars: Sequence[PolarField], m: float, dt: float,
                          field_out: bool = False):
    """Max-norm of ``d_t rho + div(rho grad S / m)`` on interior slices."""
    _require_slices(polars, dt)
    rho = np.stack([p.rho for p in polars])
    S = _unwrapped_phase_series(polars)
    sp, bd = polars[0].spacing, polars[0].boundary
    res = []
    for t in range(1, len(polars) - 1):
        dr = (rho[t + 1] - rho[t - 1]) / (2 * dt)
        div = sum(central_difference(rho[t], ax, h, bd) * phase_gradient(S[t], ax, h, bd)
                  for ax, h in enumerate(sp))
        div = div + rho[t] * laplacian(S[t], sp, bd)
        res.append(dr + div / m)
    res = np.stack(res)
    return res if field_out else max_norm(res)


def qhj_residual(polars: Sequence[PolarField], potential, m: float, dt: float,
                 field_out: bool = False):
    """Max-norm of ``d_t S + (grad S)^2 / 2m + Q + V`` on interior slices."""
    _require_slices(polars, dt)
    S = _unwrapped_phase_series(polars)
    sp, bd = polars[0].spacing, polars[0].boundary
    V = np.broadcast_to(np.asarray(potential, dtype=float), S.shape[1:])
    res = []
    for t in range(1, len(polars) - 1):
        ds = (S[t + 1] - S[t - 1]) / (2 * dt)
        grad2 = sum(phase_gradient(S[t], ax, h, bd) ** 2 for ax, h in enumerate(sp))
        res.append(ds + grad2 / (2 * m) + quantum_potential(polars[t], m) + V)
    res = np.stack(res)
    return res if field_out else max_norm(res)


def total_probability(f: FieldGrid) -> float:
    rho = f.algebra.trace_dimension * _density_values(f)[..., 0].real
    return float(rho.sum() * math.prod(f.spacing))


# -- analytic wavefunctions -----------------------------------------------------------

@dataclass(frozen=True)
class PlaneWave:
    """``exp(i(k.x - w t))`` with ``w = |k|^2/2m + V0``."""
    k: tuple[float, ...] = (1.0,)
    m: float = 1.0
    amplitude: float = 1.0
    v0: float = 0.0
    kind: str = field(default="plane_wave", init=False)

    @property
    def omega(self) -> float:
        return float(np.dot(self.k, self.k)) / (2 * self.m) + self.v0

    def psi(self, coords: Sequence[np.ndarray], t: float) -> np.ndarray:
        phase = sum(k * x for k, x in zip(self.k, coords)) - self.omega * t
        return self.amplitude * np.exp(1j * phase)

    def potential(self, coords):
        return np.full(np.shape(coords[0]), self.v0)


@dataclass(frozen=True)
class GaussianPacket:
    """Free packet, initially ``exp(-(x-x0)^2 / 4 sigma^2 + i k0 (x-x0))``, normalized."""
    sigma: float = 1.0
    k0: float = 0.0
    x0: float = 0.0
    m: float = 1.0
    kind: str = field(default="gaussian", init=False)

    def psi(self, coords: Sequence[np.ndarray], t: float) -> np.ndarray:
        (x,) = coords
        s2 = self.sigma ** 2
        alpha = s2 + 1j * t / (2 * self.m)
        xc = x - self.x0 - self.k0 * t / self.m
        return ((2 * np.pi * s2) ** -0.25 * np.sqrt(s2 / alpha)
                * np.exp(-xc ** 2 / (4 * alpha) + 1j * self.k0 * (x - self.x0)
                         - 1j * self.k0 ** 2 * t / (2 * self.m)))

    def potential(self, coords):
        return np.zeros(np.shape(coords[0]))


@dataclass(frozen=True)
class CoherentState:
    """Displaced ground state of ``V = m w^2 x^2 / 2``."""
    w: float = 1.0
    m: float = 1.0
    q0: float = 1.0
    p0: float = 0.0
    kind: str = field(default="coherent", init=False)

    def classical(self, t: float) -> tuple[float, float]:
        c, s = math.cos(self.w * t), math.sin(self.w * t)
        return (self.q0 * c + self.p0 / (self.m * self.w) * s,
                self.p0 * c - self.m * self.w * self.q0 * s)

    def psi(self, coords: Sequence[np.ndarray], t: float) -> np.ndarray:
        (x,) = coords
        q, p = self.classical(t)
        mw = self.m * self.w
        return ((mw / np.pi) ** 0.25
                * np.exp(-mw * (x - q) ** 2 / 2 + 1j * p * x
                         - 1j * self.w * t / 2 - 1j * p * q / 2))

    def potential(self, coords):
        (x,) = coords
        return 0.5 * self.m * self.w ** 2 * np.asarray(x) ** 2


WAVEFUNCTIONS = {"plane_wave": PlaneWave, "gaussian": GaussianPacket, "coherent": CoherentState}


def wavefunction_from_config(config: dict):
    """Build a wavefunction spec from ``{"kind": ..., **parameters}``."""
    cfg = dict(config)
    try:
        cls = WAVEFUNCTIONS[cfg.pop("kind")]
    except KeyError as exc:
        raise ValueError(f"unknown or missing wavefunction kind: {exc}") from None
    if "k" in cfg and cls is PlaneWave:
        cfg["k"] = tuple(np.atleast_1d(cfg["k"]).astype(float))
    return cls(**cfg)


def sample(spec, axes: Sequence[np.ndarray], t: float, dt: float | None = None,
           boundary: str = "clamped") -> FieldGrid:
    """Sample ``spec.psi`` on the tensor grid given by 1-D ``axes``."""
    coords = np.meshgrid(*axes, indexing="ij")
    spacing = tuple(float(a[1] - a[0]) for a in axes)
    return schrodinger_field(spec.psi(coords, t), spacing, dt=dt, boundary=boundary)


def sample_series(spec, axes: Sequence[np.ndarray], t: float, dt: float,
                  boundary: str = "clamped", slices: int = 3) -> list[FieldGrid]:
    """Time slices centred on ``t``."""
    half = slices // 2
    return [sample(spec, axes, t + (i - half) * dt, dt, boundary) for i in range(slices)]


def uniform_axis(lo: float, hi: float, h: float) -> np.ndarray:
    n = int(round((hi - lo) / h))
    return lo + h * np.arange(n + 1)


# -- residual tables ----------------------------------------------------------------

def residual_row(spec, axes, t: float, dt: float) -> dict:
    fields = sample_series(spec, axes, t, dt)
    coords = np.meshgrid(*axes, indexing="ij")
    V = spec.potential(coords)
    ham = Hamiltonian(spec.m, V)
    polars = [decompose_polar(f) for f in fields]
    return {
        "liouville": liouville_residual(fields, ham, dt),
        "conservation": conservation_residual(polars, spec.m, dt),
        "anticommutator": anticommutator_residual(fields, ham, dt),
        "qhj": qhj_residual(polars, V, spec.m, dt),
    }


def residual_table(spec, lo: float, hi: float, h0: float, dt0: float, t: float = 0.5,
                   levels: int = 3) -> list[dict]:
    """Residual max-norms as ``h`` and ``dt`` are halved together."""
    rows = []
    for lev in range(levels):
        h, dt = h0 / 2 ** lev, dt0 / 2 ** lev
        row = {"kind": spec.kind, "h": h, "dt": dt}
        row.update(residual_row(spec, [uniform_axis(lo, hi, h)], t, dt))
        rows.append(row)
    return rows


def convergence_ratios(rows: Sequence[dict], key: str) -> list[float]:
    return [rows[i][key] / rows[i + 1][key] for i in range(len(rows) - 1)]


def convergence_slope(rows: Sequence[dict], key: str) -> float:
    """Least-squares slope of ``log(residual)`` against ``log(h)``."""
    h = np.log([r["h"] for r in rows])
    y = np.log([r[key] for r in rows])
    return float(np.polyfit(h, y, 1)[0])


def write_csv(rows: Sequence[dict], path, columns: Sequence[str] | None = None):
    columns = list(columns or rows[0].keys())
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
