"""Dirac operators on grids, polar decomposition and the two Bohm equations."""
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cliffproc.algebra import pauli, schrodinger
from cliffproc.bohm import (CoherentState, FieldGrid, GaussianPacket, Hamiltonian, PlaneWave,
                            anticommutator_residual, bohm_energy, bohm_energy_bilinear,
                            bohm_momentum, bohm_momentum_bilinear, conservation_residual,
                            convergence_ratios, convergence_slope, decompose_polar, dirac_left,
                            dirac_right, gaussian_quantum_potential, laplacian, liouville_residual,
                            max_norm, qhj_residual, quantum_potential, residual_table, sample,
                            sample_series, schrodinger_field, total_probability, uniform_axis,
                            wavefunction_from_config, write_csv)

x, t = sp.symbols("x t", real=True)
m, sig, w = sp.symbols("m sigma omega", positive=True)
k0, x0, q0, p0 = sp.symbols("k0 x0 q0 p0", real=True)


# -- symbolic oracles for the analytic solutions -----------------------------------

def schrodinger_residual(psi, V):
    return sp.I * sp.diff(psi, t) + sp.diff(psi, x, 2) / (2 * m) - V * psi


def gaussian_expr():
    alpha = sig ** 2 + sp.I * t / (2 * m)
    return ((2 * sp.pi * sig ** 2) ** sp.Rational(-1, 4) * sp.sqrt(sig ** 2 / alpha)
            * sp.exp(-(x - x0 - k0 * t / m) ** 2 / (4 * alpha) + sp.I * k0 * (x - x0)
                     - sp.I * k0 ** 2 * t / (2 * m)))


def coherent_expr():
    q = q0 * sp.cos(w * t) + p0 / (m * w) * sp.sin(w * t)
    p = p0 * sp.cos(w * t) - m * w * q0 * sp.sin(w * t)
    return ((m * w / sp.pi) ** sp.Rational(1, 4)
            * sp.exp(-m * w * (x - q) ** 2 / 2 + sp.I * p * x - sp.I * w * t / 2 - sp.I * p * q / 2))


def test_gaussian_solves_the_free_equation():
    psi = gaussian_expr()
    assert sp.simplify(sp.expand(schrodinger_residual(psi, 0) / psi)) == 0


def test_coherent_state_solves_the_oscillator_equation():
    psi = coherent_expr()
    res = schrodinger_residual(psi, m * w ** 2 * x ** 2 / 2) / psi
    assert sp.simplify(sp.expand(sp.expand_trig(res))) == 0


def test_plane_wave_dispersion():
    k, v0 = sp.symbols("k V0", real=True)
    psi = sp.exp(sp.I * (k * x - (k ** 2 / (2 * m) + v0) * t))
    assert sp.simplify(schrodinger_residual(psi, v0) / psi) == 0


@pytest.mark.parametrize("spec,expr", [
    (GaussianPacket(sigma=0.7, k0=1.1, x0=0.3, m=1.5), gaussian_expr),
    (CoherentState(w=1.3, m=0.8, q0=0.5, p0=-0.4), coherent_expr),
])
def test_numeric_wavefunctions_match_the_symbolic_ones(spec, expr):
    subs = {m: spec.m}
    if isinstance(spec, GaussianPacket):
        subs.update({sig: spec.sigma, k0: spec.k0, x0: spec.x0})
    else:
        subs.update({w: spec.w, q0: spec.q0, p0: spec.p0})
    f = sp.lambdify((x, t), expr().subs(subs), "numpy")
    xs = np.linspace(-3, 3, 41)
    for tt in (0.0, 0.4, 1.7):
        assert np.allclose(spec.psi([xs], tt), f(xs, tt), atol=1e-12)


def test_gaussian_envelope():
    g = GaussianPacket(sigma=0.8, k0=1.2, x0=-0.5, m=2.0)
    xs = np.linspace(-4, 4, 81)
    tt = 1.3
    st2 = g.sigma ** 2 * (1 + (tt / (2 * g.m * g.sigma ** 2)) ** 2)
    rho = (2 * np.pi * st2) ** -0.5 * np.exp(-(xs - g.x0 - g.k0 * tt / g.m) ** 2 / (2 * st2))
    assert np.allclose(np.abs(g.psi([xs], tt)) ** 2, rho, atol=1e-14)


def test_quantum_potential_closed_form():
    R = sp.exp(-x ** 2 / (4 * sig ** 2))
    Q = sp.simplify(-sp.diff(R, x, 2) / (2 * m * R))
    f = sp.lambdify((x, sig, m), Q, "numpy")
    xs = np.linspace(-3, 3, 13)
    assert np.allclose(gaussian_quantum_potential(xs, 0.9, 1.7), f(xs, 0.9, 1.7), atol=1e-14)


# -- grids and operators ------------------------------------------------------------

def test_field_validation():
    alg = schrodinger()
    with pytest.raises(ValueError):
        FieldGrid(alg, np.zeros((5, 3)), (0.1,))
    with pytest.raises(ValueError):
        FieldGrid(alg, np.zeros((5, 2)), (0.0,))
    with pytest.raises(ValueError):
        FieldGrid(alg, np.zeros((5, 2)), (0.1,), boundary="reflect")
    with pytest.raises(ValueError):
        Hamiltonian(0.0)
    with pytest.raises(ValueError):
        decompose_polar(FieldGrid(pauli(), np.zeros((4, 4, 4, 8)), (0.1, 0.1, 0.1)))


def test_dirac_square_is_the_wide_stencil():
    xs = uniform_axis(-2, 2, 0.05)
    f = sample(GaussianPacket(sigma=0.6, k0=0.8), [xs], 0.2)
    d2 = dirac_left(dirac_left(f)).values
    v, h = f.values, f.spacing[0]
    wide = (v[4:] - 2 * v[2:-2] + v[:-4]) / (4 * h * h)
    assert np.allclose(d2[2:-2], -wide, atol=1e-10)       # e^2 = -1
    assert np.all(np.isnan(d2[:2])) and np.all(np.isnan(d2[-2:]))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_cross_terms_cancel_in_three_dimensions(seed):
    rng = np.random.default_rng(seed)
    alg = pauli()
    f = FieldGrid(alg, rng.normal(size=(6, 6, 6, 8)), (0.3, 0.2, 0.25), boundary="periodic")
    d2 = dirac_left(dirac_left(f)).values
    ham = Hamiltonian(1.0).apply_left(f).values
    assert np.allclose(ham, -0.5 * d2, atol=1e-10)
    d2r = dirac_right(dirac_right(f)).values
    assert np.allclose(Hamiltonian(1.0).apply_right(f).values, -0.5 * d2r, atol=1e-10)


def test_hamiltonian_on_a_plane_wave_is_the_discrete_eigenvalue():
    pw = PlaneWave(k=(1.3,), m=0.7, v0=0.2)
    xs = uniform_axis(0, 3, 0.01)
    f = sample(pw, [xs], 0.0)
    h = f.spacing[0]
    lam = math.sin(pw.k[0] * h) ** 2 / (h * h) / (2 * pw.m) + pw.v0
    out = Hamiltonian(pw.m, pw.v0).apply_left(f).values
    assert np.allclose(out[2:-2], lam * f.values[2:-2], atol=1e-10)


def test_laplacian_of_a_quadratic_is_exact():
    xs, ys = uniform_axis(-1, 1, 0.1), uniform_axis(-1, 1, 0.2)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    lap = laplacian(X ** 2 + 3 * Y ** 2, (0.1, 0.2))
    assert np.allclose(lap[1:-1, 1:-1], 8.0)
    assert np.isnan(lap[0]).all() and np.isnan(lap[:, -1]).all()


# -- polar decomposition and Bohm quantities ---------------------------------------

def test_plane_wave_energy_and_momentum():
    pw = PlaneWave(k=(1.3,))
    h = dt = 0.01
    fields = sample_series(pw, [uniform_axis(0, 2, h)], 0.3, dt)
    polars = [decompose_polar(f) for f in fields]
    assert max_norm(bohm_energy(polars, dt) - pw.omega) < 1e-10
    assert max_norm(bohm_momentum(polars[1]) - pw.k[0]) < 1e-10
    assert max_norm(bohm_energy_bilinear(fields, dt) - math.sin(pw.omega * dt) / dt) < 1e-10
    assert max_norm(bohm_momentum_bilinear(fields[1]) - math.sin(pw.k[0] * h) / h) < 1e-10


def test_two_dimensional_plane_wave_on_a_periodic_grid():
    L, n = 2 * np.pi, 64
    axis = np.arange(n) * L / n
    pw = PlaneWave(k=(2.0, -3.0))
    dt = 0.01
    fields = sample_series(pw, [axis, axis], 0.0, dt, boundary="periodic")
    polars = [decompose_polar(f) for f in fields]
    p = bohm_momentum(polars[1])
    assert np.isfinite(p).all()
    assert np.allclose(p[0], 2.0) and np.allclose(p[1], -3.0)
    assert max_norm(bohm_energy(polars, dt) - pw.omega) < 1e-10
    assert liouville_residual(fields, Hamiltonian(1.0), dt) < 1e-9


def test_nodes_are_masked():
    xs = uniform_axis(0, 2 * np.pi, np.pi / 40)
    f = schrodinger_field(np.sin(xs).astype(complex), xs[1] - xs[0])
    polar = decompose_polar(f)
    assert polar.node_sites() == [(0,), (40,), (80,)]
    assert np.isnan(polar.S[40])
    p = bohm_momentum(polar)
    assert np.isnan(p[0, 39:42]).all() and np.isfinite(p[0, 10:30]).all()
    q = quantum_potential(polar, 1.0)
    assert np.isnan(q[40])
    # away from nodes R = |sin x| has Q = 1/2m
    assert np.allclose(q[10:30], 0.5, atol=1e-3)


def test_quantum_potential_profile_converges():
    errs = []
    for h in (0.04, 0.02, 0.01):
        xs = uniform_axis(-3, 3, h)
        q = quantum_potential(decompose_polar(sample(GaussianPacket(sigma=1.0), [xs], 0.0)), 1.0)
        errs.append(max_norm(q - gaussian_quantum_potential(xs, 1.0)))
    assert errs[0] / errs[1] == pytest.approx(4, abs=0.2)
    assert errs[1] / errs[2] == pytest.approx(4, abs=0.2)


def test_probability_is_conserved():
    g = GaussianPacket(sigma=1.0, k0=1.0)
    xs = uniform_axis(-12, 14, 0.05)
    norms = [total_probability(sample(g, [xs], tt)) for tt in (0.0, 0.5, 1.0)]
    assert np.allclose(norms, 1.0, atol=1e-10)


def test_residual_fields_split_by_grade():
    g = GaussianPacket(sigma=1.0, k0=1.0)
    xs, dt = uniform_axis(-4, 4, 0.0125), 0.0025
    fields = sample_series(g, [xs], 0.3, dt)
    polars = [decompose_polar(f) for f in fields]
    ham = Hamiltonian(1.0)
    anti = anticommutator_residual(fields, ham, dt, field_out=True)[0]
    assert max_norm(anti[:, 1]) == 0            # purely scalar
    assert max_norm(anti[:, 0]) < 2e-4
    assert max_norm(qhj_residual(polars, 0.0, 1.0, dt, field_out=True)[0]) < 1e-4
    lio = liouville_residual(fields, ham, dt, field_out=True)[0]
    assert max_norm(lio[:, 0]) < 1e-12          # purely along e
    cons = conservation_residual(polars, 1.0, dt, field_out=True)[0]
    assert max_norm(lio[:, 1]) < 2e-4 and max_norm(cons) < 2e-4


@pytest.mark.parametrize("name,spec,lo,hi,h,dt", [
    ("gaussian", GaussianPacket(sigma=1.0, k0=1.0), -5, 5, 0.1, 0.02),
    ("coherent", CoherentState(), -4, 4, 0.1, 0.02),
])
def test_second_order_convergence(name, spec, lo, hi, h, dt):
    rows = residual_table(spec, lo, hi, h, dt, t=0.3, levels=4)
    for key in ("liouville", "conservation", "anticommutator", "qhj"):
        ratios = convergence_ratios(rows, key)
        assert all(abs(r - 4) <= 0.8 for r in ratios), (key, ratios)
        assert convergence_slope(rows, key) == pytest.approx(2, abs=0.15)


def test_plane_wave_residuals():
    rows = residual_table(PlaneWave(k=(1.3,)), 0, 2, 0.02, 0.02, t=0.3, levels=4)
    assert all(abs(r - 4) <= 0.8 for r in convergence_ratios(rows, "anticommutator"))
    for key in ("liouville", "conservation", "qhj"):
        assert max(r[key] for r in rows) < 1e-9


def test_config_and_csv(tmp_path):
    spec = wavefunction_from_config({"kind": "plane_wave", "k": 2.0, "m": 0.5})
    assert spec == PlaneWave(k=(2.0,), m=0.5)
    assert wavefunction_from_config({"kind": "gaussian", "sigma": 2.0}).sigma == 2.0
    with pytest.raises(ValueError):
        wavefunction_from_config({"kind": "square_well"})
    rows = residual_table(spec, 0, 1, 0.05, 0.05, levels=2)
    path = tmp_path / "r.csv"
    write_csv(rows, path)
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.startswith(b"kind,h,dt,")
