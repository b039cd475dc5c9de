"""Named verification suites.

Each suite draws its random samples from ``numpy.random.default_rng(seed)``
(PCG64) and returns a report ``{suite, checks, seed, version}``; each check
records ``name``, the worst ``residual`` found, the ``tolerance`` it was held
to and whether it passed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import __version__
from .algebra import conformal, dirac, pauli, quaternion, spacetime2
from .bohm import (GaussianPacket, PlaneWave, bohm_energy, bohm_energy_bilinear,
                   bohm_momentum, bohm_momentum_bilinear, convergence_ratios, decompose_polar,
                   dirac_left, gaussian_quantum_potential, max_norm, quantum_potential,
                   residual_table, sample, sample_series, total_probability, uniform_axis)
from .groupoid import (EXPECTED_MISMATCHES, LADDER_FORMS, OPERATORS, REFERENCE_TABLES,
                       Extensive, Iterant, associativity_failures, build_clifford,
                       full_product_table)
from .observables import expectation, extract_coefficient, spin_vector
from .spinors import (chirality_projector, dirac_helicity_basis, hopf_closed_form, hopf_map,
                      hopf_to_spinor, lift_null_vector, pauli_spinor, pauli_spinor_odd_form,
                      penrose_matrix)
from .twistor import (BiTwistor, clifford_relation_residual, gamma5, kernel_bitwistors,
                      translate_bitwistor, translate_blocks, translation_operator,
                      xi_system_residuals)
from .versors import (Sl2Params, boost, boost_lightcone, future_null_vector,
                      infinitesimal_lorentz, k_factor, lightcone_coords, past_null_vector,
                      rotor, velocity_add)
from .weyl import WeylAlgebra, weyl_product_tabulated


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    expected_mismatch: bool = False

    @property
    def passed(self) -> bool:
        return self.expected_mismatch or bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        d = {"name": self.name, "residual": float(self.residual),
             "tolerance": float(self.tolerance), "pass": self.passed}
        if self.expected_mismatch:
            d["expected_mismatch"] = True
        return d


def _worst(values) -> float:
    return float(max(values, default=0.0))


# -- groupoid and iterants ----------------------------------------------------------

# Iterant actions as tabulated, written out independently of the operator matrices.
ITERANT_ACTIONS: dict[str, Callable[[float, float], tuple[float, float]]] = {
    "a": lambda A, B: (B, 0.0),
    "a+": lambda A, B: (0.0, A),
    "sigma_x": lambda A, B: (B, A),
    "sigma_z": lambda A, B: (A, -B),
    "p": lambda A, B: (0.0, B),
    "psi_L1": lambda A, B: (A, A),
    "psi_L2": lambda A, B: (B, B),
}


def table_mismatches(name: str, route: str) -> int:
    ref = REFERENCE_TABLES[name]
    real = build_clifford([Extensive(*g) for g in ref["generators"]], ref["metric"],
                          first_index=ref["first_index"])
    got = full_product_table(real, ref["rows"], route)
    return sum(a != b for ra, rb in zip(got, ref["table"]) for a, b in zip(ra, rb))


def suite_groupoid(rng: np.random.Generator, n=None) -> list[Check]:
    checks = []
    for name in REFERENCE_TABLES:
        for route in ("groupoid", "algebra"):
            checks.append(Check(f"table_{name}_{route}", table_mismatches(name, route), 0))
    failures = 0
    for metric_vals in [(1, 1, 1, 1), (1, -1, 1, 1), (1, -1, -1, 1), (-1, 1, -1, 1)]:
        metric = dict(zip(("P0", "P1", "P2", "P3"), metric_vals))
        failures += len(associativity_failures(list(metric), metric))
    checks.append(Check("associativity", failures, 0))

    samples = [Iterant(float(a), float(b)) for a, b in rng.normal(size=(100, 2))]
    for name, action in ITERANT_ACTIONS.items():
        bad = sum(tuple(OPERATORS[name](x)) != action(*x) for x in samples)
        checks.append(Check(f"iterant_{name}", bad, 0))
    for name, form in LADDER_FORMS.items():
        bad = sum(tuple(form(x)) != ITERANT_ACTIONS[name](*x) for x in samples)
        expected = name in EXPECTED_MISMATCHES and bad > 0
        checks.append(Check(f"ladder_{name}", bad, 0, expected_mismatch=expected))
    vac = sum(tuple(OPERATORS["a"](Iterant(x.left, 0.0))) != (0.0, 0.0) for x in samples)
    ple = sum(tuple(OPERATORS["a+"](Iterant(0.0, x.right))) != (0.0, 0.0) for x in samples)
    checks.append(Check("vacuum", vac, 0))
    checks.append(Check("plenum", ple, 0))
    return checks


# -- rotations and boosts ----------------------------------------------------------------

def rotation_residual(theta: float) -> float:
    alg = quaternion()
    e1, e2 = alg.e(1), alg.e(2)
    g = rotor(alg.e(1, 2), theta)
    return (g(e1) - (math.cos(theta) * e1 + math.sin(theta) * e2)).norm()


def suite_rotors(rng, n=None) -> list[Check]:
    thetas = rng.uniform(0, 2 * math.pi, 1000)
    checks = [Check("rotation_continuum", _worst(rotation_residual(t) for t in thetas), 1e-12)]
    alg = quaternion()
    g_inv = []
    comp = []
    for a, b in rng.uniform(0, 2 * math.pi, (100, 2)):
        ga, gb = rotor(alg.e(1, 2), a), rotor(alg.e(1, 2), b)
        g_inv.append((ga.value * ga.value.inverse() - 1).norm())
        comp.append((ga.value * gb.value - rotor(alg.e(1, 2), a + b).value).norm())
    checks.append(Check("versor_inverse", _worst(g_inv), 1e-14))
    checks.append(Check("rotor_composition", _worst(comp), 1e-12))
    p3 = pauli()
    quarter = rotor(p3.e(1, 2), math.pi / 2).value
    checks.append(Check("quarter_turn_value",
                        (quarter - (1 + p3.e(1, 2)) / math.sqrt(2)).norm(), 1e-15))
    return checks


def boost_residuals(v: float) -> tuple[float, float]:
    alg = spacetime2()
    e0, e1 = alg.e(0), alg.e(1)
    g, k = boost(v), k_factor(v)
    plus = (g(e0 + e1) - (e0 + e1) / k).norm()
    minus = (g(e0 - e1) - k * (e0 - e1)).norm()
    return plus, minus


def suite_kcalculus(rng, n=None) -> list[Check]:
    vs = rng.uniform(-0.99, 0.99, 200)
    res = [boost_residuals(v) for v in vs]
    checks = [Check("boost_plus", _worst(r[0] for r in res), 1e-12),
              Check("boost_minus", _worst(r[1] for r in res), 1e-12)]
    pairs = rng.uniform(-0.99, 0.99, (200, 2))
    mult = [abs(k_factor(a) * k_factor(b) - k_factor(velocity_add(a, b))) / k_factor(velocity_add(a, b))
            for a, b in pairs]
    checks.append(Check("k_multiplicative", _worst(mult), 1e-12))

    alg = spacetime2()
    lc = []
    for v, (t, x) in zip(vs, rng.normal(size=(200, 2))):
        moved = boost(v)(t * alg.e(0) + x * alg.e(1))
        u, w = boost_lightcone(*lightcone_coords(t, x), v)
        lc.append(max(abs(u - lightcone_coords(moved["e0"], moved["e1"])[0]),
                      abs(w - lightcone_coords(moved["e0"], moved["e1"])[1])))
    checks.append(Check("lightcone_vs_sandwich", _worst(lc), 1e-12))

    eps = 1e-5
    fd_f, fd_c, conj = [], [], []
    for _ in range(50):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = m - np.trace(m) / 2 * np.eye(2)
        p = Sl2Params.from_matrix(m)
        xi, eta = rng.normal(size=2) + 1j * rng.normal(size=2)
        plus, minus = (np.eye(2) + eps * m) @ [xi, eta], (np.eye(2) - eps * m) @ [xi, eta]
        deriv = (future_null_vector(*plus) - future_null_vector(*minus)) / (2 * eps)
        fd_f.append(np.abs(deriv - infinitesimal_lorentz(p) @ future_null_vector(xi, eta)).max())
        mc = p.conjugate_rep().matrix()
        plus, minus = (np.eye(2) + eps * mc) @ [xi, eta], (np.eye(2) - eps * mc) @ [xi, eta]
        deriv = (past_null_vector(*plus) - past_null_vector(*minus)) / (2 * eps)
        fd_c.append(np.abs(deriv - infinitesimal_lorentz(p.conjugate_rep(), "conjugate")
                           @ past_null_vector(xi, eta)).max())
        conj.append(abs(p.conjugate_rep().conjugate_rep().matrix() - m).max())
    checks.append(Check("infinitesimal_lorentz_future", _worst(fd_f), 1e-6))
    checks.append(Check("infinitesimal_lorentz_past", _worst(fd_c), 1e-6))
    checks.append(Check("conjugate_rep_involution", _worst(conj), 1e-15))
    return checks


# -- Hopf map and light rays --------------------------------------------------------------

def suite_hopf(rng, n=None) -> list[Check]:
    gs = rng.normal(size=(1000, 4))
    closed, null, pen = [], [], []
    for g in gs:
        v = np.array(hopf_map(*g))
        closed.append(np.abs(v - hopf_closed_form(*g)).max())
        lifted = lift_null_vector(v)
        null.append(abs((lifted * lifted).scalar) / v[0] ** 2)
        pen.append(np.abs(np.array(penrose_matrix(*hopf_to_spinor(g))) - v).max())
    return [Check("hopf_closed_form", _worst(closed), 1e-12),
            Check("lifted_vector_null", _worst(null), 1e-12),
            Check("penrose_correspondence", _worst(pen), 1e-12)]


# -- chirality --------------------------------------------------------------------------

def suite_chirality(rng, n=None) -> list[Check]:
    alg = dirac(complex=True)
    pp, pm = chirality_projector(alg, 1), chirality_projector(alg, -1)
    checks = [
        Check("projector_idempotent", max((pp * pp - pp).norm(), (pm * pm - pm).norm()), 1e-14),
        Check("projector_orthogonal", (pp * pm).norm(), 1e-14),
        Check("projector_complete", (pp + pm - 1).norm(), 1e-14),
    ]
    basis = dirac_helicity_basis(alg)
    eps = (1 - 1j * alg.pseudoscalar()) * (1 - alg.e("e03")) / 4
    i5 = 1j * alg.pseudoscalar()
    eig = _worst((i5 * b - (1 if k.startswith("plus") else -1) * b).norm() for k, b in basis.items())
    checks.append(Check("helicity_eigenvalues", eig, 1e-14))
    checks.append(Check("generating_idempotent", (eps * eps - eps).norm(), 1e-14))
    rand = [alg.random(rng) for _ in range(20)]
    closure = _worst(((x * eps) * eps - x * eps).norm() for x in rand)
    checks.append(Check("left_ideal_closure", closure, 1e-12))
    return checks


# -- twistors --------------------------------------------------------------------------

def suite_twistor(rng, n=None) -> list[Check]:
    alg = conformal(complex=True)
    null = alg.e(4) - alg.e(5)
    g5 = gamma5()
    checks = [
        Check("clifford_relations", clifford_relation_residual(), 0),
        Check("gamma5_square", float(np.abs(g5 @ g5 + np.eye(4)).max()), 0),
        Check("null_generator_square", float(np.abs((null * null).coeffs).max()), 0),
    ]
    comp, blocks = [], []
    for a, b in rng.normal(size=(50, 2, 4)):
        comp.append((translation_operator(a) * translation_operator(b)
                     - translation_operator(a + b)).norm())
        psi = BiTwistor.origin(*(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))))
        blocks.append(np.abs(translate_bitwistor(translation_operator(a), psi).pack()
                             - translate_blocks(a, psi).pack()).max())
    checks.append(Check("translation_composition", _worst(comp), 1e-12))
    checks.append(Check("block_action_vs_matrix", _worst(blocks), 1e-12))
    xi = np.array([0, 0, 0, 0, 1, 1.0])
    kern = kernel_bitwistors(xi)
    checks.append(Check("origin_kernel_dimension", abs(len(kern) - 4), 0))
    checks.append(Check("origin_kernel_system", _worst(xi_system_residuals(xi, k).max() for k in kern),
                        1e-12))
    return checks


# -- expectation values -----------------------------------------------------------------

def suite_expectation(rng, n=None) -> list[Check]:
    up, down = pauli_spinor(1, 0), pauli_spinor(0, 1)
    checks = [
        Check("spin_up", float(np.abs(spin_vector(up) - [0, 0, 0.5]).max()), 0),
        Check("spin_down", float(np.abs(spin_vector(down) - [0, 0, -0.5]).max()), 0),
    ]
    mags, odd = [], []
    for v in rng.normal(size=(500, 4)):
        v = v / np.linalg.norm(v)
        psi = pauli_spinor(complex(v[0], v[1]), complex(v[2], v[3]))
        mags.append(abs(np.linalg.norm(spin_vector(psi)) - 0.5))
        odd.append((psi.value - pauli_spinor_odd_form(complex(v[0], v[1]), complex(v[2], v[3]))).norm())
    checks.append(Check("spin_magnitude", _worst(mags), 1e-12))
    checks.append(Check("odd_form", _worst(odd), 1e-12))
    alg = dirac()
    rt = []
    for _ in range(20):
        x = alg.random(rng)
        rt.append(_worst(abs(extract_coefficient(x, m) - x.coeffs[m]) for m in range(alg.dim)))
    checks.append(Check("coefficient_extraction", _worst(rt), 1e-12))
    e3 = pauli().e(3)
    checks.append(Check("e3_on_spin_up", abs(expectation(e3, up) - 1), 1e-15))
    return checks


# -- Bohm equations -----------------------------------------------------------------------

BOHM_CASES = {
    "gaussian": (GaussianPacket(sigma=1.0, k0=1.0), -5.0, 5.0, 0.1, 0.02),
    "plane_wave": (PlaneWave(k=(1.3,)), 0.0, 2.0, 0.02, 0.02),
}
RATIO_TOL = 0.8


def bohm_tables(levels: int = 4) -> dict[str, list[dict]]:
    return {name: residual_table(spec, lo, hi, h, dt, t=0.3, levels=levels)
            for name, (spec, lo, hi, h, dt) in BOHM_CASES.items()}


def suite_bohm(rng, n=None) -> list[Check]:
    tables = bohm_tables()
    checks = []
    for key in ("liouville", "conservation", "anticommutator", "qhj"):
        r = convergence_ratios(tables["gaussian"], key)
        checks.append(Check(f"gaussian_{key}_ratio", _worst(abs(x - 4) for x in r), RATIO_TOL))
    r = convergence_ratios(tables["plane_wave"], "anticommutator")
    checks.append(Check("plane_wave_anticommutator_ratio", _worst(abs(x - 4) for x in r), RATIO_TOL))
    for key in ("liouville", "conservation", "qhj"):
        checks.append(Check(f"plane_wave_{key}_floor", _worst(row[key] for row in tables["plane_wave"]),
                            1e-9))

    pw = PlaneWave(k=(1.3,))
    h = dt = 0.01
    x = uniform_axis(0.0, 2.0, h)
    fields = sample_series(pw, [x], 0.3, dt)
    polars = [decompose_polar(f) for f in fields]
    checks.append(Check("plane_wave_energy_phase", max_norm(bohm_energy(polars, dt) - pw.omega), 1e-10))
    # central differences of exp(i(kx - wt)) give sin(w dt)/dt and sin(k h)/h exactly
    checks.append(Check("plane_wave_energy_bilinear",
                        max_norm(bohm_energy_bilinear(fields, dt) - math.sin(pw.omega * dt) / dt),
                        1e-10))
    checks.append(Check("plane_wave_momentum_phase",
                        max_norm(bohm_momentum(polars[1]) - pw.k[0]), 1e-10))
    checks.append(Check("plane_wave_momentum_bilinear",
                        max_norm(bohm_momentum_bilinear(fields[1])
                                 - math.sin(pw.k[0] * h) / h), 1e-10))

    g = GaussianPacket(sigma=1.0, k0=1.0)
    x = uniform_axis(-12, 14, 0.05)
    p0, p1 = total_probability(sample(g, [x], 0.0)), total_probability(sample(g, [x], 1.0))
    checks.append(Check("probability_conserved", abs(p1 - p0), 1e-10))
    checks.append(Check("probability_normalized", abs(p0 - 1), 1e-10))

    x = uniform_axis(-3, 3, 0.01)
    q = quantum_potential(decompose_polar(sample(GaussianPacket(sigma=1.0), [x], 0.0)), 1.0)
    checks.append(Check("quantum_potential_profile",
                        max_norm(q - gaussian_quantum_potential(x, 1.0, 1.0)), 1e-4))

    f = sample(GaussianPacket(sigma=1.0, k0=0.5), [x], 0.2)
    d2 = dirac_left(dirac_left(f)).values
    v, h = f.values, f.spacing[0]
    wide = np.full_like(v, np.nan)
    wide[2:-2] = -(v[4:] - 2 * v[2:-2] + v[:-4]) / (4 * h * h)
    checks.append(Check("dirac_square_stencil", max_norm(d2 - wide), 1e-9))
    return checks


# -- Weyl algebra --------------------------------------------------------------------------

def weyl_checks(n: int) -> list[Check]:
    W = WeylAlgebra(n)
    one = W.identity()
    ex = [W.idempotent_x(j) for j in range(n)]
    ep = [W.idempotent_p(j) for j in range(n)]
    out = []
    for fam, eps in (("x", ex), ("p", ep)):
        orth = _worst(((eps[j] * eps[k]) - (eps[j] if j == k else W.zero())).coeffs.__abs__().max()
                      for j in range(n) for k in range(n))
        total = W.zero()
        for e in eps:
            total = total + e
        out.append(Check(f"n{n}_{fam}_orthogonal", orth, 1e-12))
        out.append(Check(f"n{n}_{fam}_resolution", float(np.abs((total - one).coeffs).max()), 1e-12))
        cyc = _worst(np.abs((W.translate_idempotent(eps[j], fam) - eps[(j + 1) % n]).coeffs).max()
                     for j in range(n))
        out.append(Check(f"n{n}_{fam}_cycle", cyc, 1e-12))
    for label, el in (("X", W.position_element()), ("P", W.momentum_element())):
        ev = np.sort(np.linalg.eigvals(el.to_matrix()).real)
        out.append(Check(f"n{n}_{label}_ladder", float(np.abs(ev - np.arange(n)).max()), 1e-10))
    z, _src = W.fourier_element(with_source=True)
    out.append(Check(f"n{n}_fourier", W.fourier_residual(z), 1e-10))
    ov = _worst(abs(abs((ex[j] * ep[k]).trace()) - 1 / n) for j in range(n) for k in range(n))
    out.append(Check(f"n{n}_overlaps", ov, 1e-12))
    return out


def suite_weyl(rng, n=None) -> list[Check]:
    ns = [n] if n else range(2, 13)
    checks = [c for k in ns for c in weyl_checks(k)]
    W = WeylAlgebra(ns[0] if n else 5)
    prod = _worst(np.abs((a * b).to_matrix() - a.to_matrix() @ b.to_matrix()).max()
                  for a, b in ((W.random(rng), W.random(rng)) for _ in range(10)))
    checks.append(Check("product_vs_matrix", prod, 1e-10))
    if W.n <= 8:
        a, b = W.random(rng), W.random(rng)
        checks.append(Check("product_vs_table",
                            float(np.abs((a * b).coeffs - weyl_product_tabulated(a, b).coeffs).max()),
                            1e-12))
    return checks


SUITES: dict[str, Callable] = {
    "groupoid": suite_groupoid,
    "rotors": suite_rotors,
    "kcalculus": suite_kcalculus,
    "hopf": suite_hopf,
    "chirality": suite_chirality,
    "twistor": suite_twistor,
    "bohm": suite_bohm,
    "expectation": suite_expectation,
    "weyl": suite_weyl,
}


def run_suite(name: str, seed: int = 0, n: int | None = None) -> dict:
    """Run one suite (or ``"all"``) and return the JSON-ready report."""
    if name == "all":
        checks = []
        for sub, fn in SUITES.items():
            checks += [Check(f"{sub}/{c.name}", c.residual, c.tolerance, c.expected_mismatch)
                       for c in fn(np.random.default_rng(seed), n)]
    elif name in SUITES:
        checks = SUITES[name](np.random.default_rng(seed), n)
    else:
        raise KeyError(name)
    return {"suite": name, "checks": [c.as_dict() for c in checks], "seed": seed,
            "version": __version__}


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])
