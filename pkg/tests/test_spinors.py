"""Idempotents, ideals, the Hopf map, light rays and chirality."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffproc.algebra import dirac, lightcone31, pauli, schrodinger
from cliffproc.spinors import (ConfigurationError, Idempotent, IdealElement, NotNullError,
                               chirality_operator, chirality_project, chirality_projector, density,
                               dirac_helicity_basis, frame_idempotent, hopf_closed_form,
                               hopf_even_part, hopf_map, hopf_to_spinor, lift_null_vector,
                               light_ray_matrix, make_idempotent, null_residual,
                               pauli_components, pauli_idempotent, pauli_spinor,
                               pauli_spinor_odd_form, penrose_matrix, spinor_identification,
                               unit_idempotent)
from cliffproc.versors import rotor

reals = st.floats(-10, 10, allow_nan=False)


def test_idempotents():
    a = pauli()
    eps = pauli_idempotent(a)
    assert eps.value == (1 + a.e(3)) / 2
    assert (eps.value * eps.complement().value).allclose(a.zero(), 0)
    with pytest.raises(ValueError):
        Idempotent(a.e(3))
    with pytest.raises(ValueError):
        make_idempotent(a.e(1, 2))  # squares to -1
    assert unit_idempotent(schrodinger()).value == 1


@given(reals, reals, reals, reals)
def test_pauli_spinor_even_and_odd_forms_agree(a, b, c, d):
    psi = pauli_spinor(complex(a, d), complex(c, b))
    assert psi.value.allclose(pauli_spinor_odd_form(complex(a, d), complex(c, b)), 1e-12)
    assert np.allclose(pauli_components(psi), (complex(a, d), complex(c, b)))


@given(reals, reals, reals, reals)
def test_left_ideal_is_closed(a, b, c, d):
    psi = pauli_spinor(complex(a, b), complex(c, d))
    eps = psi.idempotent.value
    assert (psi.value * eps).allclose(psi.value, 1e-12)
    assert (eps * psi.partner().value).allclose(psi.partner().value, 1e-12)


def test_ideal_element_validation():
    a = pauli()
    with pytest.raises(ValueError):
        IdealElement(a.scalar(1), pauli_idempotent(), side="middle")
    with pytest.raises(ValueError):
        density(pauli_spinor(1, 0).partner())


def test_hopf_spot_value():
    # g = (1, 2, 3, 4) worked by hand from the quadratic forms
    assert hopf_map(1, 2, 3, 4) == pytest.approx((30, 10, 28, 4), abs=1e-12)
    assert hopf_closed_form(1, 2, 3, 4) == (30, 10, 28, 4)


@given(reals, reals, reals, reals)
def test_hopf_algebraic_vs_closed_form(g0, g1, g2, g3):
    v = np.array(hopf_map(g0, g1, g2, g3))
    assert np.allclose(v, hopf_closed_form(g0, g1, g2, g3), atol=1e-12 * max(1, v[0]))
    assert null_residual(v) <= 1e-12 * max(1.0, v[0] ** 2)


@given(reals, reals, reals, reals)
def test_density_is_a_vector_in_c30(g0, g1, g2, g3):
    psi = hopf_even_part((g0, g1, g2, g3))
    v = psi * (1 + pauli().e(3)) * psi.conjugate()
    assert (v - v.grade(0) - v.grade(1)).norm() <= 1e-12 * max(1, v.norm())


def test_lift_null_vector():
    v = lift_null_vector((2.0, 0.0, 1.2, 1.6))
    assert v.algebra == lightcone31()
    assert abs((v * v).scalar) <= 1e-12
    with pytest.raises(NotNullError) as info:
        lift_null_vector((1.0, 1.0, 1.0, 0.0))
    assert info.value.residual == pytest.approx(1.0)


def test_spinor_identification_is_a_signed_permutation():
    m = spinor_identification()
    assert np.array_equal(np.abs(m).sum(axis=0), np.ones(4))
    assert np.array_equal(np.abs(m).sum(axis=1), np.ones(4))
    assert m[0, 0] == 1
    # (Re psi1, Im psi1, Re psi2, Im psi2) = (g0, g3, -g2, g1)
    assert hopf_to_spinor((1, 2, 3, 4)) == (1 + 4j, -3 + 2j)


@settings(max_examples=50)
@given(reals, reals, reals, reals)
def test_penrose_correspondence(g0, g1, g2, g3):
    v = hopf_map(g0, g1, g2, g3)
    p = penrose_matrix(*hopf_to_spinor((g0, g1, g2, g3)))
    assert np.allclose(p, v, atol=1e-12 * max(1, v[0]))


@given(st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_light_ray_matrix_is_twice_the_outer_product(p1, p2):
    psi = np.array([p1, p2])
    assert np.allclose(light_ray_matrix(*penrose_matrix(p1, p2)), 2 * np.outer(psi, psi.conj()),
                       atol=1e-9)


def test_chirality_projectors():
    alg = dirac(complex=True)
    pp, pm = chirality_projector(alg, 1), chirality_projector(alg, -1)
    assert (pp * pp).allclose(pp, 1e-15) and (pp * pm).allclose(alg.zero(), 1e-15)
    assert (pp + pm).allclose(alg.scalar(1), 0)
    x = alg.random(np.random.default_rng(3))
    assert (chirality_project(x, 1) + chirality_project(x, -1)).allclose(x, 1e-12)
    with pytest.raises(ConfigurationError):
        chirality_operator(dirac())
    with pytest.raises(ValueError):
        chirality_projector(alg, 0)


def test_helicity_basis():
    alg = dirac(complex=True)
    i5 = 1j * alg.pseudoscalar()
    eps = (1 - i5) * (1 - alg.e("e03")) / 4
    assert (eps * eps).allclose(eps, 1e-15)
    for name, b in dirac_helicity_basis(alg).items():
        sign = 1 if name.startswith("plus") else -1
        assert (i5 * b).allclose(sign * b, 1e-14), name
        assert (b * eps).allclose(b, 1e-14), name  # b lies in the left ideal of eps
        assert b.norm() > 0


def test_frame_idempotent_follows_the_rotor():
    a = pauli()
    g = rotor(a.e(3, 1), np.pi / 2)    # carries e3 into +-e1
    eps = frame_idempotent(g.value, a.e(3))
    assert (eps.value * eps.value).allclose(eps.value, 1e-14)
    assert abs(abs(eps.value["e1"]) - 0.5) < 1e-14
