"""Conformal algebra representation, bi-twistors and translations."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffproc.algebra import conformal
from cliffproc.twistor import (METRIC, BiTwistor, PointAtInfinity, Twistor, beta_matrices,
                               clifford_relation_residual, gamma5, gamma_matrices,
                               kernel_bitwistors, merge_twistors, projective_coords, represent,
                               six_vector_square, split_twistors, translate_bitwistor,
                               translate_blocks, translation_generators, translation_operator,
                               xi_operator, xi_system_residuals)

seeds = st.integers(0, 2**32 - 1)


def _cplx(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def test_gamma_and_beta_relations():
    g = gamma_matrices()
    eta = np.diag([1, -1, -1, -1])
    for i in range(4):
        for j in range(4):
            assert np.array_equal(g[i] @ g[j] + g[j] @ g[i], 2 * eta[i, j] * np.eye(4))
    assert np.array_equal(gamma5() @ gamma5(), -np.eye(4))
    assert clifford_relation_residual() == 0
    b = beta_matrices()
    assert np.array_equal(b[4] @ b[4], -np.eye(8)) and np.array_equal(b[5] @ b[5], np.eye(8))
    with pytest.raises(ValueError):
        b[0][0, 0] = 5  # cached matrices are read-only


def test_null_generator_squares_to_zero_exactly():
    alg = conformal(complex=True)
    null = alg.e(4) - alg.e(5)
    assert not np.any((null * null).coeffs)
    n = beta_matrices()[4] - beta_matrices()[5]
    assert not np.any(n @ n)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_representation_is_a_homomorphism(seed):
    rng = np.random.default_rng(seed)
    alg = conformal(complex=True)
    a, b = alg.random(rng, grades=[0, 1, 2]), alg.random(rng, grades=[0, 1, 2])
    assert np.allclose(represent(a * b), represent(a) @ represent(b), atol=1e-10)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_translations_compose(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=4), rng.normal(size=4)
    ua, ub = translation_operator(a), translation_operator(b)
    assert (ua * ub).allclose(translation_operator(a + b), 1e-12)
    assert np.allclose(represent(ua) @ represent(ub), represent(translation_operator(a + b)), atol=1e-12)


def test_translation_generators_commute():
    p = translation_generators()
    for i in range(4):
        for j in range(4):
            assert (p[i] * p[j] - p[j] * p[i]).norm() == 0


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_block_action_against_the_matrix(seed):
    rng = np.random.default_rng(seed)
    dx = rng.normal(size=4)
    psi = BiTwistor.origin(_cplx(rng, 2), _cplx(rng, 2))
    via_matrix = translate_bitwistor(translation_operator(dx), psi)
    assert via_matrix.allclose(translate_blocks(dx, psi), 1e-12)
    # the displaced components, written out with explicit Pauli matrices
    s = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    minus = dx[0] * np.eye(2) - sum(d * m for d, m in zip(dx[1:], s))
    plus = dx[0] * np.eye(2) + sum(d * m for d, m in zip(dx[1:], s))
    assert np.allclose(via_matrix.lambda2, -1j * minus @ psi.rho1, atol=1e-12)
    assert np.allclose(via_matrix.rho2, 1j * plus @ psi.lambda1, atol=1e-12)


def test_pack_round_trip_and_twistor_split():
    rng = np.random.default_rng(0)
    psi = BiTwistor(*(_cplx(rng, 2) for _ in range(4)))
    assert BiTwistor.unpack(psi.pack()).allclose(psi, 0)
    t1, t2 = split_twistors(psi)
    assert isinstance(t1, Twistor)
    assert merge_twistors(t1, t2).allclose(psi, 0)
    with pytest.raises(ValueError):
        BiTwistor.unpack(np.zeros(7))


def test_projective_coordinates():
    xi = np.array([1.0, 2.0, 3.0, 4.0, 0.5, 1.5])
    assert np.allclose(projective_coords(xi), xi[:4] / 2)
    with pytest.raises(PointAtInfinity):
        projective_coords([1, 0, 0, 0, 1, -1])
    assert six_vector_square([0, 0, 0, 0, 1, 1]) == 0
    assert METRIC == (1, -1, -1, -1, -1, 1)


def test_kernel_at_the_origin():
    xi = np.array([0, 0, 0, 0, 1, 1.0])
    kern = kernel_bitwistors(xi)
    assert len(kern) == 4
    for k in kern:
        assert np.allclose(k.lambda2, 0) and np.allclose(k.rho2, 0)
        assert xi_system_residuals(xi, k).max() < 1e-12
        assert np.allclose(xi_operator(xi) @ k.pack(), 0)
    assert kernel_bitwistors(np.array([1.0, 0, 0, 0, 0, 0])) == []


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_xi_system_matches_the_matrix_equation(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=4)
    # null six-vector for the Minkowski point x: xi4 + xi5 = 1, xi4 - xi5 = x.x
    xx = x[0] ** 2 - x[1:] @ x[1:]
    xi = np.array([*x, (1 + xx) / 2, (1 - xx) / 2])
    assert abs(six_vector_square(xi)) < 1e-12
    for k in kernel_bitwistors(xi):
        assert xi_system_residuals(xi, k).max() < 1e-10
    psi = BiTwistor(*(_cplx(rng, 2) for _ in range(4)))
    # a generic bi-twistor fails both forms of the equation
    assert xi_system_residuals(xi, psi).max() > 1e-8
    assert np.abs(xi_operator(xi) @ psi.pack()).max() > 1e-8


def test_misindexed_second_line_fails():
    # with lambda2 in place of lambda1 the system is not satisfied by kernel vectors
    rng = np.random.default_rng(5)
    x = rng.normal(size=4)
    xx = x[0] ** 2 - x[1:] @ x[1:]
    xi = np.array([*x, (1 + xx) / 2, (1 - xx) / 2])
    s = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    xm = x[0] * np.eye(2) - sum(d * m for d, m in zip(x[1:], s))
    worst = max(np.abs((xi[4] - xi[5]) * k.lambda2 + 1j * xm @ k.rho2).max()
                for k in kernel_bitwistors(xi))
    assert worst > 1e-3
