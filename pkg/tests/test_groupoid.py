"""Process groupoid: composition, orientation, realization and iterants."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cliffproc.groupoid import (EXPECTED_MISMATCHES, LADDER_FORMS, UNDEFINED, ConstructionError,
                                Extensive, Iterant, apply_operator, associativity_failures,
                                build_clifford, check_ladder_forms, compose, evaluate,
                                full_product_table, iterant_product, iterant_sum, operator,
                                product_table)

ALL_PLUS = {"P0": 1, "P1": 1, "P2": 1, "P3": 1}


def test_head_to_tail_composition_picks_up_the_shared_point():
    metric = {"P0": 1, "P1": -1, "P2": 1}
    out = compose(Extensive("P0", "P1"), Extensive("P1", "P2"), metric)
    assert out == Extensive("P0", "P2", -1.0)


def test_orientation_flip_and_loops():
    # [P0P1][P0P1]: flip the first factor, meet at P0, close the loop at P1
    out = compose(Extensive("P0", "P1"), Extensive("P0", "P1"), ALL_PLUS)
    assert out.is_loop and evaluate(out, ALL_PLUS) == ("scalar", -1.0)
    loop = Extensive("P1", "P1")
    assert loop.swapped() is loop
    assert Extensive("P0", "P1").swapped() == Extensive("P1", "P0", -1.0)


def test_disjoint_pairs():
    a, b = Extensive("P0", "P1"), Extensive("P2", "P3")
    assert compose(a, b, ALL_PLUS) is UNDEFINED
    assert not UNDEFINED
    assert compose(a, b, ALL_PLUS, incidence=True) == 0.0


def test_missing_or_bad_metric():
    with pytest.raises(KeyError):
        compose(Extensive("A", "B"), Extensive("B", "C"), {"A": 1})
    with pytest.raises(ValueError):
        compose(Extensive("A", "B"), Extensive("B", "C"), {"A": 1, "B": 2, "C": 1})


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=4, max_size=4))
def test_associativity_for_any_metric(signs):
    metric = dict(zip(["P0", "P1", "P2", "P3"], signs))
    assert associativity_failures(list(metric), metric) == []


def test_generator_squares_follow_the_point_metric():
    # [P0Pi]^2 = -g_i, so g_i = -1 gives a generator squaring to +1
    real = build_clifford([Extensive("P0", f"P{i}") for i in (1, 2, 3)],
                          {"P0": 1, "P1": -1, "P2": -1, "P3": -1})
    assert real.signature == (3, 0)
    real = build_clifford([Extensive("P0", "P1"), Extensive("P0", "P2")], ALL_PLUS)
    assert real.signature == (0, 2)
    real = build_clifford([Extensive("P0", "T"), Extensive("P0", "P")],
                          {"P0": 1, "T": -1, "P": 1}, first_index=0)
    assert real.signature == (1, 1)


def test_every_defined_product_matches_the_algebra():
    real = build_clifford([Extensive("P0", f"P{i}") for i in (1, 2, 3)], ALL_PLUS)
    points = ["P0", "P1", "P2", "P3"]
    for p, q, r, s in itertools.product(points, repeat=4):
        if p == q or r == s:
            continue
        prod = compose(Extensive(p, q), Extensive(r, s), ALL_PLUS)
        if prod is UNDEFINED:
            continue
        assert real.image(prod).allclose(real.images[(p, q)] * real.images[(r, s)], 0)


@pytest.mark.parametrize("gens,metric,msg", [
    ([], ALL_PLUS, "at least one"),
    ([Extensive("P0", "P1"), Extensive("P2", "P3")], ALL_PLUS, "share"),
    ([Extensive("P0", "P1"), Extensive("P0", "P1")], ALL_PLUS, "distinct"),
    ([Extensive("P0", "P1", 2.0)], ALL_PLUS, "unit"),
    ([Extensive("P0", "P1")], {"P0": -1, "P1": 1}, "unit"),
])
def test_construction_errors(gens, metric, msg):
    with pytest.raises(ConstructionError, match=msg):
        build_clifford(gens, metric)


QUATERNION_ROWS = [("P0", "P1"), ("P0", "P2"), ("P1", "P2")]


def test_product_table_inner_block():
    real = build_clifford([Extensive("P0", "P1"), Extensive("P0", "P2")], ALL_PLUS)
    assert product_table(real, QUATERNION_ROWS) == [
        ["-1", "-[P1P2]", "[P0P2]"],
        ["[P1P2]", "-1", "-[P0P1]"],
        ["-[P0P2]", "[P0P1]", "-1"],
    ]


def test_full_table_routes_agree():
    real = build_clifford([Extensive("P0", "P1"), Extensive("P0", "P2")], ALL_PLUS)
    assert (full_product_table(real, QUATERNION_ROWS, "groupoid")
            == full_product_table(real, QUATERNION_ROWS, "algebra"))
    with pytest.raises(ValueError):
        full_product_table(real, QUATERNION_ROWS, "other")


# -- iterants -------------------------------------------------------------------

finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(finite, finite, finite, finite)
def test_iterant_arithmetic_is_componentwise(a, b, c, d):
    assert iterant_product(Iterant(a, b), Iterant(c, d)) == Iterant(a * c, b * d)
    assert iterant_sum(Iterant(a, b), Iterant(c, d)) == Iterant(a + c, b + d)


@given(finite, finite)
def test_iterant_operator_actions(A, B):
    x = Iterant(A, B)
    assert tuple(apply_operator("a", x)) == (B, 0)
    assert tuple(apply_operator("a†", x)) == (0, A)
    assert tuple(apply_operator("sigma_x", x)) == (B, A)
    assert tuple(apply_operator("σz", x)) == (A, -B)
    assert tuple(apply_operator("p", x)) == (0, B)
    assert tuple(apply_operator("ψL1", x)) == (A, A)
    assert tuple(apply_operator("psi_L2", x)) == (B, B)
    assert tuple(apply_operator("a", Iterant(A, 0))) == (0, 0)     # vacuum
    assert tuple(apply_operator("a+", Iterant(0, B))) == (0, 0)    # plenum


@given(finite, finite)
def test_ladder_forms(A, B):
    x = Iterant(A, B)
    assert tuple(LADDER_FORMS["sigma_x"](x)) == (B, A)
    assert tuple(LADDER_FORMS["p"](x)) == (0, B)
    assert tuple(LADDER_FORMS["psi_L1"](x)) == (A, A)
    assert tuple(LADDER_FORMS["psi_L2"](x)) == (B, B)
    # a - a+ swaps as well as negates: [B, -A], not [A, -B]
    assert tuple(LADDER_FORMS["sigma_z"](x)) == (B, -A)


def test_ladder_report_flags_only_sigma_z():
    rows = check_ladder_forms([Iterant(1.0, 2.0), Iterant(-3.0, 0.5)])
    mismatched = {r["name"] for r in rows if not r["agrees"]}
    assert mismatched == set(EXPECTED_MISMATCHES) == {"sigma_z"}
    assert all(r["expected_mismatch"] == (r["name"] == "sigma_z") for r in rows)


def test_unknown_operator():
    with pytest.raises(KeyError):
        operator("sigma_y")
