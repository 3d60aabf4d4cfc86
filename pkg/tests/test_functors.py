import pytest

from nervekit.category import codiscrete_groupoid, cyclic_group, monoid_category, translation_groupoid
from nervekit.errors import DimensionOutOfRange, NotAspherical
from nervekit.functors import (
    augmented_coskeleton,
    build_contraction,
    closing_equation_holds,
    coskeleton,
    coskeleton_unit,
    decalage,
    identity_contraction,
    nondegenerate_count,
    skeleton,
    theta,
    theta_inverse,
    truncate,
    validate_augmented_map,
)
from nervekit.nerve import classical_nerve
from nervekit.simplicial import (
    classify,
    constant_augmented,
    constant_complex,
    enumerate_maps,
    is_aspherical,
    standard_simplex,
    validate_augmented,
    validate_contraction,
    validate_map,
    validate_simplicial,
)
from nervekit.stock import over_point, stock_augmented_aspherical

import oracles


def nerve(G, cap=3):
    return classical_nerve(monoid_category(G), cap)


# -- truncation and coskeleta -------------------------------------------------


def test_truncate_sizes():
    X = nerve(cyclic_group(3))
    assert truncate(X, 1).sizes() == (1, 3)
    assert truncate(X, 2).policy == "truncated"
    with pytest.raises(DimensionOutOfRange):
        truncate(X, 4)


def test_cosk0_of_two_points():
    X = coskeleton(truncate(constant_complex(["a", "b"], 0), 0), 0, 4)
    assert X.sizes() == tuple(2 ** (n + 1) for n in range(5))
    assert validate_simplicial(X)


def test_cosk1_of_truncated_group_nerve():
    X = coskeleton(truncate(nerve(cyclic_group(2)), 1), 1, 3)
    assert X.sizes() == (1, 2, 8, 64)
    assert len(X.level(2)) == len(oracles.kernel(truncate(nerve(cyclic_group(2)), 1), 2))
    assert validate_simplicial(X)


def test_coskeleton_matches_nerve_above_two():
    # a nerve is 2-coskeletal
    N = nerve(cyclic_group(3))
    C = coskeleton(truncate(N, 2), 2, 3)
    assert C.sizes() == N.sizes()


def test_coskeleton_unit_is_simplicial():
    N = nerve(cyclic_group(2))
    u = coskeleton_unit(N, 1)
    assert validate_map(u)


def test_augmented_coskeleton():
    A = over_point(truncate(classical_nerve(translation_groupoid(cyclic_group(2)), 3), 1))
    C = augmented_coskeleton(A, 1, 3)
    assert C.base.sizes() == (2, 4, 8, 16)
    assert validate_augmented(C)


# -- skeleta -------------------------------------------------------------------


def test_sk1_of_delta2():
    S = skeleton(standard_simplex(2, 3), 1, 3)
    assert S.sizes() == (3, 6, 9, 12)
    assert nondegenerate_count(S, 2) == 0
    assert validate_simplicial(S)


def test_sk0_of_group_nerve_is_a_point():
    S = skeleton(nerve(cyclic_group(2)), 0, 3)
    assert S.sizes() == (1, 1, 1, 1)


def test_skeleton_idempotent():
    X = nerve(cyclic_group(3))
    S = skeleton(X, 1, 3)
    assert skeleton(S, 1, 3).table_equal(S)


def test_truncation_adjunction_hom_counts():
    # maps tr1 Y -> tr1 X correspond to maps Y -> cosk1 tr1 X and to sk1 Y -> X
    Y = standard_simplex(2, 3)
    X = nerve(cyclic_group(2))
    n_trunc = len(enumerate_maps(truncate(Y, 1), truncate(X, 1)))
    n_cosk = len(enumerate_maps(Y, coskeleton(truncate(X, 1), 1, 3)))
    n_sk = len(enumerate_maps(skeleton(Y, 1, 3), X))
    assert n_trunc == n_cosk == 8
    assert n_sk == n_trunc


# -- décalage ----------------------------------------------------------------


@pytest.mark.parametrize("order", [2, 3])
def test_decalage_of_group_nerve(order):
    N = nerve(cyclic_group(order), 4)
    b = decalage(N)
    assert b.dec.sizes() == tuple(order ** (n + 1) for n in range(4))
    assert b.validate()
    for n, comp in enumerate(b.S1):
        assert all(b.D1.apply(n, y) == x for x, y in comp.items())


def test_decalage_needs_level_one():
    with pytest.raises(DimensionOutOfRange):
        decalage(constant_complex(["a"], 0))


def test_decalage_is_aspherical():
    b = decalage(nerve(cyclic_group(2)))
    for n in range(0, 3):
        assert is_aspherical(b.aug, n)


def test_theta_round_trip():
    N = nerve(cyclic_group(2))
    b = decalage(N)
    g = theta(b.D1, b.aug, b)
    assert validate_augmented_map(g)
    back = theta_inverse(g, b)
    assert back.same_as(b.D1, upto=1)


# -- contractions ------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(stock_augmented_aspherical()))
def test_build_contraction_on_stock(name):
    A = stock_augmented_aspherical()[name]
    S = build_contraction(A)
    assert validate_contraction(S)
    assert closing_equation_holds(S)


def test_group_nerve_over_point_has_no_contraction():
    A = over_point(nerve(cyclic_group(2)))
    with pytest.raises(NotAspherical) as e:
        build_contraction(A)
    assert e.value.level == 2


def test_identity_contraction_of_constant():
    A = identity_contraction(constant_augmented(["a", "b"], 3))
    assert validate_contraction(A)


def test_contracted_complex_is_kan():
    X = classical_nerve(codiscrete_groupoid("abc"), 3)
    assert classify(X, 4).label == "nHypergroupoid"
