import pytest

from nervekit.action import (
    BicatAction,
    EquivariantFunctor,
    EquivariantTransformation,
    action_bicategory,
    canonical_projection,
    check_equivariant,
    compose_equivariant,
    identity_equivariant,
    self_action,
    tangent_bundle,
    validate_action,
)
from nervekit.bicategory import delooping, is_bigroupoid, validate_bicategory, validate_homomorphism
from nervekit.category import cyclic_group
from nervekit.errors import InvalidAction, MalformedData, MalformedTable
from nervekit.stock import cached, stock_two_groups


def bz2():
    return delooping(cyclic_group(2))


def corrupted_kappa():
    """Self-action of (Z/2->Z/3) with κ twisted by the 2-cell [f = g = 1]."""
    S = self_action(stock_two_groups()["(Z/2->Z/3)"])
    kappa = {(p, f, g): "(%d,%d)" % ((int(p) + int(f) + int(g)) % 3, int(f == "1" and g == "1"))
             for (p, f, g) in S.kappa_table}
    return BicatAction(S.P, S.B, S.momentum, S.act0_table, S.act1_table, kappa, S.iota_table, "twisted")


@pytest.mark.parametrize("name", sorted(stock_two_groups()))
def test_self_actions_valid(name):
    assert validate_action(self_action(stock_two_groups()[name]))


@pytest.mark.parametrize("name", ["triv BZ/2", "triv (Z/2->1)", "pullback BZ/2 |M|=2", "non-principal"])
def test_stock_actions_valid(name):
    T = cached("actions")[name]
    rep = validate_action(T.fibered)
    assert rep
    assert rep.checks[-1].name == "fibered"


def test_kappa_corruption_is_a_pentagon_failure():
    rep = validate_action(corrupted_kappa())
    assert rep.axiom == "pentagon"
    assert rep.witness == ("0", "1", "1", "2")
    status = {c.name: c.ok for c in rep.checks}
    assert status["kappa_naturality"] and status["unit_triangle_left"] and status["unit_triangle_right"]


def test_action_bicategory_rejects_invalid_action():
    with pytest.raises(InvalidAction):
        action_bicategory(corrupted_kappa())


def test_partial_action_rejected():
    S = self_action(bz2())
    act0 = dict(S.act0_table)
    act0.pop(("0", "1"))
    A = BicatAction(S.P, S.B, S.momentum, act0, S.act1_table, S.kappa_table, S.iota_table)
    with pytest.raises(MalformedTable):
        validate_action(A)


def test_action_bicategory_of_bz2_self_action():
    A = self_action(bz2())
    AB = action_bicategory(A)
    assert (len(AB.objects), len(AB.one_cells), len(AB.two_cells)) == (2, 4, 4)
    assert AB.decode1["(1[0],1,1)"] == ("1[0]", "1", "1")
    assert validate_bicategory(AB)
    assert is_bigroupoid(AB) == (True, None)


@pytest.mark.parametrize("name", ["(Z/2->1)", "(Z/2->Z/2)", "(Z/2->Z/3)"])
def test_action_bicategories_coherent(name):
    AB = action_bicategory(self_action(stock_two_groups()[name]))
    assert validate_bicategory(AB)


def test_projection_is_strict_homomorphism():
    for name in ("(Z/2->1)", "(Z/2->Z/2)"):
        A = self_action(stock_two_groups()[name])
        assert validate_homomorphism(canonical_projection(A))


def test_tangent_bundle_fibered():
    assert validate_action(tangent_bundle(stock_two_groups()["(Z/2->Z/2)"]))


# -- equivariance --------------------------------------------------------------


def v4_action():
    return self_action(stock_two_groups()["(Z/2xZ/2->Z/2)"])


def test_identity_and_composite_equivariant():
    I = identity_equivariant(v4_action())
    assert check_equivariant("functor", I)
    assert check_equivariant("functor", compose_equivariant(I, I))


def test_scrambled_theta_fails_naturality():
    A = v4_action()
    I = identity_equivariant(A)
    th = dict(I.theta)
    th[("0", "0")] = "(0,01)"
    rep = check_equivariant("functor", EquivariantFunctor(A, A, I.F0, I.F1, th, "scrambled"))
    assert rep.axiom == "theta naturality"


def test_identity_transformation():
    A = v4_action()
    I = identity_equivariant(A)
    T = EquivariantTransformation(I, I, {p: A.P.identity[p] for p in A.P.objects})
    assert check_equivariant("transformation", T)


def test_mistyped_transformation():
    A = v4_action()
    I = identity_equivariant(A)
    tau = {p: A.P.identity[p] for p in A.P.objects}
    tau["0"] = A.P.identity["1"]
    rep = check_equivariant("transformation", EquivariantTransformation(I, I, tau))
    assert rep.axiom == "tau typing" and rep.witness == "0"


def test_partial_equivariant_data():
    A = v4_action()
    I = identity_equivariant(A)
    th = dict(I.theta)
    th.pop(("0", "0"))
    with pytest.raises(MalformedData):
        check_equivariant("functor", EquivariantFunctor(A, A, I.F0, I.F1, th))


def test_unknown_equivariance_kind():
    with pytest.raises(MalformedData):
        check_equivariant("natural", None)
