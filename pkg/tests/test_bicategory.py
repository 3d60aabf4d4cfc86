import pytest

from nervekit.bicategory import (
    build_ordinal,
    build_span,
    build_two_group,
    compose_cells,
    delooping,
    is_bigroupoid,
    require_valid,
    validate_bicategory,
)
from nervekit.category import (
    cyclic_group,
    multiplicative_monoid_01,
    symmetric_group,
    trivial_group,
)
from nervekit.errors import InvalidBicategory, MalformedTable, NotComposable, NotCrossedModule
from nervekit.stock import stock_deloopings, stock_spans, stock_two_groups

import oracles

FAMILIES = ["(Z/2->1)", "(Z/3->1)", "(Z/2->Z/2)", "(Z/2xZ/2->Z/2)", "(Z/2->Z/3)"]


@pytest.mark.parametrize("name", sorted(stock_deloopings()))
def test_deloopings_coherent(name):
    B = stock_deloopings()[name]
    assert validate_bicategory(B)
    assert oracles.pentagon_ok(B) and oracles.triangle_ok(B)


@pytest.mark.parametrize("name", FAMILIES)
def test_two_groups_coherent(name):
    B = stock_two_groups()[name]
    assert validate_bicategory(B)
    assert oracles.pentagon_ok(B) and oracles.triangle_ok(B)
    assert is_bigroupoid(B) == (True, None)


@pytest.mark.parametrize("name", sorted(stock_spans()))
def test_spans_coherent(name):
    B = stock_spans()[name]
    assert validate_bicategory(B)
    assert oracles.pentagon_ok(B) and oracles.triangle_ok(B)


def test_validator_family_order():
    rep = validate_bicategory(stock_two_groups()["(Z/2->1)"])
    assert [c.name for c in rep.checks] == [
        "globularity", "hom_category", "hcomp_typing", "hcomp_functoriality", "interchange",
        "associator_invertible", "unitors_invertible", "naturality", "pentagon", "triangle",
    ]


# -- corruptions ---------------------------------------------------------------


def z2_to_1():
    return stock_two_groups()["(Z/2->1)"]


def test_pentagon_corruption():
    B = z2_to_1().copy_with(assoc={("e", "e", "e"): "(e,1)"})
    rep = validate_bicategory(B)
    assert rep.axiom == "pentagon"
    assert rep.witness == ("e", "e", "e", "e")
    assert not oracles.pentagon_ok(B)


def test_triangle_corruption():
    B = z2_to_1().copy_with(lunitor={"e": "(e,1)"})
    rep = validate_bicategory(B)
    assert rep.axiom == "triangle"
    assert rep.witness == ("e", "e")
    assert not oracles.triangle_ok(B)


def test_interchange_corruption():
    B = z2_to_1().copy_with(hcomp2={("(e,1)", "(e,1)"): "(e,1)"})
    rep = validate_bicategory(B)
    assert rep.axiom == "interchange"


def test_naturality_corruption():
    B = stock_two_groups()["(Z/2xZ/2->Z/2)"].copy_with(assoc={("1", "1", "1"): "(1,01)"})
    rep = validate_bicategory(B)
    assert rep.axiom == "naturality"
    assert rep.witness[0] == "assoc"


def test_require_valid_raises():
    with pytest.raises(InvalidBicategory):
        require_valid(z2_to_1().copy_with(lunitor={"e": "(e,1)"}))


def test_partial_table_rejected():
    B = z2_to_1()
    tables = dict(B.assoc_table)
    tables.pop(("e", "e", "e"))
    C = type(B)(B.objects, B.one_cells, B.two_cells, B.id1_table, B.id2_table, B.vcomp_table,
                B.hcomp1_table, B.hcomp2_table, tables, B.lunitor_table, B.runitor_table)
    with pytest.raises(MalformedTable, match="assoc is partial"):
        validate_bicategory(C)


# -- bigroupoids ------------------------------------------------------------


def test_non_invertible_one_cell_witness():
    assert is_bigroupoid(delooping(multiplicative_monoid_01())) == (False, ("1-cell", "0"))
    assert is_bigroupoid(build_ordinal(1)) == (False, ("1-cell", "01"))


# -- crossed modules ----------------------------------------------------------


def test_non_homomorphism_rejected():
    with pytest.raises(NotCrossedModule, match="homomorphism"):
        build_two_group(cyclic_group(2), cyclic_group(3), {"0": "0", "1": "1"})


def test_peiffer_failure_rejected():
    S3 = symmetric_group(3)
    with pytest.raises(NotCrossedModule, match="Peiffer"):
        build_two_group(S3, trivial_group(), {h: "e" for h in S3.elements})


def test_two_group_sizes():
    sizes = {k: (len(B.objects), len(B.one_cells), len(B.two_cells)) for k, B in stock_two_groups().items()}
    assert sizes == {
        "(Z/2->1)": (1, 1, 2),
        "(Z/3->1)": (1, 1, 3),
        "(Z/2->Z/2)": (1, 2, 4),
        "(Z/2xZ/2->Z/2)": (1, 2, 8),
        "(Z/2->Z/3)": (1, 3, 6),
    }


def test_two_cells_typed_by_boundary():
    B = stock_two_groups()["(Z/2->Z/2)"]
    assert B.two_cells["(0,1)"] == ("0", "1")
    assert B.cells("0", "1") == ["(0,1)"]


def test_ordinal_counts():
    B = build_ordinal(2)
    assert (len(B.objects), len(B.one_cells), len(B.two_cells)) == (3, 6, 6)


def test_span_two_cells():
    B = build_span(["a", "b"])
    assert len(B.objects) == 2
    assert validate_bicategory(B)


# -- composition --------------------------------------------------------------


def test_compose_cells():
    B = stock_two_groups()["(Z/2->Z/2)"]
    assert compose_cells(B, "vertical", "(1,1)", "(0,1)") == "(0,0)"
    assert compose_cells(B, "horizontal", "(0,1)", "(0,1)") == "(0,0)"
    assert compose_cells(B, "whisker_left", "1", "(0,1)") == B.hcomp2(B.id2("1"), "(0,1)")


def test_compose_cells_type_errors():
    B = stock_two_groups()["(Z/2->Z/2)"]
    with pytest.raises(NotComposable):
        compose_cells(B, "vertical", "(0,1)", "(0,1)")
    with pytest.raises(NotComposable):
        compose_cells(B, "sideways", "(0,1)")
    O = build_ordinal(2)
    with pytest.raises(NotComposable):
        compose_cells(O, "horizontal", O.id2("01"), O.id2("01"))
