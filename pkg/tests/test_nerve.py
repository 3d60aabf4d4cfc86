import pytest

from nervekit.bicategory import build_ordinal, locally_discrete
from nervekit.errors import InvalidBicategory, MalformedTable
from nervekit.nerve import (
    NerveTable,
    classical_nerve,
    cocycle_check,
    coskeletality_report,
    duskin_nerve,
    nerve_map,
    relabel_classical,
)
from nervekit.simplicial import classify, standard_simplex, validate_map, validate_simplicial
from nervekit.stock import cached, stock_categories, stock_groupoids, stock_two_groups

import oracles


@pytest.mark.parametrize("name", sorted(stock_categories()) + sorted(stock_groupoids()))
def test_classical_nerve_sizes(name):
    C = {**stock_categories(), **stock_groupoids()}[name]
    N = classical_nerve(C, 3)
    assert N.sizes() == tuple(oracles.composable_strings(C, n) for n in range(4))
    assert validate_simplicial(N)


@pytest.mark.parametrize("name", sorted(stock_two_groups()))
def test_duskin_sizes_of_two_groups(name):
    # one object: 2-simplices are (f01, f12, h), 3-simplices (f01, f12, f23, β012, β123, β013)
    B = stock_two_groups()[name]
    H, G = B.crossed_module[:2]
    h, g = len(H.elements), len(G.elements)
    N = duskin_nerve(B)
    assert N.sizes() == (1, g, g * g * h, g ** 3 * h ** 3)
    assert len(N.level(2)) == oracles.duskin_level2(B)
    assert validate_simplicial(N)


def test_span_nerve_level2():
    B = cached("spans")["Span{a,b}"]
    N = duskin_nerve(B)
    assert len(N.level(2)) == oracles.duskin_level2(B)


@pytest.mark.parametrize("name", ["[2]", "square", "B{0,1}", "path3"])
def test_locally_discrete_nerve_is_classical(name):
    C = stock_categories()[name]
    N = duskin_nerve(locally_discrete(C))
    M = classical_nerve(C, 3)
    rel = relabel_classical(N, C)
    for n in range(4):
        assert sorted(rel[n].values()) == list(M.level(n))
    for n in range(1, 4):
        for x in N.level(n):
            assert M.faces(n, rel[n][x]) == tuple(rel[n - 1][y] for y in N.faces(n, x))
    for n in range(3):
        for x in N.level(n):
            assert M.degens(n, rel[n][x]) == tuple(rel[n + 1][y] for y in N.degens(n, x))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_standard_simplex_is_ordinal_nerve(n):
    N = duskin_nerve(build_ordinal(n))
    D = standard_simplex(n, 3)
    assert N.sizes() == D.sizes()
    assert classify(N, 4).grid == classify(D, 4).grid


def test_nerve_needs_level_three():
    with pytest.raises(MalformedTable):
        duskin_nerve(build_ordinal(1), cap=2)


def test_nerve_of_invalid_bicategory():
    B = stock_two_groups()["(Z/2->1)"].copy_with(lunitor={"e": "(e,1)"})
    with pytest.raises(InvalidBicategory):
        duskin_nerve(B)


def test_sidecar_decodes_two_simplices():
    N = duskin_nerve(stock_two_groups()["(Z/2->1)"])
    side = N.sidecar()
    assert side["level2"]["(e,e,e,(e,1))"] == {"f12": "e", "f02": "e", "f01": "e", "beta": "(e,1)"}
    assert len(side["level3"]) == 8


# -- cocycle identity ----------------------------------------------------------


def corrupt_face(N: NerveTable) -> NerveTable:
    """Repoint one face of a 3-simplex to the other 2-simplex with the same boundary."""
    lv3 = N.level(3)
    x = lv3[0]
    fs = list(N.faces(3, x))
    twins = [y for y in N.level(2) if y != fs[0] and N.faces(2, y) == N.faces(2, fs[0])]
    fs[0] = twins[0]
    face = [{}] + [dict(N.face_table(n)) for n in range(1, 4)]
    face[3][x] = tuple(fs)
    deg = [dict(N.degeneracy_table(n)) for n in range(3)]
    M = NerveTable([N.level(n) for n in range(4)], face, deg, N.policy, N.name)
    M.bicategory, M.decode2, M.decode3 = N.bicategory, N.decode2, N.decode3
    return M


@pytest.mark.parametrize("name", sorted(stock_two_groups()))
def test_cocycle_holds(name):
    assert cocycle_check(duskin_nerve(stock_two_groups()[name]))


def test_cocycle_corruption_detected():
    N = duskin_nerve(stock_two_groups()["(Z/2->1)"])
    M = corrupt_face(N)
    rep = cocycle_check(M)
    assert not rep
    assert rep.witness["simplex"] == N.level(3)[0]


# -- functoriality -------------------------------------------------------------


def test_distinct_endomorphisms_of_bz3():
    homs = cached("homomorphisms")[("BZ/3", "BZ/3")]
    assert len(homs) == 3
    maps = [nerve_map(F) for F in homs]
    comps = {tuple(sorted(m.component(1).items())) for m in maps}
    assert len(comps) == 3


@pytest.mark.parametrize("pair", [("BZ/2", "BZ/3"), ("(Z/2->1)", "(Z/2->Z/2)"), ("i[1]", "i[2]")], ids=str)
def test_nerve_maps_simplicial(pair):
    for F in cached("homomorphisms")[pair]:
        assert validate_map(nerve_map(F))


def test_nerve_functorial_on_composites():
    H = cached("homomorphisms")
    for F in H[("BZ/2", "(Z/2->1)")]:
        for G in H[("(Z/2->1)", "(Z/2->Z/2)")]:
            lhs = nerve_map(G.compose_after(F))
            rhs = nerve_map(G).compose_after(nerve_map(F))
            assert lhs.same_as(rhs)


# -- coskeletality ------------------------------------------------------------


def test_coskeletality_profiles():
    T = stock_two_groups()
    rep = coskeletality_report(duskin_nerve(T["(Z/2->1)"], 4))
    status = {c.name: c.ok for c in rep.checks}
    assert status == {
        "delta_2 bijective": False,
        "delta_3 bijective": False,
        "delta_4 bijective": True,
        "horns exact in dimension 3": True,
        "horns exact in dimension 4": True,
    }
    assert all(c.ok for c in coskeletality_report(duskin_nerve(T["(Z/2->Z/2)"], 4)).checks)
