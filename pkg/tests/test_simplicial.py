import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nervekit.category import cyclic_group, monoid_category, poset_category
from nervekit.errors import DimensionOutOfRange, HornIndexOutOfRange, MalformedTable, TruncatedAboveCap
from nervekit.functors import truncate
from nervekit.nerve import classical_nerve
from nervekit.serialize import simplicial_from_dict, simplicial_to_dict
from nervekit.simplicial import (
    AugmentedSimplexTable,
    MonotoneMap,
    SimplexTable,
    all_monotone,
    apply_monotone,
    boundary_complex,
    classify,
    constant_complex,
    factorize_monotone,
    horn_complex,
    horn_set,
    is_aspherical,
    kan_status,
    simplicial_kernel,
    standard_simplex,
    validate_simplicial,
)

import oracles


def nz2(cap=3):
    return classical_nerve(monoid_category(cyclic_group(2)), cap)


# -- monotone maps ---------------------------------------------------------


def test_identity_factors_as_empty_word():
    w = factorize_monotone(MonotoneMap.identity(3))
    assert w.cofaces == () and w.codegeneracies == ()
    assert str(w) == "(;)"


def test_factorization_examples():
    assert str(factorize_monotone(MonotoneMap(2, 2, (0, 0, 2)))) == "(∂_1 ; σ_0)"
    assert str(factorize_monotone(MonotoneMap.codegeneracy(1, 0))) == "(; σ_0)"
    assert str(factorize_monotone(MonotoneMap.coface(2, 0))) == "(∂_0 ;)"


def test_all_monotone_matches_oracle():
    for m in range(4):
        for n in range(4):
            assert [f.values for f in all_monotone(m, n)] == oracles.monotone_maps(m, n)


def test_non_monotone_rejected():
    with pytest.raises(MalformedTable):
        MonotoneMap(1, 1, (1, 0))
    with pytest.raises(MalformedTable):
        MonotoneMap(1, 1, (0, 2))


@st.composite
def monotone(draw, max_dim=5):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return MonotoneMap(m, n, tuple(vals))


@given(monotone())
@settings(max_examples=200, deadline=None)
def test_factorization_composes_back(f):
    w = factorize_monotone(f)
    assert w.compose() == f
    assert list(w.cofaces) == sorted(w.cofaces, reverse=True)
    assert list(w.codegeneracies) == sorted(set(w.codegeneracies))


@given(monotone(max_dim=3))
@settings(max_examples=100, deadline=None)
def test_factorization_is_unique(f):
    # the normal form is the only word with decreasing cofaces and increasing codegeneracies
    w = factorize_monotone(f)
    s = len(w.cofaces)
    t = len(w.codegeneracies)
    assert f.source - t + s == f.target


@given(monotone(max_dim=3))
@settings(max_examples=100, deadline=None)
def test_apply_monotone_on_standard_simplex(f):
    X = standard_simplex(f.target, max(f.source, f.target))
    top = "".join(str(v) for v in range(f.target + 1))
    assert apply_monotone(X, f, top) == "".join(str(v) for v in f.values)


# -- tables ------------------------------------------------------------------


def test_partial_face_table_rejected():
    with pytest.raises(MalformedTable):
        SimplexTable([["a"], ["f"]], [{}], [{"a": ["f"]}])


def test_wrong_arity_rejected():
    with pytest.raises(MalformedTable):
        SimplexTable([["a"], ["f"]], [{"f": ["a"]}], [{"a": ["f"]}])


def test_dangling_face_rejected():
    with pytest.raises(MalformedTable):
        SimplexTable([["a"], ["f"]], [{"f": ["a", "b"]}], [{"a": ["f"]}])


def test_stock_tables_validate():
    for X in (nz2(), standard_simplex(2, 3), horn_complex(2, 1), boundary_complex(2), constant_complex("ab", 3)):
        assert validate_simplicial(X), X.name


def test_corrupted_face_names_identity():
    d = simplicial_to_dict(nz2())
    d["face"][2]["(0,0,0)"][0] = "(0,1)"
    X = simplicial_from_dict(d)
    rep = validate_simplicial(X)
    assert not rep
    assert rep.axiom.startswith("d_i d_j")
    w = rep.witness
    assert w["x"] == "(0,0,0)" and w["lhs"] != w["rhs"]


def test_lazy_level_from_policy():
    X = nz2(2)
    assert X.sizes(4) == (1, 2, 4, 8, 16)
    with pytest.raises(TruncatedAboveCap):
        truncate(X, 2).level(3)


def test_lazy_levels_thread_safe():
    X = nz2(2)
    out = []

    def work():
        out.append(X.level(5))

    ts = [threading.Thread(target=work) for _ in range(8)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert len({id(v) for v in out}) == 1
    assert len(out[0]) == 32


# -- kernels and horns -------------------------------------------------------


def test_kernel_and_horn_sizes_of_truncated_nerve():
    X = truncate(nz2(), 1)
    assert len(simplicial_kernel(X, 2)) == 8
    assert len(horn_set(X, 2, 1)) == 4


@pytest.mark.parametrize("name", ["nz2", "simplex", "horn", "boundary", "codisc"])
def test_kernels_match_oracle(name):
    from nervekit.category import codiscrete_groupoid

    X = {
        "nz2": nz2(),
        "simplex": standard_simplex(2, 3),
        "horn": horn_complex(2, 0, 3),
        "boundary": boundary_complex(2, 3),
        "codisc": classical_nerve(codiscrete_groupoid("ab"), 3),
    }[name]
    for n in range(1, 4):
        assert sorted(simplicial_kernel(X, n).tuples) == oracles.kernel(X, n)
        for k in range(n + 1):
            assert sorted(horn_set(X, n, k).tuples) == oracles.kernel(X, n, skip=k)


def test_horn_index_errors():
    X = nz2()
    with pytest.raises(HornIndexOutOfRange):
        kan_status(X, 2, 3)
    with pytest.raises(DimensionOutOfRange):
        kan_status(X, 0, 0)


# -- Kan conditions ------------------------------------------------------------


def test_delta1_outer_horn_fails():
    X = standard_simplex(1, 3)
    st_ = kan_status(X, 2, 0)
    assert st_.kind == "NotSatisfied"
    filled = {X.faces(2, x)[1:] for x in X.level(2)}
    assert st_.witness == min(h for h in oracles.kernel(X, 2, skip=0) if h not in filled)
    assert kan_status(X, 2, 1).exact


def test_group_nerve_is_one_hypergroupoid():
    c = classify(nz2(), 4)
    assert (c.label, c.n) == ("nHypergroupoid", 1)
    assert c.describe() == "1-dimensional Kan hypergroupoid"


def test_delta1_description():
    c = classify(standard_simplex(1, 3), 4)
    assert c.label == "WeakKanExact"
    assert c.describe() == "weak Kan, exact inner horns; not Kan (witness n=2,k=0)"


def test_horn_complex_is_weak_kan_but_boundary_is_not():
    assert classify(horn_complex(2, 0, 2), 2).weak_kan
    X = boundary_complex(2, 2)
    c = classify(X, 2)
    assert c.grid[(2, 1)].witness == ("12", "01")
    assert not c.weak_kan
    assert c.label == "None"


@pytest.mark.parametrize("X", [nz2(), standard_simplex(2, 3), constant_complex("ab", 3),
                               classical_nerve(poset_category(2), 3)], ids=lambda X: X.name)
def test_classify_grid_matches_oracle(X):
    c = classify(X, 4)
    g = oracles.kan_grid(X, 4)
    for (n, k), (lo, hi) in g.items():
        st_ = c.grid[(n, k)]
        assert st_.satisfied == (lo >= 1)
        assert st_.exact == (lo == hi == 1)
    assert (c.label, c.n) == oracles.label(X, 4)


def test_bound_below_cap_rejected():
    with pytest.raises(DimensionOutOfRange):
        classify(nz2(), 2)


def test_truncated_classify_above_cap_rejected():
    with pytest.raises(TruncatedAboveCap):
        classify(truncate(nz2(), 2), 3)


# -- asphericity -------------------------------------------------------------


def test_group_nerve_is_not_aspherical():
    X = nz2()
    assert is_aspherical(X, 1)
    res = is_aspherical(X, 2)
    assert not res
    assert oracles.aspherical(X, 2) is False


def test_truncated_aspherical_above_cap_counts_empty():
    X = truncate(nz2(), 1)
    res = is_aspherical(X, 2)
    assert not res
    assert res.witness in oracles.kernel(X, 2)


def test_augmented_level_zero():
    X = constant_complex("ab", 3)
    A = AugmentedSimplexTable(X, ["a", "b", "c"], {"a": "a", "b": "b"})
    res = is_aspherical(A, 0)
    assert not res and res.witness == ("c",)


def test_augmentation_must_be_total():
    X = constant_complex("ab", 2)
    with pytest.raises(MalformedTable):
        AugmentedSimplexTable(X, ["a"], {"a": "a"})
