"""Named families of small examples used by the generators and the tests."""

from __future__ import annotations

from functools import lru_cache

from .action import BicatAction, FiberedAction, action_bicategory, self_action
from .bicategory import (
    bicategory_sum,
    build_ordinal,
    build_span,
    build_two_group,
    delooping,
    enumerate_strict_homomorphisms,
)
from .category import (
    FiniteMonoid,
    codiscrete_groupoid,
    cyclic_group,
    direct_product,
    discrete_category,
    disjoint_union,
    free_category_on_graph,
    monoid_category,
    multiplicative_monoid_01,
    poset_category,
    product_category,
    symmetric_group,
    translation_groupoid,
    trivial_group,
)
from .functors import coskeleton, truncate
from .nerve import classical_nerve
from .simplicial import AugmentedSimplexTable, constant_augmented, constant_complex, point_complex
from .torsor import TorsorCandidate, build_torsor, trivial_torsor

# ---------------------------------------------------------------------------
# categories


def _max_monoid() -> FiniteMonoid:
    els = ["0", "1", "2"]
    mul = {(a, b): max(a, b) for a in els for b in els}
    return FiniteMonoid(els, mul, "0", "max3")


def stock_categories() -> dict:
    """Non-groupoid categories with at most 4 objects and 20 morphisms."""
    out = {
        "[1]": poset_category(1),
        "[2]": poset_category(2),
        "[3]": poset_category(3),
        "B{0,1}": monoid_category(multiplicative_monoid_01()),
        "Bmax3": monoid_category(_max_monoid()),
        "span-shape": free_category_on_graph(["a", "b", "c"], {"u": ("c", "a"), "v": ("c", "b")}),
        "parallel": free_category_on_graph(["a", "b"], {"u": ("a", "b"), "v": ("a", "b")}),
        "square": product_category(poset_category(1), poset_category(1)),
        "[1]+[1]": disjoint_union(poset_category(1), poset_category(1)),
        "[1]xBZ2": product_category(poset_category(1), monoid_category(cyclic_group(2))),
        "path3": free_category_on_graph(["a", "b", "c", "d"], {"u": ("a", "b"), "v": ("b", "c"), "w": ("c", "d")}),
    }
    for k, C in out.items():
        C.name = k
    return out


def stock_groupoids() -> dict:
    """Non-discrete groupoids with at most 4 objects and 20 morphisms."""
    out = {
        "BZ/2": monoid_category(cyclic_group(2)),
        "BZ/3": monoid_category(cyclic_group(3)),
        "BS3": monoid_category(symmetric_group(3)),
        "codisc2": codiscrete_groupoid(["a", "b"]),
        "codisc3": codiscrete_groupoid(["a", "b", "c"]),
        "EZ/3": translation_groupoid(cyclic_group(3)),
        "BZ/2+codisc2": disjoint_union(monoid_category(cyclic_group(2)), codiscrete_groupoid(["a", "b"])),
        "BZ/2xcodisc2": product_category(monoid_category(cyclic_group(2)), codiscrete_groupoid(["a", "b"])),
    }
    for k, C in out.items():
        C.name = k
    return out


# ---------------------------------------------------------------------------
# aspherical complexes


def stock_aspherical(cap: int = 3) -> dict:
    """Aspherical simplicial sets (boundary maps onto kernels surjective)."""
    out = {
        "K({a,b},0)": constant_complex(["a", "b"], cap),
        "Delta[0]": point_complex(cap),
        "cosk0{a,b}": coskeleton(truncate(constant_complex(["a", "b"], 0), 0), 0, cap),
        "cosk0{a,b,c}": coskeleton(truncate(constant_complex(["a", "b", "c"], 0), 0), 0, cap),
        "N(EZ/2)": classical_nerve(translation_groupoid(cyclic_group(2)), cap),
        "N(EZ/3)": classical_nerve(translation_groupoid(cyclic_group(3)), cap),
        "N(codisc3)": classical_nerve(codiscrete_groupoid(["a", "b", "c"]), cap),
    }
    for k, X in out.items():
        X.name = k
    return out


def over_point(X) -> AugmentedSimplexTable:
    return AugmentedSimplexTable(X, ["*"], {x: "*" for x in X.level(0)})


def stock_augmented_aspherical(cap: int = 3) -> dict:
    """Augmented complexes that are aspherical including level 0."""
    out = {"K({a,b},0) -> {a,b}": constant_augmented(["a", "b"], cap)}
    for k, X in stock_aspherical(cap).items():
        if k.startswith("K("):
            continue
        out[f"{k} -> *"] = over_point(X)
    return out


# ---------------------------------------------------------------------------
# bicategories


def _z2_to_z3_trivial():
    H, G = cyclic_group(2), cyclic_group(3)
    return build_two_group(H, G, {h: G.unit for h in H.elements}, name="(Z/2->Z/3)")


def stock_two_groups() -> dict:
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    V = direct_product(Z2, Z2)
    onto = {a: a[0] for a in V.elements}
    out = {
        "(Z/2->1)": build_two_group(Z2, trivial_group(), {h: "e" for h in Z2.elements}),
        "(Z/3->1)": build_two_group(Z3, trivial_group(), {h: "e" for h in Z3.elements}),
        "(Z/2->Z/2)": build_two_group(Z2, Z2, {h: h for h in Z2.elements}, name="(Z/2->Z/2)"),
        "(Z/2xZ/2->Z/2)": build_two_group(V, Z2, onto, name="(Z/2xZ/2->Z/2)"),
        "(Z/2->Z/3)": _z2_to_z3_trivial(),
    }
    return out


def stock_deloopings(max_order: int = 6) -> dict:
    groups = [trivial_group()] + [cyclic_group(n) for n in range(2, max_order + 1)]
    groups.append(direct_product(cyclic_group(2), cyclic_group(2)))
    if max_order >= 6:
        groups.append(symmetric_group(3))
    return {f"B{G.name}": delooping(G) for G in groups}


def stock_spans() -> dict:
    return {
        "Span{a}": build_span(["a"]),
        "Span{a,b}": build_span(["a", "b"]),
        "Span{a,b,c}": build_span(["a", "b", "c"]),
        "Span{0,a}": build_span(["0", "a"], empty="0"),
        "Span{0,a,b}": build_span(["0", "a", "b"], empty="0"),
    }


def stock_bigroupoids() -> dict:
    """Bigroupoids with Duskin nerves small enough to classify up to level 4."""
    out = {}
    for k in ("BZ/2", "BZ/3"):
        out[k] = delooping(cyclic_group(int(k[-1])))
    out.update(stock_two_groups())
    out["Span{a}"] = build_span(["a"])
    out["Span{a,b}"] = build_span(["a", "b"])
    out["T(BZ/2)"] = action_bicategory(self_action(delooping(cyclic_group(2))))
    out["T(Z/2->1)"] = action_bicategory(self_action(out["(Z/2->1)"]))
    out["BZ/2+(Z/2->1)"] = bicategory_sum(delooping(cyclic_group(2)), out["(Z/2->1)"])
    return out


# ---------------------------------------------------------------------------
# actions and torsors


def non_principal_action() -> TorsorCandidate:
    """BZ/4 acting on the discrete category Z/4 by ``p◁f = p + 2f`` over a point."""
    B = delooping(cyclic_group(4))
    P = discrete_category([str(i) for i in range(4)])
    act0 = {(p, f): str((int(p) + 2 * int(f)) % 4) for p in P.objects for f in B.one_cells}
    act1 = {(P.identity[p], B.id2(f)): P.identity[act0[(p, f)]] for p in P.objects for f in B.one_cells}
    kappa = {(p, f, g): P.identity[str((int(p) + 2 * int(f) + 2 * int(g)) % 4)]
             for p in P.objects for f in B.one_cells for g in B.one_cells}
    iota = {p: P.identity[p] for p in P.objects}
    A = BicatAction(P, B, {p: "*" for p in P.objects}, act0, act1, kappa, iota, "Z/4 via 2")
    fib = FiberedAction(A, ("*",), {p: "*" for p in P.objects}, "non-principal")
    return TorsorCandidate(fib, "non-principal Z/4")


def lambda_missing_action() -> TorsorCandidate:
    """The non-principal action with B enlarged by a point nobody lies over."""
    base = non_principal_action().action
    B = bicategory_sum(base.B, delooping(trivial_group()), ("L", "R"))
    L = lambda c: "L" + c
    A = BicatAction(base.P, B, {p: L(x) for p, x in base.momentum.items()},
                    {(p, L(f)): r for (p, f), r in base.act0_table.items()},
                    {(a, L(phi)): r for (a, phi), r in base.act1_table.items()},
                    {(p, L(f), L(g)): r for (p, f, g), r in base.kappa_table.items()},
                    dict(base.iota_table), "Z/4 via 2, extra object")
    fib = FiberedAction(A, ("*",), {p: "*" for p in base.P.objects}, "lambda-missing")
    return TorsorCandidate(fib, "non-surjective momentum")


def stock_torsors() -> dict:
    """Genuine torsors: trivial ones and a pullback along a 2-point set."""
    BZ2 = delooping(cyclic_group(2))
    T2 = stock_two_groups()["(Z/2->1)"]
    out = {
        "triv BZ/2": trivial_torsor(BZ2),
        "triv BZ/3": trivial_torsor(delooping(cyclic_group(3))),
        "triv (Z/2->1)": trivial_torsor(T2),
        "pullback BZ/2 |M|=2": build_torsor("pullback", BZ2, f={"m0": "*", "m1": "*"}),
    }
    return out


def stock_actions() -> dict:
    """Actions of bigroupoids on groupoids, fibered: torsors and one non-principal."""
    out = dict(stock_torsors())
    out["triv (Z/2xZ/2->Z/2)"] = trivial_torsor(stock_two_groups()["(Z/2xZ/2->Z/2)"])
    out["non-principal"] = non_principal_action()
    return out


# ---------------------------------------------------------------------------
# homomorphisms


def stock_hom_bicategories() -> dict:
    Z2 = cyclic_group(2)
    return {
        "BZ/2": delooping(Z2),
        "BZ/3": delooping(cyclic_group(3)),
        "(Z/2->1)": stock_two_groups()["(Z/2->1)"],
        "(Z/2->Z/2)": stock_two_groups()["(Z/2->Z/2)"],
        "i[1]": build_ordinal(1),
        "i[2]": build_ordinal(2),
    }


def stock_homomorphisms() -> dict:
    """All strict homomorphisms between the pairs of stock bicategories, keyed by (S, T)."""
    Bs = stock_hom_bicategories()
    pairs = [
        ("BZ/2", "BZ/2"), ("BZ/2", "BZ/3"), ("BZ/3", "BZ/3"), ("BZ/3", "BZ/2"),
        ("BZ/2", "(Z/2->1)"), ("(Z/2->1)", "(Z/2->1)"), ("(Z/2->1)", "(Z/2->Z/2)"),
        ("(Z/2->Z/2)", "(Z/2->Z/2)"), ("(Z/2->Z/2)", "(Z/2->1)"), ("BZ/2", "(Z/2->Z/2)"),
        ("i[1]", "i[2]"), ("i[2]", "i[1]"), ("i[1]", "i[1]"), ("i[2]", "i[2]"),
    ]
    return {(s, t): enumerate_strict_homomorphisms(Bs[s], Bs[t]) for s, t in pairs}


@lru_cache(maxsize=None)
def cached(name: str):
    """Memoized family lookup for the test suite."""
    return {
        "categories": stock_categories,
        "groupoids": stock_groupoids,
        "aspherical": stock_aspherical,
        "augmented": stock_augmented_aspherical,
        "two_groups": stock_two_groups,
        "deloopings": stock_deloopings,
        "spans": stock_spans,
        "bigroupoids": stock_bigroupoids,
        "torsors": stock_torsors,
        "actions": stock_actions,
        "homomorphisms": stock_homomorphisms,
    }[name]()
