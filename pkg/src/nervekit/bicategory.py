"""Finite bicategories: tables, coherence validation and stock generators.

Conventions:

* ``vcomp(ψ, φ)`` is ψ after φ and needs ``t1(φ) = s1(ψ)``.
* ``hcomp1(g, f)`` is g∘f and needs ``s0(g) = t0(f)``; likewise
  ``hcomp2(β, α)``.
* ``assoc(h, g, f) : (h∘g)∘f ⇒ h∘(g∘f)``, ``lunitor(f) : i_y∘f ⇒ f`` and
  ``runitor(f) : f∘i_x ⇒ f``.
* Whiskering is horizontal composition with an identity 2-cell.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

from .category import FiniteCategory, FiniteGroup, FiniteMonoid, monoid_category, poset_category
from .errors import (
    InvalidBicategory,
    MalformedTable,
    NotAHomomorphism,
    NotComposable,
    NotCrossedModule,
    VerificationReport,
)
from .simplicial import tuple_id


class FiniteBicategory:
    def __init__(
        self,
        objects: Iterable[str],
        one_cells: Mapping[str, tuple],
        two_cells: Mapping[str, tuple],
        id1: Mapping[str, str],
        id2: Mapping[str, str],
        vcomp: Mapping[tuple, str],
        hcomp1: Mapping[tuple, str],
        hcomp2: Mapping[tuple, str],
        assoc: Mapping[tuple, str],
        lunitor: Mapping[str, str],
        runitor: Mapping[str, str],
        name: str = "",
    ):
        self.objects = tuple(sorted(objects))
        self.one_cells = {k: tuple(v) for k, v in sorted(one_cells.items())}
        self.two_cells = {k: tuple(v) for k, v in sorted(two_cells.items())}
        self.id1_table = dict(id1)
        self.id2_table = dict(id2)
        self.vcomp_table = dict(vcomp)
        self.hcomp1_table = dict(hcomp1)
        self.hcomp2_table = dict(hcomp2)
        self.assoc_table = dict(assoc)
        self.lunitor_table = dict(lunitor)
        self.runitor_table = dict(runitor)
        self.name = name
        self._check_ids()
        self._hom: dict = {}
        for f, (s, t) in self.one_cells.items():
            self._hom.setdefault((s, t), []).append(f)
        self._cells: dict = {}
        for a, (s, t) in self.two_cells.items():
            self._cells.setdefault((s, t), []).append(a)
        self._out1: dict = {}
        for f, (s, _t) in self.one_cells.items():
            self._out1.setdefault(s, []).append(f)
        self._in1: dict = {}
        for f, (_s, t) in self.one_cells.items():
            self._in1.setdefault(t, []).append(f)
        self._out2: dict = {}
        for a, (s, _t) in self.two_cells.items():
            self._out2.setdefault(s, []).append(a)

    def _check_ids(self) -> None:
        obs, c1, c2 = set(self.objects), self.one_cells, self.two_cells
        for f, (s, t) in c1.items():
            if s not in obs or t not in obs:
                raise MalformedTable(f"1-cell {f} has undeclared endpoint")
        for a, (s, t) in c2.items():
            if s not in c1 or t not in c1:
                raise MalformedTable(f"2-cell {a} has undeclared boundary")
        for tab, dom, cod, what in (
            (self.id1_table, obs, c1, "id1"),
            (self.id2_table, c1, c2, "id2"),
            (self.lunitor_table, c1, c2, "lunitor"),
            (self.runitor_table, c1, c2, "runitor"),
        ):
            for k, v in tab.items():
                if k not in dom or v not in cod:
                    raise MalformedTable(f"{what} entry {k} -> {v} names an undeclared id")
        for tab, dom, cod, what in (
            (self.vcomp_table, c2, c2, "vcomp"),
            (self.hcomp1_table, c1, c1, "hcomp1"),
            (self.hcomp2_table, c2, c2, "hcomp2"),
            (self.assoc_table, c1, c2, "assoc"),
        ):
            for k, v in tab.items():
                if any(x not in dom for x in k) or v not in cod:
                    raise MalformedTable(f"{what} entry {k} -> {v} names an undeclared id")

    # -- structure -------------------------------------------------------

    def s0(self, f: str) -> str:
        return self.one_cells[f][0]

    def t0(self, f: str) -> str:
        return self.one_cells[f][1]

    def s1(self, a: str) -> str:
        return self.two_cells[a][0]

    def t1(self, a: str) -> str:
        return self.two_cells[a][1]

    def id1(self, x: str) -> str:
        return self.id1_table[x]

    def id2(self, f: str) -> str:
        return self.id2_table[f]

    def hom(self, x: str, y: str) -> list:
        return self._hom.get((x, y), [])

    def cells(self, f: str, g: str) -> list:
        return self._cells.get((f, g), [])

    def cells_from(self, f: str) -> list:
        return self._out2.get(f, [])

    def vcomp(self, psi: str, phi: str) -> str:
        try:
            return self.vcomp_table[(psi, phi)]
        except KeyError:
            raise NotComposable(f"vcomp({psi}, {phi}) undefined")

    def hcomp1(self, g: str, f: str) -> str:
        try:
            return self.hcomp1_table[(g, f)]
        except KeyError:
            raise NotComposable(f"hcomp1({g}, {f}) undefined")

    def hcomp2(self, b: str, a: str) -> str:
        try:
            return self.hcomp2_table[(b, a)]
        except KeyError:
            raise NotComposable(f"hcomp2({b}, {a}) undefined")

    def assoc(self, h: str, g: str, f: str) -> str:
        return self.assoc_table[(h, g, f)]

    def lunitor(self, f: str) -> str:
        return self.lunitor_table[f]

    def runitor(self, f: str) -> str:
        return self.runitor_table[f]

    def whisker_left(self, f: str, b: str) -> str:
        """``f ∘ β``: f applied after the 2-cell β."""
        return self.hcomp2(self.id2(f), b)

    def whisker_right(self, b: str, f: str) -> str:
        """``β ∘ f``: the 2-cell β precomposed with the 1-cell f."""
        return self.hcomp2(b, self.id2(f))

    def vinverse(self, a: str) -> str | None:
        s, t = self.two_cells[a]
        ia, it = self.id2_table.get(s), self.id2_table.get(t)
        for b in self.cells(t, s):
            if self.vcomp_table.get((b, a)) == ia and self.vcomp_table.get((a, b)) == it:
                return b
        return None

    def composable_1(self):
        for f in self.one_cells:
            for g in self._from(self.t0(f)):
                yield g, f

    def _from(self, x: str) -> list:
        """1-cells with source ``x``."""
        return self._out1.get(x, [])

    def hom_into(self, y: str) -> list:
        """1-cells with target ``y``."""
        return self._in1.get(y, [])

    def composable_triples(self):
        for g, f in self.composable_1():
            for h in self._from(self.t0(g)):
                yield h, g, f

    def composable_2(self):
        for a in self.two_cells:
            x = self.t0(self.s1(a))
            for b in self.two_cells:
                if self.s0(self.s1(b)) == x:
                    yield b, a

    def __repr__(self) -> str:
        return (f"FiniteBicategory({self.name}, {len(self.objects)} objects, "
                f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)")

    def copy_with(self, **tables) -> "FiniteBicategory":
        """A copy with some tables overridden (used to build corrupted instances)."""
        args = dict(
            objects=self.objects, one_cells=self.one_cells, two_cells=self.two_cells,
            id1=self.id1_table, id2=self.id2_table, vcomp=self.vcomp_table,
            hcomp1=self.hcomp1_table, hcomp2=self.hcomp2_table, assoc=self.assoc_table,
            lunitor=self.lunitor_table, runitor=self.runitor_table, name=self.name,
        )
        for k, v in tables.items():
            base = dict(args[k])
            base.update(v)
            args[k] = base
        return FiniteBicategory(**args)


# ---------------------------------------------------------------------------
# validation


def _require_total(B: FiniteBicategory) -> None:
    for x in B.objects:
        if x not in B.id1_table:
            raise MalformedTable(f"id1 is partial: missing {x}")
    for f in B.one_cells:
        for tab, what in ((B.id2_table, "id2"), (B.lunitor_table, "lunitor"), (B.runitor_table, "runitor")):
            if f not in tab:
                raise MalformedTable(f"{what} is partial: missing {f}")
    for g, f in B.composable_1():
        if (g, f) not in B.hcomp1_table:
            raise MalformedTable(f"hcomp1 is partial: missing ({g}, {f})")
    for h, g, f in B.composable_triples():
        if (h, g, f) not in B.assoc_table:
            raise MalformedTable(f"assoc is partial: missing ({h}, {g}, {f})")
    for b, a in B.composable_2():
        if (b, a) not in B.hcomp2_table:
            raise MalformedTable(f"hcomp2 is partial: missing ({b}, {a})")
    for a, (s, t) in B.two_cells.items():
        for b in B.cells_from(t):
            if (b, a) not in B.vcomp_table:
                raise MalformedTable(f"vcomp is partial: missing ({b}, {a})")


def _first(gen):
    for w in gen:
        return w
    return None


def validate_bicategory(B: FiniteBicategory) -> VerificationReport:
    """Check every axiom family; the first failed check names the axiom.

    Families in order: globularity, hom_category, hcomp_typing,
    hcomp_functoriality, interchange, associator_invertible,
    unitors_invertible, naturality, pentagon, triangle.
    """
    _require_total(B)
    rep = VerificationReport(f"bicategory {B.name}".strip())

    def globularity():
        for x in B.objects:
            if B.one_cells[B.id1(x)] != (x, x):
                yield ("id1", x)
        for f, (s, t) in B.one_cells.items():
            if B.two_cells[B.id2(f)] != (f, f):
                yield ("id2", f)
        for a, (s, t) in B.two_cells.items():
            if B.one_cells[s] != B.one_cells[t]:
                yield ("2-cell", a)

    def hom_category():
        for a, (s, t) in B.two_cells.items():
            for b in B.cells_from(t):
                r = B.vcomp(b, a)
                if B.two_cells[r] != (s, B.t1(b)):
                    yield ("vcomp typing", b, a)
            if B.vcomp(B.id2(t), a) != a or B.vcomp(a, B.id2(s)) != a:
                yield ("unit", a)
        for a, (s, t) in B.two_cells.items():
            for b in B.cells_from(t):
                for c in B.cells_from(B.t1(b)):
                    if B.vcomp(c, B.vcomp(b, a)) != B.vcomp(B.vcomp(c, b), a):
                        yield ("associativity", c, b, a)

    def hcomp_typing():
        for g, f in B.composable_1():
            r = B.hcomp1(g, f)
            if B.one_cells[r] != (B.s0(f), B.t0(g)):
                yield ("hcomp1", g, f)
        for b, a in B.composable_2():
            r = B.hcomp2(b, a)
            if B.two_cells[r] != (B.hcomp1(B.s1(b), B.s1(a)), B.hcomp1(B.t1(b), B.t1(a))):
                yield ("hcomp2", b, a)

    def hcomp_functoriality():
        for g, f in B.composable_1():
            if B.hcomp2(B.id2(g), B.id2(f)) != B.id2(B.hcomp1(g, f)):
                yield (g, f)

    def interchange():
        for psi1, phi1 in B.composable_2():
            for psi2 in B.cells_from(B.t1(psi1)):
                for phi2 in B.cells_from(B.t1(phi1)):
                    lhs = B.hcomp2(B.vcomp(psi2, psi1), B.vcomp(phi2, phi1))
                    rhs = B.vcomp(B.hcomp2(psi2, phi2), B.hcomp2(psi1, phi1))
                    if lhs != rhs:
                        yield (psi2, psi1, phi2, phi1)

    def associator_invertible():
        for h, g, f in B.composable_triples():
            a = B.assoc(h, g, f)
            want = (B.hcomp1(B.hcomp1(h, g), f), B.hcomp1(h, B.hcomp1(g, f)))
            if B.two_cells[a] != want or B.vinverse(a) is None:
                yield (h, g, f)

    def unitors_invertible():
        for f, (x, y) in B.one_cells.items():
            lam, rho = B.lunitor(f), B.runitor(f)
            if B.two_cells[lam] != (B.hcomp1(B.id1(y), f), f) or B.vinverse(lam) is None:
                yield ("lunitor", f)
            if B.two_cells[rho] != (B.hcomp1(f, B.id1(x)), f) or B.vinverse(rho) is None:
                yield ("runitor", f)

    def naturality():
        # α natural in all three variables at once
        for chi, phi in B.composable_2():
            for psi in B.two_cells:
                if B.s0(B.s1(psi)) != B.t0(B.s1(chi)):
                    continue
                h, g, f = B.s1(psi), B.s1(chi), B.s1(phi)
                h2, g2, f2 = B.t1(psi), B.t1(chi), B.t1(phi)
                lhs = B.vcomp(B.assoc(h2, g2, f2), B.hcomp2(B.hcomp2(psi, chi), phi))
                rhs = B.vcomp(B.hcomp2(psi, B.hcomp2(chi, phi)), B.assoc(h, g, f))
                if lhs != rhs:
                    yield ("assoc", psi, chi, phi)
        for a, (f, f2) in B.two_cells.items():
            x, y = B.one_cells[f]
            lhs = B.vcomp(B.lunitor(f2), B.hcomp2(B.id2(B.id1(y)), a))
            if lhs != B.vcomp(a, B.lunitor(f)):
                yield ("lunitor", a)
            lhs = B.vcomp(B.runitor(f2), B.hcomp2(a, B.id2(B.id1(x))))
            if lhs != B.vcomp(a, B.runitor(f)):
                yield ("runitor", a)

    def pentagon():
        for h, g, f in B.composable_triples():
            for k in B._from(B.t0(h)):
                lhs = B.vcomp(
                    B.whisker_left(k, B.assoc(h, g, f)),
                    B.vcomp(B.assoc(k, B.hcomp1(h, g), f), B.whisker_right(B.assoc(k, h, g), f)),
                )
                rhs = B.vcomp(B.assoc(k, h, B.hcomp1(g, f)), B.assoc(B.hcomp1(k, h), g, f))
                if lhs != rhs:
                    yield (k, h, g, f)

    def triangle():
        for g, f in B.composable_1():
            y = B.t0(f)
            lhs = B.vcomp(B.whisker_left(g, B.lunitor(f)), B.assoc(g, B.id1(y), f))
            rhs = B.whisker_right(B.runitor(g), f)
            if lhs != rhs:
                yield (g, f)

    steps = [
        ("globularity", globularity),
        ("hom_category", hom_category),
        ("hcomp_typing", hcomp_typing),
        ("hcomp_functoriality", hcomp_functoriality),
        ("interchange", interchange),
        ("associator_invertible", associator_invertible),
        ("unitors_invertible", unitors_invertible),
        ("naturality", naturality),
        ("pentagon", pentagon),
        ("triangle", triangle),
    ]
    for name, gen in steps:
        w = _first(gen())
        rep.add(name, w is None, w)
        if w is not None and name in ("globularity", "hom_category", "hcomp_typing"):
            # later families presuppose well-typed tables
            rep.notes.append(f"stopped after {name}")
            break
    return rep


def require_valid(B: FiniteBicategory) -> None:
    rep = validate_bicategory(B)
    if not rep.ok:
        raise InvalidBicategory(f"{B.name}: {rep.axiom} fails at {rep.witness}")


def is_bigroupoid(B: FiniteBicategory):
    """``(ok, witness)``: every 2-cell invertible and every 1-cell an equivalence."""
    rep = validate_bicategory(B)
    if not rep.ok:
        raise InvalidBicategory(f"{B.name}: {rep.axiom} fails at {rep.witness}")
    for a in B.two_cells:
        if B.vinverse(a) is None:
            return False, ("2-cell", a)
    for f, (x, y) in B.one_cells.items():
        found = False
        for g in B.hom(y, x):
            gf = [a for a in B.cells(B.hcomp1(g, f), B.id1(x)) if B.vinverse(a) is not None]
            fg = [a for a in B.cells(B.hcomp1(f, g), B.id1(y)) if B.vinverse(a) is not None]
            if gf and fg:
                found = True
                break
        if not found:
            return False, ("1-cell", f)
    return True, None


def compose_cells(B: FiniteBicategory, kind: str, *cells: str) -> str:
    """Table lookup for ``vertical``, ``horizontal``, ``whisker_left``, ``whisker_right``."""
    if kind == "vertical":
        psi, phi = cells
        if B.t1(phi) != B.s1(psi):
            raise NotComposable(f"{psi} cannot follow {phi} vertically")
        return B.vcomp(psi, phi)
    if kind == "horizontal":
        b, a = cells
        if B.s0(B.s1(b)) != B.t0(B.s1(a)):
            raise NotComposable(f"{b} and {a} are not horizontally composable")
        return B.hcomp2(b, a)
    if kind == "whisker_left":
        f, b = cells
        if B.s0(f) != B.t0(B.s1(b)):
            raise NotComposable(f"cannot whisker {b} by {f} on the left")
        return B.whisker_left(f, b)
    if kind == "whisker_right":
        b, f = cells
        if B.s0(B.s1(b)) != B.t0(f):
            raise NotComposable(f"cannot whisker {b} by {f} on the right")
        return B.whisker_right(b, f)
    raise NotComposable(f"unknown composition kind {kind!r}")


# ---------------------------------------------------------------------------
# generators


def identity_cell_id(f: str) -> str:
    return f"1[{f}]"


def locally_discrete(C: FiniteCategory, name: str | None = None) -> FiniteBicategory:
    """A category viewed as a bicategory with identity 2-cells only."""
    two = {identity_cell_id(f): (f, f) for f in C.morphisms}
    id2 = {f: identity_cell_id(f) for f in C.morphisms}
    vcomp = {(identity_cell_id(f), identity_cell_id(f)): identity_cell_id(f) for f in C.morphisms}
    hcomp1 = {(g, f): C.comp(g, f) for g, f in C.composable_pairs()}
    hcomp2 = {(identity_cell_id(g), identity_cell_id(f)): identity_cell_id(C.comp(g, f))
              for g, f in C.composable_pairs()}
    assoc = {}
    for g, f in C.composable_pairs():
        for h in C.morphisms:
            if C.src(h) == C.tgt(g):
                assoc[(h, g, f)] = identity_cell_id(C.comp(h, C.comp(g, f)))
    lun = {f: identity_cell_id(f) for f in C.morphisms}
    return FiniteBicategory(C.objects, C.morphisms, two, C.identity, id2, vcomp, hcomp1, hcomp2,
                            assoc, lun, dict(lun), name or C.name)


def delooping(M: FiniteMonoid) -> FiniteBicategory:
    """One object, 1-cells the elements, identity 2-cells."""
    return locally_discrete(monoid_category(M), f"B{M.name}")


def build_ordinal(n: int) -> FiniteBicategory:
    """``i[n]``: the poset ``[n]`` as a locally discrete 2-category."""
    return locally_discrete(poset_category(n), f"i[{n}]")


def terminal_bicategory() -> FiniteBicategory:
    return build_ordinal(0)


def check_crossed_module(H: FiniteGroup, G: FiniteGroup, t: Mapping[str, str], act) -> None:
    """Raise NotCrossedModule naming the first failing axiom."""
    for a, b in product(H.elements, repeat=2):
        if t[H.mul(a, b)] != G.mul(t[a], t[b]):
            raise NotCrossedModule(f"t is not a homomorphism at ({a}, {b})")
    for g in G.elements:
        for a, b in product(H.elements, repeat=2):
            if act(g, H.mul(a, b)) != H.mul(act(g, a), act(g, b)):
                raise NotCrossedModule(f"action of {g} is not an automorphism at ({a}, {b})")
    for g, g2 in product(G.elements, repeat=2):
        for a in H.elements:
            if act(G.mul(g, g2), a) != act(g, act(g2, a)):
                raise NotCrossedModule(f"action is not a group action at ({g}, {g2}, {a})")
    for a in H.elements:
        if act(G.unit, a) != a:
            raise NotCrossedModule(f"unit acts nontrivially on {a}")
    for g in G.elements:
        for a in H.elements:
            if t[act(g, a)] != G.mul(G.mul(g, t[a]), G.inverse(g)):
                raise NotCrossedModule(f"t is not equivariant at ({g}, {a})")
    for a, b in product(H.elements, repeat=2):
        if act(t[a], b) != H.mul(H.mul(a, b), H.inverse(a)):
            raise NotCrossedModule(f"Peiffer identity fails at ({a}, {b})")


def build_two_group(H: FiniteGroup, G: FiniteGroup, t: Mapping[str, str], act=None,
                    name: str = "") -> FiniteBicategory:
    """The 2-group of a crossed module ``t : H -> G`` with ``G`` acting on ``H``.

    2-cells are pairs ``(g, h) : g ⇒ t(h)g``. Composition is strict and
    α, λ, ρ are identities.
    """
    if act is None:
        act = lambda g, h: h
    elif isinstance(act, Mapping):
        table = dict(act)
        act = lambda g, h: table[(g, h)]
    check_crossed_module(H, G, t, act)
    obj = "*"
    ones = {g: (obj, obj) for g in G.elements}
    cid = lambda g, h: tuple_id((g, h))
    two, id2 = {}, {}
    for g in G.elements:
        for h in H.elements:
            two[cid(g, h)] = (g, G.mul(t[h], g))
        id2[g] = cid(g, H.unit)
    vcomp = {}
    for g in G.elements:
        for h in H.elements:
            g2 = G.mul(t[h], g)
            for h2 in H.elements:
                vcomp[(cid(g2, h2), cid(g, h))] = cid(g, H.mul(h2, h))
    hcomp1 = {(g2, g): G.mul(g2, g) for g2 in G.elements for g in G.elements}
    hcomp2 = {}
    for g, h, g2, h2 in product(G.elements, H.elements, G.elements, H.elements):
        hcomp2[(cid(g2, h2), cid(g, h))] = cid(G.mul(g2, g), H.mul(h2, act(g2, h)))
    assoc = {(k, j, i): id2[G.mul(k, G.mul(j, i))] for k, j, i in product(G.elements, repeat=3)}
    lun = {g: id2[g] for g in G.elements}
    B = FiniteBicategory([obj], ones, two, {obj: G.unit}, id2, vcomp, hcomp1, hcomp2, assoc, lun,
                         dict(lun), name or f"({H.name}->{G.name})")
    B.crossed_module = (H, G, dict(t), act)
    return B


def build_span(universe: Iterable[str], empty: str | None = None, name: str = "") -> FiniteBicategory:
    """``Span(C)`` for C the finite sets of size at most 1 named in ``universe``.

    ``empty`` names the empty set if it is part of the universe. A span
    ``x ← s → y`` exists iff maps ``s -> x`` and ``s -> y`` exist, i.e.
    ``s`` is empty or ``x, y`` are nonempty, and it is unique then. The
    chosen pullback of two nonempty apexes ``s_i, s_j`` is the singleton
    with index ``(i - j) mod m``; it is not associative on the nose once
    ``m >= 3``, which exercises a genuine associator.
    """
    objs = sorted(universe)
    singles = [x for x in objs if x != empty]
    m = len(singles)

    def maps(a, b):
        return a == empty or b != empty

    def pullback(s, s2):
        if s == empty or s2 == empty:
            return empty
        return singles[(singles.index(s) - singles.index(s2)) % m]

    spans = {}
    for x in objs:
        for y in objs:
            for s in objs:
                if maps(s, x) and maps(s, y):
                    spans[tuple_id((x, s, y))] = (x, s, y)
    ones = {f: (x, y) for f, (x, s, y) in spans.items()}
    two, cell = {}, {}
    for f, (x, s, y) in spans.items():
        for g, (x2, s2, y2) in spans.items():
            if (x, y) == (x2, y2) and maps(s, s2):
                c = tuple_id((f, g))
                two[c] = (f, g)
                cell[(f, g)] = c
    id1 = {x: tuple_id((x, x, x)) for x in objs}
    id2 = {f: cell[(f, f)] for f in spans}
    vcomp = {}
    for (f, g), c in cell.items():
        for (g2, h), c2 in cell.items():
            if g2 == g:
                vcomp[(c2, c)] = cell[(f, h)]
    hcomp1 = {}
    for f, (x, s, y) in spans.items():
        for g, (y2, s2, z) in spans.items():
            if y2 == y:
                # g∘f has apex the chosen pullback of s2 and s over y
                hcomp1[(g, f)] = tuple_id((x, pullback(s2, s), z))
    hcomp2 = {}
    for (f, f2), a in cell.items():
        for (g, g2), b in cell.items():
            if spans[g][0] == spans[f][2]:
                hcomp2[(b, a)] = cell[(hcomp1[(g, f)], hcomp1[(g2, f2)])]
    assoc = {}
    for (g, f) in hcomp1:
        for h, (y, _s, _z) in spans.items():
            if y == spans[g][2]:
                assoc[(h, g, f)] = cell[(hcomp1[(hcomp1[(h, g)], f)], hcomp1[(h, hcomp1[(g, f)])])]
    lun = {f: cell[(hcomp1[(id1[y], f)], f)] for f, (x, s, y) in spans.items()}
    run = {f: cell[(hcomp1[(f, id1[x])], f)] for f, (x, s, y) in spans.items()}
    return FiniteBicategory(objs, ones, two, id1, id2, vcomp, hcomp1, hcomp2, assoc, lun, run,
                            name or f"Span{{{','.join(objs)}}}")


def bicategory_sum(B: FiniteBicategory, C: FiniteBicategory, tags=("L", "R")) -> FiniteBicategory:
    """Disjoint union, ids prefixed by the tags."""
    a, b = tags

    def pre(t, tab, keyed_tuple):
        if keyed_tuple:
            return {tuple(t + x for x in k): t + v for k, v in tab.items()}
        return {t + k: t + v for k, v in tab.items()}

    def both(attr, keyed_tuple=False):
        out = pre(a, getattr(B, attr), keyed_tuple)
        out.update(pre(b, getattr(C, attr), keyed_tuple))
        return out

    objs = [a + x for x in B.objects] + [b + x for x in C.objects]
    ones = {a + f: (a + s, a + t) for f, (s, t) in B.one_cells.items()}
    ones.update({b + f: (b + s, b + t) for f, (s, t) in C.one_cells.items()})
    two = {a + c: (a + s, a + t) for c, (s, t) in B.two_cells.items()}
    two.update({b + c: (b + s, b + t) for c, (s, t) in C.two_cells.items()})
    return FiniteBicategory(
        objs, ones, two, both("id1_table"), both("id2_table"), both("vcomp_table", True),
        both("hcomp1_table", True), both("hcomp2_table", True), both("assoc_table", True),
        both("lunitor_table"), both("runitor_table"), f"{B.name}+{C.name}",
    )


# ---------------------------------------------------------------------------
# strict homomorphisms


class StrictHomomorphism:
    def __init__(self, source: FiniteBicategory, target: FiniteBicategory, F0: Mapping[str, str],
                 F1: Mapping[str, str], F2: Mapping[str, str], name: str = ""):
        self.source = source
        self.target = target
        self.F0 = dict(F0)
        self.F1 = dict(F1)
        self.F2 = dict(F2)
        self.name = name

    def compose_after(self, other: "StrictHomomorphism") -> "StrictHomomorphism":
        """``self ∘ other``."""
        return StrictHomomorphism(
            other.source, self.target,
            {x: self.F0[y] for x, y in other.F0.items()},
            {x: self.F1[y] for x, y in other.F1.items()},
            {x: self.F2[y] for x, y in other.F2.items()},
        )

    def key(self) -> tuple:
        return (tuple(sorted(self.F0.items())), tuple(sorted(self.F1.items())), tuple(sorted(self.F2.items())))


def identity_homomorphism(B: FiniteBicategory) -> StrictHomomorphism:
    return StrictHomomorphism(B, B, {x: x for x in B.objects}, {f: f for f in B.one_cells},
                              {a: a for a in B.two_cells}, "id")


def validate_homomorphism(F: StrictHomomorphism) -> VerificationReport:
    """Strict preservation of every structure map, on the nose."""
    S, T = F.source, F.target
    rep = VerificationReport(f"strict homomorphism {F.name}".strip())

    def totality():
        for x in S.objects:
            if F.F0.get(x) not in T.objects:
                yield ("F0", x)
        for f in S.one_cells:
            if F.F1.get(f) not in T.one_cells:
                yield ("F1", f)
        for a in S.two_cells:
            if F.F2.get(a) not in T.two_cells:
                yield ("F2", a)

    w = _first(totality())
    rep.add("total", w is None, w)
    if w is not None:
        return rep
    f0, f1, f2 = F.F0, F.F1, F.F2

    def boundaries():
        for f, (s, t) in S.one_cells.items():
            if T.one_cells[f1[f]] != (f0[s], f0[t]):
                yield ("1-cell", f)
        for a, (s, t) in S.two_cells.items():
            if T.two_cells[f2[a]] != (f1[s], f1[t]):
                yield ("2-cell", a)

    def identities():
        for x in S.objects:
            if f1[S.id1(x)] != T.id1(f0[x]):
                yield ("id1", x)
        for f in S.one_cells:
            if f2[S.id2(f)] != T.id2(f1[f]):
                yield ("id2", f)

    def compositions():
        for (b, a), r in S.vcomp_table.items():
            if f2[r] != T.vcomp(f2[b], f2[a]):
                yield ("vcomp", b, a)
        for (g, f), r in S.hcomp1_table.items():
            if f1[r] != T.hcomp1(f1[g], f1[f]):
                yield ("hcomp1", g, f)
        for (b, a), r in S.hcomp2_table.items():
            if f2[r] != T.hcomp2(f2[b], f2[a]):
                yield ("hcomp2", b, a)

    def coherence():
        for (h, g, f), r in S.assoc_table.items():
            if f2[r] != T.assoc(f1[h], f1[g], f1[f]):
                yield ("assoc", h, g, f)
        for f in S.one_cells:
            if f2[S.lunitor(f)] != T.lunitor(f1[f]):
                yield ("lunitor", f)
            if f2[S.runitor(f)] != T.runitor(f1[f]):
                yield ("runitor", f)

    for name, gen in (("boundaries", boundaries), ("identities", identities),
                      ("compositions", compositions), ("coherence cells", coherence)):
        w = _first(gen())
        rep.add(name, w is None, w)
    return rep


def require_homomorphism(F: StrictHomomorphism) -> None:
    rep = validate_homomorphism(F)
    if not rep.ok:
        raise NotAHomomorphism(f"{rep.axiom} fails at {rep.witness}")


def enumerate_strict_homomorphisms(S: FiniteBicategory, T: FiniteBicategory) -> list:
    """Every strict homomorphism ``S -> T``, by backtracking over cells."""
    out = []
    objs = list(S.objects)
    ones = list(S.one_cells)
    twos = list(S.two_cells)

    def ok1(F0, F1):
        for (g, f), r in S.hcomp1_table.items():
            if g in F1 and f in F1 and r in F1:
                if T.hcomp1_table.get((F1[g], F1[f])) != F1[r]:
                    return False
        for x in objs:
            i = S.id1(x)
            if i in F1 and F1[i] != T.id1(F0[x]):
                return False
        return True

    def ok2(F1, F2):
        for tab, ttab in ((S.vcomp_table, T.vcomp_table), (S.hcomp2_table, T.hcomp2_table)):
            for (b, a), r in tab.items():
                if b in F2 and a in F2 and r in F2 and ttab.get((F2[b], F2[a])) != F2[r]:
                    return False
        return True

    def rec0(i, F0):
        if i == len(objs):
            rec1(0, F0, {})
            return
        for y in T.objects:
            F0[objs[i]] = y
            rec0(i + 1, F0)
        F0.pop(objs[i], None)

    def rec1(i, F0, F1):
        if i == len(ones):
            rec2(0, F0, F1, {})
            return
        f = ones[i]
        s, t = S.one_cells[f]
        for g in T.hom(F0[s], F0[t]):
            F1[f] = g
            if ok1(F0, F1):
                rec1(i + 1, F0, F1)
        F1.pop(f, None)

    def rec2(i, F0, F1, F2):
        if i == len(twos):
            H = StrictHomomorphism(S, T, dict(F0), dict(F1), dict(F2))
            if validate_homomorphism(H).ok:
                out.append(H)
            return
        a = twos[i]
        s, t = S.two_cells[a]
        for b in T.cells(F1[s], F1[t]):
            F2[a] = b
            if ok2(F1, F2):
                rec2(i + 1, F0, F1, F2)
        F2.pop(a, None)

    rec0(0, {})
    return out
