"""Right actions of finite bicategories on finite categories.

An action is given by tables: momentum ``Λ : P0 -> B0``, ``p◁f`` defined
when ``Λ(p) = t0(f)`` and lying over ``s0(f)``, ``a◁φ`` on morphisms,
coherence isomorphisms ``κ_{p,f,g} : (p◁f)◁g -> p◁(f∘g)`` and
``ι_p : p◁i -> p``. The action bicategory has the objects of P and
1-cells ``(ψ, h) : q -> p`` with ``ψ : q -> p◁h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .bicategory import FiniteBicategory, StrictHomomorphism, validate_bicategory
from .category import FiniteCategory, validate_category
from .errors import InvalidAction, MalformedData, MalformedTable, VerificationReport
from .simplicial import tuple_id


class BicatAction:
    def __init__(self, P: FiniteCategory, B: FiniteBicategory, momentum: Mapping[str, str],
                 act0: Mapping[tuple, str], act1: Mapping[tuple, str], kappa: Mapping[tuple, str],
                 iota: Mapping[str, str], name: str = ""):
        self.P = P
        self.B = B
        self.momentum = dict(momentum)
        self.act0_table = dict(act0)
        self.act1_table = dict(act1)
        self.kappa_table = dict(kappa)
        self.iota_table = dict(iota)
        self.name = name

    # -- lookups -----------------------------------------------------------

    def lam(self, p: str) -> str:
        return self.momentum[p]

    def act0(self, p: str, f: str) -> str:
        return self.act0_table[(p, f)]

    def act1(self, a: str, phi: str) -> str:
        return self.act1_table[(a, phi)]

    def act_obj_cell(self, p: str, phi: str) -> str:
        """``p◁φ``: acting with a 2-cell on the identity of p."""
        return self.act1(self.P.identity[p], phi)

    def act_mor_one(self, a: str, f: str) -> str:
        """``a◁f``: acting with the identity 2-cell of f."""
        return self.act1(a, self.B.id2(f))

    def kappa(self, p: str, f: str, g: str) -> str:
        return self.kappa_table[(p, f, g)]

    def iota(self, p: str) -> str:
        return self.iota_table[p]

    def pairs(self):
        """All ``(p, f)`` with ``Λ(p) = t0(f)``."""
        for p in self.P.objects:
            for f, (_s, t) in self.B.one_cells.items():
                if self.momentum.get(p) == t:
                    yield p, f

    def triples(self):
        for p, f in self.pairs():
            for g in self.B.hom_into(self.B.s0(f)):
                yield p, f, g

    def morphism_pairs(self):
        for a, (p, q) in self.P.morphisms.items():
            for phi, (f, _g) in self.B.two_cells.items():
                if self.momentum.get(p) == self.B.t0(f):
                    yield a, phi

    def __repr__(self) -> str:
        return f"BicatAction({self.name or self.B.name} on {self.P.name})"


@dataclass
class FiberedAction:
    """An action together with ``π : P0 -> X`` preserved by morphisms and by acting."""

    action: BicatAction
    base_set: tuple
    pi0: dict
    name: str = ""

    def __post_init__(self):
        self.base_set = tuple(sorted(self.base_set))
        self.pi0 = dict(self.pi0)

    def pi(self, p: str) -> str:
        return self.pi0[p]


def _require_total(A: BicatAction) -> None:
    P, B = A.P, A.B
    for p in P.objects:
        if A.momentum.get(p) not in B.objects:
            raise MalformedTable(f"momentum is partial or bad at {p}")
        if A.iota_table.get(p) not in P.morphisms:
            raise MalformedTable(f"iota is partial at {p}")
    for p, f in A.pairs():
        if A.act0_table.get((p, f)) not in P.objects:
            raise MalformedTable(f"act0 is partial at ({p}, {f})")
    for a, phi in A.morphism_pairs():
        if A.act1_table.get((a, phi)) not in P.morphisms:
            raise MalformedTable(f"act1 is partial at ({a}, {phi})")
    for p, f in A.pairs():
        for g in B.hom_into(B.s0(f)):
            if A.kappa_table.get((p, f, g)) not in P.morphisms:
                raise MalformedTable(f"kappa is partial at ({p}, {f}, {g})")


def _first(gen):
    for w in gen:
        return w
    return None


def validate_action(A, check_constituents: bool = True) -> VerificationReport:
    """Every action axiom in order; a fibered input also checks the fibration.

    Families: momentum_constancy, equivariance, act_functoriality,
    kappa_iota_invertible, kappa_naturality, iota_naturality, pentagon,
    unit_triangle_left, unit_triangle_right, fibered.
    """
    fib = None
    if isinstance(A, FiberedAction):
        fib, A = A, A.action
    P, B = A.P, A.B
    rep = VerificationReport(f"action {A.name}".strip())
    if check_constituents:
        rc = validate_category(P)
        rep.add("category axioms", rc.ok, rc.witness, rc.axiom or "")
        rb = validate_bicategory(B)
        rep.add("bicategory axioms", rb.ok, rb.witness, rb.axiom or "")
        if not (rc.ok and rb.ok):
            return rep
    _require_total(A)
    L = A.momentum
    comp = P.comp

    def momentum_constancy():
        for a, (p, q) in P.morphisms.items():
            if L[p] != L[q]:
                yield a

    def equivariance():
        for p, f in A.pairs():
            x = A.act0(p, f)
            if L[x] != B.s0(f):
                yield ("objects", p, f)
        for a, phi in A.morphism_pairs():
            p, q = P.morphisms[a]
            f, g = B.two_cells[phi]
            if P.morphisms[A.act1(a, phi)] != (A.act0(p, f), A.act0(q, g)):
                yield ("morphisms", a, phi)

    def act_functoriality():
        for p, f in A.pairs():
            if A.act1(P.identity[p], B.id2(f)) != P.identity[A.act0(p, f)]:
                yield ("identity", p, f)
        for a, phi in A.morphism_pairs():
            q = P.tgt(a)
            g = B.t1(phi)
            for b in (m for m, (s, _t) in P.morphisms.items() if s == q):
                for psi in B.cells_from(g):
                    lhs = comp(A.act1(b, psi), A.act1(a, phi))
                    rhs = A.act1(comp(b, a), B.vcomp(psi, phi))
                    if lhs != rhs:
                        yield ("interchange", b, psi, a, phi)

    def invertible():
        for p, f in A.pairs():
            for g in B.hom_into(B.s0(f)):
                k = A.kappa(p, f, g)
                want = (A.act0(A.act0(p, f), g), A.act0(p, B.hcomp1(f, g)))
                if P.morphisms[k] != want or P.inverse(k) is None:
                    yield ("kappa", p, f, g)
        for p in P.objects:
            i = A.iota(p)
            if P.morphisms[i] != (A.act0(p, B.id1(L[p])), p) or P.inverse(i) is None:
                yield ("iota", p)

    def kappa_naturality():
        for a, (p, q) in P.morphisms.items():
            for phi, (f, f2) in B.two_cells.items():
                if B.t0(f) != L[p]:
                    continue
                for gam, (g, g2) in B.two_cells.items():
                    if B.t0(g) != B.s0(f):
                        continue
                    lhs = comp(A.kappa(q, f2, g2), A.act1(A.act1(a, phi), gam))
                    rhs = comp(A.act1(a, B.hcomp2(phi, gam)), A.kappa(p, f, g))
                    if lhs != rhs:
                        yield (a, phi, gam)

    def iota_naturality():
        for a, (p, q) in P.morphisms.items():
            i = B.id2(B.id1(L[p]))
            if comp(A.iota(q), A.act1(a, i)) != comp(a, A.iota(p)):
                yield a

    def pentagon():
        for p, f in A.pairs():
            for g in B.hom_into(B.s0(f)):
                for h in B.hom_into(B.s0(g)):
                    fg, gh = B.hcomp1(f, g), B.hcomp1(g, h)
                    lhs = comp(A.act_obj_cell(p, B.assoc(f, g, h)),
                               comp(A.kappa(p, fg, h), A.act_mor_one(A.kappa(p, f, g), h)))
                    rhs = comp(A.kappa(p, f, gh), A.kappa(A.act0(p, f), g, h))
                    if lhs != rhs:
                        yield (p, f, g, h)

    def triangle_left():
        for p in P.objects:
            i = B.id1(L[p])
            for f in B.hom_into(L[p]):
                lhs = comp(A.act_obj_cell(p, B.lunitor(f)), A.kappa(p, i, f))
                if lhs != A.act_mor_one(A.iota(p), f):
                    yield (p, f)

    def triangle_right():
        for p, f in A.pairs():
            i = B.id1(B.s0(f))
            lhs = comp(A.act_obj_cell(p, B.runitor(f)), A.kappa(p, f, i))
            if lhs != A.iota(A.act0(p, f)):
                yield (p, f)

    steps = [
        ("momentum_constancy", momentum_constancy),
        ("equivariance", equivariance),
        ("act_functoriality", act_functoriality),
        ("kappa_iota_invertible", invertible),
        ("kappa_naturality", kappa_naturality),
        ("iota_naturality", iota_naturality),
        ("pentagon", pentagon),
        ("unit_triangle_left", triangle_left),
        ("unit_triangle_right", triangle_right),
    ]
    for name, gen in steps:
        w = _first(gen())
        rep.add(name, w is None, w)
        if w is not None and name in ("momentum_constancy", "equivariance"):
            rep.notes.append(f"stopped after {name}")
            return rep
    if fib is not None:
        def fibered():
            for p in P.objects:
                if fib.pi0.get(p) not in fib.base_set:
                    yield ("pi0", p)
            for a, (p, q) in P.morphisms.items():
                if fib.pi0[p] != fib.pi0[q]:
                    yield ("morphism", a)
            for p, f in A.pairs():
                if fib.pi0[A.act0(p, f)] != fib.pi0[p]:
                    yield ("action", p, f)

        w = _first(fibered())
        rep.add("fibered", w is None, w)
    return rep


def require_valid_action(A) -> None:
    rep = validate_action(A)
    if not rep.ok:
        raise InvalidAction(f"{rep.axiom} fails at {rep.witness}")


# ---------------------------------------------------------------------------
# the action bicategory


def one_cell_id(psi: str, h: str, p: str) -> str:
    return tuple_id((psi, h, p))


def two_cell_id(c: str, gamma: str) -> str:
    return tuple_id((c, gamma))


def action_bicategory(A: BicatAction, validate: bool = True) -> FiniteBicategory:
    """``P◁B``; its 1-cells carry a decoding table ``decode1`` and ``decode2``."""
    if validate:
        rep = validate_action(A)
        if not rep.ok:
            raise InvalidAction(f"{rep.axiom} fails at {rep.witness}")
    P, B = A.P, A.B
    L = A.momentum
    comp = P.comp
    ones, dec1 = {}, {}
    for q in P.objects:
        for p in P.objects:
            for h in B.hom(L[q], L[p]):
                for psi in P.hom(q, A.act0(p, h)):
                    c = one_cell_id(psi, h, p)
                    ones[c] = (q, p)
                    dec1[c] = (psi, h, p)
    two, dec2 = {}, {}
    for c, (psi, h, p) in dec1.items():
        for gam in B.cells_from(h):
            tgt = one_cell_id(comp(A.act_obj_cell(p, gam), psi), B.t1(gam), p)
            if tgt not in dec1:
                raise InvalidAction(f"2-cell {gam} moves {c} outside the 1-cells")
            x = two_cell_id(c, gam)
            two[x] = (c, tgt)
            dec2[x] = (c, gam)
    id1 = {p: one_cell_id(P.inverse(A.iota(p)), B.id1(L[p]), p) for p in P.objects}
    id2 = {c: two_cell_id(c, B.id2(h)) for c, (psi, h, p) in dec1.items()}
    vcomp = {}
    for x, (c, gam) in dec2.items():
        tgt = two[x][1]
        for gam2 in B.cells_from(B.t1(gam)):
            vcomp[(two_cell_id(tgt, gam2), x)] = two_cell_id(c, B.vcomp(gam2, gam))

    def h1(c2, c1):
        psi, h, p = dec1[c2]
        phi, g, q = dec1[c1]
        top = comp(A.kappa(p, h, g), comp(A.act_mor_one(psi, g), phi))
        return one_cell_id(top, B.hcomp1(h, g), p)

    hcomp1 = {}
    for c1, (r, q) in ones.items():
        for c2, (q2, p) in ones.items():
            if q2 == q:
                hcomp1[(c2, c1)] = h1(c2, c1)
    hcomp2 = {}
    for x1, (c1, g1) in dec2.items():
        for x2, (c2, g2) in dec2.items():
            if (c2, c1) in hcomp1:
                hcomp2[(x2, x1)] = two_cell_id(hcomp1[(c2, c1)], B.hcomp2(g2, g1))
    assoc = {}
    for (c2, c1), c21 in hcomp1.items():
        for c3, (q3, _p) in ones.items():
            if q3 == ones[c2][1]:
                src = hcomp1[(hcomp1[(c3, c2)], c1)]
                assoc[(c3, c2, c1)] = two_cell_id(src, B.assoc(dec1[c3][1], dec1[c2][1], dec1[c1][1]))
    lun, run = {}, {}
    for c, (q, p) in ones.items():
        h = dec1[c][1]
        lun[c] = two_cell_id(hcomp1[(id1[p], c)], B.lunitor(h))
        run[c] = two_cell_id(hcomp1[(c, id1[q])], B.runitor(h))
    for tab in (assoc, lun, run):
        for k, v in tab.items():
            if v not in two:
                raise InvalidAction(f"coherence cell for {k} is not a 2-cell of the action bicategory")
    out = FiniteBicategory(P.objects, ones, two, id1, id2, vcomp, hcomp1, hcomp2, assoc, lun, run,
                           f"{P.name}<{B.name}")
    out.decode1 = dec1
    out.decode2 = dec2
    out.action = A
    return out


def canonical_projection(A: BicatAction, AB: FiniteBicategory | None = None) -> StrictHomomorphism:
    """``(ψ, h) ↦ h`` and ``γ ↦ γ`` over the momentum."""
    if AB is None:
        AB = action_bicategory(A)
    F1 = {c: h for c, (_psi, h, _p) in AB.decode1.items()}
    F2 = {x: gam for x, (_c, gam) in AB.decode2.items()}
    return StrictHomomorphism(AB, A.B, dict(A.momentum), F1, F2, "projection")


# ---------------------------------------------------------------------------
# the self-action


def one_cell_category(B: FiniteBicategory) -> FiniteCategory:
    """Objects the 1-cells of B, morphisms its 2-cells under vertical composition."""
    comp = {(b, a): r for (b, a), r in B.vcomp_table.items()}
    return FiniteCategory(list(B.one_cells), dict(B.two_cells), dict(B.id2_table), comp, f"{B.name}_1")


def self_action(B: FiniteBicategory) -> BicatAction:
    """B acting on its 1-cells by precomposition: κ = α and ι = ρ."""
    P = one_cell_category(B)
    momentum = {f: B.s0(f) for f in B.one_cells}
    act0 = {(p, f): B.hcomp1(p, f) for p in B.one_cells for f in B.hom_into(B.s0(p))}
    act1 = {}
    for a, (p, _q) in B.two_cells.items():
        for phi, (f, _g) in B.two_cells.items():
            if B.t0(f) == B.s0(p):
                act1[(a, phi)] = B.hcomp2(a, phi)
    kappa = {}
    for (p, f) in act0:
        for g in B.hom_into(B.s0(f)):
            kappa[(p, f, g)] = B.assoc(p, f, g)
    iota = {p: B.runitor(p) for p in B.one_cells}
    return BicatAction(P, B, momentum, act0, act1, kappa, iota, f"{B.name} on itself")


def tangent_bundle(B: FiberedAction | FiniteBicategory) -> FiberedAction:
    """The self-action fibered over B0 by the target map."""
    A = self_action(B)
    return FiberedAction(A, B.objects, {f: B.t0(f) for f in B.one_cells}, f"T{B.name}")


def tangent_bicategory(B: FiniteBicategory) -> FiniteBicategory:
    return action_bicategory(self_action(B))


# ---------------------------------------------------------------------------
# equivariant functors and transformations


@dataclass
class EquivariantFunctor:
    source: BicatAction
    target: BicatAction
    F0: dict
    F1: dict
    theta: dict  # (p, f) -> θ_{p,f} : F(p)◁f -> F(p◁f)
    name: str = ""


@dataclass
class EquivariantTransformation:
    F: EquivariantFunctor
    G: EquivariantFunctor
    tau: dict  # p -> τ_p : F(p) -> G(p)
    name: str = ""


def identity_equivariant(A: BicatAction) -> EquivariantFunctor:
    P = A.P
    return EquivariantFunctor(A, A, {p: p for p in P.objects}, {m: m for m in P.morphisms},
                              {(p, f): P.identity[A.act0(p, f)] for p, f in A.pairs()}, "id")


def compose_equivariant(G: EquivariantFunctor, F: EquivariantFunctor) -> EquivariantFunctor:
    """``(G, ζ)∘(F, θ) = (GF, G(θ)·ζ_F)``."""
    C = G.target.P
    theta = {}
    for p, f in F.source.pairs():
        theta[(p, f)] = C.comp(G.F1[F.theta[(p, f)]], G.theta[(F.F0[p], f)])
    return EquivariantFunctor(F.source, G.target, {p: G.F0[F.F0[p]] for p in F.F0},
                              {m: G.F1[F.F1[m]] for m in F.F1}, theta, f"{G.name}{F.name}")


def _check_functor_data(E: EquivariantFunctor, rep: VerificationReport) -> bool:
    A, A2 = E.source, E.target
    P, Q = A.P, A2.P
    try:
        bad = None
        for p in P.objects:
            if E.F0[p] not in Q.objects:
                bad = ("F0", p)
                break
        for m, (s, t) in P.morphisms.items():
            if bad:
                break
            if Q.morphisms.get(E.F1[m]) != (E.F0[s], E.F0[t]):
                bad = ("F1", m)
        rep.add("functor typing", bad is None, bad)
        if bad:
            return False
        bad = None
        for x in P.objects:
            if E.F1[P.identity[x]] != Q.identity[E.F0[x]]:
                bad = ("identity", x)
                break
        if bad is None:
            for g, f in P.composable_pairs():
                if E.F1[P.comp(g, f)] != Q.comp(E.F1[g], E.F1[f]):
                    bad = ("composition", g, f)
                    break
        rep.add("functoriality", bad is None, bad)
        bad = None
        for p in P.objects:
            if A2.momentum[E.F0[p]] != A.momentum[p]:
                bad = p
                break
        rep.add("momentum preserved", bad is None, bad)
        bad = None
        for p, f in A.pairs():
            th = E.theta[(p, f)]
            if Q.morphisms.get(th) != (A2.act0(E.F0[p], f), E.F0[A.act0(p, f)]) or Q.inverse(th) is None:
                bad = (p, f)
                break
        rep.add("theta typing", bad is None, bad)
        return rep.ok
    except KeyError as e:
        raise MalformedData(f"equivariant data is partial: missing {e.args[0]!r}")


def check_equivariant(kind: str, data) -> VerificationReport:
    """Verify an equivariant functor or an equivariant transformation."""
    if kind == "functor":
        E: EquivariantFunctor = data
        A, A2 = E.source, E.target
        B, Q = A.B, A2.P
        rep = VerificationReport(f"equivariant functor {E.name}".strip())
        if A.B is not A2.B and A.B.one_cells != A2.B.one_cells:
            raise MalformedData("source and target actions use different bicategories")
        if not _check_functor_data(E, rep):
            return rep
        F0, F1, th = E.F0, E.F1, E.theta
        comp = Q.comp
        bad = None
        for a, phi in A.morphism_pairs():
            p, q = A.P.morphisms[a]
            f, g = B.two_cells[phi]
            lhs = comp(th[(q, g)], A2.act1(F1[a], phi))
            rhs = comp(F1[A.act1(a, phi)], th[(p, f)])
            if lhs != rhs:
                bad = (a, phi)
                break
        rep.add("theta naturality", bad is None, bad)
        bad = None
        for p, f in A.pairs():
            for g in B.hom_into(B.s0(f)):
                pf = A.act0(p, f)
                lhs = comp(F1[A.kappa(p, f, g)], comp(th[(pf, g)], A2.act_mor_one(th[(p, f)], g)))
                rhs = comp(th[(p, B.hcomp1(f, g))], A2.kappa(F0[p], f, g))
                if lhs != rhs:
                    bad = (p, f, g)
                    break
            if bad:
                break
        rep.add("kappa square", bad is None, bad)
        bad = None
        for p in A.P.objects:
            i = B.id1(A.momentum[p])
            if comp(F1[A.iota(p)], th[(p, i)]) != A2.iota(F0[p]):
                bad = p
                break
        rep.add("iota triangle", bad is None, bad)
        return rep
    if kind == "transformation":
        T: EquivariantTransformation = data
        F, G = T.F, T.G
        A, A2 = F.source, F.target
        Q = A2.P
        rep = VerificationReport(f"equivariant transformation {T.name}".strip())
        try:
            bad = None
            for p in A.P.objects:
                if Q.morphisms.get(T.tau[p]) != (F.F0[p], G.F0[p]):
                    bad = p
                    break
            rep.add("tau typing", bad is None, bad)
            if bad:
                return rep
            bad = None
            for a, (p, q) in A.P.morphisms.items():
                if Q.comp(T.tau[q], F.F1[a]) != Q.comp(G.F1[a], T.tau[p]):
                    bad = a
                    break
            rep.add("tau naturality", bad is None, bad)
            bad = None
            for p, f in A.pairs():
                lhs = Q.comp(T.tau[A.act0(p, f)], F.theta[(p, f)])
                rhs = Q.comp(G.theta[(p, f)], A2.act_mor_one(T.tau[p], f))
                if lhs != rhs:
                    bad = (p, f)
                    break
            rep.add("equivariance square", bad is None, bad)
        except KeyError as e:
            raise MalformedData(f"transformation data is partial: missing {e.args[0]!r}")
        return rep
    raise MalformedData(f"unknown equivariance kind {kind!r}")
