"""Exact fibrations, bigroupoid 2-torsors and their nerves.

The nerve of a torsor is the Duskin nerve of the action bicategory,
augmented over the base by ``π0``. The nerve of the canonical projection
is checked to be an exact fibration in dimensions ``>= 2``; the total
complex is checked to be aspherical and to have ``δ_2`` bijective.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .action import (
    BicatAction,
    FiberedAction,
    action_bicategory,
    canonical_projection,
    self_action,
    tangent_bicategory,
    validate_action,
)
from .bicategory import FiniteBicategory, is_bigroupoid
from .category import FiniteCategory
from .errors import (
    NotBigroupoid,
    NotEpimorphism,
    NotGroupoid,
    VerificationReport,
)
from .functors import decalage
from .nerve import NerveTable, cocycle_check, duskin_nerve, nerve_map
from .simplicial import (
    AugmentedSimplexTable,
    SimplicialMap,
    horn_set,
    is_aspherical,
    is_isomorphism,
    simplicial_kernel,
    tuple_id,
)

__all__ = [
    "Exactness",
    "TorsorCandidate",
    "is_exact_fibration",
    "is_simplicial_action",
    "check_torsor_axioms",
    "build_torsor",
    "verify_glenn_torsor",
    "cocycle_check",
    "decalage_comparison",
]


# ---------------------------------------------------------------------------
# exact fibrations


@dataclass(frozen=True)
class Exactness:
    ok: bool
    n: int
    witness: tuple | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _image_tuple(m: SimplicialMap, n: int, t: tuple) -> tuple:
    return tuple(m.apply(n, y) for y in t)


def exact_fibration_fibres(m: SimplicialMap, n: int, k: int) -> Counter:
    """Preimage counts of ``E_n -> Λ^k_n(E) ×_{Λ^k_n(B)} B_n`` on the whole fibre product."""
    E, B = m.source, m.target
    HE = horn_set(E, n, k)
    HB = horn_set(B, n, k)
    by_horn: dict = {}
    for b in B.level(n):
        by_horn.setdefault(HB.horn_map(b), []).append(b)
    counts: Counter = Counter()
    for h in HE.tuples:
        for b in by_horn.get(_image_tuple(m, n - 1, h), []):
            counts[(h, b)] = 0
    for x in E.level(n):
        key = (HE.horn_map(x), m.apply(n, x))
        counts[key] += 1
    return counts


def is_exact_fibration(m: SimplicialMap, n: int) -> Exactness:
    """Every horn square in dimension n is a pullback (checked on elements)."""
    for k in range(n + 1):
        counts = exact_fibration_fibres(m, n, k)
        for key in sorted(counts):
            if counts[key] != 1:
                return Exactness(False, n, (k, key, counts[key]))
    return Exactness(True, n)


def is_simplicial_action(m: SimplicialMap, n: int, bound: int = 4) -> Exactness:
    """Exact fibration in every dimension of ``[n, bound]``."""
    for d in range(n, bound + 1):
        r = is_exact_fibration(m, d)
        if not r.ok:
            return r
    note = ""
    if bound > min(m.source.dim_cap, m.target.dim_cap):
        note = f"dimensions above {min(m.source.dim_cap, m.target.dim_cap)} materialized by coskeletal policy"
    return Exactness(True, bound, None, note or f"checked dimensions {n}..{bound}")


# ---------------------------------------------------------------------------
# torsors


@dataclass
class TorsorCandidate:
    fibered: FiberedAction
    name: str = ""

    @property
    def action(self) -> BicatAction:
        return self.fibered.action

    @property
    def B(self) -> FiniteBicategory:
        return self.fibered.action.B

    @property
    def P(self) -> FiniteCategory:
        return self.fibered.action.P

    @property
    def base_set(self) -> tuple:
        return self.fibered.base_set

    @property
    def pi0(self) -> dict:
        return self.fibered.pi0


def trivial_torsor(B: FiniteBicategory, check: bool = True) -> TorsorCandidate:
    """``P = B1``, momentum the source, action by precomposition, ``π`` the target."""
    if check:
        ok, w = is_bigroupoid(B)
        if not ok:
            raise NotBigroupoid(f"{B.name} is not a bigroupoid: {w}")
    A = self_action(B)
    fib = FiberedAction(A, B.objects, {f: B.t0(f) for f in B.one_cells}, f"triv({B.name})")
    return TorsorCandidate(fib, f"trivial torsor of {B.name}")


def pullback_torsor(T: TorsorCandidate, M, f: Mapping[str, str]) -> TorsorCandidate:
    """``f^*P = M ×_X P`` over M, for ``f : M -> X``."""
    A = T.action
    P, B = A.P, A.B
    M = sorted(M)
    pid = lambda m, p: tuple_id((m, p))
    objs, morphs, ident, comp = [], {}, {}, {}
    for m in M:
        for p in P.objects:
            if T.pi0[p] == f[m]:
                objs.append(pid(m, p))
                ident[pid(m, p)] = pid(m, P.identity[p])
    over = {m: [p for p in P.objects if T.pi0[p] == f[m]] for m in M}
    for m in M:
        ps = set(over[m])
        for a, (p, q) in P.morphisms.items():
            if p in ps:
                morphs[pid(m, a)] = (pid(m, p), pid(m, q))
        for (g, h), r in P.comp_table.items():
            if P.src(h) in ps:
                comp[(pid(m, g), pid(m, h))] = pid(m, r)
    Q = FiniteCategory(objs, morphs, ident, comp, f"{P.name}|M")
    momentum, act0, act1, kappa, iota = {}, {}, {}, {}, {}
    for m in M:
        for p in over[m]:
            momentum[pid(m, p)] = A.momentum[p]
            iota[pid(m, p)] = pid(m, A.iota(p))
        for (p, g), r in A.act0_table.items():
            if p in over[m]:
                act0[(pid(m, p), g)] = pid(m, r)
        for (a, phi), r in A.act1_table.items():
            if P.src(a) in over[m]:
                act1[(pid(m, a), phi)] = pid(m, r)
        for (p, g, h), r in A.kappa_table.items():
            if p in over[m]:
                kappa[(pid(m, p), g, h)] = pid(m, r)
    A2 = BicatAction(Q, B, momentum, act0, act1, kappa, iota, f"pullback of {A.name}")
    pi = {pid(m, p): m for m in M for p in over[m]}
    return TorsorCandidate(FiberedAction(A2, M, pi, "pullback"), f"pullback of {T.name}")


def build_torsor(kind: str, B: FiniteBicategory, f: Mapping[str, str] | None = None,
                 M=None, base: TorsorCandidate | None = None) -> TorsorCandidate:
    if kind == "trivial":
        return trivial_torsor(B)
    if kind == "pullback":
        T = base if base is not None else trivial_torsor(B)
        if f is None:
            raise NotEpimorphism("pullback needs a map M -> X")
        return pullback_torsor(T, M if M is not None else list(f), f)
    raise ValueError(f"unknown torsor kind {kind!r}")


def _pr1A_objects(T: TorsorCandidate):
    A = T.action
    return [(p, f) for p, f in A.pairs()]


def pr1A_hom_counts(T: TorsorCandidate, src: tuple, tgt: tuple):
    """Source hom and image data for ``(Pr1, A)`` between two objects of ``P ×_{B0} B1``."""
    A, P, B = T.action, T.P, T.B
    (p, f), (p2, f2) = src, tgt
    images = Counter()
    for a in P.hom(p, p2):
        for phi in B.cells(f, f2):
            images[(a, A.act1(a, phi))] += 1
    target = [(a, b) for a in P.hom(p, p2) for b in P.hom(A.act0(p, f), A.act0(p2, f2))]
    return images, target


def check_torsor_axioms(T: TorsorCandidate) -> VerificationReport:
    """π0 and λ0 surjective, and ``(Pr1, A)`` an equivalence of groupoids."""
    A, P, B = T.action, T.P, T.B
    if not P.is_groupoid():
        raise NotGroupoid(f"{P.name} is not a groupoid")
    ok, w = is_bigroupoid(B)
    if not ok:
        raise NotBigroupoid(f"{B.name} is not a bigroupoid: {w}")
    if not T.base_set and P.objects:
        raise NotEpimorphism("π0 cannot be surjective onto an empty base")
    rep = VerificationReport(f"torsor axioms for {T.name}".strip())
    ra = validate_action(T.fibered)
    rep.add("fibered action", ra.ok, ra.witness, ra.axiom or "")
    if not ra.ok:
        return rep
    hit = {T.pi0[p] for p in P.objects}
    miss = [x for x in T.base_set if x not in hit]
    rep.add("pi0 surjective", not miss, miss[0] if miss else None)
    hit = {A.momentum[p] for p in P.objects}
    miss = [x for x in B.objects if x not in hit]
    rep.add("lambda0 surjective", not miss, miss[0] if miss else None)
    image = {(p, A.act0(p, f)) for p, f in A.pairs()}
    miss = None
    for p in P.objects:
        for q in P.objects:
            if T.pi0[p] == T.pi0[q] and (p, q) not in image:
                miss = (p, q)
                break
        if miss:
            break
    rep.add("(Pr1,A) surjective on objects", miss is None, miss)
    objs = _pr1A_objects(T)
    not_faithful = not_full = None
    for s in objs:
        for t in objs:
            images, target = pr1A_hom_counts(T, s, t)
            if not_faithful is None:
                dup = [k for k in sorted(images) if images[k] > 1]
                if dup:
                    not_faithful = {"source": s, "target": t, "image": dup[0]}
            if not_full is None:
                missing = [k for k in target if k not in images]
                if missing:
                    not_full = {"source": s, "target": t, "missing": min(missing)}
        if not_faithful and not_full:
            break
    rep.add("(Pr1,A) faithful", not_faithful is None, not_faithful)
    rep.add("(Pr1,A) full", not_full is None, not_full)
    return rep


# ---------------------------------------------------------------------------
# Duskin-Glenn verification


@dataclass
class TorsorNerve:
    action_bicategory: FiniteBicategory
    total: NerveTable
    base: NerveTable
    projection: SimplicialMap
    augmented: AugmentedSimplexTable


def torsor_nerve(T: TorsorCandidate, cap: int = 3) -> TorsorNerve:
    AB = action_bicategory(T.action)
    N = duskin_nerve(AB, cap)
    NB = duskin_nerve(T.B, cap)
    proj = nerve_map(canonical_projection(T.action, AB), N, NB)
    aug = AugmentedSimplexTable(N, T.base_set, dict(T.pi0))
    return TorsorNerve(AB, N, NB, proj, aug)


def unique_beta_count(T: TorsorCandidate, AB: FiniteBicategory, c12: str, c02: str, c01: str) -> int:
    """Number of 2-cells ``c12∘c01 ⇒ c02``, computed through the ``(Pr1, A)`` hom bijection.

    Writing ``c12∘c01 = (ψ, k)`` and ``c02 = (ξ, l)`` over the common
    target p, a filler is a 2-cell ``γ : k ⇒ l`` with ``(p◁γ)ψ = ξ``, i.e. a
    preimage of ``(1_p, ξψ^{-1})`` under ``(Pr1, A)``.
    """
    A, P, B = T.action, T.P, T.B
    psi, k, p = AB.decode1[AB.hcomp1(c12, c01)]
    xi, l, _p = AB.decode1[c02]
    target = P.comp(xi, P.inverse(psi))
    return sum(1 for gam in B.cells(k, l) if A.act1(P.identity[p], gam) == target)


def verify_glenn_torsor(T: TorsorCandidate, bound: int = 4) -> VerificationReport:
    """(a) simplicial action from dimension 2, (b) augmented and aspherical, (c) δ_2 bijective."""
    rep = VerificationReport(f"Duskin-Glenn torsor check for {T.name}".strip())
    TN = torsor_nerve(T)
    N, proj, aug = TN.total, TN.projection, TN.augmented
    sa = is_simplicial_action(proj, 2, bound)
    rep.add("(a) exact fibration in dimensions 2..%d" % bound, sa.ok, sa.witness, sa.note)
    bad = None
    for c in N.level(1):
        if T.pi0[N.d(1, 0, c)] != T.pi0[N.d(1, 1, c)]:
            bad = c
            break
    rep.add("(b) augmentation pi0 d0 = pi0 d1", bad is None, bad)
    bad = None
    for n in range(0, bound + 1):
        r = is_aspherical(aug, n)
        if not r.ok:
            bad = {"n": n, "kernel_tuple": list(r.witness)}
            break
    rep.add("(b) aspherical in dimensions 0..%d" % bound, bad is None, bad)
    # (c) δ_2 : P_2 -> K_2 bijective, two ways
    K = simplicial_kernel(aug, 2)
    bad_c = None
    for t in K.tuples:
        c12, c02, c01 = t
        n = unique_beta_count(T, TN.action_bicategory, c12, c02, c01)
        if n != 1:
            bad_c = {"kernel_tuple": list(t), "fillers": n}
            break
    rep.add("(c) unique filler 2-cell for every kernel triple", bad_c is None, bad_c)
    counts = Counter(N.faces(2, x) for x in N.level(2))
    bad_d = None
    for t in K.tuples:
        if counts[t] != 1:
            bad_d = {"kernel_tuple": list(t), "preimages": counts[t]}
            break
    rep.add("(c) delta_2 bijective by enumeration", bad_d is None, bad_d)
    return rep


def delta2_witness_pair(T: TorsorCandidate, AB: FiniteBicategory, t: tuple) -> tuple:
    """The ``(Pr1, A)`` hom pair that a failing kernel triple points at."""
    c12, c02, c01 = t
    _psi, k, p = AB.decode1[AB.hcomp1(c12, c01)]
    _xi, l, _ = AB.decode1[c02]
    return (p, k), (p, l)


# ---------------------------------------------------------------------------
# the décalage comparison


@dataclass
class DecalageComparison:
    iso: SimplicialMap
    report: VerificationReport


def decalage_comparison(B: FiniteBicategory, cap: int = 3) -> DecalageComparison:
    """Compare ``N(TB)`` with ``Dec N(B)`` and the projection with ``D1``.

    A 1-cell ``(φ, g) : f -> f'`` of TB, with ``φ : f ⇒ f'∘g``, goes to the
    2-simplex ``(f', f, g, φ^{-1})`` of ``N(B)``; higher simplices are
    matched through their faces.
    """
    TB = tangent_bicategory(B)
    NT = duskin_nerve(TB, cap)
    NB = duskin_nerve(B, cap + 1)
    bundle = decalage(NB)
    dec = bundle.dec
    rep = VerificationReport(f"décalage comparison for {B.name}")
    comps = [{f: f for f in NT.level(0)}]
    c1 = {}
    for c, (phi, g, fp) in TB.decode1.items():
        inv = B.vinverse(phi)
        f = B.s1(phi)
        c1[c] = tuple_id((fp, f, g, inv))
    comps.append(c1)
    ambiguous = None
    for n in range(2, cap + 1):
        index: dict = {}
        for y in dec.level(n):
            index.setdefault(dec.faces(n, y), []).append(y)
        comp = {}
        for x in NT.level(n):
            key = tuple(comps[n - 1][z] for z in NT.faces(n, x))
            hits = index.get(key, [])
            if len(hits) != 1:
                ambiguous = ambiguous or {"n": n, "simplex": x, "matches": len(hits)}
                hits = hits or [None]
            comp[x] = hits[0]
        comps.append(comp)
    rep.add("simplices matched by faces", ambiguous is None, ambiguous)
    for n, comp in enumerate(comps):
        missing = [x for x, y in comp.items() if y not in dec.level_set(n)]
        if missing:
            rep.add(f"level {n} lands in Dec", False, missing[0])
            return DecalageComparison(None, rep)
    iso = SimplicialMap(NT, dec, comps, "comparison")
    rep.add("comparison is an isomorphism", is_isomorphism(iso), None,
            f"sizes {NT.sizes()} vs {dec.sizes(cap)}")
    proj = nerve_map(canonical_projection(self_action(B), TB), NT, duskin_nerve(B, cap))
    bad = None
    for n in range(cap + 1):
        for x in NT.level(n):
            if proj.apply(n, x) != bundle.D1.apply(n, iso.apply(n, x)):
                bad = {"n": n, "simplex": x}
                break
        if bad:
            break
    rep.add("projection nerve = D1 after comparison", bad is None, bad)
    return DecalageComparison(iso, rep)
