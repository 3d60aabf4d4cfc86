"""Classical nerves of categories and Duskin nerves of bicategories.

A Duskin 2-simplex is a tuple ``(f12, f02, f01, β)`` with
``β : f12∘f01 ⇒ f02``; its faces are ``(f12, f02, f01)``. A 3-simplex is a
compatible quadruple of 2-simplices ``(β123, β023, β013, β012)`` subject to

    β023 · (f23 ∘ β012) · α(f23, f12, f01) = β013 · (β123 ∘ f01)

where ``f23 ∘ β`` and ``β ∘ f01`` are whiskerings. Higher levels follow
the 3-coskeletal policy.
"""

from __future__ import annotations

from .bicategory import FiniteBicategory, StrictHomomorphism, validate_bicategory, validate_homomorphism
from .category import FiniteCategory
from .errors import InvalidBicategory, MalformedTable, NotAHomomorphism, VerificationReport
from .functors import _extend_by_kernels
from .simplicial import Coskeletal, SimplexTable, SimplicialMap, kernel_from, tuple_id


class NerveTable(SimplexTable):
    """A Duskin nerve remembering its bicategory and the decoding of ids."""

    bicategory: FiniteBicategory
    decode2: dict
    decode3: dict

    def simplex2(self, x: str) -> tuple:
        """``(f12, f02, f01, β)`` of a 2-simplex."""
        return self.decode2[x]

    def sidecar(self) -> dict:
        return {
            "level2": {x: dict(zip(("f12", "f02", "f01", "beta"), v)) for x, v in sorted(self.decode2.items())},
            "level3": {x: dict(zip(("d0", "d1", "d2", "d3"), v)) for x, v in sorted(self.decode3.items())},
        }


# ---------------------------------------------------------------------------
# classical nerve


def classical_nerve(C: FiniteCategory, cap: int = 3) -> SimplexTable:
    """Strings of composable arrows ``(a1, ..., an)`` with ``a_i : x_{i-1} -> x_i``."""
    strings = [[(x,) for x in C.objects], [(m,) for m in C.morphisms]]
    for n in range(2, cap + 1):
        nxt = []
        for s in strings[n - 1]:
            for m in C.morphisms:
                if C.src(m) == C.tgt(s[-1]):
                    nxt.append(s + (m,))
        strings.append(nxt)
    strings = strings[: cap + 1]

    def sid(s):
        return s[0] if len(s) == 1 else tuple_id(s)

    def vertex(s, i):
        return C.src(s[0]) if i == 0 else C.tgt(s[i - 1])

    levels = [[sid(s) for s in lv] for lv in strings]
    face = [{}]
    for n in range(1, cap + 1):
        tab = {}
        for s in strings[n]:
            if n == 1:
                tab[sid(s)] = (C.tgt(s[0]), C.src(s[0]))
                continue
            fs = [sid(s[1:])]
            for i in range(1, n):
                fs.append(sid(s[: i - 1] + (C.comp(s[i], s[i - 1]),) + s[i + 1 :]))
            fs.append(sid(s[:-1]))
            tab[sid(s)] = tuple(fs)
        face.append(tab)
    deg = []
    for n in range(cap):
        tab = {}
        for s in strings[n]:
            if n == 0:
                tab[s[0]] = (C.identity[s[0]],)
                continue
            tab[sid(s)] = tuple(sid(s[:i] + (C.identity[vertex(s, i)],) + s[i:]) for i in range(n + 1))
        deg.append(tab)
    X = SimplexTable(levels, face, deg, Coskeletal(min(2, cap)), f"N({C.name})")
    return X


# ---------------------------------------------------------------------------
# Duskin nerve


def nerve_identity_holds(B: FiniteBicategory, d0, d1, d2, d3) -> bool:
    """The 3-simplex identity for decoded faces ``d_i = (f, f, f, β)``."""
    f23, f13, f12, b123 = d0
    _f23, f03, f02, b023 = d1
    _f13, _f03, f01, b013 = d2
    _f12, _f02, _f01, b012 = d3
    lhs = B.vcomp(b023, B.vcomp(B.whisker_left(f23, b012), B.assoc(f23, f12, f01)))
    rhs = B.vcomp(b013, B.whisker_right(b123, f01))
    return lhs == rhs


def duskin_nerve(B: FiniteBicategory, cap: int = 3, validate: bool = True) -> NerveTable:
    if cap < 3:
        raise MalformedTable("the Duskin nerve is built at least up to level 3")
    if validate:
        rep = validate_bicategory(B)
        if not rep.ok:
            raise InvalidBicategory(f"{B.name}: {rep.axiom} fails at {rep.witness}")
    lv0 = list(B.objects)
    lv1 = list(B.one_cells)
    face1 = {f: (B.t0(f), B.s0(f)) for f in lv1}
    deg0 = {x: (B.id1(x),) for x in lv0}
    decode2 = {}
    face2 = {}
    for f01 in lv1:
        for f12 in B._from(B.t0(f01)):
            comp = B.hcomp1(f12, f01)
            for beta in B.cells_from(comp):
                f02 = B.t1(beta)
                x = tuple_id((f12, f02, f01, beta))
                decode2[x] = (f12, f02, f01, beta)
                face2[x] = (f12, f02, f01)
    if len(decode2) != len(set(decode2)):
        raise MalformedTable("2-simplex ids are ambiguous")
    deg1 = {}
    for f, (x, y) in B.one_cells.items():
        s0 = tuple_id((f, f, B.id1(x), B.runitor(f)))
        s1 = tuple_id((B.id1(y), f, f, B.lunitor(f)))
        deg1[f] = (s0, s1)
    lv2 = sorted(decode2)
    quads = kernel_from(lv2, face2, 3)
    decode3 = {}
    face3 = {}
    for q in quads:
        if nerve_identity_holds(B, *(decode2[y] for y in q)):
            x = tuple_id(q)
            decode3[x] = q
            face3[x] = q
    levels = [lv0, lv1, lv2, sorted(decode3)]
    face = [{}, face1, face2, face3]
    deg = [deg0, deg1]
    # degeneracies 2 -> 3 from the identities; they must satisfy the 3-simplex identity
    tab = {}
    for y in lv2:
        out = []
        for i in range(3):
            fs = []
            for j in range(4):
                if j < i:
                    fs.append(deg1[face2[y][j]][i - 1])
                elif j in (i, i + 1):
                    fs.append(y)
                else:
                    fs.append(deg1[face2[y][j - 1]][i])
            sid = tuple_id(fs)
            if sid not in decode3:
                raise InvalidBicategory(f"degenerate 3-simplex s_{i}({y}) violates the nerve identity")
            out.append(sid)
        tab[y] = tuple(out)
    deg.append(tab)
    if cap > 3:
        _extend_by_kernels(levels, face, deg, 4, cap)
    N = NerveTable(levels, face, deg, Coskeletal(3), f"N2({B.name})")
    N.bicategory = B
    N.decode2 = decode2
    N.decode3 = decode3
    return N


def nerve_map(F: StrictHomomorphism, source: NerveTable | None = None,
              target: NerveTable | None = None, cap: int = 3) -> SimplicialMap:
    """Levelwise transport of a strict homomorphism."""
    rep = validate_homomorphism(F)
    if not rep.ok:
        raise NotAHomomorphism(f"{rep.axiom} fails at {rep.witness}")
    S = source if source is not None else duskin_nerve(F.source, cap)
    T = target if target is not None else duskin_nerve(F.target, cap)
    comps = [
        {x: F.F0[x] for x in S.level(0)},
        {f: F.F1[f] for f in S.level(1)},
    ]
    c2 = {}
    for x, (f12, f02, f01, b) in S.decode2.items():
        c2[x] = tuple_id((F.F1[f12], F.F1[f02], F.F1[f01], F.F2[b]))
    comps.append(c2)
    top = min(S.dim_cap, T.dim_cap)
    for n in range(3, top + 1):
        comps.append({x: tuple_id(comps[n - 1][y] for y in S.faces(n, x)) for x in S.level(n)})
    return SimplicialMap(S, T, comps, f"N2({F.name})" if F.name else "")


def cocycle_check(N: NerveTable) -> VerificationReport:
    """The 3-simplex identity on every 3-simplex, read through the face table."""
    B = N.bicategory
    rep = VerificationReport(f"cocycle identity on {N.name}")
    bad = None
    for x in N.level(3):
        fs = N.faces(3, x)
        try:
            ok = nerve_identity_holds(B, *(N.decode2[y] for y in fs))
        except Exception:
            ok = False
        if not ok:
            bad = {"simplex": x, "faces": list(fs)}
            break
    rep.add("β023·(f23∘β012)·α = β013·(β123∘f01)", bad is None, bad,
            f"{len(N.level(3))} three-simplices")
    return rep


def relabel_classical(N: NerveTable, C: FiniteCategory) -> list:
    """For a locally discrete bicategory, the id relabeling to ``classical_nerve(C)``."""
    rel = [{x: x for x in N.level(0)}, {f: f for f in N.level(1)}]
    rel.append({x: tuple_id((f01, f12)) for x, (f12, _f02, f01, _b) in N.decode2.items()})
    r3 = {}
    for x, (y0, _y1, _y2, y3) in N.decode3.items():
        f12, _f02, f01, _b = N.decode2[y3]
        f23 = N.decode2[y0][0]
        r3[x] = tuple_id((f01, f12, f23))
    rel.append(r3)
    return rel


def coskeletality_report(X: SimplexTable, upto: int = 4) -> VerificationReport:
    """Which boundary maps ``δ_n : X_n -> K_n`` are bijective, and which horn dimensions are exact.

    An n-coskeletal object has δ_m bijective for all m > n; exact horns in a
    dimension are recorded alongside, since the two notions are easy to
    conflate for nerves of bigroupoids.
    """
    from collections import Counter

    from .simplicial import classify, simplicial_kernel

    rep = VerificationReport(f"coskeletality profile of {X.name}")
    for n in range(2, upto + 1):
        K = simplicial_kernel(X, n)
        counts = Counter(X.faces(n, x) for x in X.level(n))
        bad = next((t for t in K.tuples if counts[t] != 1), None)
        rep.add(f"delta_{n} bijective", bad is None,
                None if bad is None else {"kernel_tuple": list(bad), "preimages": counts[bad]})
    c = classify(X, upto)
    for n in range(3, upto + 1):
        bad = next(((n, k) for k in range(n + 1) if not c.grid[(n, k)].exact), None)
        rep.add(f"horns exact in dimension {n}", bad is None, bad)
    return rep
