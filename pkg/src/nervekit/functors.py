"""Truncation, coskeleton, skeleton and décalage, plus contractions.

Each endofunctor acts on tables and on simplicial maps. Kernel-level
simplices get the canonical tuple ids of their faces; formal degeneracies
in a skeleton get ids ``(z,s_j,...)`` built from a nondegenerate simplex
and the normalized codegeneracy word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionOutOfRange,
    MalformedTable,
    NervekitError,
    NotAspherical,
    VerificationReport,
)
from .simplicial import (
    TRUNCATED,
    AugmentedSimplexTable,
    Contraction,
    Coskeletal,
    MonotoneMap,
    SimplexTable,
    SimplicialMap,
    all_monotone,
    apply_monotone,
    constant_complex,
    factorize_monotone,
    is_aspherical,
    kernel_from,
    simplicial_kernel,
    tuple_id,
    validate_contraction,
    validate_map,
)


class ContractionFailed(NervekitError):
    pass


# ---------------------------------------------------------------------------
# truncation


def truncate(X: SimplexTable, n: int) -> SimplexTable:
    if not 0 <= n <= X.dim_cap:
        raise DimensionOutOfRange(f"cannot truncate dim_cap {X.dim_cap} at {n}")
    levels = [X.level(m) for m in range(n + 1)]
    face = [{}] + [X.face_table(m) for m in range(1, n + 1)]
    deg = [X.degeneracy_table(m) for m in range(n)]
    T = SimplexTable(levels, face, deg, TRUNCATED, f"tr^{n}({X.name})")
    return T


def truncate_map(f: SimplicialMap, n: int) -> SimplicialMap:
    return SimplicialMap(truncate(f.source, n), truncate(f.target, n),
                         [f.component(m) for m in range(n + 1)])


# ---------------------------------------------------------------------------
# coskeleton


def _extend_by_kernels(levels, face, deg, start, new_cap, aug=None):
    """Append kernel levels ``start..new_cap`` to raw tables, in place.

    ``aug`` (a vertex -> augmentation map) makes level 1 the fibre product.
    """
    for m in range(start, new_cap + 1):
        below = levels[m - 1]
        if m - 1 >= 1:
            F = {y: face[m - 1][y] for y in below}
        elif aug is not None:
            F = {y: (aug[y],) for y in below}
        else:
            F = None
        tuples = kernel_from(below, F, m)
        ids = [tuple_id(t) for t in tuples]
        if len(set(ids)) != len(ids):
            raise MalformedTable(f"kernel ids at level {m} are ambiguous; rename simplices")
        levels.append(sorted(ids))
        face.append(dict(zip(ids, tuples)))
        present = set(ids)
        k = m - 1
        tab = {}
        for y in below:
            out = []
            for i in range(k + 1):
                fs = []
                for j in range(k + 2):
                    if j < i:
                        fs.append(deg[k - 1][face[k][y][j]][i - 1])
                    elif j in (i, i + 1):
                        fs.append(y)
                    else:
                        fs.append(deg[k - 1][face[k][y][j - 1]][i])
                sid = tuple_id(fs)
                if sid not in present:
                    raise MalformedTable(f"canonical degeneracy of {y} is not a kernel element")
                out.append(sid)
            tab[y] = tuple(out)
        deg.append(tab)


def coskeleton(X: SimplexTable, n: int, new_cap: int) -> SimplexTable:
    """``cosk^n(tr^n X)`` stored explicitly up to ``new_cap``."""
    if not 0 <= n <= X.dim_cap or new_cap < n:
        raise DimensionOutOfRange(f"coskeleton needs 0 <= n <= dim_cap and n <= new_cap (n={n})")
    levels = [list(X.level(m)) for m in range(n + 1)]
    face = [{}] + [dict(X.face_table(m)) for m in range(1, n + 1)]
    deg = [dict(X.degeneracy_table(m)) for m in range(n)]
    _extend_by_kernels(levels, face, deg, n + 1, new_cap)
    return SimplexTable(levels, face, deg, Coskeletal(n), f"cosk^{n}({X.name})")


def coskeleton_unit(X: SimplexTable, n: int, new_cap: int | None = None) -> SimplicialMap:
    """The unit ``X -> cosk^n tr^n X``: identity up to n, boundaries above."""
    new_cap = X.dim_cap if new_cap is None else max(new_cap, n)
    C = coskeleton(X, n, max(new_cap, X.dim_cap))
    comps = [{x: x for x in X.level(m)} for m in range(n + 1)]
    for m in range(n + 1, X.dim_cap + 1):
        comps.append({x: tuple_id(comps[m - 1][y] for y in X.faces(m, x)) for x in X.level(m)})
    return SimplicialMap(X, C, comps, f"unit cosk^{n}")


def coskeleton_map(f: SimplicialMap, n: int, new_cap: int) -> SimplicialMap:
    """``cosk^n(tr^n f)``: components above n act on faces."""
    S = coskeleton(f.source, n, new_cap)
    T = coskeleton(f.target, n, new_cap)
    comps = [f.component(m) for m in range(n + 1)]
    for m in range(n + 1, new_cap + 1):
        comps.append({x: tuple_id(comps[m - 1][y] for y in S.faces(m, x)) for x in S.level(m)})
    return SimplicialMap(S, T, comps)


def augmented_coskeleton(A: AugmentedSimplexTable, n: int, new_cap: int) -> AugmentedSimplexTable:
    """Augmented coskeleton for ``n in {-1, 0, ...}`` (the kernel of the augmentation).

    ``n = -1`` gives the constant complex on ``X_{-1}``; ``n = 0`` gives
    the iterated fibre products ``X_0 ×_{X_{-1}} ... ×_{X_{-1}} X_0``.
    The result has the truncated policy, since the fibre-product levels
    are not plain kernels.
    """
    if n < -1 or n > A.dim_cap or new_cap < max(n, 0):
        raise DimensionOutOfRange(f"augmented coskeleton at {n} out of range")
    if n == -1:
        levels = [list(A.aug_set)]
        aug = {a: a for a in A.aug_set}
        face, deg = [{}], []
        _extend_by_kernels(levels, face, deg, 1, new_cap, aug)
    else:
        X = A.base
        levels = [list(X.level(m)) for m in range(n + 1)]
        face = [{}] + [dict(X.face_table(m)) for m in range(1, n + 1)]
        deg = [dict(X.degeneracy_table(m)) for m in range(n)]
        aug = dict(A.aug)
        _extend_by_kernels(levels, face, deg, n + 1, new_cap, aug)
    base = SimplexTable(levels, face, deg, TRUNCATED, f"cosk_aug^{n}")
    return AugmentedSimplexTable(base, A.aug_set, aug)


# ---------------------------------------------------------------------------
# skeleton


def _surjections(m: int, k: int) -> list:
    return [f for f in all_monotone(m, k) if f.is_surjective()]


def _word(sigma: MonotoneMap) -> tuple:
    return factorize_monotone(sigma).codegeneracies


def _formal_id(z: str, sigma: MonotoneMap) -> str:
    return tuple_id([z] + [f"s{j}" for j in _word(sigma)])


class _EZ:
    """Eilenberg-Zilber decompositions of the simplices of X up to level n."""

    def __init__(self, X: SimplexTable, n: int):
        self.X = X
        self.n = n
        self.memo: dict = {}

    def nondegenerate(self, k: int, y: str) -> bool:
        return self.decomp(k, y)[1].source == self.decomp(k, y)[1].target

    def decomp(self, k: int, y: str):
        key = (k, y)
        if key in self.memo:
            return self.memo[key]
        out = (y, MonotoneMap.identity(k))
        if k >= 1:
            for i in range(k):
                y1 = self.X.d(k, i, y)
                if self.X.s(k - 1, i, y1) == y:
                    z, tau = self.decomp(k - 1, y1)
                    out = (z, tau.compose(MonotoneMap.codegeneracy(k - 1, i)))
                    break
        self.memo[key] = out
        return out


def skeleton(X: SimplexTable, n: int, new_cap: int) -> SimplexTable:
    """``sk^n(tr^n X)`` up to ``new_cap``: only formal degeneracies above n."""
    if not 0 <= n <= X.dim_cap or new_cap < n:
        raise DimensionOutOfRange(f"skeleton needs 0 <= n <= dim_cap and n <= new_cap (n={n})")
    ez = _EZ(X, n)
    nondeg = {k: [y for y in X.level(k) if ez.nondegenerate(k, y)] for k in range(n + 1)}
    elems: dict = {}  # (m, id) -> (z, k, sigma) for m > n

    def normal(m: int, y_level: int, y: str, sigma: MonotoneMap) -> str:
        # the element X(sigma) applied formally to the simplex y of level <= n
        z, tau = ez.decomp(y_level, y)
        tot = tau.compose(sigma)
        if tot.source <= n:
            return apply_monotone(X, tot, z)
        return _formal_id(z, tot)

    levels = [list(X.level(m)) for m in range(n + 1)]
    face = [{}] + [dict(X.face_table(m)) for m in range(1, n + 1)]
    deg = [dict(X.degeneracy_table(m)) for m in range(n)]
    for m in range(n + 1, new_cap + 1):
        ids = []
        for k in range(n + 1):
            for sigma in _surjections(m, k):
                for z in nondeg[k]:
                    sid = _formal_id(z, sigma)
                    elems[(m, sid)] = (z, k, sigma)
                    ids.append(sid)
        if len(set(ids)) != len(ids):
            raise MalformedTable("formal degeneracy ids are ambiguous; rename simplices")
        levels.append(sorted(ids))
        tab = {}
        for sid in ids:
            z, k, sigma = elems[(m, sid)]
            fs = []
            for i in range(m + 1):
                g = sigma.compose(MonotoneMap.coface(m, i))  # [m-1] -> [k]
                image = sorted(set(g.values))
                r = len(image) - 1
                mono = MonotoneMap(r, k, tuple(image))
                epi = MonotoneMap(m - 1, r, tuple(image.index(v) for v in g.values))
                w = apply_monotone(X, mono, z)
                fs.append(normal(m - 1, r, w, epi))
            tab[sid] = tuple(fs)
        face.append(tab)
    for m in range(n, new_cap):
        tab = {}
        for y in levels[m]:
            if m <= n:
                src = (y, m, MonotoneMap.identity(m))
            else:
                src = elems[(m, y)]
            z, k, sigma = src
            tab[y] = tuple(
                normal(m + 1, k, z, sigma.compose(MonotoneMap.codegeneracy(m, i))) for i in range(m + 1)
            )
        if m < len(deg):
            deg[m] = tab
        else:
            deg.append(tab)
    return SimplexTable(levels, face, deg, TRUNCATED, f"sk^{n}({X.name})")


def nondegenerate_count(X: SimplexTable, m: int) -> int:
    ez = _EZ(X, m)
    return sum(1 for y in X.level(m) if ez.nondegenerate(m, y))


def skeleton_map(f: SimplicialMap, n: int, new_cap: int) -> SimplicialMap:
    """``sk^n(tr^n f)``: a formal degeneracy ``(z, σ)`` goes to ``σ^*(f z)`` normalized."""
    S = skeleton(f.source, n, new_cap)
    T = skeleton(f.target, n, new_cap)
    ezS = _EZ(f.source, n)
    ezT = _EZ(f.target, n)
    comps = [f.component(m) for m in range(n + 1)]
    for m in range(n + 1, new_cap + 1):
        comp = {}
        for k in range(n + 1):
            for sigma in _surjections(m, k):
                for z in f.source.level(k):
                    if not ezS.nondegenerate(k, z):
                        continue
                    w, tau = ezT.decomp(k, f.apply(k, z))
                    comp[_formal_id(z, sigma)] = _formal_id(w, tau.compose(sigma))
        comps.append(comp)
    return SimplicialMap(S, T, comps)


# ---------------------------------------------------------------------------
# décalage


@dataclass
class DecalageBundle:
    """``Dec X`` with its augmentation over ``X_0`` and the comparison maps.

    ``S1`` is only a levelwise section of ``D1``; it does not commute with
    the top face, so it is kept as a plain table rather than validated as a
    simplicial map.
    """

    source: SimplexTable
    dec: SimplexTable
    aug: AugmentedSimplexTable
    constant: SimplexTable
    D0: SimplicialMap
    S0: SimplicialMap
    D1: SimplicialMap
    S1: list

    def validate(self) -> VerificationReport:
        rep = VerificationReport(f"décalage of {self.source.name}".strip())
        from .simplicial import validate_simplicial

        rep.extend(validate_simplicial(self.dec), "Dec: ")
        rep.extend(validate_contraction(self.aug), "Dec ")
        rep.extend(validate_map(self.D0), "D0 ")
        rep.extend(validate_map(self.S0), "S0 ")
        rep.extend(validate_map(self.D1), "D1 ")
        w = None
        for n, comp in enumerate(self.S1):
            for x, y in comp.items():
                if self.D1.apply(n, y) != x:
                    w = {"n": n, "x": x}
                    break
            if w:
                break
        rep.add("D1 S1 = id levelwise", w is None, w)
        w = None
        for n in range(self.dec.dim_cap + 1):
            for x in self.constant.level(n):
                if self.D0.apply(n, self.S0.apply(n, x)) != x:
                    w = {"n": n, "x": x}
                    break
            if w:
                break
        rep.add("D0 S0 = id", w is None, w)
        return rep


def decalage(X: SimplexTable) -> DecalageBundle:
    """Drop the bottom level and the last face and degeneracy of every level."""
    D = X.dim_cap
    if D < 1:
        raise DimensionOutOfRange("décalage needs dim_cap >= 1")
    levels = [X.level(n + 1) for n in range(D)]
    face = [{}] + [{x: X.faces(n + 1, x)[: n + 1] for x in X.level(n + 1)} for n in range(1, D)]
    deg = [{x: X.degens(n + 1, x)[: n + 1] for x in X.level(n + 1)} for n in range(D - 1)]
    dec = SimplexTable(levels, face, deg, TRUNCATED, f"Dec({X.name})")
    s0 = {a: X.s(0, 0, a) for a in X.level(0)}
    s = [{x: X.s(n + 1, n + 1, x) for x in X.level(n + 1)} for n in range(D - 1)]
    aug = AugmentedSimplexTable(dec, X.level(0), {x: X.d(1, 0, x) for x in X.level(1)}, Contraction(s0, s))
    const = constant_complex(X.level(0), D - 1)

    def d0_power(n, x):
        for m in range(n + 1, 0, -1):
            x = X.d(m, 0, x)
        return x

    def s0_power(n, a):
        for m in range(n + 1):
            a = X.s(m, 0, a)
        return a

    D0 = SimplicialMap(dec, const, [{x: d0_power(n, x) for x in X.level(n + 1)} for n in range(D)], "D0")
    S0 = SimplicialMap(const, dec, [{a: s0_power(n, a) for a in X.level(0)} for n in range(D)], "S0")
    D1 = SimplicialMap(dec, X, [{x: X.d(n + 1, n + 1, x) for x in X.level(n + 1)} for n in range(D)], "D1")
    S1 = [{x: X.s(n, n, x) for x in X.level(n)} for n in range(D)]
    return DecalageBundle(X, dec, aug, const, D0, S0, D1, S1)


def decalage_map(f: SimplicialMap) -> SimplicialMap:
    """``Dec f`` with components ``f_{n+1}``."""
    S = decalage(f.source).dec
    T = decalage(f.target).dec
    return SimplicialMap(S, T, [f.component(n + 1) for n in range(min(f.cap, S.dim_cap + 1))])


@dataclass
class AugmentedMap:
    """Components indexed from level -1 between augmented complexes."""

    source: AugmentedSimplexTable
    target: AugmentedSimplexTable
    components: dict

    def apply(self, n: int, x: str) -> str:
        return self.components[n][x]


def theta(f: SimplicialMap, A: AugmentedSimplexTable, bundle: DecalageBundle) -> AugmentedMap:
    """Transpose of ``f : U(A) -> X`` into ``A -> Dec X`` using the splitting of A."""
    if A.contraction is None:
        raise ContractionFailed("transpose needs a split augmented source")
    top = min(len(A.contraction.s) - 1, f.cap - 1, bundle.dec.dim_cap)
    comps = {-1: {a: f.apply(0, A.contraction.s0[a]) for a in A.aug_set}}
    for n in range(top + 1):
        comps[n] = {x: f.apply(n + 1, A.contraction.s[n][x]) for x in A.base.level(n)}
    return AugmentedMap(A, bundle.aug, comps)


def theta_inverse(g: AugmentedMap, bundle: DecalageBundle) -> SimplicialMap:
    X = bundle.source
    top = max(g.components)
    comps = [{x: X.d(n + 1, n + 1, y) for x, y in g.components[n].items()} for n in range(top + 1)]
    return SimplicialMap(g.source.base, X, comps)


def validate_augmented_map(g: AugmentedMap) -> VerificationReport:
    """Faces, degeneracies, augmentation and contractions are preserved."""
    A, B = g.source, g.target
    rep = VerificationReport("augmented map")
    top = max(g.components)
    bad = None
    for n in range(0, top + 1):
        for x in A.base.level(n):
            for i in range(n + 1):
                if g.apply(n - 1, A.ext_face(n, i, x)) != B.ext_face(n, i, g.apply(n, x)):
                    bad = {"n": n, "i": i, "x": x}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("commutes with faces and augmentation", bad is None, bad)
    bad = None
    for n in range(-1, top):
        for x in A.level(n):
            for j in range(n + 2):
                if j == n + 1 and (A.contraction is None or B.contraction is None
                                   or n >= len(A.contraction.s) or n >= len(B.contraction.s)):
                    continue
                if j <= n and n >= min(A.dim_cap, B.dim_cap):
                    continue
                if g.apply(n + 1, A.ext_deg(n, j, x)) != B.ext_deg(n, j, g.apply(n, x)):
                    bad = {"n": n, "j": j, "x": x}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("commutes with degeneracies and contraction", bad is None, bad)
    return rep


# ---------------------------------------------------------------------------
# contractions


def _q(A: AugmentedSimplexTable, c0: dict, cs: list, n: int, x: str) -> tuple:
    """``q_{n+1}(x) = (s_n d_0 x, ..., s_n d_n x, x)`` with s_n from the contraction."""
    if n == 0:
        return (c0[A.aug[x]], x)
    return tuple(cs[n - 1][A.base.d(n, i, x)] for i in range(n + 1)) + (x,)


def build_contraction(A: AugmentedSimplexTable) -> AugmentedSimplexTable:
    """Split an aspherical augmented complex by choosing least sections inductively.

    Raises
    ------
    NotAspherical
        Carrying the first level and kernel tuple with no preimage.
    ContractionFailed
        If the chosen sections do not satisfy the split identities.
    """
    X = A.base
    D = X.dim_cap
    for n in range(0, D + 1):
        res = is_aspherical(A, n)
        if not res.ok:
            raise NotAspherical(n, res.witness)
    c0 = {}
    for a in A.aug_set:
        pre = [x for x in X.level(0) if A.aug[x] == a]
        c0[a] = pre[0]
    cs: list = []
    for n in range(0, D):
        # section of δ_{n+1} : X_{n+1} -> K_{n+1}, forced on degenerate simplices
        section: dict = {}
        for y in X.level(n):
            for i in range(n + 1):
                z = X.s(n, i, y)
                b = X.faces(n + 1, z)
                if b not in section or z < section[b]:
                    section[b] = z
        for z in X.level(n + 1):
            b = X.faces(n + 1, z)
            section.setdefault(b, z)
        tab = {}
        for x in X.level(n):
            q = _q(A, c0, cs, n, x)
            if q not in section:
                raise NotAspherical(n + 1, q)
            tab[x] = section[q]
        cs.append(tab)
    out = A.with_contraction(Contraction(c0, cs))
    rep = validate_contraction(out)
    if not rep.ok:
        raise ContractionFailed(f"sections violate {rep.failure.name}: {rep.failure.witness}")
    return out


def closing_equation_holds(A: AugmentedSimplexTable) -> bool:
    """``δ_{n+1} s_{n+1} = q_{n+1}`` at every level of the contraction."""
    c = A.contraction
    for n, tab in enumerate(c.s):
        for x in A.base.level(n):
            if A.base.faces(n + 1, tab[x]) != _q(A, c.s0, c.s, n, x):
                return False
    return True


def identity_contraction(A: AugmentedSimplexTable) -> AugmentedSimplexTable:
    """For ``K(S,0) -> S``: every contraction map is the identity."""
    c0 = {a: a for a in A.aug_set}
    cs = [{x: x for x in A.base.level(n)} for n in range(A.dim_cap)]
    return A.with_contraction(Contraction(c0, cs))


def kernel_size(X: SimplexTable, n: int) -> int:
    return len(simplicial_kernel(X, n))
