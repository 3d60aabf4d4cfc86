"""Finite groups, monoids and categories given by explicit tables."""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Mapping

from .errors import MalformedTable, NotGroupoid, VerificationReport


class FiniteMonoid:
    """A monoid on string ids with a dense multiplication table."""

    def __init__(self, elements: Iterable[str], mul: Mapping[tuple, str], unit: str, name: str = ""):
        self.elements = tuple(elements)
        self.mul_table = dict(mul)
        self.unit = unit
        self.name = name
        es = set(self.elements)
        if unit not in es:
            raise MalformedTable(f"unit {unit} is not an element")
        for a, b in product(self.elements, repeat=2):
            r = self.mul_table.get((a, b))
            if r not in es:
                raise MalformedTable(f"product {a}*{b} missing or undeclared")

    def mul(self, a: str, b: str) -> str:
        return self.mul_table[(a, b)]

    def is_associative(self) -> bool:
        m = self.mul
        return all(m(m(a, b), c) == m(a, m(b, c)) for a, b, c in product(self.elements, repeat=3))

    def inverse(self, a: str) -> str | None:
        for b in self.elements:
            if self.mul(a, b) == self.unit and self.mul(b, a) == self.unit:
                return b
        return None

    def is_group(self) -> bool:
        return all(self.inverse(a) is not None for a in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or len(self)})"


class FiniteGroup(FiniteMonoid):
    def __init__(self, elements, mul, unit, name: str = ""):
        super().__init__(elements, mul, unit, name)
        if not self.is_associative():
            raise MalformedTable(f"group {name} is not associative")
        self._inv = {}
        for a in self.elements:
            b = FiniteMonoid.inverse(self, a)
            if b is None:
                raise MalformedTable(f"{a} has no inverse in {name}")
            self._inv[a] = b

    def inverse(self, a: str) -> str:
        return self._inv[a]

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a, b in product(self.elements, repeat=2))


def cyclic_group(n: int) -> FiniteGroup:
    els = [str(i) for i in range(n)]
    mul = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    return FiniteGroup(els, mul, "0", f"Z/{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(["e"], {("e", "e"): "e"}, "e", "1")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    els = [g + h if len(g) == len(h) == 1 else f"{g}.{h}" for g in G.elements for h in H.elements]
    key = {}
    for g in G.elements:
        for h in H.elements:
            key[(g, h)] = g + h if len(g) == len(h) == 1 else f"{g}.{h}"
    mul = {}
    for (g1, h1), a in key.items():
        for (g2, h2), b in key.items():
            mul[(a, b)] = key[(G.mul(g1, g2), H.mul(h1, h2))]
    P = FiniteGroup(els, mul, key[(G.unit, H.unit)], f"{G.name}x{H.name}")
    P.pairs = key
    return P


def symmetric_group(n: int) -> FiniteGroup:
    perms = list(permutations(range(n)))
    name = lambda p: "".join(str(i) for i in p)
    mul = {}
    for p in perms:
        for q in perms:
            # (p*q)(i) = p(q(i))
            mul[(name(p), name(q))] = name(tuple(p[q[i]] for i in range(n)))
    return FiniteGroup([name(p) for p in perms], mul, name(tuple(range(n))), f"S{n}")


def multiplicative_monoid_01() -> FiniteMonoid:
    mul = {(a, b): str(int(a) * int(b)) for a in "01" for b in "01"}
    return FiniteMonoid(["0", "1"], mul, "1", "({0,1},*)")


def hom_group(G: FiniteGroup, K: FiniteGroup) -> list:
    """All group homomorphisms ``G -> K`` as dicts, by brute force."""
    out = []
    for vals in product(K.elements, repeat=len(G)):
        f = dict(zip(G.elements, vals))
        if all(f[G.mul(a, b)] == K.mul(f[a], f[b]) for a, b in product(G.elements, repeat=2)):
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# categories


class FiniteCategory:
    """Objects, morphisms ``id -> (src, tgt)``, identities and ``comp[(g, f)] = g∘f``."""

    def __init__(self, objects: Iterable[str], morphisms: Mapping[str, tuple], identity: Mapping[str, str],
                 comp: Mapping[tuple, str], name: str = ""):
        self.objects = tuple(sorted(objects))
        self.morphisms = {m: tuple(st) for m, st in sorted(morphisms.items())}
        self.identity = dict(identity)
        self.comp_table = dict(comp)
        self.name = name
        obs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in obs or t not in obs:
                raise MalformedTable(f"morphism {m} has undeclared endpoint")
        for x in self.objects:
            if self.identity.get(x) not in self.morphisms:
                raise MalformedTable(f"identity of {x} missing or undeclared")
        for (g, f), r in self.comp_table.items():
            if g not in self.morphisms or f not in self.morphisms or r not in self.morphisms:
                raise MalformedTable(f"composite {g}∘{f} names an undeclared morphism")
        self._hom: dict = {}
        for m, (s, t) in self.morphisms.items():
            self._hom.setdefault((s, t), []).append(m)

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def hom(self, x: str, y: str) -> list:
        return self._hom.get((x, y), [])

    def comp(self, g: str, f: str) -> str:
        return self.comp_table[(g, f)]

    def composable_pairs(self):
        for f, (s, t) in self.morphisms.items():
            for g in self.morphisms:
                if self.morphisms[g][0] == t:
                    yield g, f

    def inverse(self, m: str) -> str | None:
        s, t = self.morphisms[m]
        for n in self.hom(t, s):
            if self.comp(n, m) == self.identity[s] and self.comp(m, n) == self.identity[t]:
                return n
        return None

    def is_groupoid(self) -> bool:
        return all(self.inverse(m) is not None for m in self.morphisms)

    def require_groupoid(self) -> None:
        for m in self.morphisms:
            if self.inverse(m) is None:
                raise NotGroupoid(f"morphism {m} of {self.name} is not invertible")

    def is_discrete(self) -> bool:
        return all(m == self.identity[s] for m, (s, _t) in self.morphisms.items())

    def __repr__(self) -> str:
        return f"FiniteCategory({self.name}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(C: FiniteCategory) -> VerificationReport:
    rep = VerificationReport(f"category {C.name}".strip())
    w = None
    for x in C.objects:
        i = C.identity[x]
        if C.morphisms[i] != (x, x):
            w = x
            break
    rep.add("identity typing", w is None, w)
    w = None
    for g, f in C.composable_pairs():
        r = C.comp_table.get((g, f))
        if r is None or C.morphisms[r] != (C.src(f), C.tgt(g)):
            w = (g, f)
            break
    rep.add("composition total and typed", w is None, w)
    if w is not None:
        return rep
    w = None
    for f, (s, t) in C.morphisms.items():
        if C.comp(C.identity[t], f) != f or C.comp(f, C.identity[s]) != f:
            w = f
            break
    rep.add("unit laws", w is None, w)
    w = None
    for g, f in C.composable_pairs():
        for h in (h for h in C.morphisms if C.src(h) == C.tgt(g)):
            if C.comp(h, C.comp(g, f)) != C.comp(C.comp(h, g), f):
                w = (h, g, f)
                break
        if w:
            break
    rep.add("associativity", w is None, w)
    return rep


def monoid_category(M: FiniteMonoid, obj: str = "*") -> FiniteCategory:
    """The one-object category with morphisms the elements of M."""
    morphs = {a: (obj, obj) for a in M.elements}
    comp = {(b, a): M.mul(b, a) for a in M.elements for b in M.elements}
    return FiniteCategory([obj], morphs, {obj: M.unit}, comp, f"B{M.name}")


def poset_category(n: int) -> FiniteCategory:
    """The ordinal ``[n]`` with arrows ``ij`` for ``i <= j``."""
    obs = [str(i) for i in range(n + 1)]
    morphs = {f"{i}{j}": (str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)}
    comp = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                comp[(f"{j}{k}", f"{i}{j}")] = f"{i}{k}"
    return FiniteCategory(obs, morphs, {str(i): f"{i}{i}" for i in range(n + 1)}, comp, f"[{n}]")


def codiscrete_groupoid(objects: Iterable[str]) -> FiniteCategory:
    """Exactly one arrow ``x>y`` between any two objects."""
    obs = sorted(objects)
    morphs = {f"{x}>{y}": (x, y) for x in obs for y in obs}
    comp = {(f"{y}>{z}", f"{x}>{y}"): f"{x}>{z}" for x in obs for y in obs for z in obs}
    return FiniteCategory(obs, morphs, {x: f"{x}>{x}" for x in obs}, comp, f"codisc{len(obs)}")


def discrete_category(objects: Iterable[str]) -> FiniteCategory:
    obs = sorted(objects)
    return FiniteCategory(obs, {f"1{x}": (x, x) for x in obs}, {x: f"1{x}" for x in obs},
                          {(f"1{x}", f"1{x}"): f"1{x}" for x in obs}, f"disc{len(obs)}")


def translation_groupoid(G: FiniteGroup) -> FiniteCategory:
    """Objects G, an arrow ``g -> hg`` labelled ``h@g`` for every h."""
    obs = list(G.elements)
    morphs = {f"{h}@{g}": (g, G.mul(h, g)) for g in obs for h in obs}
    comp = {}
    for g in obs:
        for h in obs:
            for k in obs:
                comp[(f"{k}@{G.mul(h, g)}", f"{h}@{g}")] = f"{G.mul(k, h)}@{g}"
    return FiniteCategory(obs, morphs, {g: f"{G.unit}@{g}" for g in obs}, comp, f"E{G.name}")


def disjoint_union(C: FiniteCategory, D: FiniteCategory, tags=("L", "R")) -> FiniteCategory:
    """Coproduct of categories, ids prefixed by the tags."""
    a, b = tags
    obs = [a + x for x in C.objects] + [b + x for x in D.objects]
    morphs = {a + m: (a + s, a + t) for m, (s, t) in C.morphisms.items()}
    morphs.update({b + m: (b + s, b + t) for m, (s, t) in D.morphisms.items()})
    ident = {a + x: a + i for x, i in C.identity.items()}
    ident.update({b + x: b + i for x, i in D.identity.items()})
    comp = {(a + g, a + f): a + r for (g, f), r in C.comp_table.items()}
    comp.update({(b + g, b + f): b + r for (g, f), r in D.comp_table.items()})
    return FiniteCategory(obs, morphs, ident, comp, f"{C.name}+{D.name}")


def free_category_on_graph(objects, arrows: Mapping[str, tuple]) -> FiniteCategory:
    """Free category on an acyclic graph; paths are named by joining arrow ids with '.'."""
    obs = sorted(objects)
    paths = {f"1{x}": (x, x, ()) for x in obs}
    frontier = [((a,), s, t) for a, (s, t) in arrows.items()]
    while frontier:
        nxt = []
        for word, s, t in frontier:
            key = ".".join(reversed(word))
            if len(paths) > 200:
                raise MalformedTable("graph has too many paths (cycle?)")
            paths[key] = (s, t, word)
            for a, (s2, t2) in arrows.items():
                if s2 == t:
                    nxt.append((word + (a,), s, t2))
        frontier = nxt
    by_word = {w: k for k, (_s, _t, w) in paths.items() if w}
    morphs = {k: (s, t) for k, (s, t, _w) in paths.items()}
    comp = {}
    for kf, (sf, tf, wf) in paths.items():
        for kg, (sg, tg, wg) in paths.items():
            if sg != tf:
                continue
            if not wf:
                comp[(kg, kf)] = kg
            elif not wg:
                comp[(kg, kf)] = kf
            else:
                comp[(kg, kf)] = by_word[wf + wg]
    return FiniteCategory(obs, morphs, {x: f"1{x}" for x in obs}, comp, "free")


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    def j(a, b):
        return f"{a}|{b}"

    obs = [j(x, y) for x in C.objects for y in D.objects]
    morphs = {j(m, n): (j(C.src(m), D.src(n)), j(C.tgt(m), D.tgt(n))) for m in C.morphisms for n in D.morphisms}
    ident = {j(x, y): j(C.identity[x], D.identity[y]) for x in C.objects for y in D.objects}
    comp = {}
    for g, f in C.composable_pairs():
        for g2, f2 in D.composable_pairs():
            comp[(j(g, g2), j(f, f2))] = j(C.comp(g, f), D.comp(g2, f2))
    return FiniteCategory(obs, morphs, ident, comp, f"{C.name}x{D.name}")
