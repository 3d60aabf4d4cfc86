"""Finite truncated simplicial sets: kernels, horns and Kan conditions.

Simplices are opaque string ids. A :class:`SimplexTable` stores levels
``0..dim_cap`` explicitly; above the cap a ``Coskeletal(m)`` policy
materializes further levels on demand as iterated simplicial kernels,
while the ``truncated`` policy refuses to.

Everything is decided by enumeration. Whenever a witness is reported it
is the lexicographically least offending tuple, comparing ids as strings
and tuples slot by slot.
"""

from __future__ import annotations

import os
import threading
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionOutOfRange,
    HornIndexOutOfRange,
    MalformedTable,
    TruncatedAboveCap,
    VerificationReport,
)

TRUNCATED = "truncated"


@dataclass(frozen=True)
class Coskeletal:
    m: int

    def __str__(self) -> str:
        return f"coskeletal({self.m})"


def tuple_id(parts: Iterable[str]) -> str:
    """Canonical id of a tuple of ids, used for kernel-level simplices."""
    return "(" + ",".join(parts) + ")"


# ---------------------------------------------------------------------------
# the simplex category


@dataclass(frozen=True)
class MonotoneMap:
    """A weakly increasing map ``[source] -> [target]``."""

    source: int
    target: int
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if self.source < 0 or self.target < 0:
            raise MalformedTable("ordinals must be nonnegative")
        if len(vals) != self.source + 1:
            raise MalformedTable(f"expected {self.source + 1} values, got {len(vals)}")
        if any(not 0 <= v <= self.target for v in vals):
            raise MalformedTable(f"values {vals} leave [{self.target}]")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise MalformedTable(f"values {vals} are not monotone")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise MalformedTable("monotone maps not composable")
        return MonotoneMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1))

    @staticmethod
    def identity(n: int) -> "MonotoneMap":
        return MonotoneMap(n, n, tuple(range(n + 1)))

    @staticmethod
    def coface(n: int, i: int) -> "MonotoneMap":
        """The injection ``[n-1] -> [n]`` omitting ``i``."""
        return MonotoneMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))

    @staticmethod
    def codegeneracy(n: int, i: int) -> "MonotoneMap":
        """The surjection ``[n+1] -> [n]`` hitting ``i`` twice."""
        return MonotoneMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def all_monotone(m: int, n: int) -> list:
    """Every monotone map ``[m] -> [n]``, in lexicographic order of values."""
    out = []

    def rec(prefix, lo):
        if len(prefix) == m + 1:
            out.append(MonotoneMap(m, n, tuple(prefix)))
            return
        for v in range(lo, n + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return out


@dataclass(frozen=True)
class Factorization:
    """``f = ∂_{i_1} ... ∂_{i_s} σ_{j_t} ... σ_{j_1}`` read left to right.

    ``cofaces`` holds ``(i_1, ..., i_s)`` (strictly decreasing) and
    ``codegeneracies`` holds ``(j_t, ..., j_1)`` (strictly increasing),
    each in the order the letters are written.
    """

    source: int
    target: int
    cofaces: tuple
    codegeneracies: tuple

    def compose(self) -> MonotoneMap:
        cur = MonotoneMap.identity(self.source)
        k = self.source
        for j in reversed(self.codegeneracies):
            cur = MonotoneMap.codegeneracy(k - 1, j).compose(cur)
            k -= 1
        for i in reversed(self.cofaces):
            cur = MonotoneMap.coface(k + 1, i).compose(cur)
            k += 1
        return cur

    def __str__(self) -> str:
        left = " ".join(f"∂_{i}" for i in self.cofaces)
        right = " ".join(f"σ_{j}" for j in self.codegeneracies)
        return f"({left} ; {right})".replace("( ;", "(;").replace("; )", ";)")


def factorize_monotone(f: MonotoneMap) -> Factorization:
    missing = tuple(sorted(set(range(f.target + 1)) - set(f.values), reverse=True))
    repeats = tuple(j for j in range(f.source) if f.values[j] == f.values[j + 1])
    return Factorization(f.source, f.target, missing, repeats)


# ---------------------------------------------------------------------------
# simplicial tables


class SimplexTable:
    """A simplicial set given by explicit tables up to ``dim_cap``.

    Parameters
    ----------
    levels
        ``levels[n]`` lists the ids of the n-simplices, ``0 <= n <= D``.
    face
        ``face[n]`` maps each n-simplex to its ``n+1`` faces in index order.
        Entry 0 is ignored (vertices have no faces).
    degeneracy
        ``degeneracy[n]`` maps each n-simplex to ``(s_0 x, ..., s_n x)`` for
        ``0 <= n < D``.
    policy
        ``TRUNCATED`` or ``Coskeletal(m)`` with ``m <= D``.

    Raises
    ------
    MalformedTable
        If a table is partial, has the wrong arity or hits an undeclared id.
    """

    def __init__(
        self,
        levels: Sequence[Iterable[str]],
        face: Sequence[Mapping[str, Sequence[str]]],
        degeneracy: Sequence[Mapping[str, Sequence[str]]],
        policy=TRUNCATED,
        name: str = "",
    ):
        if not levels:
            raise MalformedTable("a simplicial table needs at least level 0")
        self.name = name
        self._levels = []
        self._sets = []
        for n, lv in enumerate(levels):
            lv = tuple(sorted(lv))
            if len(set(lv)) != len(lv):
                raise MalformedTable(f"duplicate ids at level {n}")
            self._levels.append(lv)
            self._sets.append(frozenset(lv))
        D = len(self._levels) - 1
        if policy != TRUNCATED:
            if not isinstance(policy, Coskeletal) or not 0 <= policy.m <= D:
                raise MalformedTable(f"bad policy {policy!r} for dim_cap {D}")
        self.policy = policy
        face = list(face)
        if len(face) == D:
            face = [{}] + face
        if len(face) != D + 1:
            raise MalformedTable("face tables must cover levels 1..dim_cap")
        self._face = [{}]
        for n in range(1, D + 1):
            tab = {}
            for x in self._levels[n]:
                if x not in face[n]:
                    raise MalformedTable(f"face table at level {n} is partial: missing {x}")
                fs = tuple(face[n][x])
                if len(fs) != n + 1:
                    raise MalformedTable(f"simplex {x} at level {n} needs {n + 1} faces")
                for y in fs:
                    if y not in self._sets[n - 1]:
                        raise MalformedTable(f"face of {x} is undeclared id {y}")
                tab[x] = fs
            extra = set(face[n]) - self._sets[n]
            if extra:
                raise MalformedTable(f"face table at level {n} names undeclared id {min(extra)}")
            self._face.append(tab)
        degeneracy = list(degeneracy)
        if len(degeneracy) != D:
            raise MalformedTable("degeneracy tables must cover levels 0..dim_cap-1")
        self._deg = []
        for n in range(D):
            tab = {}
            for x in self._levels[n]:
                if x not in degeneracy[n]:
                    raise MalformedTable(f"degeneracy table at level {n} is partial: missing {x}")
                ss = tuple(degeneracy[n][x])
                if len(ss) != n + 1:
                    raise MalformedTable(f"simplex {x} at level {n} needs {n + 1} degeneracies")
                for y in ss:
                    if y not in self._sets[n + 1]:
                        raise MalformedTable(f"degeneracy of {x} is undeclared id {y}")
                tab[x] = ss
            extra = set(degeneracy[n]) - self._sets[n]
            if extra:
                raise MalformedTable(f"degeneracy table at level {n} names undeclared id {min(extra)}")
            self._deg.append(tab)
        self._lock = threading.RLock()
        self._lazy_levels: dict = {}
        self._lazy_sets: dict = {}
        self._lazy_faces: dict = {}
        self._lazy_deg: dict = {}

    # -- basic access ------------------------------------------------------

    @property
    def dim_cap(self) -> int:
        return len(self._levels) - 1

    @property
    def is_coskeletal(self) -> bool:
        return isinstance(self.policy, Coskeletal)

    def materializable(self, n: int) -> bool:
        return 0 <= n <= self.dim_cap or (n >= 0 and self.is_coskeletal)

    def _require(self, n: int) -> None:
        if n < 0:
            raise DimensionOutOfRange(f"level {n} does not exist")
        if n > self.dim_cap:
            if not self.is_coskeletal:
                raise TruncatedAboveCap(f"level {n} is above dim_cap {self.dim_cap} of a truncated table")
            self._materialize(n)

    def level(self, n: int) -> tuple:
        self._require(n)
        if n <= self.dim_cap:
            return self._levels[n]
        return self._lazy_levels[n]

    def level_set(self, n: int) -> frozenset:
        self._require(n)
        if n <= self.dim_cap:
            return self._sets[n]
        return self._lazy_sets[n]

    def sizes(self, upto: int | None = None) -> tuple:
        upto = self.dim_cap if upto is None else upto
        return tuple(len(self.level(n)) for n in range(upto + 1))

    def faces(self, n: int, x: str) -> tuple:
        if n < 1:
            raise DimensionOutOfRange("vertices have no faces")
        self._require(n)
        if n <= self.dim_cap:
            return self._face[n][x]
        return self._lazy_faces[n][x]

    def d(self, n: int, i: int, x: str) -> str:
        return self.faces(n, x)[i]

    def degens(self, n: int, x: str) -> tuple:
        """``(s_0 x, ..., s_n x)`` for an n-simplex ``x``."""
        if n < self.dim_cap:
            return self._deg[n][x]
        self._require(n + 1)
        with self._lock:
            tab = self._lazy_deg.setdefault(n, {})
            if x not in tab:
                tab[x] = tuple(self._canonical_degeneracy(n, i, x) for i in range(n + 1))
            return tab[x]

    def s(self, n: int, i: int, x: str) -> str:
        return self.degens(n, x)[i]

    def face_table(self, n: int) -> dict:
        self._require(n)
        return self._face[n] if n <= self.dim_cap else self._lazy_faces[n]

    def degeneracy_table(self, n: int) -> dict:
        if n < self.dim_cap:
            return self._deg[n]
        return {x: self.degens(n, x) for x in self.level(n)}

    # -- lazy coskeletal levels -------------------------------------------

    def _materialize(self, n: int) -> None:
        with self._lock:
            if n in self._lazy_levels:
                return
            if n - 1 > self.dim_cap:
                self._materialize(n - 1)
            tuples = _compatible_tuples(self, n)
            ids = [tuple_id(t) for t in tuples]
            if len(set(ids)) != len(ids):
                raise MalformedTable(f"kernel ids at level {n} are ambiguous; rename simplices")
            self._lazy_faces[n] = dict(zip(ids, tuples))
            self._lazy_sets[n] = frozenset(ids)
            self._lazy_levels[n] = tuple(sorted(ids))

    def _canonical_degeneracy(self, n: int, i: int, x: str) -> str:
        # faces of s_i x read off the simplicial identities
        fs = []
        for j in range(n + 2):
            if j < i:
                fs.append(self.s(n - 1, i - 1, self.d(n, j, x)))
            elif j in (i, i + 1):
                fs.append(x)
            else:
                fs.append(self.s(n - 1, i, self.d(n, j - 1, x)))
        sid = tuple_id(fs)
        if sid not in self.level_set(n + 1):
            raise MalformedTable(f"canonical degeneracy s_{i}({x}) is not a kernel element")
        return sid

    # -- conveniences -----------------------------------------------------

    def with_policy(self, policy) -> "SimplexTable":
        return SimplexTable(self._levels, self._face, self._deg, policy, self.name)

    def table_equal(self, other: "SimplexTable") -> bool:
        return (
            self._levels == other._levels
            and self._face == other._face
            and self._deg == other._deg
            and self.policy == other.policy
        )

    def __repr__(self) -> str:
        return f"SimplexTable({self.name or 'anonymous'}, sizes={self.sizes()}, policy={self.policy})"


def _level_faces(X: SimplexTable, level: int, aug: Mapping[str, str] | None):
    """Faces of every simplex at ``level``, or None when unconstrained."""
    if level >= 1:
        return {y: X.faces(level, y) for y in X.level(level)}
    if aug is not None:
        return {y: (aug[y],) for y in X.level(0)}
    return None


def _compatible_tuples(X: SimplexTable, n: int, skip: int | None = None, aug=None) -> list:
    """Tuples ``(x_j)_{j != skip}`` of (n-1)-simplices with ``d_i x_j = d_{j-1} x_i``."""
    return kernel_from(X.level(n - 1), _level_faces(X, n - 1, aug), n, skip)


def kernel_from(base: Sequence[str], F: Mapping[str, tuple] | None, n: int, skip: int | None = None) -> list:
    """Kernel (or horn) tuples over an explicit level and its face table.

    ``F`` maps each element of ``base`` to its faces; None means no
    relation binds the slots (kernels over an unaugmented level 0).
    """
    slots = [j for j in range(n + 1) if j != skip]
    if F is None:
        return [tuple(t) for t in product(base, repeat=len(slots))]
    # slot j at position pos must satisfy d_i x_j = d_{j-1} x_i for every earlier slot i;
    # index the base by exactly those faces so candidates need no filtering
    indexes = []
    for pos, j in enumerate(slots):
        earlier = slots[:pos]
        idx: dict = {}
        for y in base:
            fy = F[y]
            idx.setdefault(tuple(fy[i] for i in earlier), []).append(y)
        indexes.append((earlier, idx))
    out = []
    chosen: dict = {}

    def rec(pos: int) -> None:
        if pos == len(slots):
            out.append(tuple(chosen[j] for j in slots))
            return
        j = slots[pos]
        earlier, idx = indexes[pos]
        key = tuple(F[chosen[i]][j - 1] for i in earlier)
        for y in idx.get(key, ()):
            chosen[j] = y
            rec(pos + 1)
        chosen.pop(j, None)

    rec(0)
    return out


# ---------------------------------------------------------------------------
# kernels and horns


@dataclass(frozen=True)
class KernelSet:
    """The n-th simplicial kernel together with the boundary map."""

    table: SimplexTable
    n: int
    tuples: tuple

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in set(self.tuples)

    def boundary(self, x: str) -> tuple:
        return self.table.faces(self.n, x)


@dataclass(frozen=True)
class HornSet:
    """The k-horns in dimension n together with the horn map."""

    table: SimplexTable
    n: int
    k: int
    tuples: tuple

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in set(self.tuples)

    def horn_map(self, x: str) -> tuple:
        fs = self.table.faces(self.n, x)
        return fs[: self.k] + fs[self.k + 1 :]


def _check_kernel_dim(X: SimplexTable, n: int, augmented: bool = False) -> None:
    lo = 0 if augmented else 1
    if n < lo:
        raise DimensionOutOfRange(f"kernel dimension {n} below {lo}")
    if n - 1 > X.dim_cap and not X.is_coskeletal:
        raise DimensionOutOfRange(f"kernel K_{n} needs level {n - 1}, above dim_cap {X.dim_cap}")


def simplicial_kernel(X, n: int) -> KernelSet:
    """``K_n(X)``: all (n-1)-simplex tuples that could bound an n-simplex.

    For an :class:`AugmentedSimplexTable`, ``K_1`` is the fibre product
    ``X_0 ×_{X_{-1}} X_0`` and ``K_0`` is ``X_{-1}``.
    """
    if isinstance(X, AugmentedSimplexTable):
        _check_kernel_dim(X.base, n, augmented=True)
        if n == 0:
            return KernelSet(X.base, 0, tuple((a,) for a in X.aug_set))
        return KernelSet(X.base, n, tuple(_compatible_tuples(X.base, n, aug=X.aug)))
    _check_kernel_dim(X, n)
    return KernelSet(X, n, tuple(_compatible_tuples(X, n)))


def horn_set(X: SimplexTable, n: int, k: int) -> HornSet:
    _check_kernel_dim(X, n)
    if not 0 <= k <= n:
        raise HornIndexOutOfRange(f"horn index {k} outside 0..{n}")
    return HornSet(X, n, k, tuple(_compatible_tuples(X, n, skip=k)))


@dataclass(frozen=True)
class KanStatus:
    kind: str  # "NotSatisfied" | "Satisfied" | "Exact"
    witness: tuple | None = None

    @property
    def satisfied(self) -> bool:
        return self.kind != "NotSatisfied"

    @property
    def exact(self) -> bool:
        return self.kind == "Exact"

    def __str__(self) -> str:
        if self.witness is not None:
            return f"{self.kind}{self.witness}"
        return self.kind


def _require_level(X: SimplexTable, n: int) -> None:
    if n > X.dim_cap and not X.is_coskeletal:
        raise TruncatedAboveCap(f"level {n} above dim_cap {X.dim_cap} under the truncated policy")


def kan_status(X: SimplexTable, n: int, k: int) -> KanStatus:
    if n < 1:
        raise DimensionOutOfRange("horns start in dimension 1")
    if not 0 <= k <= n:
        raise HornIndexOutOfRange(f"horn index {k} outside 0..{n}")
    _require_level(X, n)
    horns = horn_set(X, n, k)
    counts = Counter(horns.horn_map(x) for x in X.level(n))
    for h in horns.tuples:
        if counts[h] == 0:
            return KanStatus("NotSatisfied", h)
    if all(counts[h] == 1 for h in horns.tuples):
        return KanStatus("Exact")
    return KanStatus("Satisfied")


def default_bound(X: SimplexTable) -> int:
    env = os.environ.get("NERVEKIT_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DimensionOutOfRange(f"NERVEKIT_BOUND={env!r} is not an integer")
    return X.dim_cap + 2


@dataclass
class Classification:
    label: str  # "nHypergroupoid" | "Kan" | "WeakKanExact" | "None"
    n: int | None
    bound: int
    grid: dict = field(default_factory=dict)
    kan: bool = False
    weak_kan: bool = False
    inner_exact: bool = False
    hypergroupoid_dim: int | None = None
    note: str = ""

    def satisfies_hypergroupoid(self, n: int) -> bool:
        """Kan, and exact in every dimension ``m > n`` up to the bound."""
        return self.kan and self.hypergroupoid_dim is not None and self.hypergroupoid_dim <= n

    def first_failure(self, predicate=lambda n, k: True):
        for (n, k), st in sorted(self.grid.items()):
            if predicate(n, k) and not st.satisfied:
                return n, k, st.witness
        return None

    def describe(self) -> str:
        if self.label == "nHypergroupoid":
            return f"{self.n}-dimensional Kan hypergroupoid"
        if self.label == "Kan":
            return "Kan complex"
        outer = self.first_failure()
        tail = ""
        if outer is not None:
            tail = f"; not Kan (witness n={outer[0]},k={outer[1]})"
        if self.label == "WeakKanExact":
            return "weak Kan, exact inner horns" + tail
        return "no Kan-type condition" + tail

    def to_dict(self) -> dict:
        grid = {}
        for (n, k), st in sorted(self.grid.items()):
            entry = {"status": st.kind}
            if st.witness is not None:
                entry["witness"] = list(st.witness)
            grid[f"{n},{k}"] = entry
        return {
            "label": self.label,
            "n": self.n,
            "bound": self.bound,
            "description": self.describe(),
            "kan": self.kan,
            "weak_kan": self.weak_kan,
            "inner_exact": self.inner_exact,
            "hypergroupoid_dim": self.hypergroupoid_dim,
            "grid": grid,
            "note": self.note,
        }


def classify(X: SimplexTable, bound: int | None = None) -> Classification:
    """Kan status for every ``1 <= n <= bound`` and ``0 <= k <= n``, plus a label.

    The label is the strongest of ``nHypergroupoid(n)`` (least such n below
    the bound), ``Kan``, ``WeakKanExact`` and ``None``.
    """
    if bound is None:
        bound = default_bound(X)
    if bound < X.dim_cap:
        raise DimensionOutOfRange(f"bound {bound} below dim_cap {X.dim_cap}")
    grid = {}
    for n in range(1, bound + 1):
        for k in range(n + 1):
            grid[(n, k)] = kan_status(X, n, k)
    kan = all(st.satisfied for st in grid.values())
    weak = all(st.satisfied for (n, k), st in grid.items() if 0 < k < n)
    inner_exact = all(st.exact for (n, k), st in grid.items() if 0 < k < n)
    hyper = None
    for n0 in range(bound):
        if all(st.exact for (n, k), st in grid.items() if n > n0):
            hyper = n0
            break
    if kan and hyper is not None:
        label, ln = "nHypergroupoid", hyper
    elif kan:
        label, ln = "Kan", None
    elif inner_exact:
        label, ln = "WeakKanExact", None
    else:
        label, ln = "None", None
    note = ""
    if bound > X.dim_cap:
        note = f"dimensions {X.dim_cap + 1}..{bound} materialized by coskeletal policy; higher dimensions unchecked"
    else:
        note = f"dimensions above {bound} unchecked"
    return Classification(label, ln, bound, grid, kan, weak, inner_exact, hyper, note)


# ---------------------------------------------------------------------------
# asphericity


@dataclass(frozen=True)
class Asphericity:
    ok: bool
    n: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_aspherical(X, n: int) -> Asphericity:
    """Whether the boundary map ``δ_n : X_n -> K_n`` is surjective.

    Under the truncated policy, ``n = dim_cap + 1`` is allowed and the
    absent level counts as empty.
    """
    K = simplicial_kernel(X, n)
    base = X.base if isinstance(X, AugmentedSimplexTable) else X
    if n == 0:
        image = {(X.aug[x],) for x in base.level(0)}
    elif base.materializable(n):
        image = {base.faces(n, x) for x in base.level(n)}
    else:
        image = set()
    for t in K.tuples:
        if t not in image:
            return Asphericity(False, n, t)
    return Asphericity(True, n)


# ---------------------------------------------------------------------------
# validation


def _first(iterable):
    for w in iterable:
        return w
    return None


def validate_simplicial(X: SimplexTable) -> VerificationReport:
    """Check the five identity families and the policy invariant."""
    D = X.dim_cap
    rep = VerificationReport(f"simplicial set {X.name}".strip())

    def dd():
        for n in range(2, D + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    for x in X.level(n):
                        lhs = X.d(n - 1, i, X.d(n, j, x))
                        rhs = X.d(n - 1, j - 1, X.d(n, i, x))
                        if lhs != rhs:
                            yield {"n": n, "i": i, "j": j, "x": x, "lhs": lhs, "rhs": rhs}

    def ss():
        for n in range(D - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    for x in X.level(n):
                        lhs = X.s(n + 1, i, X.s(n, j, x))
                        rhs = X.s(n + 1, j + 1, X.s(n, i, x))
                        if lhs != rhs:
                            yield {"n": n, "i": i, "j": j, "x": x, "lhs": lhs, "rhs": rhs}

    def mixed(kind):
        for n in range(D):
            for j in range(n + 1):
                for i in range(n + 2):
                    if kind == "lt" and not i < j:
                        continue
                    if kind == "id" and i not in (j, j + 1):
                        continue
                    if kind == "gt" and not i > j + 1:
                        continue
                    for x in X.level(n):
                        lhs = X.d(n + 1, i, X.s(n, j, x))
                        if kind == "lt":
                            rhs = X.s(n - 1, j - 1, X.d(n, i, x))
                        elif kind == "id":
                            rhs = x
                        else:
                            rhs = X.s(n - 1, j, X.d(n, i - 1, x))
                        if lhs != rhs:
                            yield {"n": n, "i": i, "j": j, "x": x, "lhs": lhs, "rhs": rhs}

    families = [
        ("d_i d_j = d_{j-1} d_i (i<j)", dd),
        ("s_i s_j = s_{j+1} s_i (i<=j)", ss),
        ("d_i s_j = s_{j-1} d_i (i<j)", lambda: mixed("lt")),
        ("d_i s_j = id (i=j,j+1)", lambda: mixed("id")),
        ("d_i s_j = s_j d_{i-1} (i>j+1)", lambda: mixed("gt")),
    ]
    for name, gen in families:
        w = _first(gen())
        rep.add(name, w is None, w)
    if X.is_coskeletal:
        m = X.policy.m
        bad = None
        for n in range(m + 1, D + 1):
            K = _compatible_tuples(X, n)
            image = Counter(X.faces(n, x) for x in X.level(n))
            for t in K:
                if image[t] != 1:
                    bad = {"n": n, "kernel_tuple": t, "preimages": image[t]}
                    break
            if bad is None:
                extra = [t for t in image if image[t] and t not in set(K)]
                if extra:
                    bad = {"n": n, "kernel_tuple": min(extra), "preimages": image[min(extra)]}
            if bad:
                break
        rep.add(f"policy {X.policy}: boundary bijective above {m}", bad is None, bad)
    return rep


# ---------------------------------------------------------------------------
# augmented tables


@dataclass
class Contraction:
    """``s0 : X_{-1} -> X_0`` and ``s[n] = s_{n+1} : X_n -> X_{n+1}``."""

    s0: dict
    s: list


class AugmentedSimplexTable:
    """A simplicial table with an augmentation ``X_0 -> X_{-1}``."""

    def __init__(self, base: SimplexTable, aug_set: Iterable[str], aug: Mapping[str, str],
                 contraction: Contraction | None = None):
        self.base = base
        self.aug_set = tuple(sorted(aug_set))
        sset = set(self.aug_set)
        self.aug = dict(aug)
        for x in base.level(0):
            if x not in self.aug:
                raise MalformedTable(f"augmentation is partial: missing {x}")
            if self.aug[x] not in sset:
                raise MalformedTable(f"augmentation hits undeclared id {self.aug[x]}")
        extra = set(self.aug) - set(base.level(0))
        if extra:
            raise MalformedTable(f"augmentation names undeclared vertex {min(extra)}")
        if contraction is not None:
            for a in self.aug_set:
                if contraction.s0.get(a) not in base.level_set(0):
                    raise MalformedTable(f"contraction s_0 is partial or bad at {a}")
            if len(contraction.s) > base.dim_cap:
                raise MalformedTable("contraction reaches above dim_cap")
            for n, tab in enumerate(contraction.s):
                for x in base.level(n):
                    if tab.get(x) not in base.level_set(n + 1):
                        raise MalformedTable(f"contraction s_{n + 1} is partial or bad at {x}")
        self.contraction = contraction

    @property
    def dim_cap(self) -> int:
        return self.base.dim_cap

    def level(self, n: int) -> tuple:
        return self.aug_set if n == -1 else self.base.level(n)

    def ext_face(self, n: int, i: int, x: str) -> str:
        """Faces with ``d_0 = aug`` at level 0."""
        if n == 0:
            return self.aug[x]
        return self.base.d(n, i, x)

    def ext_deg(self, n: int, j: int, x: str) -> str:
        """Degeneracies extended by the contraction as index ``n+1``."""
        if j == n + 1:
            if self.contraction is None:
                raise MalformedTable("no contraction present")
            return self.contraction.s0[x] if n == -1 else self.contraction.s[n][x]
        return self.base.s(n, j, x)

    def with_contraction(self, c: Contraction) -> "AugmentedSimplexTable":
        return AugmentedSimplexTable(self.base, self.aug_set, self.aug, c)


def validate_augmented(A: AugmentedSimplexTable) -> VerificationReport:
    """Base identities, ``aug d_0 = aug d_1`` and, when present, the split identities."""
    rep = VerificationReport(f"augmented {A.base.name}".strip())
    rep.extend(validate_simplicial(A.base))
    w = None
    if A.dim_cap >= 1:
        for x in A.base.level(1):
            if A.aug[A.base.d(1, 0, x)] != A.aug[A.base.d(1, 1, x)]:
                w = x
                break
    rep.add("aug d_0 = aug d_1", w is None, w)
    if A.contraction is not None:
        rep.extend(validate_contraction(A))
    return rep


def contraction_levels(A: AugmentedSimplexTable) -> int:
    """Highest level n with ``s_{n+1} : X_n -> X_{n+1}`` present (``-1`` for s_0 only)."""
    return len(A.contraction.s) - 1


def validate_contraction(A: AugmentedSimplexTable) -> VerificationReport:
    """Every degeneracy identity in which a contraction map occurs."""
    rep = VerificationReport("contraction")
    top = contraction_levels(A)  # s_{n+1} defined for -1 <= n <= top

    def has_deg(n, j):
        # degeneracy index j on level n is available
        if j == n + 1:
            return -1 <= n <= top
        return 0 <= j <= n and n < A.dim_cap

    def dec(n, j, x):
        return A.ext_deg(n, j, x)

    def face_ok(n):
        return 0 <= n <= A.dim_cap

    def ds():
        # d_i s_j on level n, with s_j : X_n -> X_{n+1} a contraction (j = n+1)
        for n in range(-1, top + 1):
            j = n + 1
            for i in range(n + 2):
                for x in A.level(n):
                    lhs = A.ext_face(n + 1, i, dec(n, j, x))
                    if i < j:
                        if not has_deg(n - 1, j - 1):
                            continue
                        rhs = dec(n - 1, j - 1, A.ext_face(n, i, x))
                        name = "d_i s_j = s_{j-1} d_i (i<j)"
                    else:
                        rhs = x
                        name = "d_i s_j = id (i=j,j+1)"
                    if lhs != rhs:
                        yield name, {"n": n, "i": i, "j": j, "x": x, "lhs": lhs, "rhs": rhs}
                # i = j+1 = n+2 would need a face index beyond level n+1

    def ss():
        # s_i s_j = s_{j+1} s_i (i <= j) on level n whenever a contraction occurs
        for n in range(-1, A.dim_cap):
            for j in range(n + 2):
                for i in range(j + 1):
                    if not (j == n + 1 or i == n + 1):
                        continue
                    if not (has_deg(n, j) and has_deg(n + 1, i) and has_deg(n, i) and has_deg(n + 1, j + 1)):
                        continue
                    for x in A.level(n):
                        lhs = dec(n + 1, i, dec(n, j, x))
                        rhs = dec(n + 1, j + 1, dec(n, i, x))
                        if lhs != rhs:
                            yield "s_i s_j = s_{j+1} s_i (i<=j)", {"n": n, "i": i, "j": j, "x": x, "lhs": lhs, "rhs": rhs}

    failures = {}
    for name, w in list(ds()) + list(ss()):
        failures.setdefault(name, w)
    for name in ("d_i s_j = s_{j-1} d_i (i<j)", "d_i s_j = id (i=j,j+1)", "s_i s_j = s_{j+1} s_i (i<=j)"):
        w = failures.get(name)
        rep.add("split: " + name, w is None, w)
    return rep


# ---------------------------------------------------------------------------
# simplicial maps


class SimplicialMap:
    """Levelwise functions ``source.level(n) -> target.level(n)``.

    ``components[n]`` is stored for ``n <= len(components) - 1``. Above
    that, when the target is coskeletal there, a simplex is sent to the
    kernel tuple of the images of its faces.
    """

    def __init__(self, source: SimplexTable, target: SimplexTable, components: Sequence[Mapping[str, str]],
                 name: str = ""):
        self.source = source
        self.target = target
        self.components = [dict(c) for c in components]
        self.name = name
        for n, comp in enumerate(self.components):
            for x in source.level(n):
                if x not in comp:
                    raise MalformedTable(f"map component {n} is partial: missing {x}")
                if comp[x] not in target.level_set(n):
                    raise MalformedTable(f"map component {n} hits undeclared id {comp[x]}")

    @property
    def cap(self) -> int:
        return len(self.components) - 1

    def apply(self, n: int, x: str) -> str:
        if n <= self.cap:
            return self.components[n][x]
        if n > self.target.dim_cap and self.target.is_coskeletal:
            fs = tuple(self.apply(n - 1, y) for y in self.source.faces(n, x))
            return tuple_id(fs)
        raise TruncatedAboveCap(f"map not defined at level {n}")

    def component(self, n: int) -> dict:
        return {x: self.apply(n, x) for x in self.source.level(n)}

    def compose_after(self, other: "SimplicialMap") -> "SimplicialMap":
        """``self ∘ other``."""
        c = min(self.cap, other.cap)
        comps = [{x: self.apply(n, other.apply(n, x)) for x in other.source.level(n)} for n in range(c + 1)]
        return SimplicialMap(other.source, self.target, comps)

    def same_as(self, other: "SimplicialMap", upto: int | None = None) -> bool:
        c = min(self.cap, other.cap) if upto is None else upto
        return all(self.component(n) == other.component(n) for n in range(c + 1))


def identity_map(X: SimplexTable) -> SimplicialMap:
    return SimplicialMap(X, X, [{x: x for x in X.level(n)} for n in range(X.dim_cap + 1)], "id")


def validate_map(f: SimplicialMap, upto: int | None = None) -> VerificationReport:
    """Components commute with every face and degeneracy up to ``upto``."""
    c = f.cap if upto is None else upto
    rep = VerificationReport(f"simplicial map {f.name}".strip())
    wf = None
    for n in range(1, c + 1):
        for x in f.source.level(n):
            for i in range(n + 1):
                if f.apply(n - 1, f.source.d(n, i, x)) != f.target.d(n, i, f.apply(n, x)):
                    wf = {"n": n, "i": i, "x": x}
                    break
            if wf:
                break
        if wf:
            break
    rep.add("commutes with faces", wf is None, wf)
    ws = None
    for n in range(c):
        for x in f.source.level(n):
            for i in range(n + 1):
                if f.apply(n + 1, f.source.s(n, i, x)) != f.target.s(n, i, f.apply(n, x)):
                    ws = {"n": n, "i": i, "x": x}
                    break
            if ws:
                break
        if ws:
            break
    rep.add("commutes with degeneracies", ws is None, ws)
    return rep


def is_isomorphism(f: SimplicialMap, upto: int | None = None) -> bool:
    c = f.cap if upto is None else upto
    if not validate_map(f, c):
        return False
    for n in range(c + 1):
        comp = f.component(n)
        if len(set(comp.values())) != len(comp) or set(comp.values()) != set(f.target.level(n)):
            return False
    return True


def enumerate_maps(A: SimplexTable, X: SimplexTable, upto: int | None = None) -> list:
    """All simplicial maps ``A -> X`` on levels ``0..upto`` (default ``A.dim_cap``)."""
    c = A.dim_cap if upto is None else upto
    for n in range(c + 1):
        X.level(n)
    order = [(n, x) for n in range(c + 1) for x in A.level(n)]
    index = {}
    for n in range(1, c + 1):
        idx = {}
        for y in X.level(n):
            idx.setdefault(X.faces(n, y), []).append(y)
        index[n] = idx
    results = []
    comp = [dict() for _ in range(c + 1)]
    # degeneracy constraints: A.s(n, i, x) must go to X.s(n, i, f(x))
    forced_by = {}
    for n in range(c):
        for x in A.level(n):
            for i, y in enumerate(A.degens(n, x)):
                forced_by.setdefault((n + 1, y), []).append((i, x))

    def rec(pos):
        if pos == len(order):
            results.append(SimplicialMap(A, X, [dict(m) for m in comp]))
            return
        n, x = order[pos]
        if n == 0:
            cands = X.level(0)
        else:
            key = tuple(comp[n - 1][y] for y in A.faces(n, x))
            cands = index[n].get(key, [])
        for y in cands:
            ok = all(X.s(n - 1, i, comp[n - 1][z]) == y for i, z in forced_by.get((n, x), []))
            if ok:
                comp[n][x] = y
                rec(pos + 1)
                del comp[n][x]

    rec(0)
    return results


# ---------------------------------------------------------------------------
# evaluation along arbitrary monotone maps


def apply_monotone(X: SimplexTable, f: MonotoneMap, x: str) -> str:
    """``X(f)(x)`` for ``x`` an n-simplex and ``f : [m] -> [n]``, via the factorization."""
    w = factorize_monotone(f)
    n = f.target
    for i in w.cofaces:
        x = X.d(n, i, x)
        n -= 1
    for j in w.codegeneracies:
        x = X.s(n, j, x)
        n += 1
    return x


# ---------------------------------------------------------------------------
# small generators


def _simplex_id(vals: Sequence[int], n: int) -> str:
    if n < 10:
        return "".join(str(v) for v in vals)
    return tuple_id(str(v) for v in vals)


def from_monotone_family(family: Mapping[int, list], n: int, cap: int, policy=TRUNCATED) -> SimplexTable:
    """A simplicial subset of ``Δ[n]`` given its monotone maps per level."""
    levels, face, deg = [], [{}], []
    for m in range(cap + 1):
        levels.append([_simplex_id(f.values, n) for f in family[m]])
    for m in range(1, cap + 1):
        tab = {}
        for f in family[m]:
            tab[_simplex_id(f.values, n)] = [
                _simplex_id(f.compose(MonotoneMap.coface(m, i)).values, n) for i in range(m + 1)
            ]
        face.append(tab)
    for m in range(cap):
        tab = {}
        for f in family[m]:
            tab[_simplex_id(f.values, n)] = [
                _simplex_id(f.compose(MonotoneMap.codegeneracy(m, i)).values, n) for i in range(m + 1)
            ]
        deg.append(tab)
    return SimplexTable(levels, face, deg, policy)


def standard_simplex(n: int, cap: int) -> SimplexTable:
    """``Δ[n]`` up to ``cap``; the nerve of a poset, hence 1-coskeletal."""
    fam = {m: all_monotone(m, n) for m in range(cap + 1)}
    X = from_monotone_family(fam, n, cap, Coskeletal(min(1, cap)))
    X.name = f"Delta[{n}]"
    return X


def horn_complex(n: int, k: int, cap: int | None = None) -> SimplexTable:
    """``Λ^k[n]``: the simplices of ``Δ[n]`` missing some vertex ``i != k``."""
    cap = n if cap is None else cap
    fam = {}
    for m in range(cap + 1):
        fam[m] = [f for f in all_monotone(m, n) if any(i not in f.values for i in range(n + 1) if i != k)]
    X = from_monotone_family(fam, n, cap)
    X.name = f"Lambda^{k}[{n}]"
    return X


def boundary_complex(n: int, cap: int | None = None) -> SimplexTable:
    cap = n if cap is None else cap
    fam = {m: [f for f in all_monotone(m, n) if not f.is_surjective()] for m in range(cap + 1)}
    X = from_monotone_family(fam, n, cap)
    X.name = f"dDelta[{n}]"
    return X


def constant_complex(points: Iterable[str], cap: int) -> SimplexTable:
    """``K(S, 0)``: ``S`` in every dimension with identity structure maps."""
    pts = sorted(points)
    levels = [pts for _ in range(cap + 1)]
    face = [{}] + [{p: [p] * (n + 1) for p in pts} for n in range(1, cap + 1)]
    deg = [{p: [p] * (n + 1) for p in pts} for n in range(cap)]
    policy = Coskeletal(0) if len(pts) <= 1 else (Coskeletal(1) if cap >= 1 else TRUNCATED)
    X = SimplexTable(levels, face, deg, policy)
    X.name = "K(S,0)"
    return X


def point_complex(cap: int) -> SimplexTable:
    """The completion of ``Δ[0]``: one simplex in every dimension."""
    X = constant_complex(["*"], cap)
    X.name = "Delta[0]"
    return X


def constant_augmented(points: Iterable[str], cap: int) -> AugmentedSimplexTable:
    """``K(S,0) -> S`` as an augmented complex."""
    X = constant_complex(points, cap)
    return AugmentedSimplexTable(X, X.level(0), {p: p for p in X.level(0)})


def all_subsets(xs: Sequence, sizes: Iterable[int]) -> list:
    return [c for r in sizes for c in combinations(xs, r)]
