"""Canonical JSON for every artifact kind.

Canonical form: sorted keys, indent 2, sorted id arrays where order is not
meaningful, integers and strings only. Tables keyed by tuples are stored
as arrays of rows ``[k1, ..., kn, value]`` sorted lexicographically.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any

from .action import (
    BicatAction,
    EquivariantFunctor,
    EquivariantTransformation,
    FiberedAction,
    validate_action,
)
from .bicategory import FiniteBicategory, validate_bicategory
from .category import FiniteCategory, validate_category
from .errors import MalformedTable, ParseError, ValidationError
from .simplicial import (
    TRUNCATED,
    AugmentedSimplexTable,
    Contraction,
    Coskeletal,
    SimplexTable,
    SimplicialMap,
    validate_augmented,
    validate_contraction,
    validate_map,
    validate_simplicial,
)

KINDS = ("simplicial", "bicategory", "category", "action", "torsor", "map")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fields(d: Any, where: str, required: tuple, optional: tuple = ()) -> None:
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = sorted(set(d) - set(required) - set(optional) - {"kind", "name"})
    if unknown:
        raise ParseError(f"{where}: unknown field {unknown[0]!r}")
    missing = [k for k in required if k not in d]
    if missing:
        raise ParseError(f"{where}: missing field {missing[0]!r}")


def _str_list(v: Any, where: str) -> list:
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise ParseError(f"{where}: expected an array of id strings")
    return v


def _str_map(v: Any, where: str) -> dict:
    if not isinstance(v, dict) or not all(isinstance(x, str) for x in v.values()):
        raise ParseError(f"{where}: expected an object of id strings")
    return v


def _rows(table: dict) -> list:
    return sorted([*k, v] for k, v in table.items())


def _from_rows(rows: Any, arity: int, where: str) -> dict:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected an array of rows")
    out = {}
    for r in rows:
        if not isinstance(r, list) or len(r) != arity + 1 or not all(isinstance(x, str) for x in r):
            raise ParseError(f"{where}: malformed row {r!r}")
        out[tuple(r[:arity])] = r[arity]
    return out


def _require_ids(ids, known, where: str) -> None:
    for x in ids:
        if x not in known:
            raise ParseError(f"{where}: dangling id {x!r}")


# ---------------------------------------------------------------------------
# simplicial sets


def simplicial_to_dict(X: SimplexTable | AugmentedSimplexTable) -> dict:
    A = None
    if isinstance(X, AugmentedSimplexTable):
        A, X = X, X.base
    D = X.dim_cap
    out = {
        "kind": "simplicial",
        "dim_cap": D,
        "policy": "truncated" if X.policy == TRUNCATED else {"coskeletal": X.policy.m},
        "levels": [list(X.level(n)) for n in range(D + 1)],
        "face": [{x: list(X.faces(n, x)) for x in X.level(n)} for n in range(1, D + 1)],
        "degeneracy": [{x: list(X.degens(n, x)) for x in X.level(n)} for n in range(D)],
    }
    if X.name:
        out["name"] = X.name
    if A is not None:
        aug = {"set": list(A.aug_set), "map": dict(A.aug)}
        if A.contraction is not None:
            aug["contraction"] = {"s0": dict(A.contraction.s0), "s": [dict(t) for t in A.contraction.s]}
        out["augmentation"] = aug
    return out


def simplicial_from_dict(d: Any, where: str = "simplicial") -> SimplexTable | AugmentedSimplexTable:
    _fields(d, where, ("dim_cap", "policy", "levels", "face", "degeneracy"), ("augmentation",))
    D = d["dim_cap"]
    if not isinstance(D, int) or isinstance(D, bool) or D < 0:
        raise ParseError(f"{where}: dim_cap must be a natural number")
    pol = d["policy"]
    if pol == "truncated":
        policy = TRUNCATED
    elif isinstance(pol, dict) and set(pol) == {"coskeletal"} and isinstance(pol["coskeletal"], int):
        policy = Coskeletal(pol["coskeletal"])
    else:
        raise ParseError(f"{where}: bad policy {pol!r}")
    levels = d["levels"]
    if not isinstance(levels, list) or len(levels) != D + 1:
        raise ParseError(f"{where}: levels must have dim_cap+1 entries")
    levels = [_str_list(lv, f"{where}.levels[{n}]") for n, lv in enumerate(levels)]
    sets = [set(lv) for lv in levels]
    face, deg = d["face"], d["degeneracy"]
    if not isinstance(face, list) or len(face) != D:
        raise ParseError(f"{where}: face must have dim_cap entries (levels 1..dim_cap)")
    if not isinstance(deg, list) or len(deg) != D:
        raise ParseError(f"{where}: degeneracy must have dim_cap entries (levels 0..dim_cap-1)")
    for n in range(1, D + 1):
        tab = face[n - 1]
        if not isinstance(tab, dict):
            raise ParseError(f"{where}.face[{n}]: expected an object")
        _require_ids(sorted(tab), sets[n], f"{where}.face level {n}")
        for x, fs in sorted(tab.items()):
            _require_ids(_str_list(fs, f"{where}.face[{x}]"), sets[n - 1], f"{where}.face of {x}")
    for n in range(D):
        tab = deg[n]
        if not isinstance(tab, dict):
            raise ParseError(f"{where}.degeneracy[{n}]: expected an object")
        _require_ids(sorted(tab), sets[n], f"{where}.degeneracy level {n}")
        for x, ss in sorted(tab.items()):
            _require_ids(_str_list(ss, f"{where}.degeneracy[{x}]"), sets[n + 1], f"{where}.degeneracy of {x}")
    try:
        X = SimplexTable(levels, face, deg, policy, d.get("name", ""))
    except MalformedTable as e:
        raise ParseError(f"{where}: {e}") from e
    if "augmentation" not in d:
        return X
    a = d["augmentation"]
    _fields(a, f"{where}.augmentation", ("set", "map"), ("contraction",))
    aset = _str_list(a["set"], f"{where}.augmentation.set")
    amap = _str_map(a["map"], f"{where}.augmentation.map")
    _require_ids(sorted(amap.values()), set(aset), f"{where}.augmentation.map")
    c = None
    if "contraction" in a:
        cd = a["contraction"]
        _fields(cd, f"{where}.contraction", ("s0", "s"))
        s0 = _str_map(cd["s0"], f"{where}.contraction.s0")
        _require_ids(sorted(s0.values()), sets[0], f"{where}.contraction.s0")
        if not isinstance(cd["s"], list) or len(cd["s"]) > D:
            raise ParseError(f"{where}.contraction.s: at most dim_cap tables")
        s = []
        for n, tab in enumerate(cd["s"]):
            tab = _str_map(tab, f"{where}.contraction.s[{n}]")
            _require_ids(sorted(tab.values()), sets[n + 1], f"{where}.contraction.s[{n}]")
            s.append(dict(tab))
        c = Contraction(dict(s0), s)
    try:
        return AugmentedSimplexTable(X, aset, amap, c)
    except MalformedTable as e:
        raise ParseError(f"{where}: {e}") from e


# ---------------------------------------------------------------------------
# categories and bicategories


def category_to_dict(C: FiniteCategory) -> dict:
    out = {
        "kind": "category",
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, (s, t) in sorted(C.morphisms.items())],
        "identity": dict(C.identity),
        "comp": _rows(C.comp_table),
    }
    if C.name:
        out["name"] = C.name
    return out


def _cells(v: Any, where: str, known: set) -> dict:
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected an array of cells")
    out = {}
    for c in v:
        _fields(c, where, ("id", "src", "tgt"))
        if not all(isinstance(c[k], str) for k in ("id", "src", "tgt")):
            raise ParseError(f"{where}: cell fields must be strings")
        _require_ids([c["src"], c["tgt"]], known, where)
        if c["id"] in out:
            raise ParseError(f"{where}: duplicate id {c['id']!r}")
        out[c["id"]] = (c["src"], c["tgt"])
    return out


def category_from_dict(d: Any, where: str = "category") -> FiniteCategory:
    _fields(d, where, ("objects", "morphisms", "identity", "comp"))
    obs = _str_list(d["objects"], f"{where}.objects")
    mor = _cells(d["morphisms"], f"{where}.morphisms", set(obs))
    ident = _str_map(d["identity"], f"{where}.identity")
    _require_ids(sorted(ident), set(obs), f"{where}.identity")
    _require_ids(sorted(ident.values()), mor, f"{where}.identity")
    comp = _from_rows(d["comp"], 2, f"{where}.comp")
    for k, v in sorted(comp.items()):
        _require_ids([*k, v], mor, f"{where}.comp")
    try:
        return FiniteCategory(obs, mor, ident, comp, d.get("name", ""))
    except (MalformedTable, KeyError) as e:
        raise ParseError(f"{where}: {e}") from e


def bicategory_to_dict(B: FiniteBicategory) -> dict:
    out = {
        "kind": "bicategory",
        "objects": list(B.objects),
        "one_cells": [{"id": f, "src": s, "tgt": t} for f, (s, t) in B.one_cells.items()],
        "two_cells": [{"id": a, "src": s, "tgt": t} for a, (s, t) in B.two_cells.items()],
        "id1": dict(B.id1_table),
        "id2": dict(B.id2_table),
        "vcomp": _rows(B.vcomp_table),
        "hcomp1": _rows(B.hcomp1_table),
        "hcomp2": _rows(B.hcomp2_table),
        "assoc": _rows(B.assoc_table),
        "lunitor": dict(B.lunitor_table),
        "runitor": dict(B.runitor_table),
    }
    if B.name:
        out["name"] = B.name
    return out


def bicategory_from_dict(d: Any, where: str = "bicategory") -> FiniteBicategory:
    keys = ("objects", "one_cells", "two_cells", "id1", "id2", "vcomp", "hcomp1", "hcomp2",
            "assoc", "lunitor", "runitor")
    _fields(d, where, keys)
    obs = _str_list(d["objects"], f"{where}.objects")
    ones = _cells(d["one_cells"], f"{where}.one_cells", set(obs))
    twos = _cells(d["two_cells"], f"{where}.two_cells", set(ones))
    id1 = _str_map(d["id1"], f"{where}.id1")
    _require_ids(sorted(id1), set(obs), f"{where}.id1")
    _require_ids(sorted(id1.values()), ones, f"{where}.id1")
    unary = {}
    for k in ("id2", "lunitor", "runitor"):
        tab = _str_map(d[k], f"{where}.{k}")
        _require_ids(sorted(tab), ones, f"{where}.{k}")
        _require_ids(sorted(tab.values()), twos, f"{where}.{k}")
        unary[k] = tab
    rows = {}
    for k, ar, dom in (("vcomp", 2, twos), ("hcomp1", 2, ones), ("hcomp2", 2, twos), ("assoc", 3, ones)):
        tab = _from_rows(d[k], ar, f"{where}.{k}")
        cod = ones if k == "hcomp1" else twos
        for key, v in sorted(tab.items()):
            _require_ids(key, dom, f"{where}.{k}")
            _require_ids([v], cod, f"{where}.{k}")
        rows[k] = tab
    return FiniteBicategory(obs, ones, twos, id1, unary["id2"], rows["vcomp"], rows["hcomp1"],
                            rows["hcomp2"], rows["assoc"], unary["lunitor"], unary["runitor"],
                            d.get("name", ""))


# ---------------------------------------------------------------------------
# actions and torsors


def _resolve(v: Any, base_dir: str, kind: str):
    """Inline object or a path (relative to the referring file)."""
    if isinstance(v, str):
        path = v if os.path.isabs(v) else os.path.join(base_dir, v)
        return _read_json(path), os.path.dirname(path)
    return v, base_dir


def action_to_dict(A: BicatAction | FiberedAction) -> dict:
    fib = None
    if isinstance(A, FiberedAction):
        fib, A = A, A.action
    out = {
        "kind": "action",
        "category": category_to_dict(A.P),
        "bicategory": bicategory_to_dict(A.B),
        "momentum": dict(A.momentum),
        "act0": _rows(A.act0_table),
        "act1": _rows(A.act1_table),
        "kappa": _rows(A.kappa_table),
        "iota": dict(A.iota_table),
    }
    if A.name:
        out["name"] = A.name
    if fib is not None:
        out["fibration"] = {"base_set": sorted(fib.base_set), "pi0": dict(fib.pi0)}
    return out


def _functor_block(d: Any, where: str, source: BicatAction, base_dir: str) -> EquivariantFunctor:
    _fields(d, where, ("F0", "F1", "theta"), ("target",))
    target = source
    if "target" in d:
        raw, bd = _resolve(d["target"], base_dir, "action")
        target = action_from_dict(raw, f"{where}.target", bd)
        if isinstance(target, FiberedAction):
            target = target.action
    F0 = _str_map(d["F0"], f"{where}.F0")
    F1 = _str_map(d["F1"], f"{where}.F1")
    _require_ids(sorted(F0), set(source.P.objects), f"{where}.F0")
    _require_ids(sorted(F0.values()), set(target.P.objects), f"{where}.F0")
    _require_ids(sorted(F1), source.P.morphisms, f"{where}.F1")
    _require_ids(sorted(F1.values()), target.P.morphisms, f"{where}.F1")
    theta = _from_rows(d["theta"], 2, f"{where}.theta")
    _require_ids(sorted(theta.values()), target.P.morphisms, f"{where}.theta")
    return EquivariantFunctor(source, target, dict(F0), dict(F1), theta, d.get("name", ""))


def equivariant_from_dict(d: Any, source: BicatAction, base_dir: str = ".", where: str = "equivariant"):
    if not isinstance(d, dict) or d.get("kind") not in ("functor", "transformation"):
        raise ParseError(f"{where}: kind must be 'functor' or 'transformation'")
    body = {k: v for k, v in d.items() if k != "kind"}
    if d["kind"] == "functor":
        return "functor", _functor_block(body, where, source, base_dir)
    _fields(body, where, ("F", "G", "tau"))
    F = _functor_block(body["F"], f"{where}.F", source, base_dir)
    G = _functor_block(body["G"], f"{where}.G", source, base_dir)
    tau = _str_map(body["tau"], f"{where}.tau")
    _require_ids(sorted(tau.values()), F.target.P.morphisms, f"{where}.tau")
    return "transformation", EquivariantTransformation(F, G, dict(tau), d.get("name", ""))


def action_from_dict(d: Any, where: str = "action", base_dir: str = "."):
    _fields(d, where, ("category", "bicategory", "momentum", "act0", "act1", "kappa", "iota"),
            ("fibration", "equivariant"))
    raw, bd = _resolve(d["category"], base_dir, "category")
    P = category_from_dict(raw, f"{where}.category")
    raw, bd = _resolve(d["bicategory"], base_dir, "bicategory")
    B = bicategory_from_dict(raw, f"{where}.bicategory")
    mom = _str_map(d["momentum"], f"{where}.momentum")
    _require_ids(sorted(mom), set(P.objects), f"{where}.momentum")
    _require_ids(sorted(mom.values()), set(B.objects), f"{where}.momentum")
    act0 = _from_rows(d["act0"], 2, f"{where}.act0")
    act1 = _from_rows(d["act1"], 2, f"{where}.act1")
    kappa = _from_rows(d["kappa"], 3, f"{where}.kappa")
    for (p, f), r in sorted(act0.items()):
        _require_ids([p, r], set(P.objects), f"{where}.act0")
        _require_ids([f], B.one_cells, f"{where}.act0")
    for (a, phi), r in sorted(act1.items()):
        _require_ids([a, r], P.morphisms, f"{where}.act1")
        _require_ids([phi], B.two_cells, f"{where}.act1")
    for (p, f, g), r in sorted(kappa.items()):
        _require_ids([p], set(P.objects), f"{where}.kappa")
        _require_ids([f, g], B.one_cells, f"{where}.kappa")
        _require_ids([r], P.morphisms, f"{where}.kappa")
    iota = _str_map(d["iota"], f"{where}.iota")
    _require_ids(sorted(iota), set(P.objects), f"{where}.iota")
    _require_ids(sorted(iota.values()), P.morphisms, f"{where}.iota")
    A = BicatAction(P, B, mom, act0, act1, kappa, iota, d.get("name", ""))
    if "equivariant" in d:
        A.equivariant = [equivariant_from_dict(e, A, base_dir, f"{where}.equivariant[{i}]")
                         for i, e in enumerate(_as_list(d["equivariant"], where))]
    if "fibration" not in d:
        return A
    fd = d["fibration"]
    _fields(fd, f"{where}.fibration", ("base_set", "pi0"))
    base = _str_list(fd["base_set"], f"{where}.fibration.base_set")
    pi0 = _str_map(fd["pi0"], f"{where}.fibration.pi0")
    _require_ids(sorted(pi0), set(P.objects), f"{where}.fibration.pi0")
    _require_ids(sorted(pi0.values()), set(base), f"{where}.fibration.pi0")
    return FiberedAction(A, tuple(sorted(base)), dict(pi0))


def _as_list(v: Any, where: str) -> list:
    if isinstance(v, dict):
        return [v]
    if isinstance(v, list):
        return v
    raise ParseError(f"{where}.equivariant: expected an object or an array")


def torsor_to_dict(T) -> dict:
    fib = T.fibered
    out = {
        "kind": "torsor",
        "action": {k: v for k, v in action_to_dict(fib.action).items()},
        "base_set": sorted(fib.base_set),
        "pi0": dict(fib.pi0),
    }
    if T.name:
        out["name"] = T.name
    return out


def torsor_from_dict(d: Any, where: str = "torsor", base_dir: str = "."):
    from .torsor import TorsorCandidate

    _fields(d, where, ("action", "base_set", "pi0"))
    raw, bd = _resolve(d["action"], base_dir, "action")
    A = action_from_dict(raw, f"{where}.action", bd)
    if isinstance(A, FiberedAction):
        A = A.action
    base = _str_list(d["base_set"], f"{where}.base_set")
    pi0 = _str_map(d["pi0"], f"{where}.pi0")
    _require_ids(sorted(pi0), set(A.P.objects), f"{where}.pi0")
    _require_ids(sorted(pi0.values()), set(base), f"{where}.pi0")
    missing = [p for p in A.P.objects if p not in pi0]
    if missing:
        raise ParseError(f"{where}.pi0: missing object {missing[0]!r}")
    return TorsorCandidate(FiberedAction(A, tuple(sorted(base)), dict(pi0)), d.get("name", ""))


# ---------------------------------------------------------------------------
# simplicial maps


def map_to_dict(m: SimplicialMap) -> dict:
    out = {
        "kind": "map",
        "source": simplicial_to_dict(m.source),
        "target": simplicial_to_dict(m.target),
        "components": [dict(m.component(n)) for n in range(m.cap + 1)],
    }
    if m.name:
        out["name"] = m.name
    return out


def map_from_dict(d: Any, where: str = "map", base_dir: str = ".") -> SimplicialMap:
    _fields(d, where, ("source", "target", "components"))
    raw, bd = _resolve(d["source"], base_dir, "simplicial")
    S = simplicial_from_dict(raw, f"{where}.source")
    raw, bd = _resolve(d["target"], base_dir, "simplicial")
    T = simplicial_from_dict(raw, f"{where}.target")
    S = S.base if isinstance(S, AugmentedSimplexTable) else S
    T = T.base if isinstance(T, AugmentedSimplexTable) else T
    comps = d["components"]
    if not isinstance(comps, list) or len(comps) != min(S.dim_cap, T.dim_cap) + 1:
        raise ParseError(f"{where}: components must cover levels 0..dim_cap")
    out = []
    for n, tab in enumerate(comps):
        tab = _str_map(tab, f"{where}.components[{n}]")
        _require_ids(sorted(tab), S.level_set(n), f"{where}.components[{n}]")
        _require_ids(sorted(tab.values()), T.level_set(n), f"{where}.components[{n}]")
        out.append(dict(tab))
    try:
        return SimplicialMap(S, T, out, d.get("name", ""))
    except MalformedTable as e:
        raise ParseError(f"{where}: {e}") from e


# ---------------------------------------------------------------------------
# artifacts


@dataclass
class Artifact:
    kind: str
    payload: Any
    path: str = ""


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise ParseError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def detect_kind(d: Any) -> str:
    if isinstance(d, dict):
        k = d.get("kind")
        if k in KINDS:
            return k
        if "dim_cap" in d:
            return "simplicial"
        if "one_cells" in d:
            return "bicategory"
        if "act0" in d:
            return "action"
        if "pi0" in d and "action" in d:
            return "torsor"
        if "components" in d:
            return "map"
        if "morphisms" in d:
            return "category"
    raise ParseError("cannot determine the artifact kind")


def from_dict(d: Any, kind: str | None = None, base_dir: str = "."):
    kind = kind or detect_kind(d)
    if isinstance(d, dict) and d.get("kind") not in (None, kind):
        raise ParseError(f"expected a {kind} file, found kind {d.get('kind')!r}")
    if kind == "simplicial":
        return simplicial_from_dict(d)
    if kind == "bicategory":
        return bicategory_from_dict(d)
    if kind == "category":
        return category_from_dict(d)
    if kind == "action":
        return action_from_dict(d, base_dir=base_dir)
    if kind == "torsor":
        return torsor_from_dict(d, base_dir=base_dir)
    if kind == "map":
        return map_from_dict(d, base_dir=base_dir)
    raise ParseError(f"unknown artifact kind {kind!r}")


def to_dict(obj: Any) -> dict:
    from .torsor import TorsorCandidate

    if isinstance(obj, (SimplexTable, AugmentedSimplexTable)):
        return simplicial_to_dict(obj)
    if isinstance(obj, FiniteBicategory):
        return bicategory_to_dict(obj)
    if isinstance(obj, FiniteCategory):
        return category_to_dict(obj)
    if isinstance(obj, (BicatAction, FiberedAction)):
        return action_to_dict(obj)
    if isinstance(obj, TorsorCandidate):
        return torsor_to_dict(obj)
    if isinstance(obj, SimplicialMap):
        return map_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return canonical_dumps(to_dict(obj))


def validate_payload(kind: str, payload: Any):
    """Run the module validator for a kind; return the report."""
    if kind == "simplicial":
        if isinstance(payload, AugmentedSimplexTable):
            rep = validate_simplicial(payload.base)
            rep.extend(validate_augmented(payload), "augmented: ")
            if payload.contraction is not None:
                rep.extend(validate_contraction(payload), "contraction: ")
            return rep
        return validate_simplicial(payload)
    if kind == "bicategory":
        return validate_bicategory(payload)
    if kind == "category":
        return validate_category(payload)
    if kind == "action":
        return validate_action(payload)
    if kind == "torsor":
        return validate_action(payload.fibered)
    if kind == "map":
        rep = validate_simplicial(payload.source)
        rep.extend(validate_simplicial(payload.target))
        rep.extend(validate_map(payload))
        return rep
    raise ParseError(f"unknown artifact kind {kind!r}")


def load_artifact(path: str, kind: str | None = None, validate: bool = True) -> Artifact:
    d = _read_json(path)
    kind = kind or detect_kind(d)
    try:
        payload = from_dict(d, kind, os.path.dirname(os.path.abspath(path)))
    except ParseError:
        raise
    except (MalformedTable, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path}: {e}") from e
    if validate:
        rep = validate_payload(kind, payload)
        if not rep.ok:
            raise ValidationError(f"{path}: {rep.axiom} fails (witness {rep.witness})", rep)
    return Artifact(kind, payload, path)


def save_artifact(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
