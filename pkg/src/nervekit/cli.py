"""Command-line driver: ``nervekit <command> FILE [options]``.

Exit codes: 0 when the checked property holds, 1 when it is violated
(a witness is printed), 2 for malformed input or an unknown command.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import serialize as ser
from .action import (
    FiberedAction,
    action_bicategory,
    canonical_projection,
    check_equivariant,
)
from .bicategory import FiniteBicategory, build_ordinal, build_span, delooping, locally_discrete
from .category import (
    cyclic_group,
    direct_product,
    monoid_category,
    symmetric_group,
    trivial_group,
)
from .errors import NervekitError, ParseError, UnknownCommand, VerificationReport
from .functors import build_contraction, coskeleton, decalage, skeleton
from .nerve import classical_nerve, cocycle_check, coskeletality_report, duskin_nerve, nerve_map
from .simplicial import (
    AugmentedSimplexTable,
    SimplexTable,
    classify,
    horn_set,
    kan_status,
    simplicial_kernel,
)
from .torsor import (
    TorsorCandidate,
    build_torsor,
    check_torsor_axioms,
    is_exact_fibration,
    is_simplicial_action,
    verify_glenn_torsor,
)

COMMANDS = (
    "validate", "classify", "kernel", "horn", "cosk", "sk", "dec", "contraction", "nerve",
    "action-bicat", "projection", "equivariant", "exact-fib", "torsor-check", "glenn-check",
    "cocycle", "gen",
)
GENERATORS = (
    "nerve-of-group", "two-group", "ordinal", "span", "trivial-torsor", "pullback-torsor",
    "decalage-of-nerve",
)


@dataclass
class Result:
    code: int
    text: str
    data: Any


def _report(rep: VerificationReport) -> Result:
    return Result(0 if rep.ok else 1, rep.render(), rep.to_dict())


def _emit(obj: Any, out: str | None, what: str) -> Result:
    """Write an artifact to ``out`` or return its canonical JSON as the report."""
    text = ser.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Result(0, f"wrote {what} to {out}", {"wrote": out, "kind": what})
    return Result(0, text.rstrip("\n"), json.loads(text))


def _simplicial(path: str) -> SimplexTable:
    X = ser.load_artifact(path, "simplicial").payload
    return X.base if isinstance(X, AugmentedSimplexTable) else X


def _bicategory_like(path: str) -> FiniteBicategory:
    d = ser._read_json(path)
    kind = ser.detect_kind(d)
    art = ser.load_artifact(path, kind)
    if kind == "category":
        return locally_discrete(art.payload)
    if kind == "bicategory":
        return art.payload
    raise ParseError(f"{path}: expected a bicategory or category file, found {kind}")


def _action(path: str):
    d = ser._read_json(path)
    kind = ser.detect_kind(d)
    if kind not in ("action", "torsor"):
        raise ParseError(f"{path}: expected an action or torsor file, found {kind}")
    p = ser.load_artifact(path, kind).payload
    if isinstance(p, TorsorCandidate):
        return p.action
    return p.action if isinstance(p, FiberedAction) else p


def _torsor(path: str) -> TorsorCandidate:
    d = ser._read_json(path)
    kind = ser.detect_kind(d)
    p = ser.load_artifact(path, kind).payload
    if isinstance(p, TorsorCandidate):
        return p
    if isinstance(p, FiberedAction):
        return TorsorCandidate(p, p.name)
    raise ParseError(f"{path}: expected a torsor (or fibered action) file")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(a) -> Result:
    d = ser._read_json(a.file)
    kind = a.kind or ser.detect_kind(d)
    art = ser.load_artifact(a.file, kind, validate=False)
    return _report(ser.validate_payload(kind, art.payload))


def cmd_classify(a) -> Result:
    X = _simplicial(a.file)
    c = classify(X, a.bound)
    text = c.describe()
    data = c.to_dict()
    code = 0
    if a.require:
        need = a.require
        if need == "kan":
            ok = c.kan
        elif need == "weak-kan":
            ok = c.weak_kan
        elif need == "inner-exact":
            ok = c.inner_exact
        elif need.startswith("hypergroupoid="):
            ok = c.satisfies_hypergroupoid(int(need.split("=", 1)[1]))
        else:
            raise ParseError(f"unknown requirement {need!r}")
        code = 0 if ok else 1
        data["required"] = need
        data["requirement_met"] = ok
        if not ok:
            text += f"\nrequirement {need} not met"
    if c.note:
        text += f"\nnote: {c.note}"
    if a.plot:
        from .plotting import plot_classification

        plot_classification(X, c, a.plot)
        data["plot"] = a.plot
        text += f"\nplot written to {a.plot}"
    return Result(code, text, data)


def cmd_kernel(a) -> Result:
    X = ser.load_artifact(a.file, "simplicial").payload
    K = simplicial_kernel(X, a.n)
    counts = {}
    base = X.base if isinstance(X, AugmentedSimplexTable) else X
    if a.n >= 1:
        from collections import Counter

        counts = Counter(base.faces(a.n, x) for x in base.level(a.n)) if base.materializable(a.n) else {}
    lines = [f"K_{a.n}: {len(K)} tuples"]
    rows = []
    for t in K.tuples:
        row = {"tuple": list(t)}
        if counts:
            row["preimages"] = counts.get(t, 0)
        rows.append(row)
        if a.list:
            lines.append("  (" + ", ".join(t) + ")" + (f"  <- {counts.get(t, 0)}" if counts else ""))
    return Result(0, "\n".join(lines), {"n": a.n, "size": len(K), "tuples": rows})


def cmd_horn(a) -> Result:
    X = _simplicial(a.file)
    H = horn_set(X, a.n, a.k)
    st = kan_status(X, a.n, a.k)
    lines = [f"Λ^{a.k}_{a.n}: {len(H)} horns; {st}"]
    if a.list:
        lines += ["  (" + ", ".join(t) + ")" for t in H.tuples]
    data = {"n": a.n, "k": a.k, "size": len(H), "status": st.kind,
            "witness": None if st.witness is None else list(st.witness)}
    if a.list:
        data["horns"] = [list(t) for t in H.tuples]
    return Result(0 if st.satisfied else 1, "\n".join(lines), data)


def cmd_cosk(a) -> Result:
    X = _simplicial(a.file)
    return _emit(coskeleton(X, a.n, a.cap if a.cap is not None else max(X.dim_cap, a.n + 1)), a.output, "simplicial")


def cmd_sk(a) -> Result:
    X = _simplicial(a.file)
    return _emit(skeleton(X, a.n, a.cap if a.cap is not None else max(X.dim_cap, a.n + 1)), a.output, "simplicial")


def cmd_dec(a) -> Result:
    X = _simplicial(a.file)
    bundle = decalage(X)
    rep = bundle.validate()
    if not rep.ok:
        return _report(rep)
    return _emit(bundle.aug, a.output, "simplicial")


def cmd_contraction(a) -> Result:
    A = ser.load_artifact(a.file, "simplicial").payload
    if not isinstance(A, AugmentedSimplexTable):
        raise ParseError(f"{a.file}: contraction needs an augmented simplicial file")
    return _emit(build_contraction(A), a.output, "simplicial")


def cmd_nerve(a) -> Result:
    d = ser._read_json(a.file)
    kind = ser.detect_kind(d)
    if kind == "category" and not a.duskin:
        C = ser.load_artifact(a.file, "category").payload
        return _emit(classical_nerve(C, a.cap), a.output, "simplicial")
    B = _bicategory_like(a.file)
    N = duskin_nerve(B, a.cap)
    if a.sidecar:
        with open(a.sidecar, "w", encoding="utf-8") as fh:
            fh.write(ser.canonical_dumps(N.sidecar()))
    if a.coskeletality:
        # a profile, not a property: always exit 0
        rep = coskeletality_report(N, max(a.cap, 4))
        return Result(0, rep.render(), rep.to_dict())
    return _emit(N, a.output, "simplicial")


def cmd_action_bicat(a) -> Result:
    return _emit(action_bicategory(_action(a.file)), a.output, "bicategory")


def cmd_projection(a) -> Result:
    A = _action(a.file)
    AB = action_bicategory(A)
    return _emit(nerve_map(canonical_projection(A, AB), cap=a.cap), a.output, "map")


def cmd_equivariant(a) -> Result:
    A = _action(a.file)
    blocks = getattr(A, "equivariant", None)
    if not blocks:
        raise ParseError(f"{a.file}: no equivariant block")
    rep = VerificationReport(f"equivariant data in {a.file}")
    for i, (kind, data) in enumerate(blocks):
        rep.extend(check_equivariant(kind, data), f"[{i}] {kind}: ")
    return _report(rep)


def cmd_exact_fib(a) -> Result:
    m = ser.load_artifact(a.file, "map").payload
    r = is_simplicial_action(m, a.n, a.bound) if a.bound is not None else is_exact_fibration(m, a.n)
    upto = f"dimensions {a.n}..{a.bound}" if a.bound is not None else f"dimension {a.n}"
    if r.ok:
        text = f"exact fibration in {upto}"
        if r.note:
            text += f" ({r.note})"
    else:
        k, key, count = r.witness
        text = f"not an exact fibration at dimension {r.n}: k={k}, fibre element {key} has {count} preimages"
    data = {"ok": r.ok, "n": r.n, "note": r.note,
            "witness": None if r.witness is None else {"k": r.witness[0], "element": ser_plain(r.witness[1]),
                                                        "preimages": r.witness[2]}}
    return Result(0 if r.ok else 1, text, data)


def ser_plain(x):
    from .errors import _plain

    return _plain(x)


def cmd_torsor_check(a) -> Result:
    return _report(check_torsor_axioms(_torsor(a.file)))


def cmd_glenn_check(a) -> Result:
    return _report(verify_glenn_torsor(_torsor(a.file), a.bound))


def cmd_cocycle(a) -> Result:
    d = ser._read_json(a.file)
    kind = ser.detect_kind(d)
    if kind in ("torsor", "action"):
        B = action_bicategory(_action(a.file))
    else:
        B = _bicategory_like(a.file)
    return _report(cocycle_check(duskin_nerve(B)))


# ---------------------------------------------------------------------------
# generators


def parse_group(spec: str):
    s = spec.replace(" ", "")
    if s in ("1", "e", "trivial"):
        return trivial_group()
    if s in ("S3",):
        return symmetric_group(3)
    if s in ("V4", "Z/2xZ/2"):
        return direct_product(cyclic_group(2), cyclic_group(2))
    if s.startswith("Z/") and s[2:].isdigit() and int(s[2:]) >= 1:
        n = int(s[2:])
        return trivial_group() if n == 1 else cyclic_group(n)
    raise ParseError(f"unknown group {spec!r} (use Z/n, S3, V4 or 1)")


def cmd_gen(a) -> Result:
    from .stock import stock_two_groups

    g = a.generator
    if g == "nerve-of-group":
        return _emit(classical_nerve(monoid_category(parse_group(a.group)), a.cap), a.output, "simplicial")
    if g == "two-group":
        table = {k.strip("()"): B for k, B in stock_two_groups().items()}
        if a.crossed not in table:
            raise ParseError(f"unknown crossed module {a.crossed!r}; known: {', '.join(sorted(table))}")
        return _emit(table[a.crossed], a.output, "bicategory")
    if g == "ordinal":
        return _emit(build_ordinal(a.n), a.output, "bicategory")
    if g == "span":
        universe = [u for u in a.universe.split(",") if u]
        if not universe:
            raise ParseError("span needs a nonempty --universe")
        return _emit(build_span(universe, a.empty), a.output, "bicategory")
    if g in ("trivial-torsor", "pullback-torsor"):
        B = _bicategory_like(a.bicategory) if a.bicategory else delooping(parse_group(a.group))
        if g == "trivial-torsor":
            return _emit(build_torsor("trivial", B), a.output, "torsor")
        if a.m < 1:
            raise ParseError("--m must be positive")
        if len(B.objects) != 1 and not a.target:
            raise ParseError("pullback over a bicategory with several objects needs --target")
        tgt = a.target or B.objects[0]
        f = {f"m{i}": tgt for i in range(a.m)}
        return _emit(build_torsor("pullback", B, f=f), a.output, "torsor")
    if g == "decalage-of-nerve":
        X = classical_nerve(monoid_category(parse_group(a.group)), a.cap)
        return _emit(decalage(X).aug, a.output, "simplicial")
    raise UnknownCommand(f"unknown generator {g!r}; known: {', '.join(GENERATORS)}")


# ---------------------------------------------------------------------------
# argument parsing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nervekit", description="Finite simplicial and bicategorical verification.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", metavar="command")

    def add(name: str, fn: Callable, help: str, needs_file: bool = True):
        sp = sub.add_parser(name, help=help)
        if needs_file:
            sp.add_argument("file")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "run the module validator on a file")
    sp.add_argument("--kind", choices=ser.KINDS)
    sp = add("classify", cmd_classify, "Kan / hypergroupoid classification")
    sp.add_argument("--bound", type=int)
    sp.add_argument("--require", help="kan | weak-kan | inner-exact | hypergroupoid=N")
    sp.add_argument("--plot", metavar="PNG", help="write a figure of level sizes and horn statuses")
    sp = add("kernel", cmd_kernel, "simplicial kernel K_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    sp = add("horn", cmd_horn, "horns and Kan status in one position")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    for name, fn in (("cosk", cmd_cosk), ("sk", cmd_sk)):
        sp = add(name, fn, f"{'co' if name == 'cosk' else ''}skeleton completion")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--cap", type=int)
        sp.add_argument("-o", "--output")
    sp = add("dec", cmd_dec, "décalage, augmented and split")
    sp.add_argument("-o", "--output")
    sp = add("contraction", cmd_contraction, "split an aspherical augmented complex")
    sp.add_argument("-o", "--output")
    sp = add("nerve", cmd_nerve, "nerve of a category, Duskin nerve of a bicategory")
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("--duskin", action="store_true", help="treat a category as a locally discrete bicategory")
    sp.add_argument("--sidecar", help="write the level-2/3 decoding here")
    sp.add_argument("--coskeletality", action="store_true", help="report which δ_n are bijective")
    sp.add_argument("-o", "--output")
    sp = add("action-bicat", cmd_action_bicat, "the action bicategory of an action")
    sp.add_argument("-o", "--output")
    sp = add("projection", cmd_projection, "nerve of the canonical projection (a map file)")
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("-o", "--output")
    add("equivariant", cmd_equivariant, "check equivariant functor / transformation blocks")
    sp = add("exact-fib", cmd_exact_fib, "exact fibration test on a map file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, help="check every dimension n..bound")
    add("torsor-check", cmd_torsor_check, "bigroupoid 2-torsor axioms")
    sp = add("glenn-check", cmd_glenn_check, "exactness, asphericity and δ_2 for a torsor nerve")
    sp.add_argument("--bound", type=int, default=4)
    add("cocycle", cmd_cocycle, "3-simplex identity on a Duskin nerve")
    sp = add("gen", cmd_gen, "stock generators", needs_file=False)
    sp.add_argument("generator", help=" | ".join(GENERATORS))
    sp.add_argument("--group", default="Z/2")
    sp.add_argument("--crossed", default="Z/2->1")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--universe", default="a,b")
    sp.add_argument("--empty")
    sp.add_argument("--bicategory", help="bicategory or category file instead of --group")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--target", help="object of B that every point of M maps to")
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("-o", "--output")
    return p


def run_command(argv: list) -> tuple:
    """Return ``(exit_code, output_text)`` without touching sys.exit."""
    argv = list(argv)
    as_json = "--json" in argv
    positional = [x for x in argv if not x.startswith("-")]
    if not positional:
        if "-h" in argv or "--help" in argv:
            return 0, _parser().format_help().rstrip()
        return 2, _parser().format_usage().rstrip()
    if positional[0] not in COMMANDS:
        err = UnknownCommand(f"unknown command {positional[0]!r}; known: {', '.join(COMMANDS)}")
        return 2, _format_error(err, as_json)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    try:
        res = args.fn(args)
    except NervekitError as e:
        return e.exit_code, _format_error(e, as_json)
    if as_json:
        return res.code, ser.canonical_dumps(res.data).rstrip("\n")
    return res.code, res.text


def _format_error(e: NervekitError, as_json: bool) -> str:
    rep = getattr(e, "report", None)
    if as_json:
        d = {"error": type(e).__name__, "message": str(e), "exit_code": e.exit_code}
        if rep is not None:
            d["report"] = rep.to_dict()
        return ser.canonical_dumps(d).rstrip("\n")
    text = f"error: {type(e).__name__}: {e}"
    if rep is not None:
        text += "\n" + rep.render()
    return text


def main(argv: list | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stdout if code != 2 else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
