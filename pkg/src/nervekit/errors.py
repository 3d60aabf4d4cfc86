"""Exception hierarchy and the structured verification report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class NervekitError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class MalformedTable(NervekitError):
    exit_code = 2


class ParseError(NervekitError):
    exit_code = 2


class UnknownCommand(NervekitError):
    exit_code = 2


class DimensionOutOfRange(NervekitError):
    exit_code = 2


class HornIndexOutOfRange(NervekitError):
    exit_code = 2


class TruncatedAboveCap(NervekitError):
    pass


class NotAspherical(NervekitError):
    def __init__(self, level: int, witness: tuple):
        super().__init__(f"not aspherical at level {level}: witness {witness}")
        self.level = level
        self.witness = witness


class NotComposable(NervekitError):
    pass


class NotCrossedModule(NervekitError):
    pass


class InvalidBicategory(NervekitError):
    pass


class NotAHomomorphism(NervekitError):
    pass


class InvalidAction(NervekitError):
    pass


class MalformedData(NervekitError):
    exit_code = 2


class NotGroupoid(NervekitError):
    pass


class NotBigroupoid(NervekitError):
    pass


class NotEpimorphism(NervekitError):
    pass


class ValidationError(NervekitError):
    """A loaded artifact failed its module validator; carries the report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class Check:
    name: str
    ok: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerificationReport:
    """Outcome of a validator: the list of checks run, in order.

    A report is truthy iff every check passed. ``failure`` is the first
    failed check, which carries the violated identity and its witness.
    """

    subject: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: Any = None, detail: str = "") -> Check:
        c = Check(name, ok, witness, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.detail))
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failure(self) -> Check | None:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    @property
    def axiom(self) -> str | None:
        f = self.failure
        return None if f is None else f.name

    @property
    def witness(self) -> Any:
        f = self.failure
        return None if f is None else f.witness

    def to_dict(self) -> dict:
        d = {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def render(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if not c.ok and c.witness is not None:
                line += f" (witness {_plain(c.witness)})"
            lines.append(line)
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _plain(x: Any) -> Any:
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)
