"""Terms and laws of the modal lattice language, with a canonical printer."""

from __future__ import annotations

from dataclasses import dataclass

from ..order import ModalSymbol

BINARY = {"and": "/\\", "or": "\\/", "impl": "->", "sub": "--"}
PREC = {"impl": 1, "sub": 1, "or": 2, "and": 3}
UNARY_PREC = 4
ATOM_PREC = 5


class Term:
    __slots__ = ()

    def variables(self) -> frozenset[str]:
        raise NotImplementedError

    def symbols(self) -> frozenset[ModalSymbol]:
        raise NotImplementedError

    def residuals(self) -> frozenset[str]:
        raise NotImplementedError

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str

    def variables(self):
        return frozenset({self.name})

    def symbols(self):
        return frozenset()

    def residuals(self):
        return frozenset()


@dataclass(frozen=True)
class Const(Term):
    value: str  # "top" or "bot"

    def variables(self):
        return frozenset()

    def symbols(self):
        return frozenset()

    def residuals(self):
        return frozenset()


@dataclass(frozen=True)
class Un(Term):
    op: ModalSymbol
    arg: Term

    def variables(self):
        return self.arg.variables()

    def symbols(self):
        return self.arg.symbols() | {self.op}

    def residuals(self):
        return self.arg.residuals()


@dataclass(frozen=True)
class Bin(Term):
    op: str  # and, or, impl, sub
    left: Term
    right: Term

    def variables(self):
        return self.left.variables() | self.right.variables()

    def symbols(self):
        return self.left.symbols() | self.right.symbols()

    def residuals(self):
        own = {self.op} if self.op in ("impl", "sub") else set()
        return self.left.residuals() | self.right.residuals() | own


TOP = Const("top")
BOT = Const("bot")


@dataclass(frozen=True)
class Atom:
    """``lhs <= rhs`` (kind "<=") or ``lhs = rhs`` (kind "=")."""

    kind: str
    lhs: Term
    rhs: Term

    def terms(self) -> tuple[Term, Term]:
        return self.lhs, self.rhs

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} {self.kind} {format_term(self.rhs)}"


@dataclass(frozen=True)
class Law:
    """Premises (possibly none) implying a conclusion, under one assignment."""

    premises: tuple[Atom, ...]
    conclusion: Atom
    name: str | None = None

    @property
    def kind(self) -> str:
        if self.premises:
            return "quasiequation"
        return "inequation" if self.conclusion.kind == "<=" else "equation"

    def atoms(self) -> tuple[Atom, ...]:
        return self.premises + (self.conclusion,)

    def variables(self) -> list[str]:
        out: set[str] = set()
        for a in self.atoms():
            out |= a.lhs.variables() | a.rhs.variables()
        return sorted(out)

    def symbols(self) -> frozenset[ModalSymbol]:
        out: frozenset = frozenset()
        for a in self.atoms():
            out |= a.lhs.symbols() | a.rhs.symbols()
        return out

    def residuals(self) -> frozenset[str]:
        out: frozenset = frozenset()
        for a in self.atoms():
            out |= a.lhs.residuals() | a.rhs.residuals()
        return out

    def without_premises(self) -> "Law":
        return Law((), self.conclusion, None)

    def __str__(self) -> str:
        return format_law(self)

    def same_shape(self, other: "Law") -> bool:
        return self.premises == other.premises and self.conclusion == other.conclusion


def _prec(t: Term) -> int:
    if isinstance(t, Bin):
        return PREC[t.op]
    if isinstance(t, Un):
        return UNARY_PREC
    return ATOM_PREC


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Un):
        inner = format_term(t.arg)
        if isinstance(t.arg, Bin):
            return f"{t.op.name}({inner})"
        return f"{t.op.name} {inner}"
    assert isinstance(t, Bin)
    p = PREC[t.op]
    left, right = format_term(t.left), format_term(t.right)
    right_assoc = t.op in ("impl", "sub")
    if _prec(t.left) < p or (right_assoc and _prec(t.left) == p):
        left = f"({left})"
    if _prec(t.right) < p or (not right_assoc and _prec(t.right) == p):
        right = f"({right})"
    return f"{left} {BINARY[t.op]} {right}"


def format_law(law: Law) -> str:
    concl = str(law.conclusion)
    if not law.premises:
        return concl
    return ", ".join(str(p) for p in law.premises) + " => " + concl
