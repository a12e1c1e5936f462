"""Finite bounded distributive lattices and modal operator tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .order import (
    BOX_NEG,
    BOX_POS,
    DIA_NEG,
    DIA_POS,
    ModalSymbol,
    OrderError,
    Poset,
    bits,
    sorted_symbols,
    upsets,
)


class LatticeError(ValueError):
    pass


class InternalInconsistency(AssertionError):
    """An invariant that the theory guarantees turned out false."""


@dataclass(frozen=True)
class DistLattice:
    """A finite bounded distributive lattice given by its order.

    Meet and join tables are derived from the order at construction and
    cross-checked (existence of glb/lub, distributivity, bounds).
    """

    order: Poset
    meet: tuple[tuple[int, ...], ...] = field(repr=False)
    join: tuple[tuple[int, ...], ...] = field(repr=False)
    top: int
    bottom: int

    @classmethod
    def from_order(cls, order: Poset, check_distributive: bool = True) -> "DistLattice":
        n = order.size
        if n == 0:
            raise LatticeError("a bounded lattice needs at least one element")
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lower = order.down[a] & order.down[b]
                glb = [x for x in bits(lower) if order.up[x] & lower == 1 << x]
                if len(glb) != 1:
                    raise LatticeError(f"elements {a} and {b} have no greatest lower bound")
                upper = order.up[a] & order.up[b]
                lub = [x for x in bits(upper) if order.down[x] & upper == 1 << x]
                if len(lub) != 1:
                    raise LatticeError(f"elements {a} and {b} have no least upper bound")
                meet[a][b] = meet[b][a] = glb[0]
                join[a][b] = join[b][a] = lub[0]
        full = (1 << n) - 1
        tops = [x for x in range(n) if order.down[x] == full]
        bots = [x for x in range(n) if order.up[x] == full]
        lat = cls(order, tuple(map(tuple, meet)), tuple(map(tuple, join)), tops[0], bots[0])
        if check_distributive:
            lat.check_distributive()
        return lat

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence[bool]]) -> "DistLattice":
        try:
            return cls.from_order(Poset.from_matrix(leq))
        except OrderError as e:
            raise LatticeError(str(e)) from None

    @classmethod
    def chain(cls, n: int) -> "DistLattice":
        return cls.from_order(Poset.chain(n))

    def check_distributive(self) -> None:
        m, j = self.meet, self.join
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                        raise LatticeError(f"not distributive at ({a}, {b}, {c})")

    @property
    def size(self) -> int:
        return self.order.size

    def le(self, a: int, b: int) -> bool:
        return bool(self.order.up[a] >> b & 1)

    def dual(self) -> "DistLattice":
        return DistLattice(self.order.dual(), self.join, self.meet, self.bottom, self.top)

    @cached_property
    def implication(self) -> tuple[tuple[int, ...], ...]:
        """``implication[a][c]`` is the largest b with a /\\ b <= c."""
        return tuple(
            tuple(self._extremum(a, c, largest=True) for c in range(self.size))
            for a in range(self.size)
        )

    @cached_property
    def subtraction(self) -> tuple[tuple[int, ...], ...]:
        """``subtraction[a][b]`` is the least c with a <= b \\/ c."""
        return tuple(
            tuple(self._extremum(a, b, largest=False) for b in range(self.size))
            for a in range(self.size)
        )

    def _extremum(self, a: int, x: int, largest: bool) -> int:
        if largest:
            cands = [b for b in range(self.size) if self.le(self.meet[a][b], x)]
            best = [b for b in cands if all(self.le(c, b) for c in cands)]
        else:
            cands = [c for c in range(self.size) if self.le(a, self.join[x][c])]
            best = [c for c in cands if all(self.le(c, d) for d in cands)]
        if len(best) != 1:
            raise InternalInconsistency("residual not attained in a finite distributive lattice")
        return best[0]

    @cached_property
    def arrays(self) -> dict[str, np.ndarray]:
        """Numpy copies of the tables, used by the batch evaluator."""
        le = np.array(self.order.matrix(), dtype=bool)
        return {
            "meet": np.array(self.meet, dtype=np.int16),
            "join": np.array(self.join, dtype=np.int16),
            "impl": np.array(self.implication, dtype=np.int16),
            "sub": np.array(self.subtraction, dtype=np.int16),
            "le": le,
        }

    def join_irreducibles(self) -> list[int]:
        """Elements that are neither bottom nor the join of the elements strictly below."""
        out = []
        for x in range(self.size):
            if x == self.bottom:
                continue
            below = self.order.down[x] & ~(1 << x)
            acc = self.bottom
            for y in bits(below):
                acc = self.join[acc][y]
            if acc != x:
                out.append(x)
        return out


@dataclass(frozen=True)
class UpsetLattice:
    """The lattice of upsets of a poset together with the index bookkeeping."""

    poset: Poset
    masks: tuple[int, ...]
    lattice: DistLattice
    index: dict[int, int] = field(repr=False, compare=False)

    @classmethod
    def of(cls, poset: Poset) -> "UpsetLattice":
        return _upset_lattice_cached(poset)

    def element(self, mask: int) -> int:
        return self.index[mask]


_UPSET_CACHE: dict[Poset, UpsetLattice] = {}


def _upset_lattice_cached(poset: Poset) -> UpsetLattice:
    hit = _UPSET_CACHE.get(poset)
    if hit is not None:
        return hit
    masks = tuple(upsets(poset))
    index = {m: i for i, m in enumerate(masks)}
    k = len(masks)
    up = tuple(
        sum(1 << j for j in range(k) if masks[i] & ~masks[j] == 0) for i in range(k)
    )
    order = Poset(k, up)
    meet = tuple(tuple(index[masks[i] & masks[j]] for j in range(k)) for i in range(k))
    join = tuple(tuple(index[masks[i] | masks[j]] for j in range(k)) for i in range(k))
    lat = DistLattice(order, meet, join, index[(1 << poset.size) - 1], index[0])
    result = UpsetLattice(poset, masks, lat, index)
    if len(_UPSET_CACHE) < 4096:
        _UPSET_CACHE[poset] = result
    return result


RESIDUALS = ("impl", "sub")


@dataclass(frozen=True)
class ModalAlgebra:
    """A distributive lattice with one unary table per modal symbol.

    Operator laws are not enforced at construction; ``check_operator_laws``
    reports them.  ``residuals`` lists which of implication (``impl``) and
    co-implication (``sub``) may be used by laws evaluated on this algebra.
    """

    lattice: DistLattice
    ops: Mapping[ModalSymbol, tuple[int, ...]]
    residuals: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        n = self.lattice.size
        clean = {}
        for s, table in self.ops.items():
            table = tuple(int(x) for x in table)
            if len(table) != n:
                raise LatticeError(f"table for {s} has {len(table)} entries, expected {n}")
            if any(not 0 <= x < n for x in table):
                raise LatticeError(f"table for {s} has an entry outside 0..{n - 1}")
            clean[s] = table
        object.__setattr__(self, "ops", {s: clean[s] for s in sorted_symbols(clean)})
        extra = set(self.residuals) - set(RESIDUALS)
        if extra:
            raise LatticeError(f"unknown residuals {sorted(extra)}")
        object.__setattr__(self, "residuals", frozenset(self.residuals))

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def signature(self) -> tuple[ModalSymbol, ...]:
        return tuple(self.ops)

    def op(self, s: ModalSymbol) -> tuple[int, ...]:
        return self.ops[s]

    def with_ops(self, ops: Mapping[ModalSymbol, Sequence[int]]) -> "ModalAlgebra":
        return ModalAlgebra(self.lattice, dict(ops), self.residuals)

    def key(self) -> tuple:
        return (
            self.lattice.order.up,
            tuple((s.name, t) for s, t in self.ops.items()),
            tuple(sorted(self.residuals)),
        )


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {"law": self.law, "witness": list(self.witness)}


@dataclass
class Report:
    name: str
    violations: list[Violation] = field(default_factory=list)
    inapplicable: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "pass": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "inapplicable": self.inapplicable,
        }


def residual_implication(lat: DistLattice, a: int, c: int) -> int:
    return lat.implication[a][c]


def residual_subtraction(lat: DistLattice, a: int, b: int) -> int:
    return lat.subtraction[a][b]


def _preserves(lat: DistLattice, t: Sequence[int], s: ModalSymbol) -> Iterable[Violation]:
    """Yield every violated instance of the defining equations of ``s``."""
    m, j = lat.meet, lat.join
    name = s.name
    n = lat.size
    box, pos = s.is_box, s.positive
    # box+ : meets to meets, top to top      dia+ : joins to joins, bot to bot
    # box- : joins to meets, bot to top      dia- : meets to joins, top to bot
    src = m if box == pos else j
    dst = m if box else j
    unit_in = (lat.top if pos else lat.bottom) if box else (lat.bottom if pos else lat.top)
    unit_out = lat.top if box else lat.bottom
    for a in range(n):
        for b in range(n):
            if t[src[a][b]] != dst[t[a]][t[b]]:
                yield Violation(f"{name}:{'meet' if src is m else 'join'}", (a, b))
    if t[unit_in] != unit_out:
        yield Violation(f"{name}:{'top' if unit_in == lat.top else 'bot'}", (unit_in,))


def check_operator_laws(A: ModalAlgebra) -> Report:
    report = Report("operator-laws")
    for s, t in A.ops.items():
        report.violations.extend(_preserves(A.lattice, t, s))
    return report


def operator_laws_hold(lat: DistLattice, s: ModalSymbol, t: Sequence[int]) -> bool:
    return next(iter(_preserves(lat, t, s)), None) is None


def _galois(lat: DistLattice, s: ModalSymbol, f: Sequence[int], g: Sequence[int]):
    """Yield (a, b) where the Galois equivalence between forward ``f`` and backward ``g`` fails."""
    le = lat.le
    n = lat.size
    for a in range(n):
        for b in range(n):
            if s == BOX_POS:
                lhs, rhs = le(a, f[b]), le(g[a], b)
            elif s == DIA_POS:
                lhs, rhs = le(f[a], b), le(a, g[b])
            elif s == BOX_NEG:
                lhs, rhs = le(a, f[b]), le(b, g[a])
            else:
                lhs, rhs = le(f[a], b), le(g[b], a)
            if lhs != rhs:
                yield a, b


def check_tense(A: ModalAlgebra, pair: tuple[ModalSymbol, ModalSymbol]) -> Report:
    """Check the adjunction between a forward symbol and its backward adjoint."""
    s, t = pair
    if t != s.adjoint():
        raise ValueError(f"{s} and {t} are not an adjoint pair")
    fwd, bwd = (s, t) if s.is_forward else (t, s)
    report = Report(f"tense:({fwd},{bwd})")
    missing = [x.name for x in (fwd, bwd) if x not in A.ops]
    if missing:
        raise ValueError(f"symbols {missing} not in the signature")
    for a, b in _galois(A.lattice, fwd, A.ops[fwd], A.ops[bwd]):
        report.violations.append(Violation(report.name, (a, b)))
    return report


# For each known symbol: (take the minimum?, compare "x <= t[y]"?) describing
# g(x) = ext{ y : x <= t[y] }  or  ext{ y : t[y] <= x }.
_ADJOINT_RULE: dict[str, tuple[bool, bool]] = {
    "box+": (True, True),
    "bdia+": (False, False),
    "dia+": (False, False),
    "bbox+": (True, True),
    "box-": (False, True),
    "bbox-": (False, True),
    "dia-": (True, False),
    "bdia-": (True, False),
}


def adjoint_table(lat: DistLattice, s: ModalSymbol, t: Sequence[int]) -> tuple[int, ...]:
    """Table of ``s.adjoint()`` determined by the table ``t`` of ``s``."""
    take_min, x_below = _ADJOINT_RULE[s.name]
    le = lat.le
    out = []
    for x in range(lat.size):
        if x_below:
            cands = [y for y in range(lat.size) if le(x, t[y])]
        else:
            cands = [y for y in range(lat.size) if le(t[y], x)]
        if take_min:
            best = [y for y in cands if all(le(y, z) for z in cands)]
        else:
            best = [y for y in cands if all(le(z, y) for z in cands)]
        if len(best) != 1:
            raise InternalInconsistency(
                f"adjoint of {s} not attained at element {x}; operator laws must fail"
            )
        out.append(best[0])
    return tuple(out)


def adjoint_op(A: ModalAlgebra, s: ModalSymbol) -> tuple[tuple[int, ...], Report]:
    """The adjoint table of ``s`` and the tense report confirming it."""
    if s not in A.ops:
        raise ValueError(f"{s} not in the signature")
    g = adjoint_table(A.lattice, s, A.ops[s])
    both = ModalAlgebra(A.lattice, {s: A.ops[s], s.adjoint(): g})
    report = check_tense(both, (s, s.adjoint()))
    if not report.ok:
        raise InternalInconsistency(f"computed adjoint of {s} fails the tense laws")
    return g, report


def tense_completion(A: ModalAlgebra) -> ModalAlgebra:
    """Add the adjoint of every symbol whose adjoint is missing."""
    ops = dict(A.ops)
    for s, t in A.ops.items():
        if s.adjoint() not in ops:
            ops[s.adjoint()] = adjoint_table(A.lattice, s, t)
    return ModalAlgebra(A.lattice, ops, A.residuals)


def adjoint_algebra(A: ModalAlgebra) -> ModalAlgebra:
    """The adjoint algebra: tense-complete, then swap forward and backward labels.

    The forward operator ``dia+`` of the result is the backward ``bdia+`` of
    ``A`` and so on, so the result interprets the converse frame.
    """
    full = tense_completion(A)
    return ModalAlgebra(
        A.lattice, {s.reversed(): t for s, t in full.ops.items()}, A.residuals
    )


def order_dual_algebra(A: ModalAlgebra) -> ModalAlgebra:
    """Reverse the lattice and relabel every box as a diamond and vice versa."""
    lat = A.lattice.dual()
    res = {"impl": "sub", "sub": "impl"}
    return ModalAlgebra(
        lat,
        {s.opposite(): t for s, t in A.ops.items()},
        frozenset(res[r] for r in A.residuals),
    )


def is_subalgebra_embedding(
    A: ModalAlgebra, B: ModalAlgebra, h: Sequence[int], residuals: bool = True
) -> bool:
    return embedding_failure(A, B, h, residuals) is None


def embedding_failure(
    A: ModalAlgebra, B: ModalAlgebra, h: Sequence[int], residuals: bool = True
) -> str | None:
    """Describe the first way ``h`` fails to be an embedding, or None."""
    la, lb = A.lattice, B.lattice
    if len(h) != la.size:
        return "map has the wrong length"
    if len(set(h)) != len(h):
        return "not injective"
    if h[la.top] != lb.top:
        return "top not preserved"
    if h[la.bottom] != lb.bottom:
        return "bottom not preserved"
    for a in range(la.size):
        for b in range(la.size):
            if h[la.meet[a][b]] != lb.meet[h[a]][h[b]]:
                return f"meet not preserved at ({a}, {b})"
            if h[la.join[a][b]] != lb.join[h[a]][h[b]]:
                return f"join not preserved at ({a}, {b})"
    for s, t in A.ops.items():
        if s not in B.ops:
            return f"{s} missing from the target"
        tb = B.ops[s]
        for a in range(la.size):
            if h[t[a]] != tb[h[a]]:
                return f"{s} not preserved at {a}"
    if residuals:
        for r in A.residuals & B.residuals:
            ta = la.implication if r == "impl" else la.subtraction
            tb = lb.implication if r == "impl" else lb.subtraction
            for a in range(la.size):
                for b in range(la.size):
                    if h[ta[a][b]] != tb[h[a]][h[b]]:
                        return f"{r} not preserved at ({a}, {b})"
    return None


def find_isomorphism(A: ModalAlgebra, B: ModalAlgebra) -> list[int] | None:
    """Brute-force isomorphism search respecting the order and every operator."""
    if A.size != B.size or set(A.ops) != set(B.ops):
        return None
    n = A.size
    la, lb = A.lattice, B.lattice
    for perm in itertools.permutations(range(n)):
        if perm[la.top] != lb.top or perm[la.bottom] != lb.bottom:
            continue
        if all(
            la.le(a, b) == lb.le(perm[a], perm[b]) for a in range(n) for b in range(n)
        ) and all(
            perm[t[a]] == B.ops[s][perm[a]] for s, t in A.ops.items() for a in range(n)
        ):
            return list(perm)
    return None

