"""Finite posets, binary relations and the polarity-twisted closures.

Elements are the integers ``0..n-1``.  Every relation (including the order
itself) is stored as a tuple of row bitmasks: bit ``v`` of ``rows[u]`` is set
iff ``u R v``.  Composition is read left to right::

    u (S o T) w  iff  there is v with u S v and v T w

so ``compose(leq, R)`` relates ``u`` to ``w`` when ``u <= v R w`` for some ``v``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class OrderError(ValueError):
    """Raised when a matrix does not describe the requested structure."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


# ---------------------------------------------------------------------------
# symbols


class Polarity(enum.Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEG if self is Polarity.POS else Polarity.POS

    def __str__(self) -> str:
        return self.value


class Shape(enum.Enum):
    BOX = "box"
    DIA = "dia"

    def flip(self) -> "Shape":
        return Shape.DIA if self is Shape.BOX else Shape.BOX


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    def flip(self) -> "Direction":
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


_PRETTY = {
    (Shape.BOX, Direction.FORWARD): "□",
    (Shape.DIA, Direction.FORWARD): "◇",
    (Shape.BOX, Direction.BACKWARD): "■",
    (Shape.DIA, Direction.BACKWARD): "◆",
}


@dataclass(frozen=True, order=True)
class ModalSymbol:
    """A box or diamond of some polarity, looking forward or backward.

    Backward symbols are written with a ``b`` prefix (``bbox+``, ``bdia-``).
    A backward symbol has the same algebraic type as the forward symbol of
    the same shape and polarity; only its relation is read in reverse.
    """

    direction: Direction
    shape: Shape
    polarity: Polarity

    @classmethod
    def parse(cls, name: str) -> "ModalSymbol":
        try:
            return SYMBOLS_BY_NAME[name]
        except KeyError:
            raise ValueError(f"unknown modal symbol {name!r}") from None

    @property
    def name(self) -> str:
        prefix = "b" if self.direction is Direction.BACKWARD else ""
        return f"{prefix}{self.shape.value}{self.polarity.value}"

    @property
    def pretty(self) -> str:
        return _PRETTY[self.shape, self.direction] + self.polarity.value

    @property
    def is_forward(self) -> bool:
        return self.direction is Direction.FORWARD

    @property
    def is_box(self) -> bool:
        return self.shape is Shape.BOX

    @property
    def positive(self) -> bool:
        return self.polarity is Polarity.POS

    def opposite(self) -> "ModalSymbol":
        """Order-dual symbol: box <-> diamond, same polarity and direction."""
        return ModalSymbol(self.direction, self.shape.flip(), self.polarity)

    def adjoint(self) -> "ModalSymbol":
        """Galois partner: (box+, bdia+), (dia+, bbox+), (box-, bbox-), (dia-, bdia-)."""
        shape = self.shape.flip() if self.positive else self.shape
        return ModalSymbol(self.direction.flip(), shape, self.polarity)

    def reversed(self) -> "ModalSymbol":
        """Same shape and polarity, other direction (dia+ <-> bdia+)."""
        return ModalSymbol(self.direction.flip(), self.shape, self.polarity)

    def base(self) -> "ModalSymbol":
        """The forward symbol with the same algebraic type."""
        return ModalSymbol(Direction.FORWARD, self.shape, self.polarity)

    def with_polarity(self, polarity: Polarity) -> "ModalSymbol":
        return ModalSymbol(self.direction, self.shape, polarity)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"ModalSymbol({self.name})"


ALL_SYMBOLS: tuple[ModalSymbol, ...] = tuple(
    ModalSymbol(d, s, p) for d in Direction for s in Shape for p in Polarity
)
SYMBOLS_BY_NAME = {s.name: s for s in ALL_SYMBOLS}
FORWARD_SYMBOLS: tuple[ModalSymbol, ...] = tuple(s for s in ALL_SYMBOLS if s.is_forward)
BACKWARD_SYMBOLS: tuple[ModalSymbol, ...] = tuple(s for s in ALL_SYMBOLS if not s.is_forward)

BOX_POS = SYMBOLS_BY_NAME["box+"]
BOX_NEG = SYMBOLS_BY_NAME["box-"]
DIA_POS = SYMBOLS_BY_NAME["dia+"]
DIA_NEG = SYMBOLS_BY_NAME["dia-"]


def symbol_sort_key(s: ModalSymbol) -> int:
    """Canonical symbol order: box+ box- dia+ dia- bbox+ bbox- bdia+ bdia-."""
    return _SYMBOL_ORDER[s]


_SYMBOL_ORDER = {
    SYMBOLS_BY_NAME[n]: i
    for i, n in enumerate(
        ["box+", "box-", "dia+", "dia-", "bbox+", "bbox-", "bdia+", "bdia-"]
    )
}


def sorted_symbols(symbols: Iterable[ModalSymbol]) -> tuple[ModalSymbol, ...]:
    return tuple(sorted(set(symbols), key=symbol_sort_key))


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Relation:
    size: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.size:
            raise OrderError(f"relation has {len(self.rows)} rows, expected {self.size}")
        full = (1 << self.size) - 1
        for r in self.rows:
            if r & ~full:
                raise OrderError("relation row mentions an element outside 0..n-1")

    @classmethod
    def empty(cls, n: int) -> "Relation":
        return cls(n, (0,) * n)

    @classmethod
    def full(cls, n: int) -> "Relation":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * n
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise OrderError(f"pair {(u, v)} out of range for size {n}")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> "Relation":
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise OrderError(f"row {i} has length {len(row)}, expected {n}")
            rows.append(mask_of(j for j, b in enumerate(row) if b))
        return cls(n, tuple(rows))

    @classmethod
    def from_code(cls, n: int, code: int) -> "Relation":
        """Decode the integer whose bit ``u*n + v`` says ``u R v``."""
        full = (1 << n) - 1
        return cls(n, tuple((code >> (u * n)) & full for u in range(n)))

    @property
    def code(self) -> int:
        c = 0
        for u, r in enumerate(self.rows):
            c |= r << (u * self.size)
        return c

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> v & 1) for v in range(self.size)] for r in self.rows]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u, r in enumerate(self.rows):
            for v in bits(r):
                yield u, v

    def __contains__(self, pair: tuple[int, int]) -> bool:
        u, v = pair
        return bool(self.rows[u] >> v & 1)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def __bool__(self) -> bool:
        return any(self.rows)

    def _check(self, other: "Relation") -> None:
        if self.size != other.size:
            raise OrderError(f"size mismatch: {self.size} vs {other.size}")

    def __and__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.size, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __or__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.size, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "Relation") -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __ge__(self, other: "Relation") -> bool:
        return other <= self

    def image(self, u: int) -> int:
        return self.rows[u]

    def preimage(self, v: int) -> int:
        return mask_of(u for u, r in enumerate(self.rows) if r >> v & 1)

    def first_missing(self, other: "Relation") -> tuple[int, int] | None:
        """First pair (index order) of ``self`` that is not in ``other``."""
        for u, (a, b) in enumerate(zip(self.rows, other.rows)):
            extra = a & ~b
            if extra:
                return u, (extra & -extra).bit_length() - 1
        return None

    def __repr__(self) -> str:
        return f"Relation({self.size}, {sorted(self.pairs())})"


def compose(s: Relation, t: Relation) -> Relation:
    """Relational composition, ``u (s o t) w`` iff ``u s v`` and ``v t w``."""
    if s.size != t.size:
        raise OrderError(f"cannot compose relations of sizes {s.size} and {t.size}")
    rows = []
    for r in s.rows:
        acc = 0
        for v in bits(r):
            acc |= t.rows[v]
        rows.append(acc)
    return Relation(s.size, tuple(rows))


def converse(r: Relation) -> Relation:
    rows = [0] * r.size
    for u, row in enumerate(r.rows):
        for v in bits(row):
            rows[v] |= 1 << u
    return Relation(r.size, tuple(rows))


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class Poset:
    """A finite partial order; ``up[u]`` is the mask of elements ``>= u``."""

    size: int
    up: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.up) != self.size:
            raise OrderError(f"poset has {len(self.up)} rows, expected {self.size}")
        n = self.size
        for i in range(n):
            if not self.up[i] >> i & 1:
                raise OrderError(f"not reflexive: ({i}, {i}) missing")
        for i in range(n):
            for j in bits(self.up[i]):
                if j != i and self.up[j] >> i & 1:
                    raise OrderError(f"not antisymmetric: ({i}, {j}) and ({j}, {i})")
                missing = self.up[j] & ~self.up[i]
                if missing:
                    k = (missing & -missing).bit_length() - 1
                    raise OrderError(
                        f"not transitive: ({i}, {j}) and ({j}, {k}) but not ({i}, {k})"
                    )

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence[bool]]) -> "Poset":
        return cls(len(leq), Relation.from_matrix(leq).rows)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of the given ``(lower, upper)`` pairs."""
        up = [1 << i for i in range(n)]
        for a, b in covers:
            up[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in bits(up[i]):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        return cls(n, tuple(up))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, tuple(1 << i for i in range(n)))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return converse(self.leq).rows

    @property
    def leq(self) -> Relation:
        return Relation(self.size, self.up)

    @property
    def geq(self) -> Relation:
        return Relation(self.size, self.down)

    def le(self, u: int, v: int) -> bool:
        return bool(self.up[u] >> v & 1)

    def dual(self) -> "Poset":
        return Poset(self.size, self.down)

    def matrix(self) -> list[list[bool]]:
        return self.leq.matrix()

    def polar(self, polarity: Polarity) -> "Poset":
        """The poset itself for ``+``, its order dual for ``-``."""
        return self if polarity is Polarity.POS else self.dual()

    def is_upset(self, mask: int) -> bool:
        return all(self.up[u] & ~mask == 0 for u in bits(mask))

    def upward_closure(self, mask: int) -> int:
        acc = 0
        for u in bits(mask):
            acc |= self.up[u]
        return acc

    def minimal(self, mask: int) -> int:
        """Minimal elements of the subset ``mask``."""
        return mask_of(u for u in bits(mask) if self.down[u] & mask == 1 << u)

    def __repr__(self) -> str:
        covers = [
            (u, v) for u in range(self.size) for v in bits(self.up[u]) if u != v
        ]
        return f"Poset({self.size}, {covers})"


def upsets(poset: Poset) -> list[int]:
    """All upsets as bitmasks, ordered by cardinality then lexicographically."""
    found = [m for m in range(1 << poset.size) if poset.is_upset(m)]
    found.sort(key=lambda m: (bin(m).count("1"), tuple(bits(m))))
    return found


# ---------------------------------------------------------------------------
# polarity-twisted products and closures


@dataclass(frozen=True)
class ProductOrder:
    """The order on ``U x U`` used to define monotone relations for a symbol.

    ``first_dual``/``second_dual`` say which factor carries the reversed
    order.  ``(u, v) <= (u2, v2)`` iff both coordinates are below in their
    factor.
    """

    poset: Poset
    first_dual: bool
    second_dual: bool

    def _up(self, dual: bool) -> tuple[int, ...]:
        return self.poset.down if dual else self.poset.up

    def above(self, u: int, v: int) -> tuple[int, int]:
        """Masks of first and second coordinates of pairs ``>= (u, v)``."""
        return self._up(self.first_dual)[u], self._up(self.second_dual)[v]

    def below(self, u: int, v: int) -> tuple[int, int]:
        return self._up(not self.first_dual)[u], self._up(not self.second_dual)[v]

    def le(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        m1, m2 = self.above(*a)
        return bool(m1 >> b[0] & 1 and m2 >> b[1] & 1)

    def as_poset(self) -> Poset:
        """The product as a poset on ``n*n`` points, pair ``(u, v)`` at ``u*n + v``."""
        n = self.poset.size
        rows = []
        for u in range(n):
            for v in range(n):
                m1, m2 = self.above(u, v)
                rows.append(mask_of(a * n + b for a in bits(m1) for b in bits(m2)))
        return Poset(n * n, tuple(rows))


def product_order(poset: Poset, symbol: ModalSymbol) -> ProductOrder:
    """Product order whose upsets are exactly the relations for ``symbol``.

    Boxes use the dual order on the first factor and the ``alpha``-twisted
    order on the second; diamonds use the plain order on the first factor
    and the ``-alpha``-twisted order on the second.
    """
    if not symbol.is_forward:
        raise ValueError(
            f"{symbol} is backward; use the product order of {symbol.base()}"
        )
    if symbol.is_box:
        return ProductOrder(poset, True, not symbol.positive)
    return ProductOrder(poset, False, symbol.positive)


def is_delta_relation(poset: Poset, rel: Relation, symbol: ModalSymbol) -> bool:
    """True iff ``rel`` is an upset of ``product_order(poset, symbol)``."""
    return first_non_monotone(poset, rel, symbol) is None


def first_non_monotone(
    poset: Poset, rel: Relation, symbol: ModalSymbol
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """A pair in ``rel`` and a pair above it that is missing, if any."""
    prod = product_order(poset, symbol)
    for u, v in rel.pairs():
        m1, m2 = prod.above(u, v)
        for u2 in bits(m1):
            missing = m2 & ~rel.rows[u2]
            if missing:
                return (u, v), (u2, (missing & -missing).bit_length() - 1)
    return None


def delta_closure(poset: Poset, rel: Relation, symbol: ModalSymbol) -> Relation:
    """Least relation for ``symbol`` containing ``rel``.

    box+ : <= o R o <=     dia+ : >= o R o >=
    box- : <= o R o >=     dia- : >= o R o <=
    """
    if not symbol.is_forward:
        raise ValueError(f"{symbol} is backward; close with {symbol.base()}")
    le, ge = poset.leq, poset.geq
    left = le if symbol.is_box else ge
    right = le if symbol.is_box == symbol.positive else ge
    return compose(compose(left, rel), right)
