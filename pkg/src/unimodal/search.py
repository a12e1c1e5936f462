"""Enumeration of posets, relations, frames and algebras, plus batch checks.

The batch layer represents a family of relations on one poset as an integer
array of shape (N, n): entry ``[i, u]`` is the row bitmask of ``u`` in the
i-th relation.  Frame conditions and complex-algebra operator tables are then
computed for all N relations at once.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import (
    DistLattice,
    ModalAlgebra,
    UpsetLattice,
    operator_laws_hold,
)
from .frames import (
    BACKWARD_LOCALITY,
    FORWARD_LOCALITY,
    LOCALITY_PAIR,
    UNIMODAL,
    FrameConditionId,
    ModalFrame,
    complex_algebra,
)
from .order import (
    FORWARD_SYMBOLS,
    ModalSymbol,
    Poset,
    Relation,
    bits,
    delta_closure,
    product_order,
    sorted_symbols,
)

KNOWN_POSET_COUNTS = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16, 5: 63}
POSET_CEILING = 5
LATTICE_CEILING = 6


class BoundExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# posets and upsets


def enumerate_upsets(P: Poset) -> list[int]:
    """Upsets by depth-first choice, deciding elements from the top down."""
    n = P.size
    order = sorted(range(n), key=lambda x: (bin(P.up[x]).count("1"), x))
    out: list[int] = []

    def dfs(i: int, m: int) -> None:
        if i == n:
            out.append(m)
            return
        x = order[i]
        dfs(i + 1, m)
        if P.up[x] & ~(m | 1 << x) == 0:
            dfs(i + 1, m | 1 << x)

    dfs(0, 0)
    return out


def canonical_form(P: Poset) -> tuple[int, ...]:
    """Least relabelled row tuple over all permutations."""
    n = P.size
    best = None
    for p in itertools.permutations(range(n)):
        rows = [0] * n
        for u in range(n):
            rows[p[u]] = sum(1 << p[v] for v in bits(P.up[u]))
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best if best is not None else ()


@lru_cache(maxsize=None)
def enumerate_posets(n: int) -> tuple[Poset, ...]:
    """All posets on n points up to isomorphism, in canonical form and order.

    Every poset arises from a smaller one by adding a maximal element above
    some downset, so the search extends the (n-1)-point posets.
    """
    if n > POSET_CEILING:
        raise BoundExceeded(f"posets are enumerated up to {POSET_CEILING} points")
    if n == 0:
        return (Poset(0, ()),)
    found: dict[tuple[int, ...], Poset] = {}
    for Q in enumerate_posets(n - 1):
        new = n - 1
        for down in enumerate_upsets(Q.dual()):
            up = list(Q.up) + [1 << new]
            for d in bits(down):
                up[d] |= 1 << new
            key = canonical_form(Poset(n, tuple(up)))
            if key not in found:
                found[key] = Poset(n, key)
    result = tuple(found[k] for k in sorted(found))
    if n in KNOWN_POSET_COUNTS and len(result) != KNOWN_POSET_COUNTS[n]:
        raise AssertionError(f"found {len(result)} posets on {n} points")
    return result


def all_posets(max_size: int, min_size: int = 1) -> Iterator[Poset]:
    for n in range(min_size, max_size + 1):
        yield from enumerate_posets(n)


# ---------------------------------------------------------------------------
# relations and frames


@lru_cache(maxsize=None)
def _delta_rows(P: Poset, s: ModalSymbol) -> np.ndarray:
    n = P.size
    prod = product_order(P, s).as_poset()
    rows = []
    for m in enumerate_upsets(prod):
        rows.append([(m >> (u * n)) & ((1 << n) - 1) for u in range(n)])
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    order = np.lexsort(arr.T[::-1]) if n else np.arange(len(rows))
    arr = arr[order]
    arr.setflags(write=False)
    return arr


def delta_relation_rows(P: Poset, s: ModalSymbol) -> np.ndarray:
    """All relations for ``s`` on ``P`` as an (N, n) array of row masks."""
    if not s.is_forward:
        raise ValueError(f"{s} is backward; enumerate {s.base()} relations")
    return _delta_rows(P, s)


def enumerate_delta_relations(P: Poset, s: ModalSymbol) -> Iterator[Relation]:
    for row in delta_relation_rows(P, s):
        yield Relation(P.size, tuple(int(x) for x in row))


def count_frames(signature: Sequence[ModalSymbol], n: int) -> int:
    total = 0
    for P in all_posets(n):
        c = 1
        for s in signature:
            c *= len(delta_relation_rows(P, s))
        total += c
    return total


def enumerate_frames(signature: Sequence[ModalSymbol], n: int) -> Iterator[ModalFrame]:
    """Every frame with the given forward signature on posets of 1..n points."""
    if n > 4:
        raise BoundExceeded("frames are enumerated exhaustively up to 4 points")
    sig = sorted_symbols(signature)
    for P in all_posets(n):
        banks = [delta_relation_rows(P, s) for s in sig]
        for combo in itertools.product(*(range(len(b)) for b in banks)):
            rels = {
                s: Relation(P.size, tuple(int(x) for x in b[i]))
                for s, b, i in zip(sig, banks, combo)
            }
            yield ModalFrame(P, rels)


# ---------------------------------------------------------------------------
# algebras


@lru_cache(maxsize=None)
def lattices_up_to(max_size: int) -> tuple[tuple[Poset, UpsetLattice], ...]:
    """Upset lattices with at most ``max_size`` elements, one per isomorphism type."""
    if max_size > LATTICE_CEILING:
        raise BoundExceeded(f"lattices are enumerated up to {LATTICE_CEILING} elements")
    out = []
    for n in range(0, max_size):
        for P in enumerate_posets(n):
            U = UpsetLattice.of(P)
            if U.lattice.size <= max_size:
                out.append((P, U))
    return tuple(out)


@lru_cache(maxsize=None)
def operator_tables(lat: DistLattice, s: ModalSymbol) -> tuple[tuple[int, ...], ...]:
    """All tables on ``lat`` obeying the defining equations of ``s`` (by filtering)."""
    m = lat.size
    found = []
    for t in itertools.product(range(m), repeat=m):
        if operator_laws_hold(lat, s, t):
            found.append(t)
    return tuple(found)


def enumerate_modal_algebras(
    signature: Sequence[ModalSymbol], max_size: int, residuals: frozenset[str] = frozenset({"impl", "sub"})
) -> Iterator[ModalAlgebra]:
    sig = sorted_symbols(signature)
    for _, U in lattices_up_to(max_size):
        tables = [operator_tables(U.lattice, s) for s in sig]
        for combo in itertools.product(*tables):
            yield ModalAlgebra(U.lattice, dict(zip(sig, combo)), residuals)


def permute_algebra(A: ModalAlgebra, perm: Sequence[int]) -> ModalAlgebra:
    """Relabel elements: new index of old element x is perm[x]."""
    n = A.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    up = tuple(sum(1 << perm[b] for b in bits(A.lattice.order.up[inv[a]])) for a in range(n))
    lat = DistLattice.from_order(Poset(n, up))
    ops = {s: tuple(perm[t[inv[a]]] for a in range(n)) for s, t in A.ops.items()}
    return ModalAlgebra(lat, ops, A.residuals)


# ---------------------------------------------------------------------------
# random generation


def random_poset(rng: random.Random, n: int) -> Poset:
    covers = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35]
    return Poset.from_covers(n, covers)


def random_relation(rng: random.Random, n: int, density: float = 0.3) -> Relation:
    return Relation.from_pairs(
        n, [(u, v) for u in range(n) for v in range(n) if rng.random() < density]
    )


def random_frame(
    rng: random.Random, signature: Sequence[ModalSymbol], n: int, common_seed: bool | None = None
) -> ModalFrame:
    """Closures of one random relation (unimodal) or of one relation per symbol."""
    P = random_poset(rng, n)
    if common_seed is None:
        common_seed = rng.random() < 0.5
    if common_seed:
        R = random_relation(rng, n, rng.choice([0.15, 0.3, 0.5]))
        return ModalFrame(P, {s: delta_closure(P, R, s) for s in signature})
    return ModalFrame(
        P,
        {s: delta_closure(P, random_relation(rng, n, rng.choice([0.1, 0.2, 0.35])), s) for s in signature},
    )


def random_algebra(
    rng: random.Random, signature: Sequence[ModalSymbol], max_points: int = 4, common_seed: bool | None = None
) -> ModalAlgebra:
    """Complex algebra of a random frame, with its elements shuffled."""
    n = rng.randint(1, max_points)
    A = complex_algebra(random_frame(rng, signature, n, common_seed))
    perm = list(range(A.size))
    rng.shuffle(perm)
    return permute_algebra(A, perm)




# ---------------------------------------------------------------------------
# batch kit
#
# A relation on an n-point poset (n <= 4) is also an integer code whose bit
# u*n + v says u R v.  Compositions with the order, closures and converse
# become lookups into tables indexed by code, so a frame condition costs a
# handful of array operations per frame.

CODE_CEILING = 4


def rows_to_codes(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[1]
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for u in range(n):
        out |= rows[:, u].astype(np.int64) << (u * n)
    return out


def codes_to_rows(codes: np.ndarray, n: int) -> np.ndarray:
    full = (1 << n) - 1
    codes = np.asarray(codes, dtype=np.int64)
    return np.stack([(codes >> (u * n)) & full for u in range(n)], axis=-1) if n else np.zeros((len(codes), 0), np.int64)


class PosetKit:
    """Lookup tables for vectorized work on one poset."""

    def __init__(self, P: Poset):
        if P.size > CODE_CEILING:
            raise BoundExceeded(f"batch checks handle posets up to {CODE_CEILING} points")
        self.P = P
        n = self.n = P.size
        self.nn = n * n
        self.full = (1 << n) - 1
        self.U = UpsetLattice.of(P)
        idx = np.full(1 << n, -1, dtype=np.int16)
        for i, m in enumerate(self.U.masks):
            idx[m] = i
        self.index = idx
        self.masks = self.U.masks
        everything = codes_to_rows(np.arange(1 << self.nn), n)
        upclose = np.array([P.upward_closure(m) for m in range(1 << n)], dtype=np.int64)
        downclose = np.array([P.dual().upward_closure(m) for m in range(1 << n)], dtype=np.int64)

        def left(masks) -> np.ndarray:
            out = np.zeros_like(everything)
            for u in range(n):
                for v in bits(masks[u]):
                    out[:, u] |= everything[:, v]
            return rows_to_codes(out)

        conv = np.zeros_like(everything)
        for u in range(n):
            for v in range(n):
                conv[:, v] |= ((everything[:, u] >> v) & 1) << u
        self.right_le = rows_to_codes(upclose[everything])
        self.right_ge = rows_to_codes(downclose[everything])
        self.left_le = left(P.up)
        self.left_ge = left(P.down)
        self.converse = rows_to_codes(conv)
        self._witness: dict[ModalSymbol, np.ndarray] = {}

    @property
    def lattice(self) -> DistLattice:
        return self.U.lattice

    # compositions -------------------------------------------------------
    def left(self, codes, s: ModalSymbol):
        """``left o S`` where left is <= for boxes and >= for diamonds."""
        return (self.left_le if s.is_box else self.left_ge)[codes]

    def right(self, codes, s: ModalSymbol):
        return (self.right_le if s.is_box == s.positive else self.right_ge)[codes]

    def closure(self, codes, s: ModalSymbol):
        return self.right(self.left(codes, s), s)

    @staticmethod
    def included(a, b):
        return (a & ~b) == 0

    def witness_masks(self, x: ModalSymbol) -> np.ndarray:
        """For each code and each pair (u,v): the pairs (u',v') below (u,v)
        in the product order of ``x`` with u' R v and u R v'."""
        hit = self._witness.get(x)
        if hit is not None:
            return hit
        n = self.n
        prod = product_order(self.P, x)
        codes = np.arange(1 << self.nn, dtype=np.int64)
        rows = codes_to_rows(codes, n)
        cols = codes_to_rows(self.converse, n)
        out = np.zeros((len(codes), self.nn), dtype=np.int64)
        for u in range(n):
            for v in range(n):
                m1, m2 = prod.below(u, v)
                first = cols[:, v] & m1
                second = rows[:, u] & m2
                acc = np.zeros(len(codes), dtype=np.int64)
                for u2 in bits(m1):
                    sel = (first >> u2) & 1
                    acc |= np.where(sel == 1, second << (u2 * n), 0)
                out[:, u * n + v] = acc
        self._witness[x] = out
        return out

    def existential(self, cx, cy, x: ModalSymbol):
        W = self.witness_masks(x)
        cx = np.asarray(cx)
        cy = np.asarray(cy)
        shape = np.broadcast_shapes(cx.shape, cy.shape)
        ok = np.ones(shape, dtype=bool)
        for k in range(self.nn):
            has = ((cx >> k) & 1).astype(bool)
            if cx.ndim == 0 or cx.size == 1:
                if not has.any():
                    continue
            ok &= ~has | ((cy & W[cx, k]) != 0)
        return ok

    # conditions ---------------------------------------------------------
    def condition(self, cid: FrameConditionId, rels: dict[ModalSymbol, np.ndarray]):
        """Verdicts of one frame condition for frames given as code arrays."""
        if cid.kind == UNIMODAL:
            x, y = cid.symbols
            cx, cy = rels[x], rels[y]
            if x.shape == y.shape:
                return self.included(cx, self.right(cx & cy, x))
            if x.polarity != y.polarity:
                return self.included(cx, self.left(cx & cy, x))
            return self.existential(cx, cy, x)
        if cid.kind == LOCALITY_PAIR:
            x, y = cid.requires()
            cx, cy = rels[x], rels[y]
            if cid.symbols[0].polarity != cid.symbols[1].polarity:
                return self.included(cx, cy)
            if cid.symbols[0].is_forward:
                return self.included(cx, self.right(cx & cy, x))
            return self.included(cx, self.left(cx & cy, x))
        if cid.kind in (FORWARD_LOCALITY, BACKWARD_LOCALITY):
            x = cid.requires()[0]
            R = generating_codes(rels)
            if cid.kind == FORWARD_LOCALITY:
                return self.included(self.left(R, x), self.right(R, x))
            return self.included(self.right(R, x), self.left(R, x))
        raise ValueError(cid.kind)

    def unimodal(self, rels: dict[ModalSymbol, np.ndarray]):
        R = generating_codes(rels)
        ok = None
        for s, c in rels.items():
            here = self.closure(R, s) == c
            ok = here if ok is None else ok & here
        return ok

    def minimally_generated(self, codes, s: ModalSymbol, componentwise: bool = False):
        """Vectorized :func:`is_minimally_generated` for one symbol."""
        n = self.n
        codes = np.asarray(codes, dtype=np.int64)
        prod = product_order(self.P, s)
        first = [prod.below(u, 0)[0] for u in range(n)]
        second = [prod.below(0, v)[1] for v in range(n)]
        ok = np.ones(codes.shape, dtype=bool)
        if componentwise:
            rows = codes_to_rows(codes, n)
            cols = codes_to_rows(self.converse[codes], n)
            for u in range(n):
                for v in range(n):
                    has = ((codes >> (u * n + v)) & 1).astype(bool)
                    col = rows[..., u] & second[v]
                    row = cols[..., v] & first[u]
                    good_col = np.zeros(codes.shape, dtype=bool)
                    good_row = np.zeros(codes.shape, dtype=bool)
                    for w in range(n):
                        good_col |= (col & second[w]) == (1 << w)
                        good_row |= (row & first[w]) == (1 << w)
                    ok &= ~has | (good_col & good_row)
            return ok
        down = []
        for u in range(n):
            for v in range(n):
                down.append(sum(1 << (c * n + d) for c in bits(first[u]) for d in bits(second[v])))
        minimal = np.zeros(codes.shape, dtype=np.int64)
        for k in range(self.nn):
            here = (codes & down[k]) == (1 << k)
            minimal |= here.astype(np.int64) << k
        for k in range(self.nn):
            has = ((codes >> k) & 1).astype(bool)
            ok &= ~has | ((minimal & down[k]) != 0)
        return ok

    # complex algebra ----------------------------------------------------
    def op_tables(self, codes: np.ndarray, s: ModalSymbol) -> np.ndarray:
        """Complex-algebra tables of ``s`` for each relation; shape (N, #upsets)."""
        rows = codes_to_rows(codes, self.n)
        N = rows.shape[0]
        out = np.empty((N, len(self.masks)), dtype=np.int16)
        box, pos = s.is_box, s.positive
        for j, a in enumerate(self.masks):
            target = a if pos else self.full & ~a
            img = np.zeros(N, dtype=np.int64)
            for u in range(self.n):
                if box:
                    hit = (rows[:, u] & ~target) == 0
                else:
                    hit = (rows[:, u] & target) != 0
                img |= hit.astype(np.int64) << u
            out[:, j] = self.index[img]
        if (out < 0).any():
            raise AssertionError(f"{s} produced a non-upset; relations are not monotone")
        return out

    def frame(self, rels: dict[ModalSymbol, int]) -> ModalFrame:
        return ModalFrame(self.P, {s: Relation.from_code(self.n, int(c)) for s, c in rels.items()})


def generating_codes(rels: dict[ModalSymbol, np.ndarray]):
    it = iter(rels.values())
    R = next(it)
    for c in it:
        R = R & c
    return R


@lru_cache(maxsize=None)
def poset_kit(P: Poset) -> PosetKit:
    return PosetKit(P)


@lru_cache(maxsize=None)
def delta_codes(P: Poset, s: ModalSymbol) -> np.ndarray:
    """Codes of every ``s`` relation on ``P``, increasing."""
    c = np.sort(rows_to_codes(delta_relation_rows(P, s)))
    c.setflags(write=False)
    return c


@lru_cache(maxsize=64)
def delta_tables(P: Poset, s: ModalSymbol) -> np.ndarray:
    """Complex-algebra tables for every ``s`` relation, aligned with ``delta_codes``."""
    t = poset_kit(P).op_tables(delta_codes(P, s), s)
    t.setflags(write=False)
    return t
