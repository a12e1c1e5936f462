"""Modal frames over finite posets and their first-order conditions."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import ModalAlgebra, UpsetLattice
from .order import (
    FORWARD_SYMBOLS,
    BACKWARD_SYMBOLS,
    ModalSymbol,
    Poset,
    Relation,
    bits,
    compose,
    converse,
    delta_closure,
    first_non_monotone,
    product_order,
    sorted_symbols,
)


class FrameError(ValueError):
    pass


class InapplicableCondition(ValueError):
    pass


@dataclass(frozen=True)
class ModalFrame:
    """A poset with one monotone relation per modal symbol.

    Backward symbols (``bbox+`` ...) may be present; their relation must be
    the converse of the relation of the adjoint forward symbol whenever both
    are present.  A backward relation has the monotonicity of the forward
    symbol with the same shape and polarity.
    """

    poset: Poset
    relations: Mapping[ModalSymbol, Relation]

    def __post_init__(self) -> None:
        rels = {s: self.relations[s] for s in sorted_symbols(self.relations)}
        object.__setattr__(self, "relations", rels)
        n = self.poset.size
        for s, r in rels.items():
            if r.size != n:
                raise FrameError(f"relation {s} has size {r.size}, poset has {n}")
            bad = first_non_monotone(self.poset, r, s.base())
            if bad is not None:
                (u, v), (u2, v2) = bad
                raise FrameError(
                    f"relation {s} is not monotone: contains ({u}, {v}) but not ({u2}, {v2})"
                )
        for s in rels:
            if not s.is_forward and s.adjoint() in rels:
                if rels[s] != converse(rels[s.adjoint()]):
                    raise FrameError(f"relation {s} is not the converse of {s.adjoint()}")

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def signature(self) -> tuple[ModalSymbol, ...]:
        return tuple(s for s in self.relations if s.is_forward)

    @property
    def backward(self) -> tuple[ModalSymbol, ...]:
        return tuple(s for s in self.relations if not s.is_forward)

    def __getitem__(self, s: ModalSymbol) -> Relation:
        return self.relations[s]

    def key(self) -> tuple:
        return (self.poset.up, tuple((s.name, r.rows) for s, r in self.relations.items()))


def frame_from_seed(poset: Poset, seed: Relation, signature: Iterable[ModalSymbol]) -> ModalFrame:
    """The frame whose relations are the closures of one relation."""
    return ModalFrame(poset, {s: delta_closure(poset, seed, s) for s in signature})


# ---------------------------------------------------------------------------
# unimodality


def generating_relation(F: ModalFrame) -> Relation:
    sig = F.signature
    if not sig:
        raise FrameError("the frame has no forward relations")
    r = F[sig[0]]
    for s in sig[1:]:
        r = r & F[s]
    return r


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"pass": self.ok}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(x):
    if isinstance(x, ModalSymbol):
        return x.name
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def is_unimodal(F: ModalFrame) -> CheckResult:
    """All forward relations are closures of the generating relation."""
    if not F.signature:
        return CheckResult(True)
    R = generating_relation(F)
    for s in F.signature:
        closed = delta_closure(F.poset, R, s)
        pair = closed.first_missing(F[s]) or F[s].first_missing(closed)
        if pair is not None:
            return CheckResult(False, (s, pair), f"{s} differs from the closure of R at {pair}")
    return CheckResult(True)


def is_convex(poset: Poset, R: Relation, signature: Iterable[ModalSymbol]) -> bool:
    acc = None
    for s in signature:
        c = delta_closure(poset, R, s)
        acc = c if acc is None else acc & c
    if acc is None:
        raise FrameError("empty signature")
    return acc == R


def _first_non_minimal(S: Relation, first: Sequence[int], second: Sequence[int]) -> tuple | None:
    """Check minimal generation of ``S`` under the product of two factor orders.

    ``first[u]``/``second[v]`` are the masks of elements at or below ``u``/``v``
    in the respective factor orders.
    """
    for u, v in S.pairs():
        below = [(a, b) for a in bits(first[u]) for b in bits(second[v]) if (a, b) in S]
        if not any(
            all(not ((c, d) != (a, b) and first[a] >> c & 1 and second[b] >> d & 1) for c, d in below)
            for a, b in below
        ):
            return u, v
    return None


def _first_non_componentwise(S: Relation, first: Sequence[int], second: Sequence[int]) -> tuple | None:
    conv = converse(S)
    for u, v in S.pairs():
        col = S.rows[u] & second[v]
        if not any(col & second[w] == 1 << w for w in bits(col)):
            return u, v
        row = conv.rows[v] & first[u]
        if not any(row & first[w] == 1 << w for w in bits(row)):
            return u, v
    return None


def is_minimally_generated(F: ModalFrame, componentwise: bool = False) -> CheckResult:
    """Every related pair lies above a minimal related pair (in the symbol's product order).

    On a finite frame this always holds; the check is literal so it also
    guards the product-order plumbing.
    """
    for s in F.signature:
        prod = product_order(F.poset, s)
        first = [prod.below(u, 0)[0] for u in range(F.size)]
        second = [prod.below(0, v)[1] for v in range(F.size)]
        check = _first_non_componentwise if componentwise else _first_non_minimal
        bad = check(F[s], first, second)
        if bad is not None:
            return CheckResult(False, (s, bad))
    return CheckResult(True)


# ---------------------------------------------------------------------------
# complex algebra


def operator_image(rows: Sequence[int], full: int, a: int, s: ModalSymbol) -> int:
    """Points satisfying the modal schema of ``s`` over the set ``a`` along ``rows``."""
    out = 0
    box, pos = s.is_box, s.positive
    target = a if pos else full & ~a
    for u, r in enumerate(rows):
        if box:
            hit = r & ~target == 0
        else:
            hit = r & target != 0
        if hit:
            out |= 1 << u
    return out


def complex_algebra(F: ModalFrame) -> ModalAlgebra:
    """Upsets of the poset with the operators read off each relation."""
    U = UpsetLattice.of(F.poset)
    full = (1 << F.size) - 1
    ops = {}
    for s, r in F.relations.items():
        ops[s] = tuple(U.index[operator_image(r.rows, full, a, s)] for a in U.masks)
    return ModalAlgebra(U.lattice, ops, frozenset({"impl", "sub"}))


def check_local_evaluation(F: ModalFrame, s: ModalSymbol) -> bool:
    """Does ``s`` evaluate through the generating relation without order detours?"""
    R = generating_relation(F)
    rows = R.rows if s.is_forward else converse(R).rows
    U = UpsetLattice.of(F.poset)
    full = (1 << F.size) - 1
    stored = F[s].rows
    return all(
        operator_image(stored, full, a, s) == operator_image(rows, full, a, s) for a in U.masks
    )


# ---------------------------------------------------------------------------
# condition identifiers


UNIMODAL = "unimodal-pair"
FORWARD_LOCALITY = "forward-locality"
BACKWARD_LOCALITY = "backward-locality"
LOCALITY_PAIR = "locality-pair"

_ID_RE = re.compile(r"^\(\s*([a-z]+[+-])\s*(?:,\s*([a-z]+[+-])\s*)?\)(\*?)$")


@dataclass(frozen=True)
class FrameConditionId:
    kind: str
    symbols: tuple[ModalSymbol, ...]

    def __post_init__(self) -> None:
        a = self.symbols[0]
        if self.kind == UNIMODAL:
            b = self.symbols[1]
            if not (a.is_forward and b.is_forward and a != b):
                raise ValueError(f"({a},{b}) needs two distinct forward symbols")
        elif self.kind == FORWARD_LOCALITY:
            if len(self.symbols) != 1 or not a.is_forward:
                raise ValueError("forward locality takes one forward symbol")
        elif self.kind == BACKWARD_LOCALITY:
            if len(self.symbols) != 1 or a.is_forward:
                raise ValueError("backward locality takes one backward symbol")
        elif self.kind == LOCALITY_PAIR:
            b = self.symbols[1]
            if a.is_forward != b.is_forward or a.shape == b.shape:
                raise ValueError(
                    f"({a},{b})* needs a box and a diamond looking the same way"
                )
        else:
            raise ValueError(f"unknown condition kind {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "FrameConditionId":
        m = _ID_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse condition id {text!r}")
        a = ModalSymbol.parse(m.group(1))
        b = ModalSymbol.parse(m.group(2)) if m.group(2) else None
        star = bool(m.group(3))
        if b is None:
            if not star:
                raise ValueError(f"single-symbol condition {text!r} must be starred")
            return cls(FORWARD_LOCALITY if a.is_forward else BACKWARD_LOCALITY, (a,))
        return cls(LOCALITY_PAIR if star else UNIMODAL, (a, b))

    def __str__(self) -> str:
        names = ",".join(s.name for s in self.symbols)
        return f"({names})" + ("" if self.kind == UNIMODAL else "*")

    @property
    def problematic(self) -> bool:
        a, b = self.symbols[0], self.symbols[-1]
        return self.kind == UNIMODAL and a.shape != b.shape and a.polarity == b.polarity

    def requires(self) -> tuple[ModalSymbol, ...]:
        """Forward symbols that must be in the signature for this condition."""
        return tuple(s if s.is_forward else s.adjoint() for s in self.symbols)


UNIMODAL_IDS: tuple[FrameConditionId, ...] = tuple(
    FrameConditionId(UNIMODAL, (a, b)) for a in FORWARD_SYMBOLS for b in FORWARD_SYMBOLS if a != b
)
FORWARD_LOCALITY_IDS = tuple(FrameConditionId(FORWARD_LOCALITY, (s,)) for s in FORWARD_SYMBOLS)
BACKWARD_LOCALITY_IDS = tuple(FrameConditionId(BACKWARD_LOCALITY, (s,)) for s in BACKWARD_SYMBOLS)
LOCALITY_PAIR_IDS: tuple[FrameConditionId, ...] = tuple(
    FrameConditionId(LOCALITY_PAIR, (a, b))
    for group in (FORWARD_SYMBOLS, BACKWARD_SYMBOLS)
    for a in group
    for b in group
    if a.shape != b.shape
)


def applicable(cid: FrameConditionId, signature: Iterable[ModalSymbol]) -> bool:
    sig = set(signature)
    return all(s in sig for s in cid.requires())


def applicable_unimodal_ids(signature: Iterable[ModalSymbol]) -> list[FrameConditionId]:
    sig = set(signature)
    return [c for c in UNIMODAL_IDS if applicable(c, sig)]


def locality_partners(cid: FrameConditionId, signature: Iterable[ModalSymbol]) -> list[FrameConditionId]:
    """Pair conditions whose conjunction is equivalent to a single locality condition."""
    s = cid.symbols[0]
    out = []
    for pol in (s.polarity, s.polarity.flip()):
        partner = s.opposite().with_polarity(pol)
        pid = FrameConditionId(LOCALITY_PAIR, (s, partner))
        if applicable(pid, signature):
            out.append(pid)
    return out


# ---------------------------------------------------------------------------
# relational checks


def _left(poset: Poset, s: ModalSymbol) -> Relation:
    """Order composed on the left in the closure of ``s``."""
    return poset.leq if s.is_box else poset.geq


def _right(poset: Poset, s: ModalSymbol) -> Relation:
    return poset.leq if s.is_box == s.positive else poset.geq


def _inclusion(small: Relation, big: Relation) -> CheckResult:
    pair = small.first_missing(big)
    return CheckResult(True) if pair is None else CheckResult(False, pair)


def _existential(F: ModalFrame, x: ModalSymbol, y: ModalSymbol) -> CheckResult:
    rx, ry = F[x], F[y]
    prod = product_order(F.poset, x)
    for u, v in rx.pairs():
        m1, m2 = prod.below(u, v)
        cand1 = m1 & rx.preimage(v)
        cand2 = m2 & rx.rows[u]
        if not any(ry.rows[u2] & cand2 for u2 in bits(cand1)):
            return CheckResult(False, (u, v))
    return CheckResult(True)


def _require(F: ModalFrame, symbols: Iterable[ModalSymbol], cid) -> None:
    missing = [s.name for s in symbols if s not in F.relations]
    if missing:
        raise InapplicableCondition(f"{cid} needs {missing} in the signature")


def check_unimodal_condition(F: ModalFrame, cid: FrameConditionId | str) -> CheckResult:
    if isinstance(cid, str):
        cid = FrameConditionId.parse(cid)
    if cid.kind != UNIMODAL:
        raise ValueError(f"{cid} is not a unimodal pair condition")
    x, y = cid.symbols
    _require(F, (x, y), cid)
    P = F.poset
    if x.shape == y.shape:
        return _inclusion(F[x], compose(F[x] & F[y], _right(P, x)))
    if x.polarity != y.polarity:
        return _inclusion(F[x], compose(_left(P, x), F[x] & F[y]))
    return _existential(F, x, y)


def check_locality_condition(F: ModalFrame, cid: FrameConditionId | str) -> CheckResult:
    if isinstance(cid, str):
        cid = FrameConditionId.parse(cid)
    P = F.poset
    if cid.kind in (FORWARD_LOCALITY, BACKWARD_LOCALITY):
        s = cid.symbols[0]
        need = cid.requires()
        _require(F, need, cid)
        R = generating_relation(F)
        x = need[0]
        if s.is_forward:
            return _inclusion(compose(_left(P, x), R), compose(R, _right(P, x)))
        return _inclusion(compose(R, _right(P, x)), compose(_left(P, x), R))
    if cid.kind != LOCALITY_PAIR:
        raise ValueError(f"{cid} is not a locality condition")
    x, y = cid.requires()
    _require(F, (x, y), cid)
    same = cid.symbols[0].polarity == cid.symbols[1].polarity
    if not same:
        return _inclusion(F[x], F[y])
    if cid.symbols[0].is_forward:
        return _inclusion(F[x], compose(F[x] & F[y], _right(P, x)))
    return _inclusion(F[x], compose(_left(P, x), F[x] & F[y]))


def check_condition(F: ModalFrame, cid: FrameConditionId | str) -> CheckResult:
    if isinstance(cid, str):
        cid = FrameConditionId.parse(cid)
    if cid.kind == UNIMODAL:
        return check_unimodal_condition(F, cid)
    return check_locality_condition(F, cid)


def check_locality_via_converse(F: ModalFrame, cid: FrameConditionId) -> CheckResult:
    """A backward pair condition evaluated as the forward one on the converse frame."""
    if cid.kind != LOCALITY_PAIR or cid.symbols[0].is_forward:
        raise ValueError(f"{cid} is not a backward pair condition")
    fwd = FrameConditionId(LOCALITY_PAIR, tuple(s.reversed() for s in cid.symbols))
    return check_locality_condition(converse_frame(F), fwd)


# ---------------------------------------------------------------------------
# symmetries


def order_dual_frame(F: ModalFrame) -> ModalFrame:
    return ModalFrame(F.poset.dual(), {s.opposite(): r for s, r in F.relations.items()})


def tense_completion(F: ModalFrame) -> ModalFrame:
    rels = dict(F.relations)
    for s, r in F.relations.items():
        if s.adjoint() not in rels:
            rels[s.adjoint()] = converse(r)
    return ModalFrame(F.poset, rels)


def converse_frame(F: ModalFrame) -> ModalFrame:
    """Swap every relation with its converse partner.

    The forward ``dia+`` relation of the result is the converse of ``box+``
    (the relation of ``bdia+``), and the result is tense-complete.
    """
    full = tense_completion(F)
    return ModalFrame(F.poset, {s.reversed(): r for s, r in full.relations.items()})


def find_frame_isomorphism(F: ModalFrame, G: ModalFrame) -> list[int] | None:
    if F.size != G.size or set(F.relations) != set(G.relations):
        return None
    n = F.size
    for perm in itertools.permutations(range(n)):
        if all(
            F.poset.le(a, b) == G.poset.le(perm[a], perm[b]) for a in range(n) for b in range(n)
        ) and all(
            ((perm[a], perm[b]) in G[s]) == ((a, b) in r)
            for s, r in F.relations.items()
            for a in range(n)
            for b in range(n)
        ):
            return list(perm)
    return None


# ---------------------------------------------------------------------------
# staged construction for a problematic pair


def problematic_pairs(signature: Iterable[ModalSymbol]) -> list[tuple[ModalSymbol, ModalSymbol]]:
    sig = set(signature)
    return [
        (x, x.opposite())
        for x in sorted_symbols(sig)
        if x.is_forward and x.opposite() in sig
    ]


@dataclass
class _Builder:
    """Mutable frame under construction: cover-free order masks plus edges."""

    up: list[int]
    edges: dict[ModalSymbol, set[tuple[int, int]]]

    @classmethod
    def of(cls, F: ModalFrame) -> "_Builder":
        return cls(list(F.poset.up), {s: set(F[s].pairs()) for s in F.signature})

    def add_point(self, anchor: int, below: bool) -> int:
        """New point directly below (or above) ``anchor`` and incomparable otherwise."""
        new = len(self.up)
        if below:
            # new <= w iff w == new or anchor <= w
            self.up.append((1 << new) | self.up[anchor])
        else:
            # w <= new iff w == new or w <= anchor
            for w in range(new):
                if self.up[w] >> anchor & 1:
                    self.up[w] |= 1 << new
            self.up.append(1 << new)
        return new

    def build(self) -> ModalFrame:
        P = Poset(len(self.up), tuple(self.up))
        rels = {}
        for s, pairs in self.edges.items():
            rels[s] = delta_closure(P, Relation.from_pairs(P.size, pairs), s)
        return ModalFrame(P, rels)


def _odd_stage(F: ModalFrame) -> ModalFrame:
    b = _Builder.of(F)
    for x, y in problematic_pairs(F.signature):
        prod = product_order(F.poset, x)
        for u, v in F[x].pairs():
            if pair_witnessed(F, x, y, u, v):
                continue
            # (u', v') must lie below (u, v) in the product order of x
            u2 = b.add_point(u, below=not prod.first_dual)
            v2 = b.add_point(v, below=not prod.second_dual)
            b.edges[x].update({(u2, v), (u, v2)})
            b.edges[y].add((u2, v2))
    return b.build()


def pair_witnessed(F: ModalFrame, x: ModalSymbol, y: ModalSymbol, u: int, v: int) -> bool:
    """Does ``u Rx v`` have the completing pair that the problematic condition asks for?"""
    prod = product_order(F.poset, x)
    m1, m2 = prod.below(u, v)
    cand1 = m1 & F[x].preimage(v)
    cand2 = m2 & F[x].rows[u]
    return any(F[y].rows[u2] & cand2 for u2 in bits(cand1))


def _even_stage(F: ModalFrame) -> ModalFrame:
    b = _Builder.of(F)
    P = F.poset
    for cid in applicable_unimodal_ids(F.signature):
        if cid.problematic:
            continue
        x, y = cid.symbols
        both = F[x] & F[y]
        if x.shape == y.shape:
            # need w with u (Rx & Ry) w and w related to v by the right factor
            covered = compose(both, _right(P, x))
        else:
            # need w with u related to w by the left factor and w (Rx & Ry) v
            covered = compose(_left(P, x), both)
        for u, v in F[x].pairs():
            if (u, v) in covered:
                continue
            if x.shape == y.shape:
                w = b.add_point(v, below=x.is_box == x.positive)
                b.edges[x].add((u, w))
                b.edges[y].add((u, w))
            else:
                w = b.add_point(u, below=not x.is_box)
                b.edges[x].add((w, v))
                b.edges[y].add((w, v))
    return b.build()


def example_frame() -> ModalFrame:
    """Finite analogue of the two-level frame where box+ and dia+ share no edge.

    Points ``(q, i)`` with ``q, i`` in {0, 1} are numbered ``2*q + i``; the
    order is discrete.  ``(q,0) box+ (r,1)`` iff ``q <= r`` and
    ``(q,0) dia+ (r,1)`` iff ``q > r``.
    """
    from .order import BOX_POS, DIA_POS

    P = Poset.antichain(4)
    pt = lambda q, i: 2 * q + i  # noqa: E731
    box = [(pt(q, 0), pt(r, 1)) for q in range(2) for r in range(2) if q <= r]
    dia = [(pt(q, 0), pt(r, 1)) for q in range(2) for r in range(2) if q > r]
    return ModalFrame(
        P, {BOX_POS: Relation.from_pairs(4, box), DIA_POS: Relation.from_pairs(4, dia)}
    )


def staged_frame_construction(F0: ModalFrame, depth: int) -> list[ModalFrame]:
    """Frames F0..F_depth; odd stages repair problematic pairs, even stages the others.

    Only pairs that currently fail their condition receive new witnesses.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > 0:
        if not problematic_pairs(F0.signature):
            raise FrameError("the signature has no problematic pair")
        if not any(F0[s] for s in F0.signature):
            raise FrameError("the initial frame has no related pair")
    stages = [F0]
    for k in range(1, depth + 1):
        stages.append(_odd_stage(stages[-1]) if k % 2 else _even_stage(stages[-1]))
    return stages
