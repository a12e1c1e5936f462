"""Prime filters, canonical frames and canonical extensions of finite algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .algebra import (
    DistLattice,
    InternalInconsistency,
    ModalAlgebra,
    UpsetLattice,
    embedding_failure,
)
from .frames import (
    FORWARD_LOCALITY,
    BACKWARD_LOCALITY,
    UNIMODAL,
    FrameConditionId,
    ModalFrame,
    applicable_unimodal_ids,
    check_condition,
    complex_algebra,
    generating_relation,
    is_unimodal,
    locality_partners,
    operator_image,
)
from .order import (
    BOX_NEG,
    BOX_POS,
    DIA_NEG,
    DIA_POS,
    FORWARD_SYMBOLS,
    Poset,
    Relation,
    bits,
    converse,
)


class PreconditionError(ValueError):
    """The algebra does not satisfy the hypothesis of the check."""


def prime_filters(L: DistLattice) -> list[int]:
    return list(_prime_filters(L))


@lru_cache(maxsize=1024)
def _prime_filters(L: DistLattice) -> tuple[int, ...]:
    """All prime filters as bitmasks over the lattice elements.

    Elements are decided top-down (everything above an element is decided
    before it), pruning any partial choice that already breaks upward
    closure or meet closure.  Results are ordered by size, then by their
    sorted member lists.
    """
    n = L.size
    order = sorted(range(n), key=lambda x: (bin(L.order.up[x]).count("1"), x))
    up, meet, join = L.order.up, L.meet, L.join
    found: list[int] = []

    def dfs(i: int, inside: int, outside: int) -> None:
        if i == n:
            if not inside >> L.top & 1 or inside >> L.bottom & 1:
                return
            for a in bits(inside):
                for b in bits(inside):
                    if not inside >> meet[a][b] & 1:
                        return
            for a in range(n):
                for b in range(a, n):
                    if inside >> join[a][b] & 1 and not (inside >> a & 1 or inside >> b & 1):
                        return
            found.append(inside)
            return
        x = order[i]
        # x in: everything above x must already be in, and no meet with x may be out
        if up[x] & ~(inside | 1 << x) == 0 and not any(
            outside >> meet[x][y] & 1 for y in bits(inside)
        ):
            dfs(i + 1, inside | 1 << x, outside)
        # x out: x must not be a meet of two members
        if not any(meet[a][b] == x for a in bits(inside) for b in bits(inside)):
            dfs(i + 1, inside, outside | 1 << x)

    dfs(0, 0, 0)
    found.sort(key=lambda m: (bin(m).count("1"), tuple(bits(m))))
    if len(found) != len(L.join_irreducibles()):
        raise InternalInconsistency(
            f"{len(found)} prime filters but {len(L.join_irreducibles())} join irreducibles"
        )
    return tuple(found)


def _holds_schema(s, A: ModalAlgebra, U: int, V: int) -> bool:
    """The clause defining the canonical relation of ``s`` between filters U and V."""
    t = A.ops[s]
    n = A.size
    inn = lambda m, a: bool(m >> a & 1)  # noqa: E731
    base = s.base()
    for a in range(n):
        if base == BOX_POS and inn(U, t[a]) and not inn(V, a):
            return False
        if base == BOX_NEG and inn(U, t[a]) and inn(V, a):
            return False
        if base == DIA_POS and inn(V, a) and not inn(U, t[a]):
            return False
        if base == DIA_NEG and not inn(V, a) and not inn(U, t[a]):
            return False
    return True


def canonical_frame(
    A: ModalAlgebra, trace: Callable[[str], None] | None = None
) -> ModalFrame:
    filters = prime_filters(A.lattice)
    k = len(filters)
    if trace:
        for i, f in enumerate(filters):
            trace(f"filter {i}: {sorted(bits(f))}")
    up = tuple(
        sum(1 << j for j in range(k) if filters[i] & ~filters[j] == 0) for i in range(k)
    )
    P = Poset(k, up)
    rels = {}
    for s in A.ops:
        pairs = []
        for i in range(k):
            for j in range(k):
                ok = _holds_schema(s, A, filters[i], filters[j])
                if trace:
                    trace(f"{s} {i} {j}: {'related' if ok else 'unrelated'}")
                if ok:
                    pairs.append((i, j))
        rels[s] = Relation.from_pairs(k, pairs)
    return ModalFrame(P, rels)


def eta(A: ModalAlgebra, filters: list[int] | None = None) -> list[int]:
    """Each element as the bitmask of prime filters containing it."""
    filters = prime_filters(A.lattice) if filters is None else filters
    return [sum(1 << i for i, f in enumerate(filters) if f >> a & 1) for a in range(A.size)]


def canonical_extension(A: ModalAlgebra) -> tuple[ModalAlgebra, list[int]]:
    """The complex algebra of the canonical frame and the embedding into it."""
    filters = prime_filters(A.lattice)
    F = canonical_frame(A)
    B = complex_algebra(F)
    U = UpsetLattice.of(F.poset)
    h = [U.index[m] for m in eta(A, filters)]
    why = embedding_failure(A, B, h)
    if why is not None:
        raise InternalInconsistency(f"canonical embedding fails: {why}")
    return B, h


# ---------------------------------------------------------------------------
# canonicity


def verify_canonicity_unimodal(A: ModalAlgebra) -> bool:
    from .logic.catalog import quasi_law
    from .logic.semantics import holds

    for cid in applicable_unimodal_ids(A.signature):
        res = holds(quasi_law(cid.symbols), A)
        if not res.ok:
            raise PreconditionError(f"the algebra fails q:{cid} at {res.witness}")
    return is_unimodal(canonical_frame(A)).ok


def verify_canonicity_locality(A: ModalAlgebra, cid: FrameConditionId | str) -> bool:
    from .logic.catalog import star_law
    from .logic.semantics import holds

    if isinstance(cid, str):
        cid = FrameConditionId.parse(cid)
    res = holds(star_law(cid.symbols), A)
    if not res.ok:
        raise PreconditionError(f"the algebra fails {cid} at {res.witness}")
    return check_condition(canonical_frame(A), cid).ok


# ---------------------------------------------------------------------------
# Boolean extension


@dataclass
class BooleanReport:
    positive: bool
    failed_condition: str | None = None
    failed_axiom: str | None = None
    witness: dict | None = None
    interdefinable: bool = False
    embeds: bool = False
    detail: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Positive algebras must embed; non-positive ones must be rejected."""
        return self.embeds if self.positive else not self.embeds

    def to_json(self) -> dict:
        return {
            "positive": self.positive,
            "failed_condition": self.failed_condition,
            "failed_axiom": self.failed_axiom,
            "witness": self.witness,
            "boolean_laws": self.interdefinable,
            "embeds": self.embeds,
            "pass": self.ok,
            "detail": self.detail,
        }


def positivity_witness(A: ModalAlgebra):
    """First failing single locality condition, as (condition, pair axiom, assignment).

    Positivity presupposes unimodality; the same-shape quasiequations are
    checked last and reported as their own condition.
    """
    from .logic.catalog import star_law
    from .logic.semantics import holds

    fwd = [s for s in A.signature if s.is_forward]
    for s in fwd:
        cid = FrameConditionId(FORWARD_LOCALITY, (s,))
        for pid in locality_partners(cid, fwd):
            res = holds(star_law(pid.symbols), A)
            if not res.ok:
                return cid, pid, res.witness
    for s in A.signature:
        if s.is_forward or s.adjoint() not in fwd:
            continue
        cid = FrameConditionId(BACKWARD_LOCALITY, (s,))
        for pid in locality_partners(cid, fwd):
            res = holds(star_law(pid.symbols), A)
            if not res.ok:
                return cid, pid, res.witness
    # no star axiom pairs two boxes or two diamonds, so those quasiequations
    # are required separately
    from .logic.catalog import quasi_law

    for x in fwd:
        for y in fwd:
            if x != y and x.shape == y.shape:
                pid = FrameConditionId(UNIMODAL, (x, y))
                res = holds(quasi_law(pid.symbols), A)
                if not res.ok:
                    return pid, pid, res.witness
    return None


def _boolean_ops(R: Relation, k: int) -> dict:
    """All four forward operators on the powerset of ``k`` points, evaluated through R."""
    full = (1 << k) - 1
    return {
        s: [operator_image(R.rows, full, a, s) for a in range(1 << k)] for s in FORWARD_SYMBOLS
    }


def _interdefinability_failure(ops: dict, k: int) -> str | None:
    full = (1 << k) - 1
    neg = lambda a: full & ~a  # noqa: E731
    bp, bm, dp, dm = ops[BOX_POS], ops[BOX_NEG], ops[DIA_POS], ops[DIA_NEG]
    laws = [
        ("box+ a = box- -a", lambda a: bp[a] == bm[neg(a)]),
        ("box+ a = -dia+ -a", lambda a: bp[a] == neg(dp[neg(a)])),
        ("box+ a = -dia- a", lambda a: bp[a] == neg(dm[a])),
        ("box- a = box+ -a", lambda a: bm[a] == bp[neg(a)]),
        ("box- a = -dia+ a", lambda a: bm[a] == neg(dp[a])),
        ("box- a = -dia- -a", lambda a: bm[a] == neg(dm[neg(a)])),
        ("dia+ a = dia- -a", lambda a: dp[a] == dm[neg(a)]),
        ("dia+ a = -box+ -a", lambda a: dp[a] == neg(bp[neg(a)])),
        ("dia+ a = -box- a", lambda a: dp[a] == neg(bm[a])),
        ("dia- a = dia+ -a", lambda a: dm[a] == dp[neg(a)]),
        ("dia- a = -box+ a", lambda a: dm[a] == neg(bp[a])),
        ("dia- a = -box- -a", lambda a: dm[a] == neg(bm[neg(a)])),
    ]
    for name, law in laws:
        for a in range(1 << k):
            if not law(a):
                return f"{name} fails at {a}"
    return None


def boolean_extension_check(A: ModalAlgebra) -> BooleanReport:
    """Decide positivity and test the embedding into the Boolean expansion.

    The Boolean algebra is the powerset of the prime filters with every
    operator evaluated directly through the generating relation of the
    canonical frame (backward operators through its converse).
    """
    bad = positivity_witness(A)
    report = BooleanReport(positive=bad is None)
    if bad is not None:
        cid, pid, w = bad
        report.failed_condition = str(cid)
        report.failed_axiom = str(pid)
        report.witness = w
    filters = prime_filters(A.lattice)
    k = len(filters)
    F = canonical_frame(A)
    if not F.signature:
        R = Relation.full(k)
    else:
        R = generating_relation(F)
    fwd_ops = _boolean_ops(R, k)
    why = _interdefinability_failure(fwd_ops, k)
    report.interdefinable = why is None
    if why:
        report.detail.append(why)
    bwd_ops = _boolean_ops(converse(R), k)
    h = eta(A, filters)
    lat = A.lattice
    fail = None
    if len(set(h)) != len(h):
        fail = "eta is not injective"
    elif h[lat.top] != (1 << k) - 1 or h[lat.bottom] != 0:
        fail = "bounds not preserved"
    else:
        for a in range(A.size):
            for b in range(A.size):
                if h[lat.meet[a][b]] != h[a] & h[b] or h[lat.join[a][b]] != h[a] | h[b]:
                    fail = f"lattice operations not preserved at ({a}, {b})"
                    break
            if fail:
                break
    if fail is None:
        for s, t in A.ops.items():
            table = fwd_ops[s] if s.is_forward else bwd_ops[s.base()]
            for a in range(A.size):
                if table[h[a]] != h[t[a]]:
                    fail = f"{s} not preserved at {a}"
                    break
            if fail:
                break
    report.embeds = fail is None and report.interdefinable
    if fail:
        report.detail.append(fail)
    return report
