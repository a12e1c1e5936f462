"""Evaluation of terms and laws on finite modal algebras.

``holds`` checks one algebra; ``holds_batch`` checks many operator tables
over a common lattice at once with numpy, returning per-instance verdicts
and the lexicographically least failing assignment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..algebra import DistLattice, ModalAlgebra
from ..order import ModalSymbol
from .syntax import Atom, Bin, Const, Law, Term, Un, Var


class MissingConnective(ValueError):
    pass


@dataclass(frozen=True)
class HoldsResult:
    ok: bool
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def witness_text(self) -> str:
        if not self.witness:
            return ""
        return " ".join(f"{k}={v}" for k, v in self.witness.items())


def check_compatible(law_or_term, A: ModalAlgebra) -> None:
    missing = sorted(s.name for s in law_or_term.symbols() if s not in A.ops)
    if missing:
        raise MissingConnective(f"operators {missing} are not in the signature")
    res = sorted(law_or_term.residuals() - A.residuals)
    if res:
        raise MissingConnective(f"residuals {res} are not available")


def evaluate(t: Term, A: ModalAlgebra, assignment: Mapping[str, int]) -> int:
    lat = A.lattice
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, Const):
        return lat.top if t.value == "top" else lat.bottom
    if isinstance(t, Un):
        if t.op not in A.ops:
            raise MissingConnective(f"operator {t.op} is not in the signature")
        return A.ops[t.op][evaluate(t.arg, A, assignment)]
    assert isinstance(t, Bin)
    x = evaluate(t.left, A, assignment)
    y = evaluate(t.right, A, assignment)
    if t.op == "and":
        return lat.meet[x][y]
    if t.op == "or":
        return lat.join[x][y]
    if t.op not in A.residuals:
        raise MissingConnective(f"residual {t.op} is not available")
    return (lat.implication if t.op == "impl" else lat.subtraction)[x][y]


def _atom_holds(a: Atom, A: ModalAlgebra, env: Mapping[str, int]) -> bool:
    x = evaluate(a.lhs, A, env)
    y = evaluate(a.rhs, A, env)
    if a.kind == "=":
        return x == y
    return A.lattice.meet[x][y] == x


def holds(law: Law, A: ModalAlgebra) -> HoldsResult:
    """Universal closure of the law; quasiequations share one assignment."""
    check_compatible(law, A)
    names = law.variables()
    for values in itertools.product(range(A.size), repeat=len(names)):
        env = dict(zip(names, values))
        if all(_atom_holds(p, A, env) for p in law.premises) and not _atom_holds(
            law.conclusion, A, env
        ):
            return HoldsResult(False, env)
    return HoldsResult(True)


# ---------------------------------------------------------------------------
# batch evaluation


class _Batch:
    def __init__(self, lat: DistLattice, ops: Mapping[ModalSymbol, np.ndarray], names: Sequence[str]):
        self.arr = lat.arrays
        self.lat = lat
        self.ops = ops
        m = lat.size
        k = len(names)
        grid = np.indices((m,) * k, dtype=np.int16).reshape(k, -1) if k else np.zeros((0, 1), np.int16)
        self.env = {n: grid[i][None, :] for i, n in enumerate(names)}
        self.width = grid.shape[1]
        self.cache: dict[Term, np.ndarray] = {}

    def eval(self, t: Term) -> np.ndarray:
        hit = self.cache.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Var):
            out = self.env[t.name]
        elif isinstance(t, Const):
            v = self.lat.top if t.value == "top" else self.lat.bottom
            out = np.full((1, self.width), v, dtype=np.int16)
        elif isinstance(t, Un):
            table = self.ops[t.op]
            x = self.eval(t.arg)
            if x.shape[0] == 1:
                out = table[:, x[0]]
            else:
                out = np.take_along_axis(table, x, axis=1)
        else:
            x, y = self.eval(t.left), self.eval(t.right)
            key = {"and": "meet", "or": "join", "impl": "impl", "sub": "sub"}[t.op]
            out = self.arr[key][x, y]
        self.cache[t] = out
        return out

    def atom(self, a: Atom) -> np.ndarray:
        x, y = self.eval(a.lhs), self.eval(a.rhs)
        if a.kind == "=":
            return x == y
        return self.arr["meet"][x, y] == x


def holds_batch(
    law: Law,
    lat: DistLattice,
    ops: Mapping[ModalSymbol, np.ndarray],
    residuals: frozenset[str] = frozenset({"impl", "sub"}),
    chunk: int = 4096,
) -> tuple[np.ndarray, np.ndarray]:
    """Verdicts for N algebras sharing ``lat``; ``ops[s]`` has shape (N, |lat|).

    Returns ``(ok, first_bad)`` where ``first_bad[i]`` is the flat index of
    the lexicographically least failing assignment (or -1).
    """
    missing = sorted(s.name for s in law.symbols() if s not in ops)
    if missing:
        raise MissingConnective(f"operators {missing} are not in the signature")
    if law.residuals() - residuals:
        raise MissingConnective(f"residuals {sorted(law.residuals() - residuals)} are not available")
    names = law.variables()
    n = next(iter(ops.values())).shape[0] if ops else 1
    ok = np.ones(n, dtype=bool)
    first = np.full(n, -1, dtype=np.int64)
    for start in range(0, n, chunk):
        sl = slice(start, start + chunk)
        part = {s: np.ascontiguousarray(t[sl]).astype(np.int16, copy=False) for s, t in ops.items()}
        b = _Batch(lat, part, names)
        bad = ~b.atom(law.conclusion)
        for p in law.premises:
            bad = bad & b.atom(p)
        width = min(n, start + chunk) - start
        if bad.shape[0] != width:
            bad = np.broadcast_to(bad, (width, bad.shape[1]))
        any_bad = bad.any(axis=1)
        ok[sl] = ~any_bad
        first[sl] = np.where(any_bad, bad.argmax(axis=1), -1)
    return ok, first


def decode_assignment(law: Law, size: int, flat: int) -> dict[str, int]:
    names = law.variables()
    values = np.unravel_index(flat, (size,) * len(names)) if names else ()
    return {n: int(v) for n, v in zip(names, values)}


def holds_many(law: Law, algebras: Sequence[ModalAlgebra]) -> list[HoldsResult]:
    """Group algebras by lattice and evaluate each group in one batch."""
    groups: dict[DistLattice, list[int]] = {}
    for i, A in enumerate(algebras):
        check_compatible(law, A)
        groups.setdefault(A.lattice, []).append(i)
    out: list[HoldsResult | None] = [None] * len(algebras)
    syms = law.symbols()
    for lat, idx in groups.items():
        ops = {s: np.array([algebras[i].ops[s] for i in idx], dtype=np.int16) for s in syms}
        ok, first = holds_batch(law, lat, ops) if ops else _opless(law, lat, len(idx))
        for j, i in enumerate(idx):
            out[i] = HoldsResult(True) if ok[j] else HoldsResult(False, decode_assignment(law, lat.size, int(first[j])))
    return out  # type: ignore[return-value]


def _opless(law: Law, lat: DistLattice, n: int):
    A = ModalAlgebra(lat, {}, frozenset({"impl", "sub"}))
    r = holds(law, A)
    names = law.variables()
    flat = -1
    if not r.ok:
        flat = int(np.ravel_multi_index([r.witness[k] for k in names], (lat.size,) * len(names))) if names else 0
    return np.full(n, r.ok), np.full(n, flat)
