"""Cross-validation oracles relating different axiom families."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra import ModalAlgebra, adjoint_algebra
from ..order import ModalSymbol
from .catalog import equational_law, quasi_law, star_law
from .semantics import MissingConnective, holds


@dataclass(frozen=True)
class Agreement:
    """Two verdicts that are expected to be related (equal, or one implying the other)."""

    ok: bool
    first: bool
    second: bool

    def __bool__(self) -> bool:
        return self.ok


def quasi_vs_equational_equivalence(A: ModalAlgebra, pair: tuple[ModalSymbol, ModalSymbol]) -> Agreement:
    eq = equational_law(pair)
    if eq.residuals() - A.residuals:
        raise MissingConnective(f"equational form of {pair} needs {sorted(eq.residuals())}")
    q = holds(quasi_law(pair), A).ok
    e = holds(eq, A).ok
    return Agreement(q == e, q, e)


def plain_counterpart(pair: tuple[ModalSymbol, ModalSymbol]) -> tuple[ModalSymbol, ModalSymbol]:
    """The pairwise quasiequation implied by a locality equation.

    Forward pairs imply the quasiequation on the same symbols; a backward
    pair implies the one on the adjoint forward symbols.
    """
    a, b = pair
    if a.is_forward:
        return a, b
    return a.adjoint(), b.adjoint()


def star_implies_plain(A: ModalAlgebra, pair: tuple[ModalSymbol, ModalSymbol]) -> Agreement:
    star = holds(star_law(pair), A).ok
    plain = holds(quasi_law(plain_counterpart(pair)), A).ok
    return Agreement((not star) or plain, star, plain)


def adjoint_transfer_check(A: ModalAlgebra, pair: tuple[ModalSymbol, ModalSymbol]) -> Agreement:
    """Compare a backward locality equation on A with the forward one on its adjoint.

    ``pair`` is backward, e.g. ``(bdia+, bbox+)``; the adjoint algebra is
    tested against the forward pair with the directions swapped.
    """
    a, b = pair
    if a.is_forward or b.is_forward:
        raise ValueError("adjoint transfer compares a backward pair with its forward mirror")
    forward = (a.reversed(), b.reversed())
    here = holds(star_law(pair), A).ok
    there = holds(star_law(forward), adjoint_algebra(A)).ok
    return Agreement(here == there, here, there)
