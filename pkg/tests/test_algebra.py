import itertools

import pytest

from unimodal.algebra import (
    DistLattice,
    LatticeError,
    ModalAlgebra,
    UpsetLattice,
    adjoint_op,
    adjoint_table,
    check_operator_laws,
    check_tense,
    find_isomorphism,
    is_subalgebra_embedding,
    order_dual_algebra,
    residual_implication,
    residual_subtraction,
)
from unimodal.order import BOX_POS, DIA_POS, FORWARD_SYMBOLS, Poset
from unimodal.search import lattices_up_to, operator_tables

C2, C3 = DistLattice.chain(2), DistLattice.chain(3)
BDIA_POS = BOX_POS.adjoint()


def small_algebras(max_size=5):
    for _, U in lattices_up_to(max_size):
        for s in FORWARD_SYMBOLS:
            for t in operator_tables(U.lattice, s):
                yield ModalAlgebra(U.lattice, {s: t})


def test_lattice_invariants():
    for _, U in lattices_up_to(5):
        L = U.lattice
        r = range(L.size)
        for a, b, c in itertools.product(r, r, r):
            assert L.meet[a][L.join[b][c]] == L.join[L.meet[a][b]][L.meet[a][c]]
        for a in r:
            assert L.meet[a][L.top] == a and L.join[a][L.bottom] == a


def test_non_distributive_rejected():
    # the diamond M3: bottom 0, atoms 1 2 3, top 4
    leq = [[i == j or i == 0 or j == 4 for j in range(5)] for i in range(5)]
    with pytest.raises(LatticeError):
        DistLattice.from_matrix(leq)


def test_residual_examples():
    for L in (C2, C3):
        for x in range(L.size):
            assert residual_implication(L, L.bottom, x) == L.top
            assert residual_implication(L, x, x) == L.top
            assert residual_subtraction(L, x, L.bottom) == x
            assert residual_subtraction(L, x, x) == L.bottom
    assert residual_implication(C3, 1, C3.bottom) == C3.bottom
    assert residual_subtraction(C3, C3.top, 1) == C3.top


def test_residual_laws_exhaustive():
    for _, U in lattices_up_to(5):
        L = U.lattice
        r = range(L.size)
        for a, b, c in itertools.product(r, r, r):
            assert L.le(L.meet[a][b], c) == L.le(b, L.implication[a][c])
            assert L.le(a, L.join[b][c]) == L.le(L.subtraction[a][b], c)


def test_operator_law_examples():
    for _, U in lattices_up_to(4):
        L = U.lattice
        assert check_operator_laws(ModalAlgebra(L, {BOX_POS: tuple(range(L.size))})).ok
        assert check_operator_laws(ModalAlgebra(L, {BOX_POS: (L.top,) * L.size})).ok
    bad = check_operator_laws(ModalAlgebra(C2, {BOX_POS: (0, 0)}))
    assert not bad.ok
    assert any(v.law == "box+:top" for v in bad.violations)


def test_check_tense_examples():
    ident = ModalAlgebra(C2, {BOX_POS: (0, 1), BDIA_POS: (0, 1)})
    assert check_tense(ident, (BOX_POS, BDIA_POS)).ok
    consts = ModalAlgebra(C2, {BOX_POS: (1, 1), BDIA_POS: (0, 0)})
    assert check_tense(consts, (BOX_POS, BDIA_POS)).ok
    broken = ModalAlgebra(C2, {BOX_POS: (0, 1), BDIA_POS: (1, 1)})
    assert not check_tense(broken, (BOX_POS, BDIA_POS)).ok


def test_adjoint_examples():
    A = ModalAlgebra(C3, {BOX_POS: (0, 1, 2)})
    assert adjoint_op(A, BOX_POS)[0] == (0, 1, 2)
    A = ModalAlgebra(C3, {BOX_POS: (2, 2, 2)})
    assert adjoint_op(A, BOX_POS)[0] == (0, 0, 0)


def test_adjoint_round_trip_exhaustive():
    # the adjoint of the adjoint (taken in the dual direction) is the original
    for A in small_algebras(5):
        (s, t), = A.ops.items()
        g = adjoint_table(A.lattice, s, t)
        back = adjoint_table(A.lattice, s.adjoint(), g)
        assert back == tuple(t)
        assert check_tense(ModalAlgebra(A.lattice, {s: t, s.adjoint(): g}), (s, s.adjoint())).ok


def test_order_dual_examples():
    A = ModalAlgebra(C2, {BOX_POS: (0, 1)})
    D = order_dual_algebra(A)
    assert set(D.ops) == {DIA_POS} and D.ops[DIA_POS] == (0, 1)
    assert order_dual_algebra(D) == A


def test_order_dual_preserves_operator_laws():
    for A in small_algebras(5):
        assert check_operator_laws(order_dual_algebra(A)).ok


def test_subalgebra_embedding_examples():
    A = ModalAlgebra(C3, {BOX_POS: (0, 2, 2)}, frozenset({"impl", "sub"}))
    assert is_subalgebra_embedding(A, A, [0, 1, 2])
    assert not is_subalgebra_embedding(A, A, [0, 0, 2])


def test_find_isomorphism():
    U = UpsetLattice.of(Poset.antichain(2))
    A = ModalAlgebra(U.lattice, {DIA_POS: tuple(range(4))})
    assert find_isomorphism(A, A) is not None
    B = ModalAlgebra(C2, {DIA_POS: (0, 1)})
    assert find_isomorphism(A, B) is None


def test_table_shape_checked():
    with pytest.raises(LatticeError):
        ModalAlgebra(C2, {BOX_POS: (0, 1, 1)})
