import hashlib
import itertools
import random

import numpy as np
import pytest

from unimodal.algebra import check_operator_laws
from unimodal.frames import complex_algebra, is_unimodal
from unimodal.io import dumps
from unimodal.order import BOX_POS, DIA_POS, FORWARD_SYMBOLS, Poset, Relation, is_delta_relation, product_order
from unimodal.search import (
    KNOWN_POSET_COUNTS,
    BoundExceeded,
    all_posets,
    canonical_form,
    count_frames,
    delta_codes,
    delta_tables,
    enumerate_delta_relations,
    enumerate_frames,
    enumerate_modal_algebras,
    enumerate_posets,
    enumerate_upsets,
    lattices_up_to,
    operator_tables,
    permute_algebra,
    poset_kit,
    random_algebra,
    random_frame,
)


def test_poset_counts():
    assert [len(enumerate_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]
    assert [KNOWN_POSET_COUNTS[n] for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_posets_pairwise_non_isomorphic():
    for n in range(1, 5):
        forms = {canonical_form(P) for P in enumerate_posets(n)}
        assert len(forms) == len(enumerate_posets(n))


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(0)
    for P in enumerate_posets(4):
        perm = list(range(4))
        rng.shuffle(perm)
        Q = Poset.from_matrix([[P.le(perm[i], perm[j]) for j in range(4)] for i in range(4)])
        assert canonical_form(P) == canonical_form(Q)


def test_upsets_match_filter():
    for P in all_posets(4):
        brute = [m for m in range(1 << P.size) if P.is_upset(m)]
        assert sorted(enumerate_upsets(P)) == brute


def test_delta_relation_examples():
    one = Poset.chain(1)
    for s in FORWARD_SYMBOLS:
        rels = list(enumerate_delta_relations(one, s))
        assert sorted(r.code for r in rels) == [0, 1]
    chain = Poset.chain(2)
    prod = product_order(chain, BOX_POS).as_poset()
    oracle = sum(1 for m in range(1 << 4) if prod.is_upset(m))
    assert len(list(enumerate_delta_relations(chain, BOX_POS))) == oracle
    for P in all_posets(3):
        for s in FORWARD_SYMBOLS:
            for R in enumerate_delta_relations(P, s):
                assert is_delta_relation(P, R, s)


def test_delta_relations_complete():
    for P in all_posets(3):
        for s in FORWARD_SYMBOLS:
            brute = [c for c in range(1 << P.size**2) if is_delta_relation(P, Relation.from_code(P.size, c), s)]
            assert sorted(int(c) for c in delta_codes(P, s)) == brute


def test_frame_counts():
    assert count_frames((BOX_POS,), 1) == 2 == sum(1 for _ in enumerate_frames((BOX_POS,), 1))
    # frames on posets of size <= 2: one 1-point poset plus the chain and the antichain
    per_poset = [len(list(enumerate_delta_relations(P, BOX_POS))) for P in enumerate_posets(2)]
    assert count_frames((BOX_POS,), 2) == 2 + sum(per_poset)
    assert sum(1 for F in enumerate_frames((BOX_POS,), 2) if F.size == 2) == sum(per_poset)


def test_enumeration_deterministic():
    def digest():
        h = hashlib.sha256()
        for F in enumerate_frames((BOX_POS, DIA_POS), 2):
            h.update(dumps(F).encode())
        return h.hexdigest()

    assert digest() == digest()


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_frames((BOX_POS,), 7))


def test_modal_algebra_examples():
    two = [A for A in enumerate_modal_algebras((DIA_POS,), 2) if A.size == 2]
    assert sorted(A.ops[DIA_POS] for A in two) == [(0, 0), (0, 1)]
    for sig in itertools.combinations(FORWARD_SYMBOLS, 2):
        assert sum(1 for _ in enumerate_modal_algebras(sig, 1)) == 1
    for A in enumerate_modal_algebras((BOX_POS, DIA_POS), 4):
        assert check_operator_laws(A).ok


def test_tables_match_relations():
    """Operator tables on an upset lattice are exactly the complex algebras of delta relations."""
    for P, U in lattices_up_to(5):
        if P.size == 0:
            continue
        for s in FORWARD_SYMBOLS:
            from_tables = sorted(operator_tables(U.lattice, s))
            from_frames = sorted({tuple(int(x) for x in row) for row in delta_tables(P, s)})
            assert from_tables == from_frames


def test_kit_tables_match_complex_algebra():
    rng = random.Random(8)
    for P in all_posets(3):
        kit = poset_kit(P)
        for s in FORWARD_SYMBOLS:
            codes = delta_codes(P, s)
            tables = delta_tables(P, s)
            for i in rng.sample(range(len(codes)), min(10, len(codes))):
                F = kit.frame({s: int(codes[i])})
                assert complex_algebra(F).ops[s] == tuple(int(x) for x in tables[i])


def test_kit_unimodal_matches_scalar():
    rng = random.Random(4)
    for _ in range(200):
        F = random_frame(rng, FORWARD_SYMBOLS, rng.randint(1, 4))
        kit = poset_kit(F.poset)
        rels = {s: np.array([F[s].code]) for s in F.signature}
        assert bool(kit.unimodal(rels)[0]) == is_unimodal(F).ok


def test_random_generators_valid_and_seeded():
    a = [dumps(random_frame(random.Random(5), FORWARD_SYMBOLS, 4)) for _ in range(2)]
    assert a[0] == a[1]
    rng = random.Random(6)
    for _ in range(30):
        A = random_algebra(rng, (BOX_POS, DIA_POS), 4)
        assert check_operator_laws(A).ok
        perm = list(range(A.size))
        rng.shuffle(perm)
        assert check_operator_laws(permute_algebra(A, perm)).ok
