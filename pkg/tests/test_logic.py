import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimodal.algebra import DistLattice, ModalAlgebra, tense_completion
from unimodal.frames import LOCALITY_PAIR_IDS, applicable_unimodal_ids, complex_algebra, frame_from_seed
from unimodal.logic.catalog import (
    axiom_catalog,
    catalog_ids,
    equational_law,
    mutated_law,
    normalize_id,
    quasi_law,
    star_law,
)
from unimodal.logic.checks import (
    adjoint_transfer_check,
    quasi_vs_equational_equivalence,
    star_implies_plain,
)
from unimodal.logic.parser import ParseError, parse, parse_law, parse_law_file, parse_term
from unimodal.logic.semantics import MissingConnective, evaluate, holds, holds_batch
from unimodal.logic.syntax import Bin, Const, Law, Un, Var, format_law, format_term
from unimodal.order import BOX_NEG, BOX_POS, DIA_POS, FORWARD_SYMBOLS, Poset, Relation
from unimodal.search import lattices_up_to, operator_tables, random_algebra

C2 = DistLattice.chain(2)
BOTH = frozenset({"impl", "sub"})
SYMS = list(FORWARD_SYMBOLS) + [s.adjoint() for s in FORWARD_SYMBOLS]


def terms(depth=3):
    leaves = st.one_of(st.sampled_from([Var("a"), Var("b"), Var("c1"), Const("top"), Const("bot")]))

    def grow(children):
        return st.one_of(
            st.builds(Un, st.sampled_from(SYMS), children),
            st.builds(Bin, st.sampled_from(["and", "or", "impl", "sub"]), children, children),
        )

    return st.recursive(leaves, grow, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(terms())
def test_printer_parser_round_trip(t):
    assert parse_term(format_term(t)) == t


def test_parse_examples():
    law = parse(r"box+ a /\ box-(a /\ b) <= box- b")
    assert isinstance(law, Law) and law.kind == "inequation"
    assert law == quasi_law((BOX_NEG, BOX_POS)).__class__(law.premises, law.conclusion, law.name)
    assert parse("a") == Var("a")
    q = parse(r"dia+ a <= box+ b \/ c => dia+ a <= dia+(a /\ b) \/ c")
    assert q.kind == "quasiequation" and len(q.premises) == 1
    assert format_law(q) == format_law(quasi_law((DIA_POS, BOX_POS)))


def test_precedence():
    t = parse_term(r"a /\ b \/ c -> d -- e")
    # -> and -- are right associative and bind loosest
    assert isinstance(t, Bin) and t.op == "impl"
    assert t.left == Bin("or", Bin("and", Var("a"), Var("b")), Var("c"))
    assert t.right == Bin("sub", Var("d"), Var("e"))
    assert parse_term("box+ a /\\ b") == Bin("and", Un(BOX_POS, Var("a")), Var("b"))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_law("a <= ( b")
    assert e.value.position == 8
    with pytest.raises(ParseError):
        parse_term("box* a")
    with pytest.raises(ParseError) as e:
        parse_law_file("a <= a\n# fine\na <= ) \n")
    assert e.value.position == 19


def test_law_file():
    laws = parse_law_file("# comment\n\na <= top\nbot <= a # trailing\n")
    assert [format_law(l) for l in laws] == ["a <= top", "bot <= a"]


def test_evaluate_examples():
    for _, U in lattices_up_to(4):
        A = ModalAlgebra(U.lattice, {}, BOTH)
        for x in range(A.size):
            assert evaluate(Const("top"), A, {}) == A.lattice.top
            assert evaluate(parse_term("a -> a"), A, {"a": x}) == A.lattice.top
    for _, U in lattices_up_to(4):
        for t in operator_tables(U.lattice, BOX_POS):
            A = ModalAlgebra(U.lattice, {BOX_POS: t})
            lhs, rhs = parse_term("box+(a /\\ b)"), parse_term("box+ a /\\ box+ b")
            for a, b in itertools.product(range(A.size), repeat=2):
                assert evaluate(lhs, A, {"a": a, "b": b}) == evaluate(rhs, A, {"a": a, "b": b})


def test_holds_examples():
    A = ModalAlgebra(C2, {DIA_POS: (0, 1), BOX_POS: (0, 1)})
    assert holds(quasi_law((DIA_POS, BOX_POS)), A)
    assert holds(parse_law("x <= top"), A)
    A = ModalAlgebra(C2, {BOX_NEG: (1, 1), DIA_POS: (1, 1)})
    law = star_law((DIA_POS, BOX_NEG))
    r = holds(law, A)
    assert not r.ok
    # the witness really falsifies the law: box- a /\ dia+ a evaluates to top
    lhs = evaluate(law.conclusion.lhs, A, r.witness)
    assert lhs == A.lattice.top != A.lattice.bottom
    assert r.witness_text() == f"a={r.witness['a']}"


def test_holds_needs_connectives():
    with pytest.raises(MissingConnective):
        holds(parse_law("box+ a <= a"), ModalAlgebra(C2, {}))
    with pytest.raises(MissingConnective):
        holds(parse_law("a -> b <= b"), ModalAlgebra(C2, {}))


def test_holds_batch_matches_scalar():
    rng = random.Random(3)
    algebras = [random_algebra(rng, (BOX_POS, DIA_POS), 3) for _ in range(30)]
    for law in [quasi_law((DIA_POS, BOX_POS)), star_law((BOX_POS, DIA_POS)), equational_law((BOX_POS, DIA_POS))]:
        for A in algebras:
            ok, _ = holds_batch(law, A.lattice, {s: np.array([A.ops[s]]) for s in law.symbols()})
            assert bool(ok[0]) == holds(law, A).ok


def test_catalog_examples():
    assert format_law(axiom_catalog("(box+,dia-)")) == r"dia- a /\ c <= box+ a => c <= box+ a"
    assert format_law(axiom_catalog("(box+,dia-)*")) == r"top <= box+ a \/ dia- a"
    assert format_law(axiom_catalog("(bdia+,bbox+)*")) == "dia+ a -> box+ b <= box+(a -> b)"
    assert normalize_id("(box+, dia-)") == "q:(box+,dia-)"
    with pytest.raises(KeyError):
        axiom_catalog("q:(box+,box+)")


def test_catalog_sizes():
    ids = catalog_ids()
    assert sum(i.startswith("q:") for i in ids) == 12
    assert sum(i.startswith("eq:") for i in ids) == 12
    assert sum(i.endswith(")*") for i in ids) == 16


def test_mutated_law_drops_premises():
    q = quasi_law((DIA_POS, BOX_POS))
    m = mutated_law(q)
    assert not m.premises and m.conclusion == q.conclusion


def test_quasi_vs_equational_exhaustive():
    for _, U in lattices_up_to(5):
        L = U.lattice
        for x, y in itertools.combinations(FORWARD_SYMBOLS, 2):
            tx, ty = np.array(operator_tables(L, x)), np.array(operator_tables(L, y))
            I, J = np.divmod(np.arange(len(tx) * len(ty)), len(ty))
            ops = {x: tx[I], y: ty[J]}
            for pair in ((x, y), (y, x)):
                q, _ = holds_batch(quasi_law(pair), L, ops)
                e, _ = holds_batch(equational_law(pair), L, ops)
                assert (q == e).all()
            # scalar route on a few members
            for i in range(0, len(I), max(1, len(I) // 5)):
                A = ModalAlgebra(L, {x: tuple(tx[I[i]]), y: tuple(ty[J[i]])}, BOTH)
                assert quasi_vs_equational_equivalence(A, (x, y))


def test_one_element_algebra():
    A = ModalAlgebra(DistLattice.chain(1), {s: (0,) for s in FORWARD_SYMBOLS}, BOTH)
    for cid in applicable_unimodal_ids(FORWARD_SYMBOLS):
        r = quasi_vs_equational_equivalence(A, cid.symbols)
        assert r.first and r.second
    T = tense_completion(A)
    for cid in LOCALITY_PAIR_IDS:
        assert star_implies_plain(T, cid.symbols)


def test_star_implies_plain_positive():
    for _, U in lattices_up_to(5):
        L = U.lattice
        for b in operator_tables(L, BOX_POS):
            for d in operator_tables(L, DIA_POS):
                A = ModalAlgebra(L, {BOX_POS: b, DIA_POS: d}, BOTH)
                assert star_implies_plain(A, (DIA_POS, BOX_POS))
                assert star_implies_plain(A, (BOX_POS, DIA_POS))


def test_adjoint_transfer_examples():
    # identity is an operator only for the positive symbols
    ident = tense_completion(ModalAlgebra(C2, {BOX_POS: (0, 1), DIA_POS: (0, 1)}, BOTH))
    backward = [c.symbols for c in LOCALITY_PAIR_IDS if not c.symbols[0].is_forward]
    assert len(backward) == 8
    positive = [p for p in backward if all(s.positive for s in p)]
    assert positive
    for pair in positive:
        r = adjoint_transfer_check(ident, pair)
        assert r.ok and r.first and r.second
    A = tense_completion(ModalAlgebra(C2, {BOX_POS: (1, 1)}, BOTH))
    for pair in backward:
        if set(pair) <= set(A.ops):
            assert adjoint_transfer_check(A, pair)
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 3)
        P = rng.choice([Poset.chain(n), Poset.antichain(n)])
        F = frame_from_seed(P, Relation.from_code(n, rng.randrange(1 << n * n)), FORWARD_SYMBOLS)
        T = tense_completion(complex_algebra(F))
        for pair in backward:
            assert adjoint_transfer_check(T, pair)
