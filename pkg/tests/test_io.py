import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimodal.algebra import DistLattice, ModalAlgebra
from unimodal.frames import complex_algebra, tense_completion
from unimodal.io import FormatError, dumps, from_json, kind_of, loads, to_json
from unimodal.order import BOX_POS, DIA_POS, FORWARD_SYMBOLS, Poset, Relation
from unimodal.search import all_posets, random_algebra, random_frame


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4))
def test_frame_round_trip(seed, n):
    F = random_frame(random.Random(seed), FORWARD_SYMBOLS, n)
    assert loads(dumps(F)) == F
    T = tense_completion(F)
    assert loads(dumps(T)) == T


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_algebra_round_trip(seed):
    A = random_algebra(random.Random(seed), (BOX_POS, DIA_POS), 4)
    assert loads(dumps(A)) == A


def test_poset_and_relation_round_trip():
    for P in all_posets(4):
        assert loads(dumps(P)) == P
    R = Relation.from_pairs(3, [(0, 1), (2, 2)])
    assert loads(dumps(R)) == R


def test_kind_detection():
    assert kind_of({"poset": {}}) == "frame"
    assert kind_of({"lattice": {}}) == "algebra"
    assert kind_of({"size": 1, "bits": [[0]]}) == "relation"
    assert kind_of({"size": 1, "leq": [[1]]}) == "poset"
    with pytest.raises(FormatError):
        kind_of([1, 2])


@pytest.mark.parametrize(
    "text,needle",
    [
        ('{"size": 2, "leq": [[1, 1], [1, 1]]}', "not antisymmetric"),
        ('{"size": 2, "leq": [[1, 1]]}', "must have 2 rows"),
        ('{"size": 2, "leq": [[1, 1], [0]]}', "row 1"),
        ('{"size": 2, "leq": [[1, 2], [0, 1]]}', "entry (0, 1)"),
        ('{"size": -1, "leq": []}', "non-negative"),
        ('{"poset": {"size": 1, "leq": [[1]]}, "relations": {"box*": {"size": 1, "bits": [[0]]}}}', "box*"),
        ('{"poset": {"size": 1, "leq": [[1]]}, "relations": {"bbox+": {"size": 1, "bits": [[0]]}}}', "does not belong"),
        ('{"poset": {"size": 2, "leq": [[1, 1], [0, 1]]}, "relations": {"box+": {"size": 2, "bits": [[1, 0], [0, 0]]}}}', "monotone"),
        ('{"lattice": {"size": 2, "leq": [[1, 1], [0, 1]]}, "ops": {"box+": [0]}}', "algebra"),
        ('{"lattice": {"size": 2, "leq": [[1, 1], [0, 1]]}, "ops": {"box+": "x"}}', "list of integers"),
        ("[1, 2", "line 1 column"),
    ],
)
def test_format_errors(text, needle):
    with pytest.raises(FormatError) as e:
        loads(text)
    assert needle in str(e.value)


def test_residuals_default_to_both():
    A = loads('{"lattice": {"size": 1, "leq": [[true]]}, "ops": {}}')
    assert A.residuals == frozenset({"impl", "sub"})


def test_output_is_sorted_json():
    A = complex_algebra(random_frame(random.Random(2), (BOX_POS,), 2))
    text = dumps(A)
    assert json.dumps(json.loads(text), sort_keys=True) == text
    assert to_json(A) == json.loads(text)
