import pytest

from unimodal.campaigns import (
    TARGETS,
    CampaignError,
    CampaignSpec,
    find_problematic_gap,
    run_campaign,
    unimodal_vs_conditions,
)
from unimodal.order import BOX_NEG, BOX_POS, DIA_NEG, DIA_POS, FORWARD_SYMBOLS
from unimodal.search import all_posets


def small(target, **kw):
    kw.setdefault("max_poset", 2)
    kw.setdefault("max_lattice", 3)
    return CampaignSpec(target, **kw)


@pytest.mark.parametrize(
    "target",
    [t for t in TARGETS if t not in ("self-test", "problematic-gap")],
)
def test_small_campaigns_pass(target):
    rep = run_campaign(small(target))
    assert rep.verdict == "pass", rep.violations[:2]
    assert rep.complete
    assert rep.instances > 0


def test_self_test_finds_violations():
    rep = run_campaign(small("self-test"))
    assert rep.verdict == "fail"
    v = rep.violations[0]
    assert v["law_holds"] != v["condition_holds"]


def test_hash_is_deterministic_and_ignores_elapsed():
    spec = small("correspondence", mode="random", seed=7, samples=150, max_poset=3)
    a, b = run_campaign(spec), run_campaign(spec)
    assert a.content_hash() == b.content_hash()
    c = run_campaign(small("correspondence", mode="random", seed=8, samples=150, max_poset=3))
    assert c.content_hash() != a.content_hash()


def test_jobs_do_not_change_the_report():
    spec = small("canonicity", max_poset=3, signature=(BOX_POS, DIA_NEG), population=("tables", "frames"))
    assert run_campaign(spec, jobs=1).content_hash() == run_campaign(spec, jobs=2).content_hash()


@pytest.mark.parametrize(
    "data,needle",
    [
        ({"target": "nope"}, "unknown target"),
        ({"max_poset": 2}, "needs a 'target'"),
        ({"target": "canonicity", "colour": 1}, "unknown campaign fields"),
        ({"target": "correspondence", "mode": "random"}, "need a seed"),
        ({"target": "correspondence", "mode": "random", "seed": 1}, "samples"),
        ({"target": "correspondence", "max_poset": 9}, "limited"),
        ({"target": "canonicity", "max_lattice": 40}, "limited"),
        ({"target": "correspondence", "signature": ["box+"]}, "two symbols"),
        ({"target": "correspondence", "signature": ["box*"]}, "unknown symbol"),
        ({"target": "correspondence", "signature": ["bbox+", "box+"]}, "forward"),
        ({"target": "correspondence", "max_poset": 4}, "pair_cap"),
        ({"target": "correspondence", "pair_cap": 10}, "seed"),
        ({"target": "problematic-gap", "signature": ["box+", "dia-"]}, "same polarity"),
        ({"target": "self-test", "signature": ["box-", "dia-"]}, "dia+ and box+"),
        ({"target": "canonicity", "population": ["zoo"]}, "unknown population"),
        ({"target": "canonicity", "depth": -1}, "non-negative"),
    ],
)
def test_spec_validation(data, needle):
    with pytest.raises(CampaignError) as e:
        CampaignSpec.from_json(data)
    assert needle in str(e.value)


def test_spec_json_round_trip():
    spec = CampaignSpec.from_json({"target": "symmetry", "signature": ["dia+", "box+"], "max_poset": 2})
    assert CampaignSpec.from_json(spec.to_json()) == spec
    assert spec.signature == (BOX_POS, DIA_POS)


def test_pair_cap_samples_and_marks_incomplete():
    spec = CampaignSpec("correspondence", max_poset=3, signature=(BOX_POS, DIA_POS),
                        pair_cap=100, seed=3, samples=40)
    rep = run_campaign(spec)
    assert rep.verdict == "pass"
    assert not rep.complete and rep.skipped > 0
    assert any("sampled" in n for n in rep.notes)
    assert run_campaign(spec).content_hash() == rep.content_hash()


def test_unimodal_vs_conditions_on_chain():
    P = [p for p in all_posets(3) if p.size == 3][-1]
    res = unimodal_vs_conditions(P, FORWARD_SYMBOLS)
    assert not res.violations
    assert res.instances > 0


def test_gap_depth_zero_and_two():
    rep0 = find_problematic_gap((BOX_POS, DIA_POS), 2, 0)
    assert rep0["finite_counterexamples"] == 0
    assert len(rep0["stages"]) == 1 and rep0["intersection_constant"]
    rep2 = find_problematic_gap(FORWARD_SYMBOLS, 2, 2)
    assert len(rep2["stages"]) == 3
    assert rep2["intersection_constant"]
    for st in rep2["stages"][1:]:
        assert all(st["earlier_pairs_repaired"].values())
    assert "finite prefix" in rep2["note"]


def test_gap_needs_problematic_pair():
    with pytest.raises(CampaignError):
        find_problematic_gap((BOX_POS, DIA_NEG), 2, 1)
    with pytest.raises(CampaignError):
        find_problematic_gap((BOX_NEG, DIA_POS), 2, 1)


def test_batched_canonical_frames_match_direct():
    from unimodal.campaigns import canonical_batch, population_batches
    from unimodal.duality import canonical_frame
    from unimodal.order import Relation

    spec = CampaignSpec("canonicity", max_poset=2, max_lattice=4, signature=(BOX_NEG, DIA_POS),
                        population=("tables", "frames"))
    seen = 0
    for unit in TARGETS["canonicity"].units(spec):
        for batch in population_batches(spec, unit):
            cb = canonical_batch(batch)
            for i in range(len(batch)):
                F = canonical_frame(batch.algebra(i))
                assert F.poset == cb.poset
                for s, c in cb.codes.items():
                    assert Relation.from_code(F.size, int(c[i])) == F[s]
                seen += 1
    assert seen > 100


def test_positivity_needs_same_shape_pairs():
    from unimodal.duality import boolean_extension_check
    from unimodal.io import loads

    # one point; box+ from the empty relation, box- from the full one
    A = loads('{"lattice": {"size": 2, "leq": [[1, 1], [0, 1]]}, "ops": {"box+": [1, 1], "box-": [1, 0]}}')
    r = boolean_extension_check(A)
    assert not r.positive and not r.embeds and r.ok
    assert r.failed_condition in ("(box+,box-)", "(box-,box+)")
