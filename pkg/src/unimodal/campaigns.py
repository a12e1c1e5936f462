"""Verification campaigns over enumerated or sampled frames and algebras.

A campaign is described by a :class:`CampaignSpec` and produces a
:class:`CampaignReport` listing every violation with a replayable instance.
Work is split into units that can run in worker processes; results are
merged in unit order so reports do not depend on scheduling.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .algebra import (
    _ADJOINT_RULE,
    DistLattice,
    embedding_failure,
    InternalInconsistency,
    ModalAlgebra,
    UpsetLattice,
    adjoint_algebra,
    order_dual_algebra,
)
from .duality import (
    boolean_extension_check,
    canonical_extension,
    canonical_frame,
    prime_filters,
)
from .frames import (
    BACKWARD_LOCALITY,
    FORWARD_LOCALITY,
    LOCALITY_PAIR,
    LOCALITY_PAIR_IDS,
    UNIMODAL,
    FrameConditionId,
    FrameError,
    ModalFrame,
    applicable,
    applicable_unimodal_ids,
    check_condition,
    check_locality_via_converse,
    complex_algebra,
    converse_frame,
    example_frame,
    is_minimally_generated,
    is_unimodal,
    locality_partners,
    order_dual_frame,
    pair_witnessed,
    problematic_pairs,
    staged_frame_construction,
    tense_completion,
    _left,
    _right,
)
from .io import algebra_to_json, frame_to_json
from .logic.catalog import equational_law, mutated_law, quasi_law, star_law
from .logic.checks import plain_counterpart
from .logic.semantics import decode_assignment, holds, holds_batch
from .logic.syntax import Atom, Bin, Law, Un, Var
from .order import (
    BOX_NEG,
    BOX_POS,
    DIA_POS,
    FORWARD_SYMBOLS,
    SYMBOLS_BY_NAME,
    ModalSymbol,
    Poset,
    Relation,
    compose,
    sorted_symbols,
)
from .search import (
    CODE_CEILING,
    BoundExceeded,
    all_posets,
    delta_codes,
    delta_tables,
    lattices_up_to,
    operator_tables,
    poset_kit,
    random_algebra,
    random_frame,
)

EXHAUSTIVE_POSET_CEILING = 4
EXHAUSTIVE_LATTICE_CEILING = 5
RANDOM_POSET_CEILING = 6
SLICE = 1 << 16
BATCH_ROWS = 1 << 15


class CampaignError(ValueError):
    pass


# ---------------------------------------------------------------------------
# spec and report


@dataclass(frozen=True)
class CampaignSpec:
    target: str
    max_poset: int = 3
    max_lattice: int = 4
    signature: tuple[ModalSymbol, ...] = FORWARD_SYMBOLS
    mode: str = "exhaustive"
    seed: int | None = None
    samples: int = 0
    population: tuple[str, ...] = ()
    laws: int = 20
    depth: int = 2
    pair_cap: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "signature", sorted_symbols(self.signature))
        if not self.population:
            pop = ("random",) if self.mode == "random" else ("tables",)
            object.__setattr__(self, "population", pop)

    @classmethod
    def from_json(cls, data: dict) -> "CampaignSpec":
        if not isinstance(data, dict) or "target" not in data:
            raise CampaignError("campaign spec needs a 'target'")
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise CampaignError(f"unknown campaign fields {sorted(extra)}")
        kw = dict(data)
        if "signature" in kw:
            sig = kw["signature"]
            if not isinstance(sig, list) or not sig:
                raise CampaignError("'signature' must be a non-empty list of symbol names")
            try:
                kw["signature"] = tuple(SYMBOLS_BY_NAME[s] for s in sig)
            except KeyError as e:
                raise CampaignError(f"unknown symbol {e.args[0]!r}") from None
        if "population" in kw:
            kw["population"] = tuple(kw["population"])
        spec = cls(**kw)
        spec.validate()
        return spec

    def to_json(self) -> dict:
        d = asdict(self)
        d["signature"] = [s.name for s in self.signature]
        d["population"] = list(self.population)
        return d

    def validate(self) -> None:
        if self.target not in TARGETS:
            raise CampaignError(f"unknown target {self.target!r}; known: {', '.join(TARGETS)}")
        if self.max_poset < 1 or self.max_lattice < 1:
            raise CampaignError("size bounds must be at least 1")
        if any(not s.is_forward for s in self.signature):
            raise CampaignError("campaign signatures list forward symbols only")
        if self.mode not in ("exhaustive", "random"):
            raise CampaignError("mode must be 'exhaustive' or 'random'")
        if self.mode == "random":
            if self.seed is None:
                raise CampaignError("random campaigns need a seed")
            if self.samples < 1:
                raise CampaignError("random campaigns need samples >= 1")
            if self.max_poset > RANDOM_POSET_CEILING:
                raise CampaignError(f"random frames are limited to {RANDOM_POSET_CEILING} points")
        else:
            if self.max_poset > EXHAUSTIVE_POSET_CEILING:
                raise CampaignError(f"exhaustive frames are limited to {EXHAUSTIVE_POSET_CEILING} points")
            if self.max_lattice > EXHAUSTIVE_LATTICE_CEILING:
                raise CampaignError(f"exhaustive lattices are limited to {EXHAUSTIVE_LATTICE_CEILING} elements")
        bad = set(self.population) - {"tables", "frames", "random"}
        if bad:
            raise CampaignError(f"unknown population {sorted(bad)}")
        if "random" in self.population and (self.seed is None or self.samples < 1):
            raise CampaignError("the random population needs a seed and samples >= 1")
        if self.depth < 0:
            raise CampaignError("depth must be non-negative")
        if self.pair_cap is not None and (self.pair_cap < 1 or self.seed is None or self.samples < 1):
            raise CampaignError("pair_cap needs a positive cap, a seed and samples >= 1")
        TARGETS[self.target].check(self)


@dataclass
class CampaignReport:
    spec: CampaignSpec
    instances: int = 0
    checks: int = 0
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    skipped: int = 0

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def complete(self) -> bool:
        """False when some instances were sampled rather than enumerated."""
        return self.skipped == 0

    def content(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "instances": self.instances,
            "checks": self.checks,
            "skipped": self.skipped,
            "violations": self.violations,
            "notes": self.notes,
        }

    def content_hash(self) -> str:
        blob = json.dumps(self.content(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def summary(self) -> dict:
        return {
            "target": self.spec.target,
            "verdict": self.verdict,
            "instances": self.instances,
            "checks": self.checks,
            "violations": len(self.violations),
            "skipped": self.skipped,
            "complete": self.complete,
            "elapsed": round(self.elapsed, 3),
            "hash": self.content_hash(),
            "notes": self.notes,
            "spec": self.spec.to_json(),
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.summary(), sort_keys=True)]
        for i, v in enumerate(self.violations):
            lines.append(json.dumps({"violation": i, **v}, sort_keys=True))
        return "\n".join(lines) + "\n"


@dataclass
class UnitResult:
    instances: int = 0
    checks: int = 0
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    skipped: int = 0

    def add(self, other: "UnitResult") -> None:
        self.instances += other.instances
        self.checks += other.checks
        self.skipped += other.skipped
        self.violations.extend(other.violations)
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)


@dataclass(frozen=True)
class Target:
    name: str
    units: Callable[[CampaignSpec], list]
    run: Callable[[CampaignSpec, object], UnitResult]
    check: Callable[[CampaignSpec], None] = lambda spec: None
    note: str = ""


def _run_unit(args) -> UnitResult:
    spec, unit = args
    return TARGETS[spec.target].run(spec, unit)


def run_campaign(spec: CampaignSpec, jobs: int = 1) -> CampaignReport:
    spec.validate()
    t0 = time.perf_counter()
    target = TARGETS[spec.target]
    units = target.units(spec)
    total = UnitResult()
    if target.note:
        total.notes.append(target.note)
    work = [(spec, u) for u in units]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, work))
    else:
        results = [_run_unit(w) for w in work]
    for r in results:
        total.add(r)
    return CampaignReport(
        spec, total.instances, total.checks, total.violations, total.notes, time.perf_counter() - t0, total.skipped
    )


# ---------------------------------------------------------------------------
# helpers


def _pairs_in(signature: Sequence[ModalSymbol]) -> list[tuple[ModalSymbol, ModalSymbol]]:
    return list(itertools.combinations(sorted_symbols(signature), 2))


def _rng(spec: CampaignSpec, *salt) -> random.Random:
    return random.Random(":".join(str(x) for x in (spec.seed, spec.target) + salt))


def _blocks(spec: CampaignSpec, size: int = 100) -> list[tuple[int, int]]:
    return [(b, min(size, spec.samples - b * size)) for b in range((spec.samples + size - 1) // size)]


def _pair_frame(P: Poset, codes: dict[ModalSymbol, int]) -> ModalFrame:
    return ModalFrame(P, {s: Relation.from_code(P.size, int(c)) for s, c in codes.items()})


def _violation(instance: dict, **info) -> dict:
    out = {"instance": instance}
    for k, v in info.items():
        if isinstance(v, ModalSymbol):
            v = v.name
        elif isinstance(v, (FrameConditionId,)):
            v = str(v)
        out[k] = v
    return out


def batch_adjoint(lat: DistLattice, s: ModalSymbol, T: np.ndarray) -> np.ndarray:
    """Adjoint tables of ``s`` for a stack of tables ``T`` (N, m), by extremal search."""
    take_min, x_below = _ADJOINT_RULE[s.name]
    arr = lat.arrays
    le, meet, join = arr["le"].astype(bool), arr["meet"], arr["join"]
    N, m = T.shape
    out = np.empty((N, m), dtype=np.int16)
    start = lat.top if take_min else lat.bottom
    for x in range(m):
        cand = le[x, T] if x_below else le[T, x]
        acc = np.full(N, start, dtype=np.int16)
        for y in range(m):
            acc = np.where(cand[:, y], (meet if take_min else join)[acc, y], acc)
        attained = cand[np.arange(N), acc]
        if not attained.all():
            raise InternalInconsistency(f"adjoint of {s} not attained at element {x}")
        out[:, x] = acc
    return out


# ---------------------------------------------------------------------------
# frame-pair sweeps: correspondence, locality correspondence, self-test


def _pair_items(spec: CampaignSpec, x: ModalSymbol, y: ModalSymbol) -> list[tuple[Law, FrameConditionId]]:
    pair = {x, y}
    items: list[tuple[Law, FrameConditionId]] = []
    if spec.target == "correspondence":
        for a, b in ((x, y), (y, x)):
            items.append((quasi_law((a, b)), FrameConditionId(UNIMODAL, (a, b))))
    elif spec.target == "locality-correspondence":
        for cid in LOCALITY_PAIR_IDS:
            if set(cid.requires()) == pair:
                items.append((star_law(cid.symbols), cid))
    elif spec.target == "self-test":
        if pair == {DIA_POS, BOX_POS}:
            items.append(
                (mutated_law(quasi_law((DIA_POS, BOX_POS))), FrameConditionId(UNIMODAL, (DIA_POS, BOX_POS)))
            )
    return items


def _sweep_units(spec: CampaignSpec) -> list:
    units = []
    if spec.mode == "random":
        for x, y in _pairs_in(spec.signature):
            if _pair_items(spec, x, y):
                units += [("random", x, y, b, k) for b, k in _blocks(spec)]
        return units
    for P in all_posets(spec.max_poset):
        for x, y in _pairs_in(spec.signature):
            if not _pair_items(spec, x, y):
                continue
            total = len(delta_codes(P, x)) * len(delta_codes(P, y))
            if spec.pair_cap is not None and total > spec.pair_cap:
                units.append(("sample", P, x, y, total))
                continue
            for start in range(0, total, SLICE):
                units.append(("slice", P, x, y, start, min(total, start + SLICE)))
    return units


def sweep_pairs(
    P: Poset,
    x: ModalSymbol,
    y: ModalSymbol,
    items: Sequence[tuple[Law, FrameConditionId]],
    index: np.ndarray,
) -> tuple[int, list[dict]]:
    """Compare law and frame verdicts on the (x, y) frames at flat ``index``."""
    kit = poset_kit(P)
    cx, cy = delta_codes(P, x), delta_codes(P, y)
    tx, ty = delta_tables(P, x), delta_tables(P, y)
    I, J = index // len(cy), index % len(cy)
    rels = {x: cx[I], y: cy[J]}
    ops = {x: tx[I], y: ty[J]}
    out = []
    for law, cid in items:
        cond = np.broadcast_to(kit.condition(cid, rels), I.shape)
        ok, first = holds_batch(law, kit.lattice, {s: ops[s] for s in law.symbols()}, chunk=2048)
        for i in np.nonzero(ok != cond)[0]:
            F = _pair_frame(P, {x: rels[x][i], y: rels[y][i]})
            out.append(_discrepancy(F, law, cid, bool(ok[i]), bool(cond[i]), kit.lattice.size, int(first[i])))
    return len(index), out


def _discrepancy(F: ModalFrame, law: Law, cid, law_ok: bool, cond_ok: bool, m: int, first: int) -> dict:
    return _violation(
        frame_to_json(F),
        law=law.name,
        condition=cid,
        law_holds=law_ok,
        condition_holds=cond_ok,
        law_witness=None if law_ok else decode_assignment(law, m, first),
        condition_witness=None if cond_ok else check_condition(F, cid).to_json().get("witness"),
    )


def sampled_index(spec: CampaignSpec, P: Poset, x: ModalSymbol, y: ModalSymbol, total: int) -> np.ndarray:
    seed = int.from_bytes(hashlib.sha256(f"{spec.seed}:{P.up}:{x}:{y}".encode()).digest()[:8], "little")
    k = min(total, spec.samples)
    return np.sort(np.random.default_rng(seed).choice(total, size=k, replace=False))


def _sweep_run(spec: CampaignSpec, unit) -> UnitResult:
    if unit[0] == "slice":
        _, P, x, y, start, stop = unit
        items = _pair_items(spec, x, y)
        n, viol = sweep_pairs(P, x, y, items, np.arange(start, stop, dtype=np.int64))
        return UnitResult(n, n * len(items), viol)
    if unit[0] == "sample":
        _, P, x, y, total = unit
        items = _pair_items(spec, x, y)
        index = sampled_index(spec, P, x, y, total)
        n, viol = sweep_pairs(P, x, y, items, index)
        note = f"frames above pair_cap sampled: {x},{y} on a {P.size}-point poset, {n} of {total}"
        return UnitResult(n, n * len(items), viol, [note], total - n)
    _, x, y, block, count = unit
    rng = _rng(spec, x.name, y.name, block)
    items = _pair_items(spec, x, y)
    res = UnitResult()
    for _ in range(count):
        n = rng.randint(1, spec.max_poset)
        F = random_frame(rng, (x, y), n)
        A = complex_algebra(F)
        res.instances += 1
        for law, cid in items:
            res.checks += 1
            r = holds(law, A)
            c = check_condition(F, cid)
            if r.ok != c.ok:
                res.violations.append(
                    _violation(frame_to_json(F), law=law.name, condition=cid, law_holds=r.ok,
                               condition_holds=c.ok, law_witness=r.witness,
                               condition_witness=c.to_json().get("witness"))
                )
            if cid.kind == LOCALITY_PAIR and not cid.symbols[0].is_forward:
                other = check_locality_via_converse(F, cid)
                if other.ok != c.ok:
                    res.violations.append(
                        _violation(frame_to_json(F), condition=cid, route="converse frame",
                                   condition_holds=c.ok, converse_holds=other.ok)
                    )
    return res


def _needs_pair(spec: CampaignSpec) -> None:
    if len(spec.signature) < 2:
        raise CampaignError(f"{spec.target} needs at least two symbols")
    if spec.target == "self-test" and not {DIA_POS, BOX_POS} <= set(spec.signature):
        raise CampaignError("self-test mutates the (dia+,box+) quasiequation; include dia+ and box+")
    if spec.mode == "exhaustive":
        cap = spec.pair_cap or POPULATION_CEILING
        rows = sum(
            min(cap, len(delta_codes(P, x)) * len(delta_codes(P, y)))
            for P in all_posets(spec.max_poset)
            for x, y in _pairs_in(spec.signature)
        )
        if rows > POPULATION_CEILING:
            raise CampaignError(f"the sweep covers {rows} frames; set pair_cap or lower max_poset")


# ---------------------------------------------------------------------------
# unimodality versus the pairwise conditions


def _unimodal_units(spec: CampaignSpec) -> list:
    if spec.mode == "random":
        return [("random", b, k) for b, k in _blocks(spec)]
    return [("poset", P) for P in all_posets(spec.max_poset)]


def conditions_between(sig: Sequence[ModalSymbol], new: ModalSymbol) -> list[FrameConditionId]:
    """Pair conditions linking ``new`` with the symbols in ``sig``."""
    out = []
    for s in sig:
        for a, b in ((s, new), (new, s)):
            out.append(FrameConditionId(UNIMODAL, (a, b)))
    return out


def unimodal_vs_conditions(P: Poset, signature: Sequence[ModalSymbol]) -> UnitResult:
    """Exhaustive comparison of unimodality and the pair conditions on one poset.

    (a) Every unimodal frame is the closure frame of its generating relation,
    so looping over all relations R covers them; each must pass every
    condition.  (b) Frames passing every condition are found by extending
    partial frames one symbol at a time and keeping only extensions that
    pass the conditions among the symbols chosen so far; a frame that fails
    a condition on some pair is dropped exactly when that pair is complete.
    Every survivor must be unimodal.
    """
    kit = poset_kit(P)
    sig = sorted_symbols(signature)
    res = UnitResult()
    total = 1
    for s in sig:
        total *= len(delta_codes(P, s))
    res.instances = total
    ids = applicable_unimodal_ids(sig)
    # (a)
    R = np.arange(1 << kit.nn, dtype=np.int64)
    closed = {s: kit.closure(R, s) for s in sig}
    for cid in ids:
        ok = kit.condition(cid, closed)
        res.checks += len(R)
        for i in np.nonzero(~ok)[0][:5]:
            F = _pair_frame(P, {s: closed[s][i] for s in sig})
            res.violations.append(
                _violation(frame_to_json(F), unimodal=True, condition=cid, condition_holds=False,
                           condition_witness=check_condition(F, cid).to_json().get("witness"))
            )
    # (b)
    survivors = delta_codes(P, sig[0])[:, None]
    for t in range(1, len(sig)):
        new = sig[t]
        bank = delta_codes(P, new)
        # inclusions first; the existential conditions only see what is left
        conds = sorted(conditions_between(sig[:t], new), key=lambda c: c.problematic)
        kept = []
        for row in survivors:
            hit = bank
            for cid in conds:
                rels = {s: np.int64(row[j]) for j, s in enumerate(sig[:t])}
                rels[new] = hit
                hit = hit[kit.condition(cid, rels)]
                if not len(hit):
                    break
            res.checks += len(bank)
            if len(hit):
                kept.append(np.column_stack([np.broadcast_to(row, (len(hit), t)), hit]))
        survivors = np.concatenate(kept) if kept else np.zeros((0, t + 1), dtype=np.int64)
    rels = {s: survivors[:, j] for j, s in enumerate(sig)}
    uni = kit.unimodal(rels) if len(sig) else np.ones(0, bool)
    for i in np.nonzero(~uni)[0][:5]:
        F = _pair_frame(P, {s: rels[s][i] for s in sig})
        res.violations.append(
            _violation(frame_to_json(F), unimodal=False, all_conditions=True,
                       unimodal_witness=is_unimodal(F).to_json().get("witness"))
        )
    res.notes.append("finite frames are minimally generated; checked on every relation of every poset")
    for s in sig:
        codes = delta_codes(P, s)
        good = kit.minimally_generated(codes, s) & kit.minimally_generated(codes, s, True)
        for c in codes[~good][:5]:
            F = ModalFrame(P, {s: Relation.from_code(P.size, int(c))})
            res.violations.append(_violation(frame_to_json(F), minimally_generated=False))
    return res


def _unimodal_run(spec: CampaignSpec, unit) -> UnitResult:
    if unit[0] == "poset":
        return unimodal_vs_conditions(unit[1], spec.signature)
    _, block, count = unit
    rng = _rng(spec, block)
    res = UnitResult()
    for _ in range(count):
        F = random_frame(rng, spec.signature, rng.randint(1, spec.max_poset))
        res.instances += 1
        res.checks += 1
        u = is_unimodal(F).ok
        c = all(check_condition(F, cid).ok for cid in applicable_unimodal_ids(F.signature))
        if u != c:
            res.violations.append(_violation(frame_to_json(F), unimodal=u, all_conditions=c))
    return res


# ---------------------------------------------------------------------------
# locality decomposition


def _decomposition_units(spec: CampaignSpec) -> list:
    if spec.mode == "random":
        return [("random", b, k) for b, k in _blocks(spec)]
    return [("poset", P) for P in all_posets(spec.max_poset)]


def _single_ids(sig) -> list[FrameConditionId]:
    out = [FrameConditionId(FORWARD_LOCALITY, (s,)) for s in sig]
    out += [FrameConditionId(BACKWARD_LOCALITY, (s.adjoint(),)) for s in sig]
    return [c for c in out if locality_partners(c, sig)]


def _decomposition_run(spec: CampaignSpec, unit) -> UnitResult:
    sig = spec.signature
    res = UnitResult()
    if unit[0] == "poset":
        P = unit[1]
        kit = poset_kit(P)
        R = np.arange(1 << kit.nn, dtype=np.int64)
        rels = {s: kit.closure(R, s) for s in sig}
        res.instances = len(R)
        for cid in _single_ids(sig):
            single = kit.condition(cid, rels)
            parts = np.ones(len(R), dtype=bool)
            for pid in locality_partners(cid, sig):
                parts &= kit.condition(pid, rels)
            res.checks += len(R)
            for i in np.nonzero(single != parts)[0][:5]:
                F = _pair_frame(P, {s: rels[s][i] for s in sig})
                res.violations.append(
                    _violation(frame_to_json(F), condition=cid, single=bool(single[i]), partners=bool(parts[i]))
                )
        return res
    _, block, count = unit
    rng = _rng(spec, block)
    for _ in range(count):
        F = random_frame(rng, sig, rng.randint(1, spec.max_poset), common_seed=True)
        res.instances += 1
        for cid in _single_ids(sig):
            res.checks += 1
            single = check_condition(F, cid).ok
            parts = all(check_condition(F, pid).ok for pid in locality_partners(cid, sig))
            if single != parts:
                res.violations.append(_violation(frame_to_json(F), condition=cid, single=single, partners=parts))
    return res


# ---------------------------------------------------------------------------
# algebra populations


@dataclass
class AlgebraBatch:
    """Algebras sharing one lattice, with tables stacked as (N, m) arrays."""

    lattice: DistLattice
    ops: dict[ModalSymbol, np.ndarray]
    source: str
    poset: Poset | None = None
    codes: dict[ModalSymbol, np.ndarray] | None = None

    def __len__(self) -> int:
        return len(next(iter(self.ops.values()))) if self.ops else 1

    def algebra(self, i: int) -> ModalAlgebra:
        return ModalAlgebra(
            self.lattice, {s: tuple(int(x) for x in t[i]) for s, t in self.ops.items()}, frozenset({"impl", "sub"})
        )

    def frame(self, i: int) -> ModalFrame:
        assert self.poset is not None and self.codes is not None
        return _pair_frame(self.poset, {s: c[i] for s, c in self.codes.items()})

    def instance(self, i: int) -> dict:
        if self.codes is not None:
            return {"frame": frame_to_json(self.frame(i)), "algebra": algebra_to_json(self.algebra(i))}
        return {"algebra": algebra_to_json(self.algebra(i))}

    def holds(self, law: Law) -> np.ndarray:
        ok, _ = holds_batch(law, self.lattice, {s: self.ops[s] for s in law.symbols()}, chunk=2048)
        return ok


def _population_units(spec: CampaignSpec) -> list:
    units: list = []
    if "tables" in spec.population:
        units += [("tables", i) for i in range(len(lattices_up_to(spec.max_lattice)))]
    if "frames" in spec.population:
        for P in all_posets(spec.max_poset):
            total = _frame_count(P, spec.signature)
            if spec.pair_cap is not None and total > spec.pair_cap:
                units.append(("frames-sample", P, total))
            else:
                units.append(("frames", P))
    if "random" in spec.population:
        units += [("random", b, k) for b, k in _blocks(spec)]
    return units


def _frame_count(P: Poset, sig) -> int:
    total = 1
    for s in sig:
        total *= len(delta_codes(P, s))
    return total


def _product_batches(
    lat, banks: list[np.ndarray], sig, source, poset=None, codes=None, index: np.ndarray | None = None
) -> Iterator[AlgebraBatch]:
    sizes = [len(b) for b in banks]
    total = int(np.prod(sizes)) if sizes else 1
    if index is None:
        index = np.arange(total, dtype=np.int64)
    for start in range(0, len(index), BATCH_ROWS):
        flat = index[start : start + BATCH_ROWS]
        idx = np.unravel_index(flat, sizes) if sizes else ()
        ops = {s: b[i] for s, b, i in zip(sig, banks, idx)}
        cs = {s: c[i] for s, c, i in zip(sig, codes, idx)} if codes is not None else None
        yield AlgebraBatch(lat, ops, source, poset, cs)


def population_batches(spec: CampaignSpec, unit) -> Iterator[AlgebraBatch]:
    sig = spec.signature
    if unit[0] == "tables":
        P, U = lattices_up_to(spec.max_lattice)[unit[1]]
        banks = [np.array(operator_tables(U.lattice, s), dtype=np.int16).reshape(-1, U.lattice.size) for s in sig]
        yield from _product_batches(U.lattice, banks, sig, "tables")
    elif unit[0] in ("frames", "frames-sample"):
        P = unit[1]
        kit = poset_kit(P)
        banks = [np.asarray(delta_tables(P, s)) for s in sig]
        codes = [np.asarray(delta_codes(P, s)) for s in sig]
        index = None
        if unit[0] == "frames-sample":
            index = sampled_index(spec, P, sig[0], sig[-1], unit[2])
        yield from _product_batches(kit.lattice, banks, sig, "frames", P, codes, index)
    else:
        _, block, count = unit
        rng = _rng(spec, "population", block)
        for _ in range(count):
            A = random_algebra(rng, sig, spec.max_poset)
            yield AlgebraBatch(A.lattice, {s: np.array([t], dtype=np.int16) for s, t in A.ops.items()}, "random")


def _algebra_target(per_batch: Callable[[CampaignSpec, AlgebraBatch, UnitResult], None]):
    def run(spec: CampaignSpec, unit) -> UnitResult:
        res = UnitResult()
        for batch in population_batches(spec, unit):
            res.instances += len(batch)
            per_batch(spec, batch, res)
        if unit[0] == "frames-sample":
            res.skipped += unit[2] - res.instances
            res.notes.append(
                f"frames above pair_cap sampled on a {unit[1].size}-point poset: {res.instances} of {unit[2]}"
            )
        return res

    return run


@dataclass
class CanonicalBatch:
    """Canonical frames of every algebra in a batch, as relation codes."""

    poset: Poset
    codes: dict[ModalSymbol, np.ndarray]
    eta: np.ndarray


def canonical_batch(batch: AlgebraBatch) -> CanonicalBatch:
    """Prime filters depend only on the lattice, so a batch shares one filter
    poset and each relation clause is a reduction over the operator tables."""
    L = batch.lattice
    filters = prime_filters(L)
    k = len(filters)
    up = tuple(sum(1 << j for j in range(k) if filters[i] & ~filters[j] == 0) for i in range(k))
    member = np.zeros((k, L.size), dtype=bool)
    for i, f in enumerate(filters):
        member[i] = [f >> a & 1 for a in range(L.size)]
    codes = {}
    for s, T in batch.ops.items():
        inU = member[:, T.astype(np.int64)]
        base = s.base()
        code = np.zeros(len(T), dtype=np.int64)
        for i in range(k):
            u = inU[i]
            for j in range(k):
                v = member[j]
                if base == BOX_POS:
                    bad = u & ~v
                elif base == BOX_NEG:
                    bad = u & v
                elif base == DIA_POS:
                    bad = v & ~u
                else:
                    bad = ~v & ~u
                code |= (~bad.any(axis=1)).astype(np.int64) << (i * k + j)
        codes[s] = code
    eta = np.array([sum(1 << i for i, f in enumerate(filters) if f >> a & 1) for a in range(L.size)], dtype=np.int64)
    return CanonicalBatch(Poset(k, up), codes, eta)


def _batched(batch: AlgebraBatch) -> CanonicalBatch | None:
    """The batched canonical frames, checked against the direct construction
    on the first algebra; None when the filter poset is too big for codes."""
    if len(prime_filters(batch.lattice)) > CODE_CEILING:
        return None
    cb = canonical_batch(batch)
    F = canonical_frame(batch.algebra(0))
    for s, c in cb.codes.items():
        if Relation.from_code(cb.poset.size, int(c[0])) != F[s] or F.poset != cb.poset:
            raise InternalInconsistency(f"batched canonical frame differs from the direct one at {s}")
    return cb


def _canonicity(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    ok = np.ones(len(batch), dtype=bool)
    for cid in applicable_unimodal_ids(spec.signature):
        ok &= batch.holds(quasi_law(cid.symbols))
    chosen = np.nonzero(ok)[0]
    res.checks += len(chosen)
    cb = _batched(batch)
    if cb is None:
        bad = [i for i in chosen if not is_unimodal(canonical_frame(batch.algebra(i))).ok]
    else:
        kit = poset_kit(cb.poset)
        uni = kit.unimodal({s: c[chosen] for s, c in cb.codes.items()})
        bad = chosen[~uni]
    for i in bad:
        r = is_unimodal(canonical_frame(batch.algebra(i)))
        res.violations.append(_violation(batch.instance(i), canonical_frame_unimodal=r.ok,
                                         witness=r.to_json().get("witness")))


def _star_ids(sig) -> list[FrameConditionId]:
    return [cid for cid in LOCALITY_PAIR_IDS if applicable(cid, sig)]


def _locality_canonicity(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    cb = _batched(batch)
    for cid in _star_ids(spec.signature):
        chosen = np.nonzero(batch.holds(star_law(cid.symbols)))[0]
        res.checks += len(chosen)
        if cb is None:
            bad = [i for i in chosen if not check_condition(canonical_frame(batch.algebra(i)), cid).ok]
        else:
            kit = poset_kit(cb.poset)
            good = kit.condition(cid, {s: c[chosen] for s, c in cb.codes.items()})
            bad = chosen[~good]
        for i in bad:
            r = check_condition(canonical_frame(batch.algebra(i)), cid)
            res.violations.append(_violation(batch.instance(i), axiom=cid, canonical_condition=r.ok,
                                             witness=r.to_json().get("witness")))


def _embedding_one(batch: AlgebraBatch, i: int, res: UnitResult) -> None:
    A = batch.algebra(i)
    try:
        B, h = canonical_extension(A)
    except InternalInconsistency as e:
        res.violations.append(_violation(batch.instance(i), embedding=False, detail=str(e)))
        return
    if sorted(h) != list(range(B.size)):
        res.violations.append(_violation(batch.instance(i), embedding=True, isomorphism=False,
                                         extension_size=B.size))


def _embedding(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    res.checks += len(batch)
    cb = _batched(batch)
    if cb is None:
        for i in range(len(batch)):
            _embedding_one(batch, i, res)
        return
    # the lattice part of eta is shared by the batch; check it in full once
    _embedding_one(batch, 0, res)
    kit = poset_kit(cb.poset)
    h = kit.index[cb.eta].astype(np.int64)
    if (h < 0).any() or sorted(h.tolist()) != list(range(kit.lattice.size)):
        res.violations.append(_violation(batch.instance(0), embedding=False, detail="eta is not onto the upsets"))
        return
    ok = np.ones(len(batch), dtype=bool)
    for s, c in cb.codes.items():
        ok &= kit.closure(c, s) == c
        tb = kit.op_tables(c, s)
        ok &= (tb[:, h] == h[batch.ops[s].astype(np.int64)]).all(axis=1)
    for i in np.nonzero(~ok)[0][:5]:
        _embedding_one(batch, int(i), res)
        if not res.violations:
            res.violations.append(_violation(batch.instance(int(i)), embedding=False,
                                             detail="batched check disagrees with the direct one"))


def _minimal_generation(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    for i in range(len(batch)):
        F = canonical_frame(batch.algebra(i))
        res.checks += 1
        for comp in (False, True):
            r = is_minimally_generated(F, comp)
            if not r.ok:
                res.violations.append(_violation(batch.instance(i), componentwise=comp,
                                                 witness=r.to_json().get("witness")))


def _equational_forms(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    for cid in applicable_unimodal_ids(spec.signature):
        q = batch.holds(quasi_law(cid.symbols))
        e = batch.holds(equational_law(cid.symbols))
        res.checks += len(batch)
        for i in np.nonzero(q != e)[0]:
            res.violations.append(_violation(batch.instance(i), pair=cid, quasi=bool(q[i]), equational=bool(e[i])))


def _star_implies_plain(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    for cid in _star_ids(spec.signature):
        star = batch.holds(star_law(cid.symbols))
        plain_pair = plain_counterpart(cid.symbols)
        plain = batch.holds(quasi_law(plain_pair))
        res.checks += len(batch)
        for i in np.nonzero(star & ~plain)[0]:
            res.violations.append(_violation(batch.instance(i), axiom=cid,
                                             plain=f"q:({plain_pair[0]},{plain_pair[1]})"))


def positivity_laws(sig) -> list[Law]:
    """The laws whose conjunction is positivity, for a forward signature."""
    laws = []
    for s in sig:
        for pid in locality_partners(FrameConditionId(FORWARD_LOCALITY, (s,)), sig):
            laws.append(star_law(pid.symbols))
    laws += [quasi_law((x, y)) for x in sig for y in sig if x != y and x.shape == y.shape]
    return laws


def _boolean(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    """Positivity is decided for the whole batch; the full check runs on every
    positive algebra and on the first non-positive one, whose verdict must
    match the batched one."""
    positive = np.ones(len(batch), dtype=bool)
    for law in positivity_laws(sorted_symbols(batch.ops)):
        positive &= batch.holds(law)
    res.checks += len(batch)
    chosen = list(np.nonzero(positive)[0])
    rest = np.nonzero(~positive)[0]
    if len(rest):
        chosen.append(rest[0])
    for i in chosen:
        r = boolean_extension_check(batch.algebra(int(i)))
        if not r.ok or r.positive != bool(positive[i]) or (not r.positive and r.failed_condition is None):
            res.violations.append(_violation(batch.instance(int(i)), batched_positive=bool(positive[i]),
                                             report=r.to_json()))


# symmetry ------------------------------------------------------------------


def _complement_map(A: ModalAlgebra, filters: list[int]) -> list[int] | None:
    """Prime filters of the order dual are the complements of prime filters."""
    full = (1 << A.size) - 1
    dual = prime_filters(A.lattice.dual())
    pos = {f: i for i, f in enumerate(dual)}
    try:
        return [pos[full & ~f] for f in filters]
    except KeyError:
        return None


def _same_frame(F: ModalFrame, G: ModalFrame, h: Sequence[int]) -> str | None:
    n = F.size
    if G.size != n or set(F.relations) != set(G.relations):
        return "different size or signature"
    for u in range(n):
        for v in range(n):
            if F.poset.le(u, v) != G.poset.le(h[u], h[v]):
                return f"order differs at ({u}, {v})"
    for s, r in F.relations.items():
        for u in range(n):
            for v in range(n):
                if ((u, v) in r) != ((h[u], h[v]) in G[s]):
                    return f"{s} differs at ({u}, {v})"
    return None


def _symmetry_algebra(A: ModalAlgebra) -> list[str]:
    problems = []
    F = canonical_frame(A)
    filters = prime_filters(A.lattice)
    h = _complement_map(A, filters)
    if h is None:
        problems.append("complements of prime filters are not the prime filters of the dual")
    else:
        why = _same_frame(order_dual_frame(F), canonical_frame(order_dual_algebra(A)), h)
        if why:
            problems.append(f"order dual: {why}")
    try:
        G = canonical_frame(adjoint_algebra(A))
    except FrameError as e:
        problems.append(f"converse: canonical frame of the adjoint algebra is not tense: {e}")
    else:
        why = _same_frame(converse_frame(F), G, list(range(F.size)))
        if why:
            problems.append(f"converse: {why}")
    return problems


def _symmetry_frames(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    P = batch.poset
    kit, dkit = poset_kit(P), poset_kit(P.dual())
    full = kit.full
    h = np.array([int(dkit.index[full & ~m]) for m in kit.masks], dtype=np.int16)
    if (h < 0).any() or len(set(h.tolist())) != len(h):
        res.violations.append(_violation({"poset": P.up}, detail="complement is not a bijection onto dual upsets"))
        return
    la, lb = kit.lattice.dual(), dkit.lattice
    if any(la.le(a, b) != lb.le(int(h[a]), int(h[b])) for a in range(la.size) for b in range(la.size)):
        res.violations.append(_violation({"poset": P.up}, detail="complement does not preserve the order"))
        return
    for s, T in batch.ops.items():
        res.checks += len(batch)
        codes = batch.codes[s]
        D = dkit.op_tables(codes, s.opposite())
        bad = np.nonzero(~np.all(D[:, h] == h[T], axis=1))[0]
        for i in bad[:5]:
            res.violations.append(_violation(batch.instance(i), symmetry="order dual", symbol=s))
        conv = kit.op_tables(kit.converse[codes], s.adjoint())
        adj = batch_adjoint(kit.lattice, s, T)
        for i in np.nonzero(~np.all(conv == adj, axis=1))[0][:5]:
            res.violations.append(_violation(batch.instance(i), symmetry="converse", symbol=s))


def _symmetry(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    if batch.codes is not None:
        _symmetry_frames(spec, batch, res)
        return
    for i in range(len(batch)):
        res.checks += 1
        for p in _symmetry_algebra(batch.algebra(i)):
            res.violations.append(_violation(batch.instance(i), symmetry=p))


# adjoint transfer ----------------------------------------------------------


def _backward_star_ids(sig) -> list[FrameConditionId]:
    return [c for c in _star_ids(sig) if not c.symbols[0].is_forward]


def _adjoint_transfer(spec, batch: AlgebraBatch, res: UnitResult) -> None:
    """Backward locality on the tense complex algebra versus forward locality on its adjoint.

    The adjoint algebra's forward operators are the backward operators of the
    tense complex algebra, which are read off the converse relations.
    """
    if batch.codes is None:
        from .logic.checks import adjoint_transfer_check
        from .algebra import tense_completion as tense_algebra

        for i in range(len(batch)):
            A = tense_algebra(batch.algebra(i))
            for cid in _backward_star_ids(spec.signature):
                res.checks += 1
                r = adjoint_transfer_check(A, cid.symbols)
                if not r.ok:
                    res.violations.append(_violation(batch.instance(i), axiom=cid, here=r.first, adjoint=r.second))
        return
    kit = poset_kit(batch.poset)
    for cid in _backward_star_ids(spec.signature):
        here = batch.holds(star_law(cid.symbols))
        fwd = tuple(s.reversed() for s in cid.symbols)
        ops = {}
        for t in fwd:
            src = t.reversed().adjoint()
            ops[t] = kit.op_tables(kit.converse[batch.codes[src]], t)
        there, _ = holds_batch(star_law(fwd), kit.lattice, ops, chunk=2048)
        res.checks += len(batch)
        for i in np.nonzero(here != there)[0]:
            res.violations.append(_violation(batch.instance(i), axiom=cid, here=bool(here[i]), adjoint=bool(there[i])))
        if len(batch):
            # replay the first instance through the scalar route as a cross-check
            from .logic.checks import adjoint_transfer_check

            A = complex_algebra(tense_completion(batch.frame(0)))
            r = adjoint_transfer_check(A, cid.symbols)
            if r.first != bool(here[0]) or r.second != bool(there[0]):
                res.violations.append(_violation(batch.instance(0), axiom=cid, detail="scalar route disagrees"))


# completeness --------------------------------------------------------------


def random_term(rng: random.Random, symbols: Sequence[ModalSymbol], depth: int, names=("a", "b")):
    if depth <= 0 or rng.random() < 0.25:
        return Var(rng.choice(names))
    r = rng.random()
    if r < 0.5 and symbols:
        return Un(rng.choice(list(symbols)), random_term(rng, symbols, depth - 1, names))
    op = "and" if r < 0.75 else "or"
    return Bin(op, random_term(rng, symbols, depth - 1, names), random_term(rng, symbols, depth - 1, names))


def completeness_laws(spec: CampaignSpec) -> list[Law]:
    sig = spec.signature
    laws = [quasi_law(c.symbols) for c in applicable_unimodal_ids(sig)]
    laws += [star_law(c.symbols) for c in _star_ids(sig)]
    rng = random.Random(f"{spec.seed}:laws")
    for k in range(spec.laws):
        lhs, rhs = random_term(rng, sig, 3), random_term(rng, sig, 3)
        laws.append(Law((), Atom("<=", lhs, rhs), f"random:{k}"))
    return laws


def _frame_failures(spec: CampaignSpec, laws: list[Law]) -> list[bool]:
    """Which laws fail on the complex algebra of some unimodal frame of size <= max_poset."""
    fails = [False] * len(laws)
    sig = spec.signature
    for P in all_posets(spec.max_poset):
        kit = poset_kit(P)
        R = np.arange(1 << kit.nn, dtype=np.int64)
        rels = {s: kit.closure(R, s) for s in sig}
        stacked = np.stack([rels[s] for s in sig], axis=1)
        uniq = np.unique(stacked, axis=0)
        ops = {s: kit.op_tables(uniq[:, j], s) for j, s in enumerate(sig)}
        for k, law in enumerate(laws):
            if not fails[k]:
                ok, _ = holds_batch(law, kit.lattice, {s: ops[s] for s in law.symbols()}, chunk=2048)
                fails[k] = not ok.all()
    return fails


def _completeness_run(spec: CampaignSpec, unit) -> UnitResult:
    laws = completeness_laws(spec)
    frame_fail = _frame_failures(spec, laws)
    res = UnitResult()
    res.notes.append(
        f"unimodal algebras with at most {spec.max_poset} prime filters are compared against unimodal frames "
        f"with at most {spec.max_poset} points"
    )
    for batch in population_batches(spec, unit):
        if len(prime_filters(batch.lattice)) > spec.max_poset:
            continue
        ok = np.ones(len(batch), dtype=bool)
        for cid in applicable_unimodal_ids(spec.signature):
            ok &= batch.holds(quasi_law(cid.symbols))
        res.instances += int(ok.sum())
        for k, law in enumerate(laws):
            verdict = batch.holds(law)
            res.checks += int(ok.sum())
            bad = np.nonzero(ok & ~verdict)[0]
            if len(bad) and not frame_fail[k]:
                res.violations.append(_violation(batch.instance(int(bad[0])), law=law.name, text=str(law),
                                                 fails_on_algebra=True, fails_on_some_frame=False))
    return res


# ---------------------------------------------------------------------------
# problematic pairs: finite evidence


def find_problematic_gap(signature: Sequence[ModalSymbol], n: int, depth: int) -> dict:
    """Finite search for frames passing every pair condition but not unimodal,
    plus the staged construction around the example frame.

    No finite search can exhibit the infinite counterexample; the staged
    prefix is evidence only.
    """
    sig = sorted_symbols(signature)
    pairs = problematic_pairs(sig)
    if not pairs:
        raise CampaignError("the signature has no problematic pair (a box and diamond of one polarity)")
    counter = UnitResult()
    for P in all_posets(n):
        counter.add(unimodal_vs_conditions(P, sig))
    F0 = example_frame()
    stages = staged_frame_construction(F0, depth)
    base = {f"({x},{y})": len(F0[x] & F0[y]) for x, y in pairs if x in F0.relations and y in F0.relations}
    report_stages = []
    constant = True
    for k, F in enumerate(stages):
        inter = {f"({x},{y})": len(F[x] & F[y]) for x, y in pairs if x in F.relations and y in F.relations}
        constant &= inter == base
        entry: dict = {
            "stage": k,
            "points": F.size,
            "edges": {s.name: len(F[s]) for s in F.signature},
            "intersection": inter,
            "conditions_hold": {str(c): check_condition(F, c).ok for c in applicable_unimodal_ids(F.signature)},
        }
        if k:
            prev = stages[k - 1]
            entry["earlier_pairs_repaired"] = _earlier_repaired(prev, F, odd=bool(k % 2))
        report_stages.append(entry)
    return {
        "signature": [s.name for s in sig],
        "max_points": n,
        "frames_checked": counter.instances,
        "finite_counterexamples": len(counter.violations),
        "counterexamples": counter.violations,
        "depth": depth,
        "stages": report_stages,
        "intersection_constant": constant,
        "note": "only a finite prefix of the construction is built; the infinite limit is not checked",
    }


def _earlier_repaired(prev: ModalFrame, F: ModalFrame, odd: bool) -> dict:
    out = {}
    if odd:
        for x, y in problematic_pairs(F.signature):
            out[f"({x},{y})"] = all(pair_witnessed(F, x, y, u, v) for u, v in prev[x].pairs())
        return out
    for cid in applicable_unimodal_ids(F.signature):
        if cid.problematic:
            continue
        x, y = cid.symbols
        both = F[x] & F[y]
        covered = compose(both, _right(F.poset, x)) if x.shape == y.shape else compose(_left(F.poset, x), both)
        out[str(cid)] = all((u, v) in covered for u, v in prev[x].pairs())
    return out


def _gap_units(spec: CampaignSpec) -> list:
    return [("gap",)]


def _gap_run(spec: CampaignSpec, unit) -> UnitResult:
    rep = find_problematic_gap(spec.signature, spec.max_poset, spec.depth)
    res = UnitResult(rep["frames_checked"], len(rep["stages"]), list(rep["counterexamples"]))
    if not rep["intersection_constant"]:
        res.violations.append({"instance": None, "detail": "problematic intersection changed", "stages": rep["stages"]})
    for st in rep["stages"]:
        if st["stage"] and not all(st["earlier_pairs_repaired"].values()):
            res.violations.append({"instance": None, "detail": "earlier pairs not repaired", "stage": st})
    res.notes.append(rep["note"])
    return res


def _gap_check(spec: CampaignSpec) -> None:
    if not problematic_pairs(spec.signature):
        raise CampaignError("problematic-gap needs a box and a diamond of the same polarity")
    if spec.mode != "exhaustive":
        raise CampaignError("problematic-gap is exhaustive only")


POPULATION_CEILING = 10**9


def _needs_population(spec: CampaignSpec) -> None:
    if "frames" in spec.population:
        cap = spec.pair_cap or POPULATION_CEILING
        rows = sum(min(cap, _frame_count(P, spec.signature)) for P in all_posets(spec.max_poset))
        if rows > POPULATION_CEILING:
            raise CampaignError(f"the frame population has {rows} members; set pair_cap or lower the bounds")


# ---------------------------------------------------------------------------
# registry


def _alg(fn, check=_needs_population, note=""):
    return dict(units=_population_units, run=_algebra_target(fn), check=check, note=note)


TARGETS: dict[str, Target] = {
    t.name: t
    for t in [
        Target("correspondence", _sweep_units, _sweep_run, _needs_pair,
               "each pair quasiequation versus its frame condition; signatures are checked pair by pair"),
        Target("locality-correspondence", _sweep_units, _sweep_run, _needs_pair,
               "each locality equation versus its frame condition"),
        Target("self-test", _sweep_units, _sweep_run, _needs_pair,
               "premise of (dia+,box+) dropped; violations are the expected outcome"),
        Target("unimodal-conditions", _unimodal_units, _unimodal_run),
        Target("locality-decomposition", _decomposition_units, _decomposition_run),
        Target("canonicity", **_alg(_canonicity)),
        Target("locality-canonicity", **_alg(_locality_canonicity)),
        Target("canonical-embedding", **_alg(_embedding)),
        Target("canonical-minimal-generation", **_alg(_minimal_generation)),
        Target("equational-forms", **_alg(_equational_forms)),
        Target("star-implies-plain", **_alg(_star_implies_plain)),
        Target("positive-boolean", **_alg(_boolean)),
        Target("symmetry", **_alg(_symmetry)),
        Target("adjoint-transfer", **_alg(_adjoint_transfer)),
        Target("completeness", _population_units, _completeness_run, _needs_population),
        Target("problematic-gap", _gap_units, _gap_run, _gap_check),
    ]
}
