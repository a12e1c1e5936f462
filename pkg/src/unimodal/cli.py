"""Command-line interface.

Objects are read and written in the JSON formats of :mod:`unimodal.io`.
Results go to stdout as JSON, prose to stderr.  Exit codes: 0 pass,
1 a check failed or a campaign found violations, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import (
    LatticeError,
    ModalAlgebra,
    adjoint_algebra,
    check_operator_laws,
    order_dual_algebra,
    tense_completion as tense_algebra,
)
from .campaigns import CampaignError, CampaignSpec, run_campaign
from .duality import PreconditionError, boolean_extension_check, canonical_extension, canonical_frame
from .frames import (
    FrameConditionId,
    FrameError,
    InapplicableCondition,
    ModalFrame,
    check_condition,
    complex_algebra,
    converse_frame,
    order_dual_frame,
)
from .io import FormatError, loads, to_json
from .logic.catalog import axiom_catalog, catalog_ids, normalize_id
from .logic.parser import ParseError, parse_law_file
from .logic.semantics import MissingConnective, holds
from .logic.syntax import format_law
from .order import OrderError, Poset

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _load(path: str, *kinds: type):
    try:
        obj = loads(_read(path))
    except FormatError as e:
        raise UsageError(f"{path}: {e}") from None
    if kinds and not isinstance(obj, kinds):
        want = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected {want}, got {type(obj).__name__}")
    return obj


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _line_col(text: str, pos: int) -> tuple[int, int]:
    head = text[:pos]
    return head.count("\n") + 1, pos - (head.rfind("\n") + 1) + 1


# subcommands


def cmd_check_frame(args) -> int:
    try:
        cid = FrameConditionId.parse(args.condition)
    except ValueError as e:
        raise UsageError(f"--condition: {e}") from None
    F = _load(args.frame, ModalFrame)
    r = check_condition(F, cid)
    _emit({"condition": str(cid), **r.to_json()})
    _say(f"{cid}: {'holds' if r.ok else 'fails'}" + (f" (witness {r.to_json()['witness']})" if not r.ok else ""))
    return EXIT_PASS if r.ok else EXIT_FAIL


def _laws(spec: str):
    try:
        return [axiom_catalog(spec)]
    except KeyError:
        pass
    try:
        text = _read(spec)
    except UsageError:
        raise UsageError(f"--law: {spec!r} is neither a catalog id nor a readable file") from None
    try:
        laws = parse_law_file(text)
    except ParseError as e:
        line, col = _line_col(text, e.position)
        msg = str(e).rsplit(" at position", 1)[0]
        raise UsageError(f"{spec}:{line}:{col}: {msg}") from None
    if not laws:
        raise UsageError(f"{spec}: no laws found")
    return laws


def cmd_check_law(args) -> int:
    laws = _laws(args.law)
    A = _load(args.algebra, ModalAlgebra)
    out = []
    for law in laws:
        r = holds(law, A)
        out.append({"law": law.name, "text": format_law(law), "pass": r.ok, "witness": r.witness})
        _say(f"{law.name or format_law(law)}: {'holds' if r.ok else 'fails at ' + r.witness_text()}")
    _emit(out if len(out) > 1 else out[0])
    return EXIT_PASS if all(o["pass"] for o in out) else EXIT_FAIL


def cmd_complex(args) -> int:
    F = _load(args.frame, ModalFrame)
    A = complex_algebra(F)
    _emit(to_json(A))
    _say(f"complex algebra with {A.size} elements")
    return EXIT_PASS


def _checked_algebra(path: str) -> ModalAlgebra:
    A = _load(path, ModalAlgebra)
    rep = check_operator_laws(A)
    if rep.violations:
        v = rep.violations[0]
        raise UsageError(f"{path}: operator laws fail: {v.law} at {list(v.witness)}")
    return A


def cmd_canonical_frame(args) -> int:
    A = _checked_algebra(args.algebra)
    F = canonical_frame(A, trace=_say if args.trace else None)
    _emit(to_json(F))
    _say(f"canonical frame with {F.size} points")
    return EXIT_PASS


def cmd_canonical_extension(args) -> int:
    A = _checked_algebra(args.algebra)
    B, h = canonical_extension(A)
    _emit({**to_json(B), "eta": h})
    _say(f"eta embeds {A.size} elements into {B.size}" + (" (isomorphism)" if B.size == A.size else ""))
    return EXIT_PASS


def cmd_dual(args) -> int:
    obj = _load(args.object)
    if isinstance(obj, ModalFrame):
        out = order_dual_frame(obj)
    elif isinstance(obj, ModalAlgebra):
        out = order_dual_algebra(obj)
    elif isinstance(obj, Poset):
        out = obj.dual()
    else:
        raise UsageError(f"{args.object}: no order dual for {type(obj).__name__}")
    _emit(to_json(out))
    return EXIT_PASS


def cmd_converse(args) -> int:
    obj = _load(args.object, ModalFrame, ModalAlgebra)
    if isinstance(obj, ModalFrame):
        out = converse_frame(obj)
    else:
        out = adjoint_algebra(tense_algebra(obj))
    _emit(to_json(out))
    return EXIT_PASS


def cmd_axioms(args) -> int:
    if args.action == "list":
        _emit([{"id": i, "law": format_law(axiom_catalog(i))} for i in catalog_ids()])
        return EXIT_PASS
    if not args.id:
        raise UsageError("axioms show needs an id")
    try:
        law = axiom_catalog(args.id)
    except KeyError:
        raise UsageError(f"unknown axiom id {args.id!r}; try 'axioms list'") from None
    # the law grammar is the machine format here
    sys.stdout.write(format_law(law) + "\n")
    _say(normalize_id(args.id))
    return EXIT_PASS


def cmd_campaign(args) -> int:
    text = _read(args.spec)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.spec}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if args.seed is not None:
        data["seed"] = args.seed
    try:
        spec = CampaignSpec.from_json(data)
    except (CampaignError, TypeError) as e:
        raise UsageError(f"{args.spec}: {e}") from None
    report = run_campaign(spec, jobs=args.jobs)
    sys.stdout.write(report.to_jsonl())
    _say(
        f"{spec.target}: {report.verdict}, {report.instances} instances, {report.checks} checks, "
        f"{len(report.violations)} violations in {report.elapsed:.1f}s"
    )
    for n in report.notes:
        _say(f"note: {n}")
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


def cmd_boolean_check(args) -> int:
    A = _checked_algebra(args.algebra)
    r = boolean_extension_check(A)
    _emit(r.to_json())
    if r.positive:
        _say("positive: " + ("embeds into a Boolean modal algebra" if r.embeds else "embedding FAILED"))
    else:
        _say(f"not positive: {r.failed_condition} fails ({r.failed_axiom} at {r.witness})")
    return EXIT_PASS if r.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unimodal", description="Distributive unimodal logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-frame", help="check a frame condition")
    s.add_argument("frame")
    s.add_argument("--condition", required=True, help='e.g. "(box+,dia-)" or "(dia+)*"')
    s.set_defaults(func=cmd_check_frame)

    s = sub.add_parser("check-law", help="check laws in an algebra")
    s.add_argument("algebra")
    s.add_argument("--law", required=True, help="catalog id or law file")
    s.set_defaults(func=cmd_check_law)

    s = sub.add_parser("complex", help="complex algebra of a frame")
    s.add_argument("frame")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("canonical-frame", help="canonical frame of an algebra")
    s.add_argument("algebra")
    s.add_argument("--trace", action="store_true", help="log filters and relation clauses to stderr")
    s.set_defaults(func=cmd_canonical_frame)

    s = sub.add_parser("canonical-extension", help="canonical extension and the embedding eta")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_canonical_extension)

    s = sub.add_parser("dual", help="order dual of a poset, frame or algebra")
    s.add_argument("object")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("converse", help="converse frame, or adjoint algebra")
    s.add_argument("object")
    s.set_defaults(func=cmd_converse)

    s = sub.add_parser("axioms", help="axiom catalog")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("id", nargs="?")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("campaign", help="run a verification campaign")
    s.add_argument("spec")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_campaign)

    s = sub.add_parser("boolean-check", help="positivity and Boolean extension")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_boolean_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_PASS
    if getattr(args, "jobs", 1) < 1:
        _say("error: --jobs must be at least 1")
        return EXIT_ERROR
    try:
        return args.func(args)
    except (
        UsageError,
        FormatError,
        ParseError,
        CampaignError,
        InapplicableCondition,
        MissingConnective,
        PreconditionError,
        LatticeError,
        OrderError,
        FrameError,
    ) as e:
        _say(f"error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
