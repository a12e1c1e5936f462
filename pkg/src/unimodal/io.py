"""JSON formats for posets, relations, lattices, algebras and frames."""

from __future__ import annotations

import json
from typing import Any

from .algebra import DistLattice, LatticeError, ModalAlgebra
from .frames import FrameError, ModalFrame
from .order import OrderError, Poset, Relation, SYMBOLS_BY_NAME, ModalSymbol


class FormatError(ValueError):
    """Input that does not describe a valid object."""


def _matrix(data: Any, what: str) -> list[list[bool]]:
    if not isinstance(data, dict) or "size" not in data:
        raise FormatError(f"{what}: expected an object with 'size'")
    n = data["size"]
    key = "leq" if "leq" in data else "bits"
    m = data.get(key)
    if not isinstance(n, int) or n < 0:
        raise FormatError(f"{what}: size must be a non-negative integer")
    if not isinstance(m, list) or len(m) != n:
        raise FormatError(f"{what}: '{key}' must have {n} rows")
    for i, row in enumerate(m):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"{what}: row {i} of '{key}' must have {n} entries")
        for j, x in enumerate(row):
            if not isinstance(x, (bool, int)) or x not in (0, 1):
                raise FormatError(f"{what}: entry ({i}, {j}) is not a boolean")
    return [[bool(x) for x in row] for row in m]


def _symbol(name: str) -> ModalSymbol:
    if name not in SYMBOLS_BY_NAME:
        raise FormatError(f"unknown modal symbol {name!r}")
    return SYMBOLS_BY_NAME[name]


# posets and relations


def poset_to_json(P: Poset) -> dict:
    return {"size": P.size, "leq": P.matrix()}


def poset_from_json(data: Any) -> Poset:
    try:
        return Poset.from_matrix(_matrix(data, "poset"))
    except OrderError as e:
        raise FormatError(f"poset: {e}") from e


def relation_to_json(R: Relation) -> dict:
    return {"size": R.size, "bits": R.matrix()}


def relation_from_json(data: Any) -> Relation:
    if isinstance(data, dict) and "bits" not in data:
        raise FormatError("relation: missing 'bits'")
    return Relation.from_matrix(_matrix(data, "relation"))


# lattices and algebras


def lattice_to_json(L: DistLattice) -> dict:
    return {"size": L.size, "leq": L.order.matrix()}


def lattice_from_json(data: Any) -> DistLattice:
    m = _matrix(data, "lattice")
    try:
        return DistLattice.from_matrix(m)
    except (OrderError, LatticeError) as e:
        raise FormatError(f"lattice: {e}") from e


def algebra_to_json(A: ModalAlgebra) -> dict:
    return {
        "lattice": lattice_to_json(A.lattice),
        "ops": {s.name: list(t) for s, t in A.ops.items()},
        "residuals": sorted(A.residuals),
    }


def algebra_from_json(data: Any) -> ModalAlgebra:
    if not isinstance(data, dict) or "lattice" not in data:
        raise FormatError("algebra: expected an object with 'lattice'")
    lat = lattice_from_json(data["lattice"])
    ops_in = data.get("ops", {})
    if not isinstance(ops_in, dict):
        raise FormatError("algebra: 'ops' must be an object")
    ops = {}
    for name, table in ops_in.items():
        if not isinstance(table, list) or not all(isinstance(x, int) for x in table):
            raise FormatError(f"algebra: table for {name} must be a list of integers")
        ops[_symbol(name)] = table
    res = data.get("residuals", ["impl", "sub"])
    try:
        return ModalAlgebra(lat, ops, frozenset(res))
    except LatticeError as e:
        raise FormatError(f"algebra: {e}") from e


# frames


def frame_to_json(F: ModalFrame) -> dict:
    out: dict = {
        "poset": poset_to_json(F.poset),
        "relations": {s.name: relation_to_json(F[s]) for s in F.signature},
    }
    if F.backward:
        out["backward"] = {s.name: relation_to_json(F[s]) for s in F.backward}
    return out


def frame_from_json(data: Any) -> ModalFrame:
    if not isinstance(data, dict) or "poset" not in data:
        raise FormatError("frame: expected an object with 'poset'")
    P = poset_from_json(data["poset"])
    rels = {}
    for group, forward in (("relations", True), ("backward", False)):
        for name, r in (data.get(group) or {}).items():
            s = _symbol(name)
            if s.is_forward != forward:
                raise FormatError(f"frame: {name} does not belong under '{group}'")
            rels[s] = relation_from_json(r)
    try:
        return ModalFrame(P, rels)
    except (FrameError, OrderError) as e:
        raise FormatError(f"frame: {e}") from e


# dispatch


def kind_of(data: Any) -> str:
    if isinstance(data, dict):
        if "poset" in data:
            return "frame"
        if "lattice" in data:
            return "algebra"
        if "bits" in data:
            return "relation"
        if "leq" in data:
            return "poset"
    raise FormatError("cannot tell what kind of object this is")


def from_json(data: Any):
    return {
        "frame": frame_from_json,
        "algebra": algebra_from_json,
        "relation": relation_from_json,
        "poset": poset_from_json,
    }[kind_of(data)](data)


def to_json(obj) -> dict:
    if isinstance(obj, ModalFrame):
        return frame_to_json(obj)
    if isinstance(obj, ModalAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, Relation):
        return relation_to_json(obj)
    if isinstance(obj, Poset):
        return poset_to_json(obj)
    if isinstance(obj, DistLattice):
        return lattice_to_json(obj)
    raise TypeError(f"no JSON format for {type(obj).__name__}")


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return from_json(data)


def load(path: str):
    with open(path) as fh:
        return loads(fh.read())


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True)
