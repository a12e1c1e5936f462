"""Named axioms: pairwise quasiequations, their equational forms, locality
equations, operator laws and tense laws."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from ..order import ALL_SYMBOLS, ModalSymbol
from .parser import parse_law
from .syntax import Law

# Pairwise compatibility quasiequations, keyed by (first, second) symbol names.
QUASI = {
    ("box+", "box-"): r"box- a /\ box+(a \/ b) <= box+ b",
    ("box-", "box+"): r"box+ a /\ box-(a /\ b) <= box- b",
    ("dia+", "dia-"): r"dia+ b <= dia+(a /\ b) \/ dia- a",
    ("dia-", "dia+"): r"dia- b <= dia-(a \/ b) \/ dia+ a",
    ("box+", "dia-"): r"dia- a /\ c <= box+ a => c <= box+ a",
    ("box-", "dia+"): r"dia+ a /\ c <= box- a => c <= box- a",
    ("dia+", "box-"): r"dia+ a <= box- a \/ c => dia+ a <= c",
    ("dia-", "box+"): r"dia- a <= box+ a \/ c => dia- a <= c",
    ("box+", "dia+"): r"dia+ b /\ c <= box+ a => box+(a \/ b) /\ c <= box+ a",
    ("box-", "dia-"): r"dia- b /\ c <= box- a => box-(a /\ b) /\ c <= box- a",
    ("dia+", "box+"): r"dia+ a <= box+ b \/ c => dia+ a <= dia+(a /\ b) \/ c",
    ("dia-", "box-"): r"dia- a <= box- b \/ c => dia- a <= dia-(a \/ b) \/ c",
}

# The same conditions stated as inequations using the residuals.
EQUATIONAL = {
    ("box+", "box-"): QUASI[("box+", "box-")],
    ("box-", "box+"): QUASI[("box-", "box+")],
    ("dia+", "dia-"): QUASI[("dia+", "dia-")],
    ("dia-", "dia+"): QUASI[("dia-", "dia+")],
    ("box+", "dia-"): r"dia- a -> box+ a <= box+ a",
    ("box-", "dia+"): r"dia+ a -> box- a <= box- a",
    ("dia+", "box-"): r"dia+ a <= dia+ a -- box- a",
    ("dia-", "box+"): r"dia- a <= dia- a -- box+ a",
    ("box+", "dia+"): r"dia+ b -> box+ a <= box+(a \/ b) -> box+ a",
    ("box-", "dia-"): r"dia- b -> box- a <= box-(a /\ b) -> box- a",
    ("dia+", "box+"): r"dia+ a -- dia+(a /\ b) <= dia+ a -- box+ b",
    ("dia-", "box-"): r"dia- a -- dia-(a \/ b) <= dia- a -- box- b",
}

# Locality equations; the backward ones are written with forward operators.
STAR = {
    ("dia+", "box+"): r"box+ a /\ dia+ b <= dia+(a /\ b)",
    ("dia-", "box-"): r"box- a /\ dia- b <= dia-(a \/ b)",
    ("box+", "dia+"): r"box+(a \/ b) <= box+ a \/ dia+ b",
    ("box-", "dia-"): r"box-(a /\ b) <= box- a \/ dia- b",
    ("dia+", "box-"): r"box- a /\ dia+ a <= bot",
    ("dia-", "box+"): r"box+ a /\ dia- a <= bot",
    ("box+", "dia-"): r"top <= box+ a \/ dia- a",
    ("box-", "dia+"): r"top <= box- a \/ dia+ a",
    ("bdia+", "bbox+"): r"dia+ a -> box+ b <= box+(a -> b)",
    ("bdia-", "bbox-"): r"dia-(a -> b) <= dia- b -- box- a",
    ("bbox+", "bdia+"): r"dia+(b -- a) <= dia+ b -- box+ a",
    ("bbox-", "bdia-"): r"dia- a -> box- b <= box-(b -- a)",
    ("bdia+", "bbox-"): r"box- a <= box+(a -> bot)",
    ("bdia-", "bbox+"): r"dia-(a -> bot) <= dia+ a",
    ("bbox+", "bdia-"): r"dia+(top -- a) <= dia- a",
    ("bbox-", "bdia+"): r"box+ a <= box-(top -- a)",
}


def _operator_laws(s: ModalSymbol) -> dict[str, str]:
    n = s.name
    box, pos = s.is_box, s.positive
    src = r"/\ " if box == pos else r"\/ "
    dst = r"/\ " if box else r"\/ "
    if box:
        unit_in, unit_out = ("top", "top") if pos else ("bot", "top")
    else:
        unit_in, unit_out = ("bot", "bot") if pos else ("top", "bot")
    src_name = "meet" if src.startswith("/") else "join"
    return {
        f"op:{n}:{src_name}": f"{n}(a {src}b) = {n} a {dst}{n} b",
        f"op:{n}:{unit_in}": f"{n} {unit_in} = {unit_out}",
    }


def _tense_laws(f: ModalSymbol) -> dict[str, str]:
    g = f.adjoint()
    fn, gn = f.name, g.name
    key = f"tense:({fn},{gn})"
    if f.name == "box+":
        unit, counit = f"a <= {fn} {gn} a", f"{gn} {fn} a <= a"
    elif f.name == "dia+":
        unit, counit = f"a <= {gn} {fn} a", f"{fn} {gn} a <= a"
    elif f.name == "box-":
        unit, counit = f"a <= {fn} {gn} a", f"a <= {gn} {fn} a"
    else:
        unit, counit = f"{fn} {gn} a <= a", f"{gn} {fn} a <= a"
    return {f"{key}:unit": unit, f"{key}:counit": counit}


def _pair_id(prefix: str, pair: tuple[str, str], star: bool = False) -> str:
    return f"{prefix}({pair[0]},{pair[1]})" + ("*" if star else "")


@lru_cache(maxsize=None)
def _table() -> dict[str, str]:
    table: dict[str, str] = {}
    for pair, text in QUASI.items():
        table[_pair_id("q:", pair)] = text
    for pair, text in EQUATIONAL.items():
        table[_pair_id("eq:", pair)] = text
    for pair, text in STAR.items():
        table[_pair_id("", pair, star=True)] = text
    for s in ALL_SYMBOLS:
        table.update(_operator_laws(s))
    for s in ALL_SYMBOLS:
        if s.is_forward:
            table.update(_tense_laws(s))
    return table


def catalog_ids() -> list[str]:
    return list(_table())


def normalize_id(ident: str) -> str:
    ident = ident.replace(" ", "")
    if ident.startswith("(") and not ident.endswith("*"):
        return "q:" + ident
    return ident


@lru_cache(maxsize=None)
def axiom_catalog(ident: str) -> Law:
    key = normalize_id(ident)
    table = _table()
    if key not in table:
        raise KeyError(f"unknown axiom id {ident!r}")
    return parse_law(table[key], name=key)


def _names(symbols: Iterable[ModalSymbol]) -> tuple[str, str]:
    a, b = symbols
    return a.name, b.name


def quasi_law(symbols) -> Law:
    return axiom_catalog(_pair_id("q:", _names(symbols)))


def equational_law(symbols) -> Law:
    return axiom_catalog(_pair_id("eq:", _names(symbols)))


def star_law(symbols) -> Law:
    return axiom_catalog(_pair_id("", _names(symbols), star=True))


def mutated_law(law: Law) -> Law:
    """The law with its premises dropped (used to test that campaigns can fail)."""
    return Law((), law.conclusion, f"{law.name}:no-premise" if law.name else None)
