from .catalog import axiom_catalog, catalog_ids, equational_law, quasi_law, star_law
from .parser import ParseError, parse, parse_law, parse_law_file, parse_term
from .semantics import HoldsResult, MissingConnective, evaluate, holds, holds_batch
from .syntax import Atom, Bin, Const, Law, Term, Un, Var, format_law, format_term

__all__ = [
    "Atom", "Bin", "Const", "HoldsResult", "Law", "MissingConnective", "ParseError",
    "Term", "Un", "Var", "axiom_catalog", "catalog_ids", "equational_law", "evaluate",
    "format_law", "format_term", "holds", "holds_batch", "parse", "parse_law",
    "parse_law_file", "parse_term", "quasi_law", "star_law",
]
