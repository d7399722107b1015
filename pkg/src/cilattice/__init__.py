"""Lattice-based reasoning about conditional independence implication."""

from .core import (
    CapExceeded,
    CIError,
    CIStatement,
    DuplicateVariable,
    Instance,
    NonDisjoint,
    ParseError,
    Universe,
    UniverseMismatch,
    UnknownVariable,
    VarSet,
    classify,
    format_statement,
    parse_instance,
    parse_statement,
    parse_universe,
)

__version__ = "0.1.0"
