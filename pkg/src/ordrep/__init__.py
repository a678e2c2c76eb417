"""Decide whether finite posets embed into fields of sets preserving small meets and joins."""

__version__ = "0.1.0"

from .bounds import OMEGA, THREE, Bound
from .cnf import CnfFormula, encode_separation, read_dimacs, read_result, solve_basic, write_dimacs
from .decider import DecisionReport, failing_pairs, is_representable
from .errors import OrdrepError
from .filters import (
    Filter,
    SeparationSearch,
    Violation,
    check_filter,
    closure_meet_up,
    enumerate_filters_bruteforce,
    find_separating_filter,
    is_filter,
)
from .pk import PkPoset, base_support, generate_pk, iota_embed
from .poset import Poset, build_poset
from .representation import Representation, build_representation, verify_representation

__all__ = [
    "Bound",
    "OMEGA",
    "THREE",
    "CnfFormula",
    "DecisionReport",
    "Filter",
    "OrdrepError",
    "PkPoset",
    "Poset",
    "Representation",
    "SeparationSearch",
    "Violation",
    "base_support",
    "build_poset",
    "build_representation",
    "check_filter",
    "closure_meet_up",
    "encode_separation",
    "enumerate_filters_bruteforce",
    "failing_pairs",
    "find_separating_filter",
    "generate_pk",
    "iota_embed",
    "is_filter",
    "is_representable",
    "read_dimacs",
    "read_result",
    "solve_basic",
    "verify_representation",
    "write_dimacs",
]
