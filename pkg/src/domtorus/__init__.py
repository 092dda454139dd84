"""Exact Italian domination of directed graphs, centred on directed tori C_m x C_n."""

from .assignment import (
    Assignment,
    Violation,
    is_independent,
    parse_grid,
    serialize_grid,
    verify_italian,
    verify_italian_torus_sumrule,
    weight,
    zero_set,
)
from .constructions import ConstructionFailed, build_idf, build_independent_set
from .digraph import Digraph, make_directed_cycle, make_directed_path, make_torus, transpose_coord
from .formulas import ParityCase, alpha_formula, classify, gamma_formula, special_case_checks
from .normalizer import Anchor, TransformTrace, normalize
from .solver import SolveResult, alpha_exact, gamma_naive, gamma_torus_dp, volkmann_lower_bound

__version__ = "0.1.0"
