"""Coloring circle graphs through their interval representations.

The package computes chromatic numbers, fractional chromatic numbers,
max-weight independent sets, and capacitated stowage stack plans for
circle graphs, using an arborescence-based integer program solved by a
built-in simplex and branch-and-bound, with brute-force oracles for
verification.
"""

__version__ = "0.1.0"

from .bnb import SolveReport, first_fit, solve_chromatic, solve_stacks
from .intervals import (
    CircleGraph,
    Coloring,
    ContainmentDag,
    IntervalRep,
    build_clique_matrix,
    build_dag,
    build_graph,
    load_instance,
    max_antichain,
    normalize,
    parse_instance,
    validate_coloring,
)
from .mwis import chain_partition, decode_arborescence, max_weight_chain, solve_mwis
from .simplex import LpSolution, SimplexOptions, solve_lp
from .stowage import StackPlan

__all__ = [
    "CircleGraph",
    "Coloring",
    "ContainmentDag",
    "IntervalRep",
    "LpSolution",
    "SimplexOptions",
    "SolveReport",
    "StackPlan",
    "build_clique_matrix",
    "build_dag",
    "build_graph",
    "chain_partition",
    "decode_arborescence",
    "first_fit",
    "load_instance",
    "max_antichain",
    "max_weight_chain",
    "normalize",
    "parse_instance",
    "solve_chromatic",
    "solve_lp",
    "solve_mwis",
    "solve_stacks",
    "validate_coloring",
]
