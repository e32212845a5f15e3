"""Exact frustration index of signed graphs via 0/1 linear programming."""

from .bnb import SolveOptions, SolveReport, effective_branching_factor, solve
from .formulation import MODELS, build
from .generators import GenSpec, generate, random_graph
from .graph import SignedGraph, frustration_count, is_balanced, switch
from .io import read_edge_list, write_edge_list
from .oracle import brute_force_L, brute_force_multicolour, brute_force_weighted
from .solver import frustration_index

__all__ = [
    "MODELS", "GenSpec", "SignedGraph", "SolveOptions", "SolveReport", "brute_force_L",
    "brute_force_multicolour", "brute_force_weighted", "build", "effective_branching_factor",
    "frustration_count", "frustration_index", "generate", "is_balanced", "random_graph",
    "read_edge_list", "solve", "switch", "write_edge_list",
]
