"""Exact D-NNT deciders: exhaustive enumeration and the two-layer dynamic program."""

from .brute import SolveResult, brute_force_solve
from .dp import DpTables, build_dim_dp, build_final_dp, compute_bound_M, dp_solve, dp_tables, scale_to_naturals

__all__ = [
    "SolveResult", "brute_force_solve", "DpTables", "compute_bound_M", "build_dim_dp",
    "build_final_dp", "dp_tables", "dp_solve", "scale_to_naturals",
]
