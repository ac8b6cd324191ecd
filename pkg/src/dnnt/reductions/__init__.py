"""Reductions from classic problems to D-NNT, and from D-NNT to C-NNT."""

from .cnnt import dnnt_to_cnnt, isolating_path, lift_assignment, probe_value
from .csp import csp_to_dnnt, extract_assignment
from .exact_cover import exact_cover_to_dnnt, extract_cover
from .slp import GADGETS, shift_gadget_applies, slp_to_dnnt
from .sources import (
    CspInstance,
    ExactCoverInstance,
    OracleResult,
    Slp,
    SubsetSumInstance,
    load_source,
    oracle_decide,
    random_csp,
    random_exact_cover,
    random_slp,
    random_subset_sum,
    save_source,
    slp_values,
    source_from_dict,
    source_to_dict,
)
from .subset_sum import extract_subset, subset_sum_to_dnnt
from .verify import Verdict, extract_solution, reduce_source, verify_equivalence

__all__ = [
    "SubsetSumInstance", "CspInstance", "ExactCoverInstance", "Slp", "OracleResult",
    "oracle_decide", "slp_values", "source_to_dict", "source_from_dict", "save_source", "load_source",
    "random_subset_sum", "random_csp", "random_exact_cover", "random_slp",
    "subset_sum_to_dnnt", "csp_to_dnnt", "exact_cover_to_dnnt", "slp_to_dnnt", "GADGETS",
    "shift_gadget_applies", "dnnt_to_cnnt", "lift_assignment", "isolating_path", "probe_value",
    "extract_subset", "extract_assignment", "extract_cover", "extract_solution",
    "reduce_source", "verify_equivalence", "Verdict",
]
