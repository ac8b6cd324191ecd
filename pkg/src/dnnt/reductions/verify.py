"""Dispatch helpers: reduce any source problem, extract solutions, and
check oracle-versus-solver agreement."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InfeasibleWitness, PreconditionError
from ..netmodel import Assignment, Instance
from .csp import csp_to_dnnt, extract_assignment
from .exact_cover import exact_cover_to_dnnt, extract_cover
from .slp import slp_to_dnnt
from .sources import CspInstance, ExactCoverInstance, Slp, SourceProblem, SubsetSumInstance, oracle_decide
from .subset_sum import extract_subset, subset_sum_to_dnnt


def reduce_source(src: SourceProblem, **options) -> Instance:
    """The D-NNT instance for any supported source problem."""
    if isinstance(src, SubsetSumInstance):
        return subset_sum_to_dnnt(src)
    if isinstance(src, CspInstance):
        return csp_to_dnnt(src)
    if isinstance(src, ExactCoverInstance):
        return exact_cover_to_dnnt(src)
    if isinstance(src, Slp):
        return slp_to_dnnt(src, **options)
    raise TypeError(f"unknown source problem {type(src).__name__}")


def extract_solution(src: SourceProblem, theta: Assignment):
    """Read a source solution off a feasible assignment of the reduced instance.

    Raises :class:`InfeasibleWitness` naming the violated condition when the
    read-off is not a solution.
    """
    if isinstance(src, SubsetSumInstance):
        return extract_subset(src, theta)
    if isinstance(src, CspInstance):
        return extract_assignment(src, theta)
    if isinstance(src, ExactCoverInstance):
        return extract_cover(src, theta)
    raise PreconditionError(f"no solution extraction for {type(src).__name__}")


@dataclass(frozen=True)
class Verdict:
    oracle: bool
    solver: bool
    extracted: bool | None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.oracle == self.solver and self.extracted is not False


def verify_equivalence(src: SourceProblem, method: str = "brute", budget: int | None = None) -> Verdict:
    """Compare the independent oracle with a D-NNT solver on the reduction.

    On yes-answers the solver's witness is also mapped back and checked
    against the source problem (not applicable to straight-line programs).
    """
    from ..evaluator import decide
    from ..netmodel import EdgeChoice
    from ..solvers import brute_force_solve, dp_solve

    oracle = oracle_decide(src, budget).decision
    inst = reduce_source(src)
    if isinstance(src, Slp):
        # restricted: the only candidate is the singleton choice
        theta = Assignment(
            {e: EdgeChoice(tuple(ws[0] for ws in sp.weights), sp.biases[0]) for e, sp in inst.params.edges.items()}
        )
        return Verdict(oracle, decide(inst, theta), None)
    result = dp_solve(inst) if method == "dp" else brute_force_solve(inst, budget)
    extracted = None
    detail = ""
    if result.decision:
        try:
            extract_solution(src, result.theta)
            extracted = True
        except InfeasibleWitness as exc:
            extracted, detail = False, str(exc)
    return Verdict(oracle, result.decision, extracted, detail)
