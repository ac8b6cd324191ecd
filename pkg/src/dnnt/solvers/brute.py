"""Exhaustive enumeration over a finite parameter space."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..config import enum_budget
from ..errors import BudgetExceeded, PreconditionError
from ..exactnum import ExactDec
from ..evaluator import total_loss
from ..netmodel import Assignment, EdgeChoice, Instance


@dataclass(frozen=True)
class SolveResult:
    """A loss-minimizing assignment, its exact loss and the gamma decision.

    ``work`` is the number of candidates enumerated (brute force) or of
    table entries built (dynamic program).
    """

    theta: Assignment
    loss: ExactDec
    decision: bool
    method: str = "brute"
    work: int = 0


def _edge_choices(space):
    for combo in itertools.product(*space.weights, space.biases):
        yield EdgeChoice(tuple(combo[:-1]), combo[-1])


def brute_force_solve(instance: Instance, budget: int | None = None) -> SolveResult:
    """Minimize the total loss over the full Cartesian product of the space.

    Ties are broken towards the lexicographically smallest assignment (edges
    in instance order, weights before bias).  A space larger than ``budget``
    (default: ``DNNT_ENUM_BUDGET``) is refused with :class:`BudgetExceeded`.
    """
    if not instance.is_discrete or instance.params.continuous:
        raise PreconditionError("brute force needs a discrete instance")
    limit = enum_budget() if budget is None else budget
    size = instance.params.cardinality()
    if size > limit:
        raise BudgetExceeded(f"parameter space has {size} candidates, budget is {limit}")
    edges = tuple(instance.network.edges)
    per_edge = [list(_edge_choices(instance.params[e])) for e in edges]
    best = best_loss = None
    for combo in itertools.product(*per_edge):
        theta = Assignment(dict(zip(edges, combo)))
        loss = total_loss(instance, theta, check=False)
        # product order is already lexicographic, so strict < keeps the smallest tie
        if best_loss is None or loss < best_loss:
            best, best_loss = theta, loss
    return SolveResult(best, best_loss, best_loss <= instance.gamma, "brute", size)
