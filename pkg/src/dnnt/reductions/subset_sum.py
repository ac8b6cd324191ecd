"""Subset Sum to a one-hidden-layer D-NNT instance with a single data point."""

from __future__ import annotations

from ..errors import InfeasibleWitness
from ..netmodel import Assignment, Instance, SumSquares
from ._builder import Builder
from .sources import SubsetSumInstance


def subset_sum_to_dnnt(src: SubsetSumInstance) -> Instance:
    """Hidden neuron ``h_i`` per item with weight set ``{0, a_i}``; one point ``(1, T)``.

    Choosing weight ``a_i`` puts the item in the subset, so the output is a
    subset sum and the squared loss is 0 exactly when it hits ``T``.
    """
    b = Builder("s", d=1)
    t = "t"
    hidden = [b.vertex(f"h{i}") for i in range(1, len(src.items) + 1)]
    b.vertex(t)
    for h, a in zip(hidden, src.items):
        b.edge("s", h, [(0, a)])
    for h in hidden:
        b.edge(h, t, (1,))
    return b.build(
        outputs=[t],
        points=[((1,), (src.target,))],
        loss=SumSquares(),
        gamma=0,
        meta={"reduction": "subset-sum", "n": len(src.items)},
    )


def extract_subset(src: SubsetSumInstance, theta: Assignment) -> tuple[int, ...]:
    """0-based indices of the items whose first-layer weight is nonzero."""
    chosen = tuple(i for i in range(len(src.items)) if theta[("s", f"h{i + 1}")].weights[0] != 0)
    if not src.is_solution(chosen):
        total = sum(src.items[i] for i in chosen)
        raise InfeasibleWitness(f"selected items sum to {total}, target is {src.target}")
    return chosen
