"""Exact Set Cover to a D-NNT instance with one hidden neuron.

Input dimension ``j`` stands for set ``S_j``.  Element ``u_i`` becomes the
point with ``x_i[j] = 1`` iff ``u_i`` is in ``S_j`` and target 1; an extra
all-ones point with target ``K`` fixes the number of chosen sets.
"""

from __future__ import annotations

from ..errors import InfeasibleWitness
from ..netmodel import Assignment, Instance, SumSquares
from ._builder import Builder
from .sources import ExactCoverInstance


def exact_cover_to_dnnt(src: ExactCoverInstance) -> Instance:
    m = len(src.sets)
    b = Builder("s", d=m)
    b.vertex("h")
    b.vertex("t")
    b.edge("s", "h", [(0, 1)] * m)
    b.edge("h", "t", (1,))
    points = [((1,) * m, (src.k,))]
    for u in src.universe:
        points.append((tuple(1 if u in s else 0 for s in src.sets), (1,)))
    return b.build(
        outputs=["t"],
        points=points,
        loss=SumSquares(),
        gamma=0,
        meta={"reduction": "exact-cover", "n": len(src.universe), "m": m},
    )


def extract_cover(src: ExactCoverInstance, theta: Assignment) -> tuple[int, ...]:
    """0-based indices ``j`` with ``w_(s,h)[j] = 1``."""
    w = theta[("s", "h")].weights
    chosen = tuple(j for j in range(len(src.sets)) if w[j] == 1)
    if not src.is_solution(chosen):
        raise InfeasibleWitness(f"sets {chosen} are not an exact cover of size {src.k}")
    return chosen
