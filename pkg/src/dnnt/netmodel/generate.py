"""Seeded random two-layer instances (for solver cross-checks)."""

from __future__ import annotations

import random

from ..exactnum import dec
from .activations import Identity, Relu
from .instance import DataPoint, Dataset, Instance
from .losses import SumSquares
from .network import Network
from .params import EdgeSpace, ParamSpace


def _subset(rng: random.Random, hi: int, max_size: int) -> tuple[int, ...]:
    size = rng.randint(1, max_size)
    return tuple(sorted(rng.sample(range(hi + 1), min(size, hi + 1))))


def random_two_layer(
    rng: random.Random,
    max_d: int = 3,
    max_k: int = 3,
    max_points: int = 2,
    max_value: int = 5,
    max_set: int = 2,
) -> Instance:
    """``s -> h1..hk -> t`` with natural parameters and inputs up to ``max_value``.

    Hidden activations are identity or relu, the output is the identity and
    the loss is the sum of squares.  Targets are drawn so that both yes and
    no answers occur.
    """
    d = rng.randint(1, max_d)
    k = rng.randint(1, max_k)
    n0 = rng.randint(1, max_points)
    hidden = tuple(f"h{q}" for q in range(1, k + 1))
    edges = tuple(("s", h) for h in hidden) + tuple((h, "t") for h in hidden)
    spaces = {}
    for h in hidden:
        spaces[("s", h)] = EdgeSpace.of(
            [_subset(rng, max_value, max_set) for _ in range(d)], _subset(rng, max_value, max_set)
        )
        spaces[(h, "t")] = EdgeSpace.of([_subset(rng, max_value, max_set)], _subset(rng, max_value, 1))
    activations = {h: rng.choice((Identity(), Relu())) for h in hidden}
    activations["t"] = Identity()
    # half the time plant targets realised by a random member of the space
    planted = None
    if rng.random() < 0.5:
        planted = {e: ([rng.choice(ws) for ws in sp.weights], rng.choice(sp.biases)) for e, sp in spaces.items()}
    points = []
    for _ in range(n0):
        x = tuple(rng.randint(0, max_value) for _ in range(d))
        if planted is None:
            y = rng.randint(0, max_value**3)
        else:
            y = 0
            for h in hidden:
                w, b = planted[("s", h)]
                pre = sum(wi * xi for wi, xi in zip(w, x)) + b
                (w2,), b2 = planted[(h, "t")]
                y += w2 * activations[h](pre) + b2
        points.append(DataPoint.of(x, (y,)))
    return Instance(
        network=Network(("s", *hidden, "t"), "s", hidden, ("t",), edges),
        dataset=Dataset(tuple(points), d),
        activations=activations,
        loss=SumSquares(),
        params=ParamSpace(spaces),
        gamma=dec(rng.choice((0, 1, 4, 25, 100))),
        meta={"generator": "random_two_layer"},
    )
