"""Incremental construction of instances, shared by the reductions."""

from __future__ import annotations

from ..exactnum import dec
from ..netmodel import DataPoint, Dataset, EdgeSpace, Identity, Instance, Network, ParamSpace


class Builder:
    """Collects vertices, edges and parameter sets in insertion order."""

    def __init__(self, source: str, d: int):
        self.source = source
        self.d = d
        self.vertices = [source]
        self.activations = {}
        self.edges = []
        self.spaces = {}

    def vertex(self, name: str, activation=None) -> str:
        if name in self.activations or name == self.source:
            raise ValueError(f"vertex {name!r} defined twice")
        self.vertices.append(name)
        self.activations[name] = activation or Identity()
        return name

    def edge(self, u: str, v: str, weights, biases=(0,)) -> None:
        """``weights``: one set per input dimension when ``u`` is the source,
        otherwise a single set."""
        if u != self.source:
            weights = [weights]
        self.edges.append((u, v))
        self.spaces[(u, v)] = EdgeSpace.of(weights, biases)

    def scalar_edge(self, u: str, v: str, weights, biases=(0,)) -> None:
        """Edge with a single weight set, also from the source when ``d == 1``."""
        if u == self.source:
            if self.d != 1:
                raise ValueError("scalar edges from the source need d == 1")
            weights = [weights]
        self.edge(u, v, weights, biases)

    def build(self, outputs, points, loss, gamma, meta=None) -> Instance:
        outputs = tuple(outputs)
        hidden = tuple(v for v in self.vertices[1:] if v not in set(outputs))
        net = Network(tuple(self.vertices), self.source, hidden, outputs, tuple(self.edges))
        data = Dataset(tuple(DataPoint.of(x, y) for x, y in points), self.d)
        return Instance(
            network=net,
            dataset=data,
            activations=dict(self.activations),
            loss=loss,
            params=ParamSpace(dict(self.spaces)),
            gamma=dec(gamma),
            meta=dict(meta or {}),
        )
