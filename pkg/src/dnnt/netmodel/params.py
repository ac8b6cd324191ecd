"""Parameter spaces and concrete parameter assignments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import MembershipError
from ..exactnum import ExactDec, dec
from .network import Edge


def _as_set(values: Iterable) -> tuple[ExactDec, ...]:
    return tuple(sorted({dec(v) for v in values}))


@dataclass(frozen=True)
class EdgeSpace:
    """Finite choices for one edge.

    ``weights`` holds one set per input dimension for edges leaving the
    source, and exactly one set for every other edge.
    """

    weights: tuple[tuple[ExactDec, ...], ...]
    biases: tuple[ExactDec, ...]

    @classmethod
    def of(cls, weights, biases=(0,)) -> "EdgeSpace":
        return cls(tuple(_as_set(w) for w in weights), _as_set(biases))

    @property
    def size(self) -> int:
        n = len(self.biases)
        for w in self.weights:
            n *= len(w)
        return n


@dataclass(frozen=True)
class ParamSpace:
    """Per-edge finite spaces, or the all-reals marker of a continuous instance."""

    edges: Mapping[Edge, EdgeSpace] = field(default_factory=dict)
    continuous: bool = False

    @classmethod
    def real(cls) -> "ParamSpace":
        return cls({}, continuous=True)

    def __getitem__(self, edge: Edge) -> EdgeSpace:
        return self.edges[edge]

    def is_restricted(self) -> bool:
        """True when every weight and bias set is a singleton."""
        return not self.continuous and all(s.size == 1 for s in self.edges.values())

    def cardinality(self) -> int:
        if self.continuous:
            raise MembershipError("a continuous parameter space has no finite cardinality")
        n = 1
        for s in self.edges.values():
            n *= s.size
        return n


@dataclass(frozen=True)
class EdgeChoice:
    weights: tuple[ExactDec, ...]
    bias: ExactDec

    @classmethod
    def of(cls, weights, bias=0) -> "EdgeChoice":
        return cls(tuple(dec(w) for w in weights), dec(bias))


@dataclass(frozen=True)
class Assignment:
    """A concrete parameter choice ``(w_e, b_e)`` for every edge."""

    choices: Mapping[Edge, EdgeChoice]

    def __getitem__(self, edge: Edge) -> EdgeChoice:
        return self.choices[edge]

    def __iter__(self):
        return iter(self.choices)

    def __len__(self):
        return len(self.choices)

    def replace(self, edge: Edge, weights=None, bias=None) -> "Assignment":
        old = self.choices[edge]
        new = EdgeChoice(
            old.weights if weights is None else tuple(dec(w) for w in weights),
            old.bias if bias is None else dec(bias),
        )
        choices = dict(self.choices)
        choices[edge] = new
        return Assignment(choices)


def membership(theta: Assignment, params: ParamSpace) -> bool:
    """Whether every weight and bias of ``theta`` lies in its set.

    Raises :class:`MembershipError` when ``theta`` and ``params`` do not
    describe the same edges or dimensions.  The continuous marker accepts
    every assignment.
    """
    if params.continuous:
        return True
    if set(theta.choices) != set(params.edges):
        missing = set(params.edges) - set(theta.choices)
        extra = set(theta.choices) - set(params.edges)
        raise MembershipError(f"edge sets differ (missing {sorted(missing)}, extra {sorted(extra)})")
    ok = True
    for edge, space in params.edges.items():
        choice = theta.choices[edge]
        if len(choice.weights) != len(space.weights):
            raise MembershipError(
                f"edge {edge}: {len(choice.weights)} weights given, {len(space.weights)} expected"
            )
        if choice.bias not in space.biases:
            ok = False
        for w, allowed in zip(choice.weights, space.weights):
            if w not in allowed:
                ok = False
    return ok
