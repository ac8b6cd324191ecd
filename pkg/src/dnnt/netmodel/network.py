"""DAG networks with a single source."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter

from ..errors import ValidationError

Edge = tuple[str, str]


@dataclass(frozen=True)
class Network:
    """A directed acyclic graph ``V = {s} + H + T`` with edge list ``E``.

    ``hidden`` and ``outputs`` are ordered; ``outputs`` fixes the order of the
    network output vector.  Structural problems are not raised at
    construction time -- :func:`dnnt.netmodel.validate` reports them.
    """

    vertices: tuple[str, ...]
    source: str
    hidden: tuple[str, ...]
    outputs: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for name in ("vertices", "hidden", "outputs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "edges", tuple((str(u), str(v)) for u, v in self.edges))

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        preds: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            preds.setdefault(v, []).append(u)
        return {v: tuple(p) for v, p in preds.items()}

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            succ.setdefault(u, []).append(v)
        return {v: tuple(s) for v, s in succ.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        ins: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            ins.setdefault(e[1], []).append(e)
        return {v: tuple(es) for v, es in ins.items()}

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Vertices in a topological order, recomputed from the edge list."""
        ts = TopologicalSorter({v: self.predecessors.get(v, ()) for v in self.vertices})
        try:
            return tuple(ts.static_order())
        except CycleError as exc:
            raise ValidationError([f"acyclicity violated: cycle through {exc.args[1]}"]) from None

    def is_acyclic(self) -> bool:
        try:
            self.topological_order
        except ValidationError:
            return False
        return True

    def is_first_layer(self, edge: Edge) -> bool:
        return edge[0] == self.source

    @cached_property
    def distances(self) -> dict[str, int]:
        """Shortest-path distance from the source (unreachable vertices omitted)."""
        dist = {self.source: 0}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for v in self.successors.get(u, ()):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    @cached_property
    def layers(self) -> tuple[tuple[str, ...], ...]:
        by_dist: dict[int, list[str]] = {}
        for v in self.vertices:
            if v in self.distances:
                by_dist.setdefault(self.distances[v], []).append(v)
        return tuple(tuple(by_dist[k]) for k in sorted(by_dist))

    @cached_property
    def width(self) -> int:
        """Maximum layer cardinality."""
        return max((len(layer) for layer in self.layers), default=0)

    @cached_property
    def depth(self) -> int:
        """Longest source-to-output path length (in edges)."""
        longest = {self.source: 0}
        for v in self.topological_order:
            if v == self.source:
                continue
            best = [longest[u] + 1 for u in self.predecessors[v] if u in longest]
            if best:
                longest[v] = max(best)
        return max((longest.get(t, 0) for t in self.outputs), default=0)

    def ancestors(self, v: str) -> set[str]:
        seen: set[str] = set()
        stack = list(self.predecessors.get(v, ()))
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                stack.extend(self.predecessors.get(u, ()))
        return seen

    def shortest_path(self, target: str, avoid=frozenset()) -> tuple[str, ...] | None:
        """BFS path from the source to ``target`` avoiding ``avoid``.

        Ties are broken by lexicographic vertex id so the result is
        reproducible.  Returns ``None`` when no such path exists.
        """
        if target in avoid:
            return None
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            if u == target:
                break
            for w in sorted(self.successors.get(u, ())):
                if w not in parent and w not in avoid:
                    parent[w] = u
                    queue.append(w)
        if target not in parent:
            return None
        path = [target]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return tuple(reversed(path))
