"""Datasets, complete NNT instances and structural validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..exactnum import ExactDec, dec
from .activations import Activation, Wrapped
from .losses import CnntProbe, CspDecode, Loss
from .network import Network
from .params import ParamSpace

DISCRETE = "discrete"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class DataPoint:
    x: tuple[ExactDec, ...]
    y: tuple[ExactDec, ...]

    @classmethod
    def of(cls, x, y) -> "DataPoint":
        return cls(tuple(dec(v) for v in x), tuple(dec(v) for v in y))


@dataclass(frozen=True)
class Dataset:
    points: tuple[DataPoint, ...]
    d: int
    m: int = 1

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class Instance:
    """A complete (D-)NNT instance.

    ``meta`` is free-form provenance (generator name, seed, source problem)
    carried through serialization; it never affects semantics.
    """

    network: Network
    dataset: Dataset
    activations: Mapping[str, Activation]
    loss: Loss
    params: ParamSpace
    gamma: ExactDec
    kind: str = DISCRETE
    meta: Mapping = field(default_factory=dict, compare=False)

    @property
    def is_discrete(self) -> bool:
        return self.kind == DISCRETE


def _check_network(net: Network, out: list[str]) -> bool:
    vs = set(net.vertices)
    if len(vs) != len(net.vertices):
        out.append("duplicate vertex ids")
    if net.source not in vs:
        out.append(f"source {net.source!r} is not a vertex")
        return False
    roles = [net.source, *net.hidden, *net.outputs]
    if len(set(roles)) != len(roles):
        out.append("source, hidden and output roles overlap")
    if set(roles) != vs:
        out.append("vertices are not partitioned into source, hidden and outputs")
    if not net.outputs:
        out.append("no output vertices")
    sound = True
    seen = set()
    for u, v in net.edges:
        if u not in vs or v not in vs:
            out.append(f"edge ({u}, {v}) references an unknown vertex")
            sound = False
        if u == v:
            out.append(f"self-loop at {u}")
        if (u, v) in seen:
            out.append(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    if not sound:
        return False
    if net.predecessors.get(net.source):
        out.append("source has incoming edges")
    if not net.is_acyclic():
        out.append("acyclicity violated")
        return False
    for t in net.outputs:
        if t not in net.distances:
            out.append(f"output {t!r} is not reachable from the source")
    return True


def validate(instance: Instance) -> list[str]:
    """List every invariant violation of ``instance`` (empty when valid)."""
    out: list[str] = []
    net, data, params = instance.network, instance.dataset, instance.params
    net_ok = _check_network(net, out)

    if data.m != 1:
        out.append(f"per-output dimension must be 1, got {data.m}")
    for i, p in enumerate(data.points):
        if len(p.x) != data.d:
            out.append(f"point {i}: x has length {len(p.x)}, expected {data.d}")
        if len(p.y) != data.m * len(net.outputs):
            out.append(f"point {i}: y has length {len(p.y)}, expected {data.m * len(net.outputs)}")

    non_source = set(net.vertices) - {net.source}
    if set(instance.activations) != non_source:
        out.append("activation map does not cover exactly the non-source vertices")
    for v, act in instance.activations.items():
        if isinstance(act, Wrapped):
            _check_wrapped(v, act, out)

    if instance.kind not in ("discrete", "continuous"):
        out.append(f"unknown kind {instance.kind!r}")
    if params.continuous:
        if instance.kind == "discrete":
            out.append("discrete instance carries a continuous parameter marker")
    else:
        if set(params.edges) != set(net.edges):
            out.append("parameter space does not cover exactly the edge set")
        for e, space in params.edges.items():
            want = data.d if e[0] == net.source else 1
            if len(space.weights) != want:
                out.append(f"edge {e}: {len(space.weights)} weight sets, expected {want}")
            if any(len(w) == 0 for w in space.weights):
                out.append(f"edge {e}: empty weight set")
            if len(space.biases) == 0:
                out.append(f"edge {e}: empty bias set")

    loss = instance.loss
    if isinstance(loss, CspDecode) and len(loss.allowed) != len(net.outputs):
        out.append("csp_decode constraint count differs from the number of outputs")
    if isinstance(loss, CnntProbe):
        if tuple(loss.outputs) != tuple(net.outputs):
            out.append("cnnt_probe output order differs from the network outputs")
        if loss.n_base + len(loss.probes) != len(data.points):
            out.append("cnnt_probe probe count does not match the dataset")
        if net_ok and any(q not in set(net.vertices) for p in loss.probes for q in (*p.path, *p.upstream, p.head)):
            out.append("cnnt_probe references an unknown vertex")
    return out


def _check_wrapped(v: str, act: Wrapped, out: list[str]) -> None:
    th = act.threshold
    prev_high = None
    for iv in act.intervals:
        if iv.low > iv.high:
            out.append(f"{v}: empty interval [{iv.low}, {iv.high}]")
        if not (iv.low >= th or iv.high <= -th):
            out.append(f"{v}: interval [{iv.low}, {iv.high}] overlaps the threshold band")
        if prev_high is not None and iv.low <= prev_high:
            out.append(f"{v}: intervals overlap near {iv.low}")
        prev_high = iv.high
