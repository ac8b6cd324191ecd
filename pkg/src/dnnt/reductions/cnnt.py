"""Discrete instances to continuous ones (all parameters real).

The emitted instance keeps the graph, makes every non-source vertex an
output and appends one probe point per (edge, dimension) slot.  A probe
sends a huge value ``f(e, i)`` along an isolating path to the edge's tail
and the loss checks that the head reads ``a * f(e, i)`` for an allowed
weight ``a``.  Failing a probe costs more than the whole margin, so any
continuous solution within ``gamma'`` must use admissible weights.

Inputs gain two coordinates: ``d+1`` is a constant-1 channel carrying the
first-layer bias and ``d+2`` is the probe channel.
"""

from __future__ import annotations

from ..errors import ActivationError, PreconditionError
from ..exactnum import ExactDec, num_digits
from ..netmodel import (
    CONTINUOUS,
    Assignment,
    CnntProbe,
    DataPoint,
    Dataset,
    DecShift,
    EdgeChoice,
    Identity,
    Instance,
    Interval,
    Network,
    ParamSpace,
    Probe,
    Relu,
    Wrapped,
)

_ZERO = ExactDec(0)


def probe_value(idx: int, M: int) -> int:
    """``f(idx) = 10**M * (M+1)**(idx+1)``; consecutive values differ by more
    than ``10**M`` and their intervals ``[f, M*f]`` are disjoint."""
    return 10**M * (M + 1) ** (idx + 1)


def _magnitude_bound(src: Instance) -> int:
    """Upper bound on ``|z|`` at every vertex over the original data, for any
    parameter choice in the space."""
    net = src.network
    acts = src.activations
    best = _ZERO
    for p in src.dataset.points:
        z = {}
        for v in net.topological_order:
            if v == net.source:
                continue
            total = _ZERO
            for e in net.in_edges[v]:
                sp = src.params[e]
                wmax = [max(abs(w) for w in ws) for ws in sp.weights]
                bmax = max(abs(b) for b in sp.biases)
                if e[0] == net.source:
                    total += sum(w * abs(x) for w, x in zip(wmax, p.x)) + bmax
                else:
                    total += wmax[0] * z[e[0]] + bmax
            act = acts[v]
            if isinstance(act, (Identity, Relu)):
                z[v] = total
            elif isinstance(act, DecShift):
                z[v] = ExactDec(1)
            else:
                raise PreconditionError(
                    f"cannot bound values through activation {act.name} at {v}; only identity, relu and dec_shift are supported"
                )
            best = max(best, total, z[v])
    return _ceil(best)


def _ceil(x: ExactDec) -> int:
    return -((-x.mantissa) // 10**x.scale)


def _check(src: Instance) -> None:
    if not src.is_discrete or src.params.continuous:
        raise PreconditionError("source instance must be discrete")
    for e, sp in src.params.edges.items():
        for v in (*(w for ws in sp.weights for w in ws), *sp.biases):
            if not v.is_integer():
                raise PreconditionError(f"edge {e}: parameter {v} is not an integer; scale the instance first")
        if e[0] != src.network.source and tuple(sp.biases) != (_ZERO,):
            raise PreconditionError(f"edge {e}: biases of non-first-layer edges must be exactly {{0}}")
    for v, act in src.activations.items():
        try:
            ok = act(_ZERO) == 0
        except ActivationError:
            ok = False
        if not ok:
            raise PreconditionError(f"activation {act.name} at {v} does not map 0 to 0")


def isolating_path(src: Instance, edge) -> tuple[str, ...]:
    """Shortest path from the source to the tail of ``edge`` that avoids the
    head's other in-neighbours (source included in the result)."""
    net = src.network
    u, v = edge
    if u == net.source:
        return (u,)
    others = frozenset(net.predecessors[v]) - {u}
    if net.source in others:
        raise PreconditionError(f"edge {edge}: head also has an edge from the source, so no probe can isolate it")
    path = net.shortest_path(u, avoid=others)
    if path is None:
        raise PreconditionError(f"edge {edge}: no path from the source to {u} avoids the other in-neighbours of {v}")
    return path


def dnnt_to_cnnt(src: Instance) -> Instance:
    """Emit the continuous instance; see the module docstring.

    ``M0`` is the largest absolute number in the input or reachable on the
    original data, ``M = M0 * max(2, max in-degree)`` and the activation
    threshold is ``10**M``.
    """
    _check(src)
    net = src.network
    d = src.dataset.d
    s = net.source
    edges = tuple(net.edges)
    numbers = [abs(v) for sp in src.params.edges.values() for ws in (*sp.weights, sp.biases) for v in ws]
    numbers += [abs(v) for p in src.dataset.points for v in (*p.x, *p.y)]
    m0 = max([1, _magnitude_bound(src)] + [_ceil(n) for n in numbers])
    delta = max((len(net.in_edges[v]) for v in net.vertices if v != s), default=1)
    M = m0 * max(2, delta)
    threshold = ExactDec(10**M)

    paths = {e: isolating_path(src, e) for e in edges}
    for e, path in paths.items():
        for a, b in zip(path[1:], path[2:]):
            if tuple(src.params[(a, b)].weights[0]) != (ExactDec(1),):
                raise PreconditionError(f"edge {(a, b)} lies on the probe path of {e} but its weight set is not {{1}}")

    outputs = tuple(v for v in net.vertices if v != s)
    intervals: dict[str, list[Interval]] = {v: [] for v in outputs}
    probes = []
    points = []
    n_base = len(src.dataset.points)
    zeros = (0,) * len(outputs)
    for ei, e in enumerate(edges):
        u, v = e
        path = paths[e]
        on_path = set(path[1:]) | {v}
        upstream = tuple(sorted(net.ancestors(v) - set(path) - {s}))
        sp = src.params[e]
        for i in range(1, d + 2):
            f = probe_value(ei * (d + 1) + i - 1, M)
            fd = ExactDec(f)
            for q in outputs:
                flag = q in on_path
                intervals[q].append(Interval(fd, fd * M, e, i, flag))
                intervals[q].append(Interval(-(fd * M), -fd, e, i, flag))
            if u == s:
                allowed = sp.weights[i - 1] if i <= d else sp.biases
                x = tuple(f if r == i else 0 for r in range(1, d + 3))
            else:
                allowed = sp.weights[0]
                x = (0,) * (d + 1) + (f,)
            probes.append(Probe(e, i, fd, v, tuple(path[1:]), upstream, tuple(allowed), (_ZERO,)))
            points.append(DataPoint.of(x, zeros))

    base_points = []
    pos = {t: outputs.index(t) for t in net.outputs}
    for p in src.dataset.points:
        y = [0] * len(outputs)
        for t, val in zip(net.outputs, p.y):
            y[pos[t]] = val
        base_points.append(DataPoint.of((*p.x, 1, 0), y))

    n_slots = len(edges) * (d + 1)
    penalty = (2 + src.gamma) * len(net.vertices) * n_slots * max(1, n_base)
    loss = CnntProbe(src.loss, outputs, tuple(net.outputs), n_base, tuple(probes), penalty)
    activations = {v: Wrapped(src.activations[v], threshold, tuple(intervals[v])) for v in outputs}
    meta = dict(src.meta)
    meta.update({"reduction": "dnnt-to-cnnt", "M": M, "M0": m0, "threshold_digits": num_digits(10**M)})
    return Instance(
        network=Network(net.vertices, s, (), outputs, edges),
        dataset=Dataset(tuple(base_points) + tuple(points), d + 2),
        activations=activations,
        loss=loss,
        params=ParamSpace.real(),
        gamma=src.gamma + n_slots,
        kind=CONTINUOUS,
        meta=meta,
    )


def lift_assignment(src: Instance, theta: Assignment) -> Assignment:
    """Continuous parameters that reproduce ``theta``: first-layer edges get
    ``(w, b, 1)`` with native bias 0, deeper edges keep ``(w, b)``."""
    s = src.network.source
    choices = {}
    for e in src.network.edges:
        c = theta[e]
        if e[0] == s:
            choices[e] = EdgeChoice((*c.weights, c.bias, ExactDec(1)), _ZERO)
        else:
            choices[e] = EdgeChoice(c.weights, c.bias)
    return Assignment(choices)
