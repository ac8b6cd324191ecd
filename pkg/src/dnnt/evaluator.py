"""Exact forward evaluation, training loss and the gamma decision."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ActivationError, MembershipError
from .exactnum import ExactDec, dec
from .netmodel import Assignment, Instance, membership

_ZERO = ExactDec(0)

__all__ = ["EvalCounter", "forward", "total_loss", "decide", "point_losses"]


@dataclass
class EvalCounter:
    """Work counters; pass one in to observe how much a call evaluated."""

    topo_passes: int = 0
    vertex_visits: int = 0
    edge_visits: int = 0


def _check(instance: Instance, theta: Assignment) -> None:
    if not membership(theta, instance.params):
        raise MembershipError("assignment is not a member of the parameter space")


def _run(instance, order, theta, x, counter):
    net = instance.network
    src = net.source
    in_edges = net.in_edges
    acts = instance.activations
    choices = theta.choices
    z = {src: x}
    for v in order:
        if v == src:
            continue
        total = _ZERO
        for e in in_edges[v]:
            c = choices[e]
            u = e[0]
            if u == src:
                s = _ZERO
                for w, xi in zip(c.weights, x):
                    if w.mantissa and xi.mantissa:
                        s = s + w * xi
            else:
                s = c.weights[0] * z[u]
            total = total + s + c.bias
            if counter is not None:
                counter.edge_visits += 1
        try:
            z[v] = acts[v](total)
        except ActivationError as exc:
            raise ActivationError(str(exc), vertex=v, value=total) from None
        if counter is not None:
            counter.vertex_visits += 1
    return z


def forward(instance: Instance, theta: Assignment, x, *, full: bool = False, check: bool = True, counter=None):
    """Evaluate ``f_theta(x)``.

    Returns ``{t: z_t}`` over the output vertices in output order; with
    ``full=True`` returns ``(outputs, z)`` where ``z`` maps every vertex to its
    value (the source maps to the input vector).
    """
    if check:
        _check(instance, theta)
    x = tuple(dec(v) for v in x)
    if len(x) != instance.dataset.d:
        raise MembershipError(f"input has length {len(x)}, expected {instance.dataset.d}")
    order = instance.network.topological_order
    if counter is not None:
        counter.topo_passes += 1
    z = _run(instance, order, theta, x, counter)
    outputs = {t: z[t] for t in instance.network.outputs}
    return (outputs, z) if full else outputs


def point_losses(instance: Instance, theta: Assignment, *, check: bool = True, counter=None) -> list[ExactDec]:
    """Loss of every data point, in dataset order."""
    if check:
        _check(instance, theta)
    net = instance.network
    order = net.topological_order
    outputs = net.outputs
    loss = instance.loss
    result = []
    for i, p in enumerate(instance.dataset.points):
        if counter is not None:
            counter.topo_passes += 1
        z = _run(instance, order, theta, p.x, counter)
        result.append(loss([z[t] for t in outputs], p.y, i))
    return result


def total_loss(instance: Instance, theta: Assignment, *, check: bool = True, counter=None) -> ExactDec:
    """``sum_i L(f_theta(x_i), y_i)`` computed exactly."""
    total = _ZERO
    for value in point_losses(instance, theta, check=check, counter=counter):
        total = total + value
    return total


def decide(instance: Instance, theta: Assignment, *, check: bool = True, counter=None) -> bool:
    """Whether ``theta`` achieves total loss at most ``gamma``."""
    return total_loss(instance, theta, check=check, counter=counter) <= instance.gamma
