"""Pseudo-polynomial dynamic program for two-layer single-output instances.

Keys are vectors ``m`` with one natural number per data point.  ``DimDP``
tracks the partial pre-activation sums of one hidden neuron dimension by
dimension (the bias is dimension ``d+1`` with constant input 1);
``FinalDP`` tracks the partial output sums neuron by neuron.  Tables are
sparse dicts mapping a key to ``(parent_key, choice)`` so a witness is
recovered by walking parents.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InfeasibleWitness, PreconditionError
from ..exactnum import ExactDec, dec
from ..evaluator import total_loss
from ..netmodel import (
    Assignment,
    DataPoint,
    Dataset,
    EdgeChoice,
    EdgeSpace,
    Identity,
    Instance,
    ParamSpace,
    Relu,
    SlpMul,
    SumSquares,
)
from .brute import SolveResult

Key = tuple[int, ...]

HIDDEN_ACTIVATIONS = (Identity, Relu, SlpMul)


@dataclass
class DpTables:
    """``dim_dp[q][j]`` for neuron ``q`` (0-based) and dimension ``j`` in 1..d+1;
    ``final_dp[q]`` for ``q`` in 0..k."""

    W_max: int
    M: int
    dim_dp: list[dict[int, dict]] = field(default_factory=list)
    final_dp: list[dict] = field(default_factory=list)

    def entry_count(self) -> int:
        n = sum(len(t) for per_q in self.dim_dp for t in per_q.values())
        return n + sum(len(t) for t in self.final_dp)


@dataclass(frozen=True)
class _Shape:
    source: str
    hidden: tuple[str, ...]
    output: str
    d: int
    xs: tuple[tuple[int, ...], ...]


def _natural(value: ExactDec, what: str) -> int:
    if not value.is_integer() or value.mantissa < 0:
        raise PreconditionError(f"{what} must be a natural number, got {value}")
    return value.mantissa


def _shape(instance: Instance) -> _Shape:
    if not instance.is_discrete or instance.params.continuous:
        raise PreconditionError("dynamic program needs a discrete instance")
    net = instance.network
    if len(net.outputs) != 1:
        raise PreconditionError(f"dynamic program needs a single output vertex, got {len(net.outputs)}")
    s, t = net.source, net.outputs[0]
    hidden = tuple(net.hidden)
    if not hidden:
        raise PreconditionError("dynamic program needs at least one hidden neuron")
    want = {(s, h) for h in hidden} | {(h, t) for h in hidden}
    if set(net.edges) != want:
        raise PreconditionError("network is not two-layer: edges must be exactly s->h and h->t for every hidden h")
    for h in hidden:
        if not isinstance(instance.activations[h], HIDDEN_ACTIVATIONS):
            raise PreconditionError(f"hidden activation at {h} must be identity, relu or slp_mul")
    if not isinstance(instance.activations[t], Identity):
        raise PreconditionError("output activation must be the identity")
    for e, space in instance.params.edges.items():
        for ws in space.weights:
            for w in ws:
                _natural(w, f"weight on {e}")
        for b in space.biases:
            _natural(b, f"bias on {e}")
    xs = tuple(
        tuple(_natural(v, f"input entry of point {i}") for v in p.x) for i, p in enumerate(instance.dataset.points)
    )
    if not xs:
        raise PreconditionError("dynamic program needs at least one data point")
    return _Shape(s, hidden, t, instance.dataset.d, xs)


def _act_bound(act, hi: int) -> int:
    # identity and relu are monotone on naturals; slp_mul sends integers to 0
    return 0 if isinstance(act, SlpMul) else hi


def compute_bound_M(instance: Instance) -> tuple[int, int]:
    """``(W_max, M)`` with ``M = d * W_max * k``.

    ``W_max`` bounds every value at every vertex (before and after the
    activation) and every loss value, by interval propagation with the
    largest parameter of each set.  All values are naturals, so the lower
    end of each interval is 0.
    """
    sh = _shape(instance)
    params = instance.params
    W = 0
    out_hi = []
    for x in sh.xs:
        total = 0
        for h in sh.hidden:
            space = params[(sh.source, h)]
            pre = sum(xr * int(max(ws)) for xr, ws in zip(x, space.weights)) + int(max(space.biases))
            post = _act_bound(instance.activations[h], pre)
            second = params[(h, sh.output)]
            total += int(max(second.weights[0])) * post + int(max(second.biases))
            W = max(W, pre, post)
        W = max(W, total)
        out_hi.append(total)
    loss = instance.loss
    bound = loss.upper_bound()
    if bound is not None:
        W = max(W, int(dec(bound).floor()))
    elif isinstance(loss, SumSquares):
        for hi, p in zip(out_hi, instance.dataset.points):
            y = p.y[0]
            worst = max((ExactDec(hi) - y) * (ExactDec(hi) - y), y * y)
            W = max(W, -((-worst.mantissa) // 10**worst.scale))
    else:
        raise PreconditionError(f"no loss bound available for {loss.name}")
    return W, sh.d * W * len(sh.hidden)


def build_dim_dp(instance: Instance, tables: DpTables) -> DpTables:
    """Fill ``dim_dp``: ``dim_dp[q][j][m]`` exists iff some weight prefix
    ``w[1..j]`` of neuron ``q`` gives ``sum_r x_i[r] w[r] = m[i]`` for all i."""
    sh = _shape(instance)
    n0 = len(sh.xs)
    M = tables.M
    tables.dim_dp = []
    for h in sh.hidden:
        space = instance.params[(sh.source, h)]
        columns = [tuple(x[r] for x in sh.xs) for r in range(sh.d)] + [(1,) * n0]
        sets = [tuple(int(w) for w in ws) for ws in space.weights] + [tuple(int(b) for b in space.biases)]
        per_q: dict[int, dict] = {}
        prev: dict = {(0,) * n0: None}
        for j, (col, choices) in enumerate(zip(columns, sets), start=1):
            cur: dict = {}
            for m1 in prev:
                for w in choices:
                    m = tuple(a + w * c for a, c in zip(m1, col))
                    if m in cur or any(v > M for v in m):
                        continue
                    cur[m] = (m1, w)
            per_q[j] = cur
            prev = cur
        tables.dim_dp.append(per_q)
    return tables


def build_final_dp(instance: Instance, tables: DpTables) -> DpTables:
    """Fill ``final_dp``: ``final_dp[q][m]`` exists iff neurons ``1..q`` admit
    parameters whose contributions to the output sum to ``m``."""
    sh = _shape(instance)
    n0 = len(sh.xs)
    M = tables.M
    d1 = sh.d + 1
    final = [{(0,) * n0: None}]
    for q, h in enumerate(sh.hidden):
        act = instance.activations[h]
        second = instance.params[(h, sh.output)]
        ws = tuple(int(w) for w in second.weights[0])
        bs = tuple(int(b) for b in second.biases)
        # sigma(m2) for every pre-activation key, computed once per neuron
        activated = []
        for m2 in tables.dim_dp[q][d1]:
            out = tuple(act(ExactDec(v)) for v in m2)
            if any(not o.is_integer() or o.mantissa < 0 or o.mantissa > M for o in out):
                continue
            activated.append((m2, tuple(o.mantissa for o in out)))
        cur: dict = {}
        for m1 in final[q]:
            for m2, sig in activated:
                for w in ws:
                    for b in bs:
                        m = tuple(a + w * s + b for a, s in zip(m1, sig))
                        if m in cur or any(v > M for v in m):
                            continue
                        cur[m] = (m1, (m2, w, b))
        final.append(cur)
    tables.final_dp = final
    return tables


def _key_loss(instance: Instance, m: Key) -> ExactDec:
    total = ExactDec(0)
    for i, (v, p) in enumerate(zip(m, instance.dataset.points)):
        total = total + instance.loss([ExactDec(v)], p.y, i)
    return total


def _backtrack(instance: Instance, sh: _Shape, tables: DpTables, m: Key) -> Assignment:
    choices = {}
    d1 = sh.d + 1
    for q in range(len(sh.hidden), 0, -1):
        h = sh.hidden[q - 1]
        m, (m2, w2, b2) = tables.final_dp[q][m]
        choices[(h, sh.output)] = EdgeChoice((ExactDec(w2),), ExactDec(b2))
        picks = []
        key = m2
        for j in range(d1, 0, -1):
            key, w = tables.dim_dp[q - 1][j][key]
            picks.append(w)
        picks.reverse()
        choices[(sh.source, h)] = EdgeChoice(tuple(ExactDec(w) for w in picks[:-1]), ExactDec(picks[-1]))
    return Assignment({e: choices[e] for e in instance.network.edges})


def dp_tables(instance: Instance) -> DpTables:
    W, M = compute_bound_M(instance)
    tables = DpTables(W_max=W, M=M)
    build_dim_dp(instance, tables)
    build_final_dp(instance, tables)
    return tables


def dp_solve(instance: Instance, tables: DpTables | None = None) -> SolveResult:
    """Decide a two-layer single-output instance with natural parameters.

    The witness is re-evaluated through the evaluator; a mismatch with the
    loss predicted by the table raises :class:`InfeasibleWitness`.
    """
    sh = _shape(instance)
    if tables is None:
        tables = dp_tables(instance)
    last = tables.final_dp[len(sh.hidden)]
    if not last:
        raise InfeasibleWitness("final table is empty; the bound M is too small for this instance")
    best = best_loss = None
    for m in sorted(last):
        loss = _key_loss(instance, m)
        if best_loss is None or loss < best_loss:
            best, best_loss = m, loss
    theta = _backtrack(instance, sh, tables, best)
    checked = total_loss(instance, theta)
    if checked != best_loss:
        raise InfeasibleWitness(f"witness re-evaluates to {checked}, table predicted {best_loss}")
    return SolveResult(theta, checked, checked <= instance.gamma, "dp", tables.entry_count())


def scale_to_naturals(instance: Instance) -> Instance:
    """Rescale a two-layer instance so every parameter and input is natural.

    Inputs are multiplied by ``C1``, first-layer weights by ``C2``, first
    layer biases by ``C1*C2``, second-layer weights by ``C3`` and second
    layer biases by ``C1*C2*C3`` (powers of ten).  With identity or relu
    hidden units every output scales by ``C = C1*C2*C3``; the sum-of-squares
    loss is preserved by scaling targets by ``C`` and gamma by ``C**2``.
    Negative values cannot be fixed by scaling and are rejected.
    """
    net = instance.network
    params = instance.params
    if params.continuous:
        raise PreconditionError("cannot scale a continuous instance")
    s = net.source
    two_layer = all(
        (u == s and v in net.hidden) or (u in net.hidden and v in net.outputs) for u, v in net.edges
    )
    if not two_layer:
        raise PreconditionError("scaling is defined for two-layer networks (s -> hidden -> outputs) only")

    def scale_of(values):
        return max((v.scale for v in values), default=0)

    def all_values():
        for sp in params.edges.values():
            for ws in sp.weights:
                yield from ws
            yield from sp.biases
        for p in instance.dataset.points:
            yield from p.x

    for v in all_values():
        if v.mantissa < 0:
            raise PreconditionError(f"negative value {v} cannot be scaled to a natural number")
    first = [sp for e, sp in params.edges.items() if e[0] == s]
    second = [sp for e, sp in params.edges.items() if e[0] != s]
    c1 = 10 ** scale_of(v for p in instance.dataset.points for v in p.x)
    c2 = 10 ** scale_of(w for sp in first for ws in sp.weights for w in ws)
    c3 = 10 ** scale_of(w for sp in second for ws in sp.weights for w in ws)
    c = c1 * c2 * c3
    bias_scale = {True: c1 * c2, False: c}
    needs = max(
        scale_of(b * bias_scale[e[0] == s] for b in sp.biases) for e, sp in params.edges.items()
    )
    if needs:
        # biases finer than the weights: refine the first-layer weight scale
        c2 *= 10**needs
        c = c1 * c2 * c3
        bias_scale = {True: c1 * c2, False: c}
    if c == 1:
        return instance
    if not isinstance(instance.loss, SumSquares):
        raise PreconditionError(f"rescaling would change the semantics of loss {instance.loss.name}")
    for h in net.hidden:
        if not isinstance(instance.activations[h], (Identity, Relu)):
            raise PreconditionError(f"activation at {h} is not positively homogeneous; cannot rescale")
    for t in net.outputs:
        if not isinstance(instance.activations[t], (Identity, Relu)):
            raise PreconditionError(f"activation at {t} is not positively homogeneous; cannot rescale")
    edges = {}
    for e, sp in params.edges.items():
        wscale = c2 if e[0] == s else c3
        edges[e] = EdgeSpace(
            tuple(tuple(w * wscale for w in ws) for ws in sp.weights),
            tuple(b * bias_scale[e[0] == s] for b in sp.biases),
        )
    points = tuple(DataPoint(tuple(v * c1 for v in p.x), tuple(v * c for v in p.y)) for p in instance.dataset.points)
    meta = dict(instance.meta)
    meta["scaled_by"] = str(c)
    return Instance(
        network=net,
        dataset=Dataset(points, instance.dataset.d, instance.dataset.m),
        activations=instance.activations,
        loss=instance.loss,
        params=ParamSpace(edges),
        gamma=instance.gamma * (c * c),
        kind=instance.kind,
        meta=meta,
    )
