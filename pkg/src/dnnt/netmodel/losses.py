"""Loss functions.

A loss is called as ``loss(outputs, y, index)`` where ``outputs`` is the
network output vector (ordered like ``Network.outputs``), ``y`` the target
vector and ``index`` the position of the data point in the dataset.  Most
losses ignore ``index``; the probe loss of emitted continuous instances uses
it to tell original points from probe points.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactnum import ExactDec, dec
from .network import Edge

_ZERO = ExactDec(0)


class Loss:
    name: str = ""

    def __call__(self, outputs, y, index: int = 0) -> ExactDec:  # pragma: no cover
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"type": self.name}

    def upper_bound(self):
        """Largest value the loss can take, or ``None`` if data dependent."""
        return None


@dataclass(frozen=True)
class SumSquares(Loss):
    name = "sum_squares"

    def __call__(self, outputs, y, index=0):
        total = _ZERO
        for a, b in zip(outputs, y):
            diff = a - b
            total = total + diff * diff
        return total


@dataclass(frozen=True)
class SlpThreshold(Loss):
    """0 if the output equals 1 and so does the target, 1 if positive, else 2."""

    name = "slp_threshold"

    def __call__(self, outputs, y, index=0):
        alpha, target = outputs[0], y[0]
        if alpha == 1 and target == 1:
            return ExactDec(0)
        if alpha > 0:
            return ExactDec(1)
        return ExactDec(2)

    def upper_bound(self):
        return 2


@dataclass(frozen=True)
class CspDecode(Loss):
    """Decode each output ``f`` as ``(f mod 2n, (f - f mod 2n) / 2n)``.

    ``allowed[t]`` holds the admissible decoded pairs (1-based alphabet
    positions) for output ``t``.  Returns 1 when every output decodes into
    its allowed set and 2 otherwise, including non-integral or out-of-range
    decodes.
    """

    alphabet_size: int
    allowed: tuple[frozenset, ...]

    name = "csp_decode"

    def decode(self, f: ExactDec):
        if not f.is_integer():
            return None
        base = 2 * self.alphabet_size
        ell = f.mantissa % base
        m = (f.mantissa - ell) // base
        return ell, m

    def __call__(self, outputs, y, index=0):
        for f, pairs in zip(outputs, self.allowed):
            if self.decode(f) not in pairs:
                return ExactDec(2)
        return ExactDec(1)

    def upper_bound(self):
        return 2

    def to_dict(self):
        return {
            "type": self.name,
            "alphabet_size": self.alphabet_size,
            "allowed": [sorted([a, b] for a, b in pairs) for pairs in self.allowed],
        }


@dataclass(frozen=True)
class Probe:
    """One probe point of an emitted continuous instance.

    The probe is satisfied when every ``path`` vertex outputs ``f_value``,
    every ``upstream`` vertex outputs 0, and the ``head`` output equals
    ``a * f_value + o`` for some ``a`` in ``allowed`` and ``o`` in ``offsets``.
    """

    edge: Edge
    dim: int
    f_value: ExactDec
    head: str
    path: tuple[str, ...]
    upstream: tuple[str, ...]
    allowed: tuple[ExactDec, ...]
    offsets: tuple[ExactDec, ...] = (ExactDec(0),)


@dataclass(frozen=True)
class CnntProbe(Loss):
    """Loss of an instance produced by the discrete-to-continuous reduction.

    Points ``0 .. n_base-1`` are the original data: ``base`` is applied to
    the outputs listed in ``base_outputs``.  Point ``n_base + r`` is probe
    ``r``: loss 1 when the probe is satisfied, ``penalty`` otherwise.
    """

    base: Loss
    outputs: tuple[str, ...]
    base_outputs: tuple[str, ...]
    n_base: int
    probes: tuple[Probe, ...]
    penalty: ExactDec

    name = "cnnt_probe"

    def __post_init__(self):
        pos = {v: i for i, v in enumerate(self.outputs)}
        object.__setattr__(self, "_pos", pos)

    def _value(self, outputs, vertex):
        return outputs[self._pos[vertex]]

    def probe_satisfied(self, probe: Probe, outputs) -> bool:
        f = probe.f_value
        if any(self._value(outputs, q) != f for q in probe.path):
            return False
        if any(self._value(outputs, q) != 0 for q in probe.upstream):
            return False
        zv = self._value(outputs, probe.head)
        return any(zv == a * f + o for a in probe.allowed for o in probe.offsets)

    def __call__(self, outputs, y, index=0):
        if index < self.n_base:
            picked = [self._value(outputs, t) for t in self.base_outputs]
            return self.base(picked, [y[self._pos[t]] for t in self.base_outputs], index)
        probe = self.probes[index - self.n_base]
        return ExactDec(1) if self.probe_satisfied(probe, outputs) else self.penalty

    def to_dict(self):
        return {
            "type": self.name,
            "base": self.base.to_dict(),
            "outputs": list(self.outputs),
            "base_outputs": list(self.base_outputs),
            "n_base": self.n_base,
            "penalty": str(self.penalty),
            "probes": [
                {
                    "edge": list(p.edge),
                    "dim": p.dim,
                    "f_value": str(p.f_value),
                    "head": p.head,
                    "path": list(p.path),
                    "upstream": list(p.upstream),
                    "allowed": [str(a) for a in p.allowed],
                    "offsets": [str(o) for o in p.offsets],
                }
                for p in self.probes
            ],
        }


def loss_from_dict(data: dict) -> Loss:
    kind = data.get("type")
    if kind == SumSquares.name:
        return SumSquares()
    if kind == SlpThreshold.name:
        return SlpThreshold()
    if kind == CspDecode.name:
        return CspDecode(
            alphabet_size=int(data["alphabet_size"]),
            allowed=tuple(frozenset((int(a), int(b)) for a, b in pairs) for pairs in data["allowed"]),
        )
    if kind == CnntProbe.name:
        return CnntProbe(
            base=loss_from_dict(data["base"]),
            outputs=tuple(data["outputs"]),
            base_outputs=tuple(data["base_outputs"]),
            n_base=int(data["n_base"]),
            penalty=dec(data["penalty"]),
            probes=tuple(
                Probe(
                    edge=tuple(p["edge"]),
                    dim=int(p["dim"]),
                    f_value=dec(p["f_value"]),
                    head=p["head"],
                    path=tuple(p["path"]),
                    upstream=tuple(p["upstream"]),
                    allowed=tuple(dec(a) for a in p["allowed"]),
                    offsets=tuple(dec(o) for o in p["offsets"]),
                )
                for p in data["probes"]
            ),
        )
    raise ValueError(f"unknown loss type {kind!r}")
