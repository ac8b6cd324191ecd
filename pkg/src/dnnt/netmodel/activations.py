"""Activation functions.

All activations map an :class:`ExactDec` to an :class:`ExactDec`.  ``Wrapped``
is the magnitude-gated activation emitted by the discrete-to-continuous
reduction.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from ..errors import ActivationError, NonIntegerError
from ..exactnum import ExactDec, dec, dec_activation, slp_mul_activation
from .network import Edge

_ZERO = ExactDec(0)


class Activation:
    name: str = ""

    def __call__(self, z: ExactDec) -> ExactDec:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"type": self.name}


@dataclass(frozen=True)
class Identity(Activation):
    name = "identity"

    def __call__(self, z):
        return z


@dataclass(frozen=True)
class Relu(Activation):
    name = "relu"

    def __call__(self, z):
        return z if z.mantissa > 0 else _ZERO


@dataclass(frozen=True)
class SlpMul(Activation):
    """``floor(z) * frac(z) * 10**len(frac(z))``."""

    name = "slp_mul"

    def __call__(self, z):
        return slp_mul_activation(z)


@dataclass(frozen=True)
class DecShift(Activation):
    """Integer ``a`` to ``a * 10**-digits(a)``; undefined off the integers."""

    name = "dec_shift"

    def __call__(self, z):
        try:
            return dec_activation(z)
        except NonIntegerError:
            raise ActivationError(f"dec_shift needs an integer input, got {z}", value=z) from None


@dataclass(frozen=True)
class Interval:
    """Closed magnitude interval tagged with the probe slot it recognises.

    ``on_path`` says whether the owning vertex passes values in this interval
    through (True) or zeroes them (False).
    """

    low: ExactDec
    high: ExactDec
    edge: Edge
    dim: int
    on_path: bool


@dataclass(frozen=True)
class Wrapped(Activation):
    """Gate ``base`` by magnitude.

    ``|z| < threshold`` -> ``base(z)``; ``z`` inside a recognised interval ->
    ``z`` if the vertex is on that interval's path, else 0; anything else
    passes unchanged.
    """

    base: Activation
    threshold: ExactDec
    intervals: tuple[Interval, ...]
    _lows: tuple = field(init=False, repr=False, compare=False)

    name = "wrapped"

    def __post_init__(self):
        ordered = tuple(sorted(self.intervals, key=lambda iv: iv.low))
        object.__setattr__(self, "intervals", ordered)
        object.__setattr__(self, "_lows", tuple(iv.low for iv in ordered))

    def find(self, z: ExactDec) -> Interval | None:
        pos = bisect.bisect_right(self._lows, z) - 1
        if pos >= 0 and z <= self.intervals[pos].high:
            return self.intervals[pos]
        return None

    def __call__(self, z):
        if abs(z) < self.threshold:
            return self.base(z)
        hit = self.find(z)
        if hit is not None and not hit.on_path:
            return _ZERO
        return z

    def to_dict(self):
        return {
            "type": self.name,
            "base": self.base.to_dict(),
            "threshold": str(self.threshold),
            "intervals": [
                {
                    "low": str(iv.low),
                    "high": str(iv.high),
                    "edge": list(iv.edge),
                    "dim": iv.dim,
                    "on_path": iv.on_path,
                }
                for iv in self.intervals
            ],
        }


_SIMPLE = {cls.name: cls for cls in (Identity, Relu, SlpMul, DecShift)}


def activation_from_dict(data: dict) -> Activation:
    kind = data.get("type")
    if kind in _SIMPLE:
        return _SIMPLE[kind]()
    if kind == Wrapped.name:
        return Wrapped(
            base=activation_from_dict(data["base"]),
            threshold=dec(data["threshold"]),
            intervals=tuple(
                Interval(
                    low=dec(iv["low"]),
                    high=dec(iv["high"]),
                    edge=tuple(iv["edge"]),
                    dim=int(iv["dim"]),
                    on_path=bool(iv["on_path"]),
                )
                for iv in data["intervals"]
            ),
        )
    raise ValueError(f"unknown activation type {kind!r}")
