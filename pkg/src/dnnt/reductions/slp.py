"""Straight-line programs to restricted D-NNT instances.

Vertex ``h<i>`` computes ``a_i`` on the single input ``x = 1`` (``h0`` is the
source).  Addition and subtraction are plain identity neurons.
Multiplication rests on the identity ``slp_mul(b + dec(a)) = b * a``, which
holds when ``a > 0`` has no trailing zero.

Two multiplication gadgets are available:

``"shift"``
    ``h'<r> = dec_shift(h<r>)`` for every ``r`` and
    ``h<i> = slp_mul(h<j> + h'<k>)``.  Correct only while every multiplicand
    ``a_k`` is positive and not divisible by 10.

``"robust"`` (default)
    Splits ``a_k = p - n`` with ``p = relu(a_k)``, ``n = relu(-a_k)`` and
    multiplies by ``10p + 1`` and ``10n + 1`` instead, which are positive and
    end in the digit 1.  Then ``h<i> = (b(10p+1) - b(10n+1)) / 10 = b * a_k``.
"""

from __future__ import annotations

from ..errors import ValidationError
from ..netmodel import DecShift, Identity, Instance, Relu, SlpMul, SlpThreshold
from ._builder import Builder
from .sources import Slp, slp_values

GADGETS = ("robust", "shift")


def slp_to_dnnt(src: Slp, gadget: str = "robust", max_digits: int | None = None) -> Instance:
    """Restricted instance whose output on ``x = 1`` is ``n_P``.

    The single data point is ``(1, 1)`` with the threshold loss and
    ``gamma = 1``, so the instance is a yes-instance iff ``n_P > 0``.  The
    program is first evaluated directly to enforce the digit budget.
    """
    if gadget not in GADGETS:
        raise ValidationError([f"unknown gadget {gadget!r}; choose from {GADGETS}"])
    slp_values(src, max_digits)
    b = Builder("h0", d=1)
    h = [f"h{i}" for i in range(src.length + 1)]

    shifted: dict[int, tuple[str, ...]] = {}

    def single_shift(r: int) -> str:
        if r not in shifted:
            shifted[r] = (b.vertex(f"h'{r}", DecShift()),)
            b.scalar_edge(h[r], shifted[r][0], (1,))
        return shifted[r][0]

    def robust_shift(r: int) -> tuple[str, str]:
        if r not in shifted:
            pos = b.vertex(f"pos{r}", Relu())
            neg = b.vertex(f"neg{r}", Relu())
            b.scalar_edge(h[r], pos, (1,))
            b.scalar_edge(h[r], neg, (-1,))
            up = b.vertex(f"up{r}", DecShift())
            un = b.vertex(f"un{r}", DecShift())
            for part, target in ((pos, up), (neg, un)):
                b.scalar_edge(part, target, (10,))
                b.scalar_edge("h0", target, (1,))
            shifted[r] = (up, un)
        return shifted[r]

    if gadget == "shift":
        # one shifted copy per program value, a_0 included
        single_shift(0)

    for i, (op, j, k) in enumerate(src.instructions, start=1):
        if op in "+-":
            sign = 1 if op == "+" else -1
            b.vertex(h[i], Identity())
            if j == k:
                b.scalar_edge(h[j], h[i], (1 + sign,))
            else:
                b.scalar_edge(h[j], h[i], (1,))
                b.scalar_edge(h[k], h[i], (sign,))
        elif gadget == "shift":
            b.vertex(h[i], SlpMul())
            b.scalar_edge(h[j], h[i], (1,))
            b.scalar_edge(single_shift(k), h[i], (1,))
        else:
            up, un = robust_shift(k)
            mp = b.vertex(f"mp{i}", SlpMul())
            mn = b.vertex(f"mn{i}", SlpMul())
            for target, shift in ((mp, up), (mn, un)):
                b.scalar_edge(h[j], target, (1,))
                b.scalar_edge(shift, target, (1,))
            b.vertex(h[i], Identity())
            b.scalar_edge(mp, h[i], ("0.1",))
            b.scalar_edge(mn, h[i], ("-0.1",))
        if gadget == "shift":
            single_shift(i)

    return b.build(
        outputs=[h[-1]],
        points=[((1,), (1,))],
        loss=SlpThreshold(),
        gamma=1,
        meta={"reduction": "slp", "gadget": gadget, "length": src.length},
    )


def shift_gadget_applies(src: Slp, max_digits: int | None = None) -> bool:
    """Whether every multiplicand is positive and free of trailing zeros."""
    a = slp_values(src, max_digits)
    return all(a[k] > 0 and a[k] % 10 for op, _, k in src.instructions if op == "*")
