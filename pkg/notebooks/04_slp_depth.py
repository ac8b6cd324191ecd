"""
Straight-line programs in deep networks
=======================================

A program of length ``l`` becomes a restricted network of depth ``O(l)``
whose single forward pass computes the program's value exactly, even when
that value has thousands of digits.
"""

# %%
from dnnt.evaluator import decide, forward
from dnnt.netmodel import Assignment, EdgeChoice
from dnnt.reductions import Slp, shift_gadget_applies, slp_to_dnnt, slp_values


def only_assignment(inst):
    return Assignment(
        {e: EdgeChoice(tuple(ws[0] for ws in sp.weights), sp.biases[0]) for e, sp in inst.params.edges.items()}
    )


# repeated squaring: a_1 = 2, a_{i+1} = a_i^2
prog = Slp((("+", 0, 0),) + tuple(("*", i, i) for i in range(1, 12)))
inst = slp_to_dnnt(prog)
print("vertices", len(inst.network.vertices), "depth", inst.network.depth)
out = forward(inst, only_assignment(inst), (1,))
print("output bits", out["h12"].mantissa.bit_length(), "exact", out["h12"] == slp_values(prog)[-1])
print("n_P > 0:", decide(inst, only_assignment(inst)))

# %% [markdown]
# The default gadget splits each multiplicand into positive and negative
# parts so that negative values and trailing zeros are handled.  The
# single-shift gadget is kept for comparison and fails on ``2 * (-1)``.

# %%
neg = Slp((("+", 0, 0), ("-", 0, 1), ("*", 1, 2)))
print("applies:", shift_gadget_applies(neg))
for gadget in ("robust", "shift"):
    net = slp_to_dnnt(neg, gadget=gadget)
    print(gadget, forward(net, only_assignment(net), (1,))["h3"])
