"""
From discrete to continuous parameters
======================================

The emitter turns a discrete instance into one whose parameters range over
all reals.  Probe points force every edge to use a weight from its original
finite set, and any other weight costs more than the whole loss margin.
"""

# %%
from dnnt.evaluator import total_loss
from dnnt.netmodel import Assignment, EdgeChoice
from dnnt.reductions import SubsetSumInstance, dnnt_to_cnnt, lift_assignment, subset_sum_to_dnnt
from dnnt.solvers import brute_force_solve

inst = subset_sum_to_dnnt(SubsetSumInstance((1, 2), 3))
theta = brute_force_solve(inst).theta
cont = dnnt_to_cnnt(inst)
print("points", len(cont.dataset.points), "d", cont.dataset.d, "M", cont.meta["M"], "gamma'", cont.gamma)

# %%
lifted = lift_assignment(inst, theta)
print("lifted loss", total_loss(cont, lifted), "<= gamma'", cont.gamma)

# %% [markdown]
# Nudge one weight off its set and the penalty dwarfs the margin.

# %%
choices = dict(lifted.choices)
e = ("s", "h1")
choices[e] = EdgeChoice((lifted[e].weights[0] + 1, *lifted[e].weights[1:]), lifted[e].bias)
print("perturbed loss", total_loss(cont, Assignment(choices)))
