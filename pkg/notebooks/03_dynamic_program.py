"""
The pseudo-polynomial dynamic program
=====================================

For two-layer networks with natural parameters the solver tabulates the
reachable output vectors instead of enumerating assignments.
"""

# %%
import random

from dnnt.netmodel import random_two_layer
from dnnt.solvers import brute_force_solve, dp_solve, dp_tables

rng = random.Random(7)
inst = random_two_layer(rng, max_d=3, max_k=3, max_points=2, max_value=5)
tables = dp_tables(inst)
print("W_max", tables.W_max, "M", tables.M, "table entries", tables.entry_count())

# %%
dp, brute = dp_solve(inst, tables), brute_force_solve(inst)
print("dp   ", dp.loss, dp.decision)
print("brute", brute.loss, brute.decision, "after", brute.work, "assignments")

# %% [markdown]
# The table never outgrows ``(M+1)^n0 * (k(d+1) + k + 1)``.

# %%
worst = 0.0
for _ in range(200):
    inst = random_two_layer(rng)
    t = dp_tables(inst)
    d, k, n0 = inst.dataset.d, len(inst.network.hidden), len(inst.dataset.points)
    cube = (t.M + 1) ** n0
    worst = max(worst, t.entry_count() / (cube * k * (d + 1) + cube * (k + 1)))
print("largest fraction of the envelope used:", round(worst, 4))
