"""
Subset sum as discrete training
===============================

A one-hidden-layer network with weight sets ``{0, a_i}`` can fit the single
data point ``(1, T)`` exactly iff some subset of the items sums to ``T``.
"""

# %%
from dnnt.evaluator import forward
from dnnt.reductions import SubsetSumInstance, extract_solution, oracle_decide, subset_sum_to_dnnt
from dnnt.solvers import brute_force_solve

src = SubsetSumInstance((3, 5, 8), 8)
inst = subset_sum_to_dnnt(src)
for e in inst.network.edges:
    print(e, [list(map(str, ws)) for ws in inst.params[e].weights])

# %%
result = brute_force_solve(inst)
print("loss", result.loss, "decision", result.decision, "assignments tried", result.work)
chosen = extract_solution(src, result.theta)
print("subset", [src.items[i] for i in chosen])
print("network output", forward(inst, result.theta, (1,)))

# %% [markdown]
# The brute-force solver and the direct 2^n oracle agree on no-instances too.

# %%
no = SubsetSumInstance((2, 4, 6), 7)
print(oracle_decide(no).decision, brute_force_solve(subset_sum_to_dnnt(no)).decision)
