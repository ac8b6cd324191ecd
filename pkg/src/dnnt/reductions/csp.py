"""Binary constraint satisfaction to a one-hidden-layer D-NNT instance.

Symbols are numbered ``g(sigma) = 1..n`` by their position in the alphabet.
Hidden neuron ``h<i>`` carries the value of CSP vertex ``i``; output
``t<e>`` computes ``f_e = g(phi(u)) + 2n * g(phi(v))`` for constraint edge
``e = (u, v)``, which the loss decodes back into the pair.
"""

from __future__ import annotations

from ..errors import InfeasibleWitness
from ..netmodel import Assignment, CspDecode, Instance
from ._builder import Builder
from .sources import CspInstance


def csp_vertex_names(src: CspInstance) -> dict[str, str]:
    return {v: f"h{i}" for i, v in enumerate(src.vertices, start=1)}


def csp_to_dnnt(src: CspInstance) -> Instance:
    n = len(src.alphabet)
    g = {a: i for i, a in enumerate(src.alphabet, start=1)}
    names = csp_vertex_names(src)
    b = Builder("s", d=1)
    for v in src.vertices:
        b.vertex(names[v])
    outputs = [b.vertex(f"t{j}") for j in range(1, len(src.edges) + 1)]
    for v in src.vertices:
        b.edge("s", names[v], [range(1, n + 1)])
    for t, (u, v) in zip(outputs, src.edges):
        b.edge(names[u], t, (1,))
        b.edge(names[v], t, (2 * n,))
    allowed = tuple(frozenset((g[a], g[c]) for a, c in cons) for cons in src.constraints)
    return b.build(
        outputs=outputs,
        points=[((1,), (1,) * len(outputs))],
        loss=CspDecode(n, allowed),
        gamma=1,
        meta={"reduction": "csp", "vertices": list(src.vertices)},
    )


def extract_assignment(src: CspInstance, theta: Assignment) -> dict[str, str]:
    """``phi(v) = g^-1(w_(s, h_v))``."""
    names = csp_vertex_names(src)
    phi = {}
    for v in src.vertices:
        w = theta[("s", names[v])].weights[0]
        if not w.is_integer() or not 1 <= int(w) <= len(src.alphabet):
            raise InfeasibleWitness(f"weight {w} at {v} does not name a symbol")
        phi[v] = src.alphabet[int(w) - 1]
    if not src.is_feasible(phi):
        bad = [e for e, c in zip(src.edges, src.constraints) if (phi[e[0]], phi[e[1]]) not in c]
        raise InfeasibleWitness(f"assignment violates constraints on {bad}")
    return phi
