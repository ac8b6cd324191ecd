"""Source problems, their brute-force oracles, file formats and generators.

Every source problem is a small frozen dataclass.  ``oracle_decide`` answers
it by exhaustive search (or direct evaluation for straight-line programs)
independently of any network machinery, so it can be used to check the
reductions.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from ..config import digit_budget, enum_budget
from ..errors import BudgetExceeded, FormatError, ValidationError
from ..exactnum import num_digits

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# problem types


@dataclass(frozen=True)
class SubsetSumInstance:
    items: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(int(a) for a in self.items))
        if not self.items:
            raise ValidationError(["subset sum needs at least one item"])
        if any(a <= 0 for a in self.items) or self.target <= 0:
            raise ValidationError(["subset sum items and target must be positive"])

    def is_solution(self, indices) -> bool:
        idx = set(indices)
        return idx <= set(range(len(self.items))) and sum(self.items[i] for i in idx) == self.target


@dataclass(frozen=True)
class CspInstance:
    """Binary CSP on a constraint graph; ``constraints[i]`` belongs to ``edges[i]``."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    alphabet: tuple[str, ...]
    constraints: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "constraints", tuple(frozenset(tuple(p) for p in c) for c in self.constraints))
        problems = []
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            problems.append("alphabet must be non-empty with distinct symbols")
        if len(set(self.vertices)) != len(self.vertices):
            problems.append("duplicate CSP vertices")
        if len(self.constraints) != len(self.edges):
            problems.append("one constraint set per edge required")
        if len(set(self.edges)) != len(self.edges):
            problems.append("duplicate constraint edges")
        sigma = set(self.alphabet)
        for (u, v), c in zip(self.edges, self.constraints):
            if u not in self.vertices or v not in self.vertices:
                problems.append(f"edge ({u}, {v}) uses an unknown vertex")
            if u == v:
                problems.append(f"self-loop constraint at {u}")
            if not c:
                problems.append(f"constraint on ({u}, {v}) is empty")
            if any(a not in sigma or b not in sigma for a, b in c):
                problems.append(f"constraint on ({u}, {v}) uses symbols outside the alphabet")
        if problems:
            raise ValidationError(problems)

    def is_feasible(self, phi) -> bool:
        return all(v in phi for v in self.vertices) and all(
            (phi[u], phi[v]) in c for (u, v), c in zip(self.edges, self.constraints)
        )


@dataclass(frozen=True)
class ExactCoverInstance:
    """Universe ``1..n`` (as given), sets over it, cardinality bound ``k``."""

    universe: tuple[int, ...]
    sets: tuple[frozenset, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        problems = []
        if not self.sets:
            problems.append("at least one set required")
        elif not 1 <= self.k <= len(self.sets):
            problems.append(f"bound K={self.k} outside 1..{len(self.sets)}")
        if len(set(self.universe)) != len(self.universe):
            problems.append("duplicate universe elements")
        u = set(self.universe)
        if any(not s <= u for s in self.sets):
            problems.append("a set contains elements outside the universe")
        if problems:
            raise ValidationError(problems)

    def is_solution(self, chosen) -> bool:
        chosen = list(chosen)
        if len(set(chosen)) != len(chosen) or len(chosen) != self.k:
            return False
        counts = {u: 0 for u in self.universe}
        for j in chosen:
            for u in self.sets[j]:
                counts[u] += 1
        return all(c == 1 for c in counts.values())


OPS = ("+", "-", "*")


@dataclass(frozen=True)
class Slp:
    """Straight-line program: ``a_0 = 1`` and ``a_i = a_j op a_k`` with ``j, k < i``."""

    instructions: tuple[tuple[str, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple((op, int(j), int(k)) for op, j, k in self.instructions))
        problems = []
        if not self.instructions:
            problems.append("an SLP needs at least one instruction")
        for i, (op, j, k) in enumerate(self.instructions, start=1):
            if op not in OPS:
                problems.append(f"instruction {i}: unknown operator {op!r}")
            if not (0 <= j < i and 0 <= k < i):
                problems.append(f"instruction {i}: operands must index earlier values")
        if problems:
            raise ValidationError(problems)

    @property
    def length(self) -> int:
        return len(self.instructions)


SourceProblem = Union[SubsetSumInstance, CspInstance, ExactCoverInstance, Slp]


def slp_values(slp: Slp, max_digits: int | None = None) -> list[int]:
    """``[a_0, ..., a_l]`` by direct big-integer evaluation.

    Raises :class:`BudgetExceeded` as soon as a value needs more than
    ``max_digits`` decimal digits.
    """
    limit = digit_budget() if max_digits is None else max_digits
    a = [1]
    for i, (op, j, k) in enumerate(slp.instructions, start=1):
        if op == "+":
            val = a[j] + a[k]
        elif op == "-":
            val = a[j] - a[k]
        else:
            # digits(xy) <= digits(x) + digits(y): refuse before multiplying
            if num_digits(a[j]) + num_digits(a[k]) - 1 > limit:
                raise BudgetExceeded(f"a_{i} would exceed {limit} digits")
            val = a[j] * a[k]
        if num_digits(val) > limit:
            raise BudgetExceeded(f"a_{i} has more than {limit} digits")
        a.append(val)
    return a


# ---------------------------------------------------------------------------
# oracles


@dataclass(frozen=True)
class OracleResult:
    decision: bool
    witness: object = None


def _guard(count: int, budget: int | None):
    limit = enum_budget() if budget is None else budget
    if count > limit:
        raise BudgetExceeded(f"oracle would enumerate {count} candidates (budget {limit})")


def oracle_decide(src: SourceProblem, budget: int | None = None) -> OracleResult:
    """Decide a source problem independently of the network reductions.

    Witnesses: subset sum -> sorted item indices; CSP -> ``{vertex: symbol}``;
    exact cover -> sorted set indices; SLP -> the computed integer ``n_P``.
    """
    if isinstance(src, SubsetSumInstance):
        n = len(src.items)
        _guard(2**n, budget)
        for mask in range(2**n):
            chosen = [i for i in range(n) if mask >> i & 1]
            if sum(src.items[i] for i in chosen) == src.target:
                return OracleResult(True, tuple(chosen))
        return OracleResult(False)
    if isinstance(src, CspInstance):
        _guard(len(src.alphabet) ** len(src.vertices), budget)
        for values in itertools.product(src.alphabet, repeat=len(src.vertices)):
            phi = dict(zip(src.vertices, values))
            if src.is_feasible(phi):
                return OracleResult(True, phi)
        return OracleResult(False)
    if isinstance(src, ExactCoverInstance):
        m = len(src.sets)
        _guard(_binom(m, src.k), budget)
        for combo in itertools.combinations(range(m), src.k):
            if src.is_solution(combo):
                return OracleResult(True, combo)
        return OracleResult(False)
    if isinstance(src, Slp):
        value = slp_values(src)[-1]
        return OracleResult(value > 0, value)
    raise TypeError(f"unknown source problem {type(src).__name__}")


def _binom(n, k):
    from math import comb

    return comb(n, k)


# ---------------------------------------------------------------------------
# file formats

PROBLEM_NAMES = {
    SubsetSumInstance: "subset-sum",
    CspInstance: "csp",
    ExactCoverInstance: "exact-cover",
    Slp: "slp",
}


def source_to_dict(src: SourceProblem, meta: dict | None = None) -> dict:
    doc = {"format_version": FORMAT_VERSION, "problem": PROBLEM_NAMES[type(src)]}
    if meta:
        doc["meta"] = dict(meta)
    if isinstance(src, SubsetSumInstance):
        doc["items"] = [str(a) for a in src.items]
        doc["target"] = str(src.target)
    elif isinstance(src, CspInstance):
        doc["vertices"] = list(src.vertices)
        doc["alphabet"] = list(src.alphabet)
        doc["constraints"] = [
            {"edge": list(e), "allowed": sorted([a, b] for a, b in c)} for e, c in zip(src.edges, src.constraints)
        ]
    elif isinstance(src, ExactCoverInstance):
        doc["universe"] = [str(u) for u in src.universe]
        doc["sets"] = [sorted(str(u) for u in s) for s in src.sets]
        doc["k"] = str(src.k)
    else:
        doc["instructions"] = [[op, str(j), str(k)] for op, j, k in src.instructions]
    return doc


def source_from_dict(doc: dict) -> SourceProblem:
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported source format_version {doc.get('format_version') if isinstance(doc, dict) else None!r}")
    kind = doc.get("problem")
    try:
        if kind == "subset-sum":
            return SubsetSumInstance(tuple(int(a) for a in doc["items"]), int(doc["target"]))
        if kind == "csp":
            cons = doc["constraints"]
            return CspInstance(
                vertices=tuple(doc["vertices"]),
                edges=tuple(tuple(c["edge"]) for c in cons),
                alphabet=tuple(doc["alphabet"]),
                constraints=tuple(frozenset(tuple(p) for p in c["allowed"]) for c in cons),
            )
        if kind == "exact-cover":
            return ExactCoverInstance(
                universe=tuple(int(u) for u in doc["universe"]),
                sets=tuple(frozenset(int(u) for u in s) for s in doc["sets"]),
                k=int(doc["k"]),
            )
        if kind == "slp":
            return Slp(tuple((op, int(j), int(k)) for op, j, k in doc["instructions"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {kind} document: {exc}") from exc
    raise FormatError(f"unknown problem {kind!r}")


def save_source(src: SourceProblem, path, meta: dict | None = None) -> None:
    Path(path).write_text(json.dumps(source_to_dict(src, meta), indent=1) + "\n")


def load_source(path) -> SourceProblem:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not a JSON document: {exc}") from exc
    return source_from_dict(doc)


# ---------------------------------------------------------------------------
# seeded generators (random.Random, i.e. MT19937)


def random_subset_sum(rng: random.Random, max_items: int = 12, max_value: int = 20) -> SubsetSumInstance:
    n = rng.randint(1, max_items)
    items = tuple(rng.randint(1, max_value) for _ in range(n))
    mode = rng.randrange(4)
    if mode == 0:
        picked = [a for a in items if rng.random() < 0.5] or [items[0]]
        target = sum(picked)
    elif mode == 1:
        target = rng.randint(1, sum(items))
    elif mode == 2:
        # even items cannot reach an odd target
        items = tuple(2 * max(1, a // 2) for a in items)
        target = 2 * rng.randint(0, sum(items) // 2) + 1
    else:
        target = sum(items) + rng.randint(1, 3)
    return SubsetSumInstance(items, target)


def random_csp(rng: random.Random, max_vertices: int = 4, max_alphabet: int = 4, density: float | None = None) -> CspInstance:
    nv = rng.randint(2, max_vertices)
    na = rng.randint(2, max_alphabet)
    vertices = tuple(f"v{i}" for i in range(nv))
    alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:na])
    pairs = [(vertices[i], vertices[j]) for i in range(nv) for j in range(i + 1, nv)]
    edges = [p for p in pairs if rng.random() < 0.6] or [rng.choice(pairs)]
    p = rng.uniform(0.05, 0.5) if density is None else density
    constraints = []
    for _ in edges:
        allowed = {(a, b) for a in alphabet for b in alphabet if rng.random() < p}
        if not allowed:
            allowed = {(rng.choice(alphabet), rng.choice(alphabet))}
        constraints.append(frozenset(allowed))
    return CspInstance(vertices, tuple(edges), alphabet, tuple(constraints))


def random_exact_cover(rng: random.Random, max_elements: int = 6, max_sets: int = 6) -> ExactCoverInstance:
    n = rng.randint(1, max_elements)
    m = rng.randint(1, max_sets)
    universe = tuple(range(1, n + 1))
    sets: list[frozenset] = []
    planted = 0
    if rng.random() < 0.5:
        # plant a partition so roughly half the corpus is solvable
        blocks: dict[int, set] = {}
        parts = rng.randint(1, min(n, m))
        for u in universe:
            blocks.setdefault(rng.randrange(parts), set()).add(u)
        sets.extend(frozenset(b) for b in blocks.values())
        planted = len(sets)
    while len(sets) < m:
        s = frozenset(u for u in universe if rng.random() < 0.4) or frozenset([rng.choice(universe)])
        sets.append(s)
    rng.shuffle(sets)
    k = planted if planted and rng.random() < 0.7 else rng.randint(1, m)
    return ExactCoverInstance(universe, tuple(sets), k)


def random_slp(rng: random.Random, length: int | None = None, max_length: int = 16, max_digits: int | None = None) -> Slp:
    """Random SLP over all three operators, kept within the digit budget.

    An instruction whose value would exceed the budget is replaced by an
    addition of the same operands.
    """
    limit = digit_budget() if max_digits is None else max_digits
    ell = rng.randint(1, max_length) if length is None else length
    values = [1]
    instructions = []
    for i in range(1, ell + 1):
        op = rng.choices(OPS, weights=(4, 2, 4))[0]
        if abs(values[-1]) <= 1 and rng.random() < 0.7:
            op = "+"  # products of 0 and +-1 never grow
        # favour the latest value so products compound into large numbers
        j = i - 1 if rng.random() < 0.5 else rng.randrange(i)
        k = i - 1 if rng.random() < 0.5 else rng.randrange(i)
        if op == "*" and rng.random() < 0.5:
            j = k = i - 1
        if op == "*" and num_digits(values[j]) + num_digits(values[k]) > limit:
            op = "+"
        val = {"+": values[j] + values[k], "-": values[j] - values[k], "*": values[j] * values[k]}[op]
        if num_digits(val) > limit:
            op, val = "-", values[j] - values[k]
        instructions.append((op, j, k))
        values.append(val)
    return Slp(tuple(instructions))


GENERATORS = {
    "subset-sum": random_subset_sum,
    "csp": random_csp,
    "exact-cover": random_exact_cover,
    "slp": random_slp,
}
