import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import singleton_theta
from dnnt.errors import BudgetExceeded, FormatError, InfeasibleWitness, PreconditionError, ValidationError
from dnnt.evaluator import decide, forward, total_loss
from dnnt.exactnum import ExactDec, dec
from dnnt.netmodel import Assignment, CspDecode, DecShift, EdgeChoice, SlpMul, validate
from dnnt.reductions import (
    CspInstance,
    ExactCoverInstance,
    Slp,
    SubsetSumInstance,
    csp_to_dnnt,
    dnnt_to_cnnt,
    exact_cover_to_dnnt,
    extract_solution,
    lift_assignment,
    oracle_decide,
    shift_gadget_applies,
    probe_value,
    random_csp,
    random_exact_cover,
    random_slp,
    random_subset_sum,
    reduce_source,
    slp_to_dnnt,
    slp_values,
    source_from_dict,
    source_to_dict,
    subset_sum_to_dnnt,
    verify_equivalence,
)
from dnnt.solvers import brute_force_solve

fs = frozenset

# sources and oracles --------------------------------------------------------


def test_oracle_examples():
    assert oracle_decide(SubsetSumInstance((3, 5, 8), 8)).decision
    slp = oracle_decide(Slp((("+", 0, 0), ("*", 1, 1), ("*", 2, 2))))
    assert slp.decision and slp.witness == 16
    assert oracle_decide(ExactCoverInstance((1,), (fs({1}),), 1)).decision


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        oracle_decide(SubsetSumInstance(tuple(range(1, 13)), 5), budget=10)


def test_slp_digit_budget():
    squares = Slp((("+", 0, 0),) + tuple(("*", i, i) for i in range(1, 16)))
    with pytest.raises(BudgetExceeded):
        slp_values(squares, max_digits=100)
    with pytest.raises(BudgetExceeded):
        slp_to_dnnt(squares, max_digits=100)


@pytest.mark.parametrize(
    "make",
    [
        lambda: SubsetSumInstance((), 1),
        lambda: SubsetSumInstance((1, -2), 1),
        lambda: CspInstance(("u",), (("u", "u"),), ("a",), (fs({("a", "a")}),)),
        lambda: CspInstance(("u", "v"), (("u", "v"),), ("a",), (fs(),)),
        lambda: ExactCoverInstance((1,), (fs({2}),), 1),
        lambda: ExactCoverInstance((1,), (fs({1}),), 2),
        lambda: Slp((("+", 0, 1),)),
        lambda: Slp((("/", 0, 0),)),
        lambda: Slp(()),
    ],
)
def test_invalid_sources(make):
    with pytest.raises(ValidationError):
        make()


@given(st.integers(min_value=0, max_value=10**6))
def test_source_round_trip(seed):
    rng = random.Random(seed)
    for src in (random_subset_sum(rng), random_csp(rng), random_exact_cover(rng), random_slp(rng)):
        doc = json.loads(json.dumps(source_to_dict(src, {"seed": seed})))
        assert source_from_dict(doc) == src


def test_source_format_errors():
    with pytest.raises(FormatError):
        source_from_dict({"format_version": 9, "problem": "slp"})
    with pytest.raises(FormatError):
        source_from_dict({"format_version": 1, "problem": "nope"})
    with pytest.raises(FormatError):
        source_from_dict({"format_version": 1, "problem": "subset-sum", "items": ["x"], "target": "1"})


# subset sum ----------------------------------------------------------------


def test_subset_sum_structure():
    inst = subset_sum_to_dnnt(SubsetSumInstance((3, 5, 8), 8))
    assert len(inst.network.hidden) == 3
    weights = [inst.params[("s", f"h{i}")].weights[0] for i in (1, 2, 3)]
    assert weights == [(0, 3), (0, 5), (0, 8)]
    assert all(inst.params[(f"h{i}", "t")].weights == ((1,),) for i in (1, 2, 3))
    assert inst.gamma == 0 and inst.dataset.points[0].y == (8,)


def test_subset_sum_decisions_and_extraction():
    src = SubsetSumInstance((3, 5, 8), 8)
    result = brute_force_solve(subset_sum_to_dnnt(src))
    assert result.decision
    assert sum(src.items[i] for i in extract_solution(src, result.theta)) == 8
    no = SubsetSumInstance((2, 4), 7)
    assert not oracle_decide(no).decision
    assert not brute_force_solve(subset_sum_to_dnnt(no)).decision


def test_subset_sum_extract_example():
    src = SubsetSumInstance((3, 5, 8), 8)
    theta = Assignment(
        {**{("s", f"h{i}"): EdgeChoice.of((w,)) for i, w in ((1, 3), (2, 5), (3, 0))},
         **{(f"h{i}", "t"): EdgeChoice.of((1,)) for i in (1, 2, 3)}}
    )
    assert [src.items[i] for i in extract_solution(src, theta)] == [3, 5]
    with pytest.raises(InfeasibleWitness):
        extract_solution(src, theta.replace(("s", "h2"), weights=(0,)))


# csp -------------------------------------------------------------------------


def test_csp_decode_arithmetic():
    loss = CspDecode(3, (fs({(2, 3)}),))
    assert loss.decode(dec(20)) == (2, 3)
    assert loss([dec(20)], [1]) == 1
    assert loss([dec(21)], [1]) == 2
    assert loss([dec("20.5")], [1]) == 2


def test_csp_single_edge_yes():
    src = CspInstance(("u", "v"), (("u", "v"),), ("a", "b", "c"), (fs({("a", "b")}),))
    inst = csp_to_dnnt(src)
    assert inst.params[("s", "h1")].weights == ((1, 2, 3),)
    assert inst.params[("h2", "t1")].weights == ((6,),)
    result = brute_force_solve(inst)
    assert result.decision and result.loss == 1
    assert extract_solution(src, result.theta) == {"u": "a", "v": "b"}


def test_csp_extract_example():
    src = CspInstance(("u", "v"), (("u", "v"),), ("a", "b", "c"), (fs({("b", "c")}),))
    inst = csp_to_dnnt(src)
    theta = singleton_theta(inst).replace(("s", "h1"), weights=(2,)).replace(("s", "h2"), weights=(3,))
    assert extract_solution(src, theta) == {"u": "b", "v": "c"}


def test_csp_unsatisfiable_triangle():
    neq = fs({("a", "b"), ("b", "a")})
    src = CspInstance(("x", "y", "z"), (("x", "y"), ("y", "z"), ("x", "z")), ("a", "b"), (neq, neq, neq))
    assert not oracle_decide(src).decision
    assert not brute_force_solve(csp_to_dnnt(src)).decision


# exact cover ------------------------------------------------------------------


def test_exact_cover_examples():
    yes = ExactCoverInstance((1, 2, 3), (fs({1, 2}), fs({3}), fs({2, 3})), 2)
    result = brute_force_solve(exact_cover_to_dnnt(yes))
    assert result.decision and extract_solution(yes, result.theta) == (0, 1)
    single = ExactCoverInstance((1, 2), (fs({1, 2}),), 1)
    result = brute_force_solve(exact_cover_to_dnnt(single))
    assert result.decision and result.theta[("s", "h")].weights == (1,)
    no = ExactCoverInstance((1, 2), (fs({1}), fs({1, 2})), 2)
    assert not oracle_decide(no).decision
    assert not brute_force_solve(exact_cover_to_dnnt(no)).decision


def test_exact_cover_dataset_layout():
    inst = exact_cover_to_dnnt(ExactCoverInstance((1, 2, 3), (fs({1, 2}), fs({3}), fs({2, 3})), 2))
    pts = [(tuple(map(int, p.x)), int(p.y[0])) for p in inst.dataset.points]
    assert pts == [((1, 1, 1), 2), ((1, 0, 0), 1), ((1, 0, 1), 1), ((0, 1, 1), 1)]


def test_exact_cover_extract_example():
    src = ExactCoverInstance((1, 2, 3), (fs({1, 2}), fs({3}), fs({2, 3})), 2)
    theta = Assignment({("s", "h"): EdgeChoice.of((1, 1, 0)), ("h", "t"): EdgeChoice.of((1,))})
    assert extract_solution(src, theta) == (0, 1)
    with pytest.raises(InfeasibleWitness):
        extract_solution(src, theta.replace(("s", "h"), weights=(1, 0, 1)))


# straight-line programs ----------------------------------------------------------


def test_slp_square_example():
    inst = slp_to_dnnt(Slp((("+", 0, 0), ("*", 1, 1))))
    _, z = forward(inst, singleton_theta(inst), (1,), full=True)
    assert (z["h1"], z["h2"]) == (2, 4)
    assert decide(inst, singleton_theta(inst))


def test_slp_zero_is_no():
    inst = slp_to_dnnt(Slp((("-", 0, 0),)))
    assert total_loss(inst, singleton_theta(inst)) == 2
    assert not decide(inst, singleton_theta(inst))


@pytest.mark.parametrize("gadget", ["robust", "shift"])
def test_slp_instances_are_restricted_and_linear_size(gadget):
    rng = random.Random(4)
    for _ in range(20):
        prog = random_slp(rng)
        inst = slp_to_dnnt(prog, gadget=gadget)
        assert inst.params.is_restricted() and validate(inst) == []
        assert len(inst.network.vertices) <= 6 * (prog.length + 1)
        assert len(inst.network.edges) <= 8 * (prog.length + 1)


def test_shift_gadget_activations():
    inst = slp_to_dnnt(Slp((("+", 0, 0), ("*", 1, 1))), gadget="shift")
    assert all(isinstance(inst.activations[f"h'{r}"], DecShift) for r in range(3))
    assert isinstance(inst.activations["h2"], SlpMul)
    weights = {w for sp in inst.params.edges.values() for ws in sp.weights for w in ws}
    assert weights <= {dec(0), dec(1), dec(-1), dec(2)}


def test_shift_gadget_breaks_on_negative_multiplicand():
    prog = Slp((("+", 0, 0), ("-", 0, 1), ("*", 1, 2)))  # 2 * (-1)
    assert slp_values(prog)[-1] == -2 and not shift_gadget_applies(prog)
    shifted = slp_to_dnnt(prog, gadget="shift")
    assert forward(shifted, singleton_theta(shifted), (1,))["h3"] == 9
    robust = slp_to_dnnt(prog)
    assert forward(robust, singleton_theta(robust), (1,))["h3"] == -2


def test_shift_gadget_breaks_on_trailing_zero():
    # a4 = 10, a5 = 2 * 10
    prog = Slp((("+", 0, 0), ("+", 1, 1), ("+", 2, 1), ("+", 3, 2), ("*", 1, 4)))
    assert slp_values(prog)[4:] == [10, 20]
    shifted = slp_to_dnnt(prog, gadget="shift")
    assert forward(shifted, singleton_theta(shifted), (1,))["h5"] == 2
    robust = slp_to_dnnt(prog)
    assert forward(robust, singleton_theta(robust), (1,))["h5"] == 20


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=100)
def test_shift_gadget_exact_where_it_applies(seed):
    prog = random_slp(random.Random(seed))
    if shift_gadget_applies(prog):
        inst = slp_to_dnnt(prog, gadget="shift")
        _, z = forward(inst, singleton_theta(inst), (1,), full=True)
        values = slp_values(prog)
        assert all(z[f"h{i}"] == values[i] for i in range(1, len(values)))


def test_slp_large_values_stay_exact():
    # 2^(2^13) has 2467 digits; multiplying by 1 - 2^(2^13) gives about 4900
    prog = Slp(
        (("+", 0, 0),)
        + tuple(("*", i, i) for i in range(1, 14))
        + (("-", 0, 14), ("*", 14, 15), ("-", 16, 0))
    )
    values = slp_values(prog)
    assert abs(values[-1]).bit_length() > 16000
    inst = slp_to_dnnt(prog)
    _, z = forward(inst, singleton_theta(inst), (1,), full=True)
    assert all(z[f"h{i}"] == values[i] for i in range(1, len(values)))
    assert not decide(inst, singleton_theta(inst))


# discrete to continuous -----------------------------------------------------------


def test_probe_values_spacing():
    M = 6
    values = [probe_value(i, M) for i in range(100)]
    for a, b in zip(values, values[1:]):
        assert a > 10**M and b - a > 10**M
        assert b > M * a  # [a, M a] and [b, M b] are disjoint


def _yes_instance():
    src = SubsetSumInstance((1, 2), 3)
    inst = subset_sum_to_dnnt(src)
    return inst, brute_force_solve(inst).theta


def test_cnnt_structure():
    inst, _ = _yes_instance()
    out = dnnt_to_cnnt(inst)
    d, E = inst.dataset.d, len(inst.network.edges)
    assert validate(out) == []
    assert len(out.dataset.points) == len(inst.dataset.points) + E * (d + 1)
    assert out.dataset.d == d + 2
    assert out.gamma == inst.gamma + E * (d + 1)
    assert out.params.continuous and out.kind == "continuous"
    assert set(out.network.outputs) == set(inst.network.vertices) - {"s"}
    M = out.meta["M"]
    assert M == 2 * 3  # M0 = 3 (the target), max in-degree 2
    assert out.activations["t"].threshold == 10**M


def test_cnnt_forward_direction():
    inst, theta = _yes_instance()
    out = dnnt_to_cnnt(inst)
    assert total_loss(out, lift_assignment(inst, theta)) <= out.gamma


def test_cnnt_perturbation_is_penalised():
    inst, theta = _yes_instance()
    out = dnnt_to_cnnt(inst)
    bad = theta.replace(("s", "h1"), weights=(2,))
    assert total_loss(out, lift_assignment(inst, bad)) > out.gamma


def test_cnnt_preconditions():
    prog = slp_to_dnnt(Slp((("+", 0, 0), ("*", 1, 1))))
    with pytest.raises(PreconditionError):
        dnnt_to_cnnt(prog)  # slp_mul values cannot be bounded
    csp = csp_to_dnnt(CspInstance(("u", "v"), (("u", "v"),), ("a", "b"), (fs({("a", "b")}),)))
    assert validate(dnnt_to_cnnt(csp)) == []


def test_cnnt_rejects_fractional_parameters():
    inst = subset_sum_to_dnnt(SubsetSumInstance((1, 2), 3))
    from dnnt.netmodel import EdgeSpace, ParamSpace
    import dataclasses

    spaces = dict(inst.params.edges)
    spaces[("s", "h1")] = EdgeSpace.of([(0, "0.5")])
    with pytest.raises(PreconditionError, match="integer"):
        dnnt_to_cnnt(dataclasses.replace(inst, params=ParamSpace(spaces)))


# verification harness ----------------------------------------------------------------


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=40)
def test_verify_equivalence_on_random_sources(seed):
    rng = random.Random(seed)
    for src in (random_subset_sum(rng, max_items=8), random_csp(rng), random_exact_cover(rng), random_slp(rng)):
        assert verify_equivalence(src).ok


def test_verify_with_dp_method():
    rng = random.Random(9)
    for _ in range(20):
        assert verify_equivalence(random_subset_sum(rng, max_items=8), method="dp").ok


def test_reduce_source_unknown_type():
    with pytest.raises(TypeError):
        reduce_source(object())
