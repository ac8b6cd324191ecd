import dataclasses
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dnnt.errors import FormatError, MembershipError
from dnnt.exactnum import dec
from dnnt.netmodel import (
    Assignment,
    DataPoint,
    Dataset,
    EdgeChoice,
    EdgeSpace,
    Identity,
    Instance,
    Interval,
    Network,
    ParamSpace,
    SumSquares,
    Wrapped,
    dumps_assignment,
    dumps_instance,
    loads_assignment,
    loads_instance,
    membership,
    random_two_layer,
    validate,
)
from dnnt.reductions import (
    dnnt_to_cnnt,
    random_csp,
    random_exact_cover,
    random_slp,
    random_subset_sum,
    reduce_source,
    slp_to_dnnt,
)


def tiny() -> Instance:
    net = Network(("s", "h", "t"), "s", ("h",), ("t",), (("s", "h"), ("h", "t")))
    return Instance(
        network=net,
        dataset=Dataset((DataPoint.of((2,), (4,)),), 1),
        activations={"h": Identity(), "t": Identity()},
        loss=SumSquares(),
        params=ParamSpace({("s", "h"): EdgeSpace.of([(1, 2)]), ("h", "t"): EdgeSpace.of([(1,)])}),
        gamma=dec(0),
    )


def with_network(inst, **changes):
    return dataclasses.replace(inst, network=dataclasses.replace(inst.network, **changes))


def test_tiny_instance_is_valid():
    assert validate(tiny()) == []


def test_cycle_is_reported():
    inst = tiny()
    net = Network(("s", "h", "t"), "s", ("h",), ("t",), (("s", "h"), ("h", "t"), ("t", "h")))
    assert "acyclicity violated" in validate(dataclasses.replace(inst, network=net))


@pytest.mark.parametrize(
    "changes, fragment",
    [
        ({"edges": (("s", "h"), ("h", "t"), ("h", "t"))}, "duplicate edge"),
        ({"edges": (("s", "h"), ("h", "h"), ("h", "t"))}, "self-loop"),
        ({"edges": (("s", "h"), ("h", "x"))}, "unknown vertex"),
        ({"edges": (("s", "h"), ("h", "t"), ("t", "s"))}, "source has incoming edges"),
        ({"hidden": ("h", "t")}, "overlap"),
        ({"edges": (("s", "h"),)}, "not reachable"),
    ],
)
def test_structural_violations(changes, fragment):
    problems = validate(with_network(tiny(), **changes))
    assert any(fragment in p for p in problems), problems


def test_dimension_and_param_violations():
    inst = tiny()
    bad_x = dataclasses.replace(inst, dataset=Dataset((DataPoint.of((1, 2), (4,)),), 1))
    assert any("x has length" in p for p in validate(bad_x))
    bad_m = dataclasses.replace(inst, dataset=Dataset(inst.dataset.points, 1, m=2))
    assert any("per-output dimension" in p for p in validate(bad_m))
    empty = dict(inst.params.edges)
    empty[("s", "h")] = EdgeSpace(((),), (dec(0),))
    assert any("empty weight set" in p for p in validate(dataclasses.replace(inst, params=ParamSpace(empty))))
    missing = {("s", "h"): inst.params[("s", "h")]}
    assert any("edge set" in p for p in validate(dataclasses.replace(inst, params=ParamSpace(missing))))
    wrong_dims = dict(inst.params.edges)
    wrong_dims[("h", "t")] = EdgeSpace.of([(1,), (1,)])
    assert any("weight sets, expected 1" in p for p in validate(dataclasses.replace(inst, params=ParamSpace(wrong_dims))))
    no_act = dataclasses.replace(inst, activations={"h": Identity()})
    assert any("activation map" in p for p in validate(no_act))
    marker = dataclasses.replace(inst, params=ParamSpace.real())
    assert any("continuous parameter marker" in p for p in validate(marker))


def test_wrapped_interval_checks():
    inst = tiny()
    iv = Interval(dec(5), dec(20), ("s", "h"), 1, True)
    clash = Interval(dec(10), dec(30), ("s", "h"), 2, False)
    acts = dict(inst.activations)
    acts["h"] = Wrapped(Identity(), dec(100), (iv, clash))
    problems = validate(dataclasses.replace(inst, activations=acts))
    assert any("threshold band" in p for p in problems)
    assert any("intervals overlap" in p for p in problems)


def test_membership():
    inst = tiny()
    ok = Assignment({("s", "h"): EdgeChoice.of((2,)), ("h", "t"): EdgeChoice.of((1,))})
    assert membership(ok, inst.params)
    assert not membership(ok.replace(("s", "h"), weights=(3,)), inst.params)
    assert not membership(ok.replace(("h", "t"), bias=1), inst.params)
    with pytest.raises(MembershipError):
        membership(Assignment({("s", "h"): EdgeChoice.of((2,))}), inst.params)
    with pytest.raises(MembershipError):
        membership(ok.replace(("s", "h"), weights=(2, 2)), inst.params)
    assert membership(ok.replace(("s", "h"), weights=(99,)), ParamSpace.real())


def test_restricted_and_cardinality():
    inst = tiny()
    assert not inst.params.is_restricted()
    assert inst.params.cardinality() == 2
    with pytest.raises(MembershipError):
        ParamSpace.real().cardinality()


def test_unknown_format_version_rejected():
    doc = json.loads(dumps_instance(tiny()))
    doc["format_version"] = 2
    with pytest.raises(FormatError):
        loads_instance(json.dumps(doc))
    with pytest.raises(FormatError):
        loads_instance("not json")
    with pytest.raises(FormatError):
        loads_instance(json.dumps({"format_version": 1, "network": {}}))


def test_instance_file_sections():
    doc = json.loads(dumps_instance(tiny()))
    assert {"network", "dataset", "activations", "loss", "params", "gamma", "kind"} <= set(doc)
    assert doc["gamma"] == "0" and doc["dataset"]["points"][0]["x"] == ["2"]


def _corpus_instances(seed: int):
    rng = random.Random(seed)
    yield reduce_source(random_subset_sum(rng))
    yield reduce_source(random_csp(rng))
    yield reduce_source(random_exact_cover(rng))
    yield slp_to_dnnt(random_slp(rng), gadget=rng.choice(("robust", "shift")))
    yield random_two_layer(rng)


@given(st.integers(min_value=0, max_value=10**6))
def test_serialization_round_trip(seed):
    for inst in _corpus_instances(seed):
        back = loads_instance(dumps_instance(inst))
        assert back == inst
        assert dumps_instance(back) == dumps_instance(inst)


def test_continuous_round_trip():
    rng = random.Random(5)
    inst = dnnt_to_cnnt(reduce_source(random_exact_cover(rng)))
    assert loads_instance(dumps_instance(inst)) == inst


@given(st.integers(min_value=0, max_value=10**6))
def test_every_reduction_output_validates(seed):
    for inst in _corpus_instances(seed):
        assert validate(inst) == []


def test_assignment_round_trip():
    theta = Assignment({("s", "h"): EdgeChoice.of(("1.5", "-2")), ("h", "t"): EdgeChoice.of((1,), "0.25")})
    assert loads_assignment(dumps_assignment(theta)) == theta


def test_network_layers_and_paths():
    net = Network(
        ("s", "a", "b", "c", "t"),
        "s",
        ("a", "b", "c"),
        ("t",),
        (("s", "a"), ("s", "b"), ("a", "c"), ("b", "c"), ("c", "t"), ("a", "t")),
    )
    assert net.depth == 3
    assert net.shortest_path("c") == ("s", "a", "c")
    assert net.shortest_path("c", avoid={"a"}) == ("s", "b", "c")
    assert net.shortest_path("c", avoid={"a", "b"}) is None
    assert net.ancestors("c") == {"s", "a", "b"}
