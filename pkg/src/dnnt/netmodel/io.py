"""Instance and assignment file formats (JSON, ``format_version: 1``).

Numbers are always canonical decimal strings so files stay exact.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import FormatError
from ..exactnum import dec
from .activations import activation_from_dict
from .instance import DataPoint, Dataset, Instance
from .losses import loss_from_dict
from .network import Network
from .params import Assignment, EdgeChoice, EdgeSpace, ParamSpace

FORMAT_VERSION = 1


def _check_version(data):
    if not isinstance(data, dict):
        raise FormatError("document root must be an object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")


def instance_to_dict(inst: Instance) -> dict:
    net = inst.network
    doc = {"format_version": FORMAT_VERSION}
    if inst.meta:
        doc["meta"] = dict(inst.meta)
    doc["network"] = {
        "vertices": list(net.vertices),
        "source": net.source,
        "hidden": list(net.hidden),
        "outputs": list(net.outputs),
        "edges": [list(e) for e in net.edges],
    }
    doc["dataset"] = {
        "d": inst.dataset.d,
        "m": inst.dataset.m,
        "points": [{"x": [str(v) for v in p.x], "y": [str(v) for v in p.y]} for p in inst.dataset.points],
    }
    doc["activations"] = {v: inst.activations[v].to_dict() for v in net.vertices if v in inst.activations}
    doc["loss"] = inst.loss.to_dict()
    if inst.params.continuous:
        doc["params"] = {"continuous": True}
    else:
        doc["params"] = {
            "continuous": False,
            "edges": [
                {
                    "edge": list(e),
                    "weights": [[str(w) for w in ws] for ws in space.weights],
                    "bias": [str(b) for b in space.biases],
                }
                for e, space in inst.params.edges.items()
            ],
        }
    doc["gamma"] = str(inst.gamma)
    doc["kind"] = inst.kind
    return doc


def instance_from_dict(doc: dict) -> Instance:
    _check_version(doc)
    try:
        n = doc["network"]
        net = Network(
            vertices=tuple(n["vertices"]),
            source=n["source"],
            hidden=tuple(n["hidden"]),
            outputs=tuple(n["outputs"]),
            edges=tuple(tuple(e) for e in n["edges"]),
        )
        ds = doc["dataset"]
        dataset = Dataset(
            points=tuple(DataPoint.of(p["x"], p["y"]) for p in ds["points"]),
            d=int(ds["d"]),
            m=int(ds.get("m", 1)),
        )
        activations = {v: activation_from_dict(a) for v, a in doc["activations"].items()}
        ps = doc["params"]
        if ps.get("continuous"):
            params = ParamSpace.real()
        else:
            params = ParamSpace(
                {
                    tuple(item["edge"]): EdgeSpace(
                        tuple(tuple(dec(w) for w in ws) for ws in item["weights"]),
                        tuple(dec(b) for b in item["bias"]),
                    )
                    for item in ps["edges"]
                }
            )
        return Instance(
            network=net,
            dataset=dataset,
            activations=activations,
            loss=loss_from_dict(doc["loss"]),
            params=params,
            gamma=dec(doc["gamma"]),
            kind=doc["kind"],
            meta=dict(doc.get("meta", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed instance document: {exc}") from exc


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1) + "\n"


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a JSON document: {exc}") from exc
    return instance_from_dict(doc)


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps_instance(inst))


def load_instance(path) -> Instance:
    return loads_instance(Path(path).read_text())


def assignment_to_dict(theta: Assignment) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "edges": [
            {"edge": list(e), "weights": [str(w) for w in c.weights], "bias": str(c.bias)}
            for e, c in theta.choices.items()
        ],
    }


def assignment_from_dict(doc: dict) -> Assignment:
    _check_version(doc)
    try:
        return Assignment(
            {
                tuple(item["edge"]): EdgeChoice(tuple(dec(w) for w in item["weights"]), dec(item["bias"]))
                for item in doc["edges"]
            }
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed assignment document: {exc}") from exc


def dumps_assignment(theta: Assignment) -> str:
    return json.dumps(assignment_to_dict(theta), indent=1) + "\n"


def loads_assignment(text: str) -> Assignment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a JSON document: {exc}") from exc
    return assignment_from_dict(doc)


def save_assignment(theta: Assignment, path) -> None:
    Path(path).write_text(dumps_assignment(theta))


def load_assignment(path) -> Assignment:
    return loads_assignment(Path(path).read_text())
