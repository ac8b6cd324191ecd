"""Data model for (D-)NNT instances and the instance file format."""

from .activations import Activation, DecShift, Identity, Interval, Relu, SlpMul, Wrapped
from .instance import CONTINUOUS, DISCRETE, DataPoint, Dataset, Instance, validate
from .io import (
    dumps_assignment,
    dumps_instance,
    load_assignment,
    load_instance,
    loads_assignment,
    loads_instance,
    save_assignment,
    save_instance,
)
from .losses import CnntProbe, CspDecode, Loss, Probe, SlpThreshold, SumSquares
from .network import Edge, Network
from .params import Assignment, EdgeChoice, EdgeSpace, ParamSpace, membership

__all__ = [
    "Activation", "Identity", "Relu", "SlpMul", "DecShift", "Wrapped", "Interval",
    "Loss", "SumSquares", "SlpThreshold", "CspDecode", "CnntProbe", "Probe",
    "Network", "Edge", "DataPoint", "Dataset", "Instance", "DISCRETE", "CONTINUOUS",
    "ParamSpace", "EdgeSpace", "EdgeChoice", "Assignment", "membership", "validate",
    "dumps_instance", "loads_instance", "save_instance", "load_instance",
    "dumps_assignment", "loads_assignment", "save_assignment", "load_assignment",
]

from .generate import random_two_layer  # noqa: E402

__all__.append("random_two_layer")
