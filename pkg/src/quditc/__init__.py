"""Compiler and evaluation harness for intermediate-qudit circuits."""
from .circuit import Circuit, CircuitError, QuditSpec, build_dep_graph, depth, occupied_levels
from .gates import GateApp, Kind
from .timing import TimingTable, load_default
from .topology import CapacityError, Mapping, Topology

__all__ = [
    "CapacityError",
    "Circuit",
    "CircuitError",
    "GateApp",
    "Kind",
    "Mapping",
    "QuditSpec",
    "TimingTable",
    "Topology",
    "build_dep_graph",
    "depth",
    "load_default",
    "occupied_levels",
]
__version__ = "0.1.0"
