"""Principal eigenvector entry bounds for connected graphs."""

from .bounds import analyze, verify_report
from .errors import (CapabilityError, ConditioningError, ConvergenceError, DomainError,
                     FormatError, InputError, PerronBoundError, SamplingError)
from .generators import enumerate_connected, named_graph, random_connected
from .graph import Graph, graph_from_edges
from .graphio import encode_graph6, parse_edge_list, parse_graph6
from .kernels import BACKEND
from .spectral import SolverConfig, principal_eigenpair

__all__ = [
    "analyze", "verify_report", "Graph", "graph_from_edges", "named_graph",
    "enumerate_connected", "random_connected", "parse_graph6", "encode_graph6",
    "parse_edge_list", "principal_eigenpair", "SolverConfig", "BACKEND",
    "PerronBoundError", "InputError", "FormatError", "CapabilityError", "DomainError",
    "SamplingError", "ConvergenceError", "ConditioningError",
]
