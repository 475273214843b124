"""Fault-tolerant gossip schemes on labeled multigraphs."""

from .builder import build, build_knodel_ft, build_knodel_ft_odd, compose_scheme, build_wheel_ft
from .core import Call, CallSchedule, Decomposition, FoldedPath, edge_sum, folded_path, replicate
from .knodel import folded_path_family, generate_knodel, gossip_base
from .verify import (
    count_edge_disjoint_ascending_paths,
    is_k_fault_tolerant_bruteforce,
    is_k_fault_tolerant_flow,
    simulate,
)
from .wheel import generate_wheel, wheel_path_catalogue

__all__ = [
    "Call",
    "CallSchedule",
    "Decomposition",
    "FoldedPath",
    "build",
    "build_knodel_ft",
    "build_knodel_ft_odd",
    "compose_scheme",
    "build_wheel_ft",
    "count_edge_disjoint_ascending_paths",
    "edge_sum",
    "folded_path",
    "folded_path_family",
    "generate_knodel",
    "generate_wheel",
    "gossip_base",
    "is_k_fault_tolerant_bruteforce",
    "is_k_fault_tolerant_flow",
    "replicate",
    "simulate",
    "wheel_path_catalogue",
]

__version__ = "0.1.0"
