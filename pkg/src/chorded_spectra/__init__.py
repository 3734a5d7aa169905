"""Spectral-radius conditions for chorded cycles in graphs of fixed size."""

from .canon import canonical, canonical_form, canonical_graph
from .cycles import (
    CycleWitness,
    chorded_cycle_oracle,
    find_s_chorded_cycle,
    find_s_chorded_k_cycle,
    has_chorded_cycle,
    has_k_minus_chorded_cycle,
    validate_witness,
)
from .families import FamilySpec, family
from .graph import Graph, GraphError, build_graph, copies, disjoint_union, join
from .graph6 import graph6_decode, graph6_encode
from .spectral import (
    char_poly,
    matrix_spectral_radius,
    perron_vector,
    quotient_matrix,
    spectral_radius,
    theta,
    threshold,
)
from .structure import blocks, k_core

__all__ = [
    "CycleWitness", "FamilySpec", "Graph", "GraphError", "blocks", "build_graph", "canonical",
    "canonical_form", "canonical_graph", "char_poly", "chorded_cycle_oracle", "copies",
    "disjoint_union", "family", "find_s_chorded_cycle", "find_s_chorded_k_cycle", "graph6_decode",
    "graph6_encode", "has_chorded_cycle", "has_k_minus_chorded_cycle", "join", "k_core",
    "matrix_spectral_radius", "perron_vector", "quotient_matrix", "spectral_radius", "theta",
    "threshold", "validate_witness",
]
