"""Dicolouring oriented graphs that forbid an induced orientation of P4."""
from __future__ import annotations

from .dicolor import (
    DicolorOptions,
    Dicoloring,
    InvalidColoring,
    NotHFree,
    QrsClassificationFailure,
    binding_function,
    certify,
    color_dipolar_set,
    color_path_neighborhood,
    color_qrs,
    dicolor_forbidding,
    peel_and_combine,
)
from .digraph import GraphError, OrientedGraph, build_graph, induced_is_acyclic, scc
from .oracle import brute_force_closed_tournament, exact_dichromatic_number, independent_pattern_scan
from .patterns import PatternId, PatternWitness, clique_number, find_pattern, maximum_tournaments
from .structure import (
    ClosedTournament,
    attachment_partitions,
    build_dipolar_set,
    path_minimizing_closed_tournament,
    verify_dipolar,
)

__all__ = [
    "ClosedTournament",
    "DicolorOptions",
    "Dicoloring",
    "GraphError",
    "InvalidColoring",
    "NotHFree",
    "OrientedGraph",
    "PatternId",
    "PatternWitness",
    "QrsClassificationFailure",
    "attachment_partitions",
    "binding_function",
    "brute_force_closed_tournament",
    "build_dipolar_set",
    "build_graph",
    "certify",
    "clique_number",
    "color_dipolar_set",
    "color_path_neighborhood",
    "color_qrs",
    "dicolor_forbidding",
    "exact_dichromatic_number",
    "find_pattern",
    "independent_pattern_scan",
    "induced_is_acyclic",
    "maximum_tournaments",
    "path_minimizing_closed_tournament",
    "peel_and_combine",
    "scc",
    "verify_dipolar",
]
