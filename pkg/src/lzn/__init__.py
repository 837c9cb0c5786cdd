"""Localization game on finite and locally finite graphs."""

from .families import Family, build, localize_subdivision, parse_descriptor, truncate
from .game import ALL, Outcome, Transcript, play
from .graph import FiniteGraph, GraphError, LazyGraph, LazyTree
from .pruning import end_labels, essential_alpha, recursive_pruning
from .solver import cop_wins, localization_number, solve_exact

__version__ = "0.1.0"

__all__ = [
    "ALL", "Family", "FiniteGraph", "GraphError", "LazyGraph", "LazyTree", "Outcome",
    "Transcript", "build", "cop_wins", "end_labels", "essential_alpha", "localization_number",
    "localize_subdivision", "parse_descriptor", "play", "recursive_pruning", "solve_exact",
    "truncate",
]
