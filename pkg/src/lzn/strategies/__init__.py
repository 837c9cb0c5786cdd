"""Cop and robber strategies, and the name registry used by the command line."""

from __future__ import annotations

from ..families import DecoratedTree, comb_spine_vertex, truncate
from ..game import CopStrategy, RobberAgent
from ..graph import GraphError
from .adversary import Exploration, explore
from .basic import (
    FleeingRobber,
    GreedyCop,
    GreedyPhantom,
    RandomCop,
    RandomWalkRobber,
    RayOneCop,
    ScriptedCop,
    SolverGuidedPhantom,
    StationaryRobber,
    greedy_choice,
)
from .comb import CombRobber, OnePushCop, comb_robber_strategy, one_cop_suite, solver_replay_cop
from .ends import FiniteEndsCop, PushCop, finite_ends_two_cop, finite_tree_push_strategy
from .sn import OmegaEmbedding, SnCop, SnRobber, omega_subtree_reduction
from .subdivision import SubdivisionCop, subdivision_one_cop

DEFAULT_SOLVER_RADIUS = 6


class RegistryError(ValueError):
    pass


def ray_one_cop() -> RayOneCop:
    return RayOneCop()


def sn_cop_strategy(n: int, cops: int | None = None) -> SnCop:
    return SnCop(n, cops)


def sn_robber_strategy(n: int) -> SnRobber:
    return SnRobber(n)


def parse_vertex_arg(g, text: str):
    """Vertex from command-line text; on decorated ray trees a bare (signed)
    integer names the spine vertex at that position."""
    text = text.strip()
    if isinstance(g, DecoratedTree) and text.lstrip("-").isdigit():
        pos = int(text)
        if pos < 0 and len(g.desc.spines) < 2:
            raise GraphError(f"no spine vertex at position {pos}")
        return comb_spine_vertex(g, pos)
    return g.parse_vertex(text)


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise RegistryError(f"{what} must be an integer, got {text!r}") from None


def make_cop(name: str, g) -> CopStrategy:
    head, *args = name.split(":")
    if head == "ray-one-cop" and not args:
        return RayOneCop()
    if head == "sn-cop" and len(args) in (1, 2):
        n = _int(args[0], "n")
        return SnCop(n, _int(args[1], "cop count") if len(args) == 2 else None)
    if head == "push" and len(args) <= 1:
        return PushCop(parse_vertex_arg(g, args[0]) if args else None)
    if head == "ends-two-cop" and len(args) <= 1:
        return FiniteEndsCop(parse_vertex_arg(g, args[0]) if args else None)
    if head == "subdivision-one-cop" and not args:
        return subdivision_one_cop(g)
    if head == "solver" and len(args) in (1, 2):
        return _solver_cop(g, _int(args[0], "k"),
                           _int(args[1], "radius") if len(args) == 2 else DEFAULT_SOLVER_RADIUS)
    if head == "random" and len(args) == 2:
        return RandomCop(_int(args[0], "k"), _int(args[1], "seed"))
    if head == "greedy" and len(args) <= 1:
        return GreedyCop(_int(args[0], "k") if args else 1)
    if head == "one-push" and not args:
        return OnePushCop()
    raise RegistryError(f"unknown cop strategy {name!r}")


def _solver_cop(g, k: int, radius: int):
    from ..solver import SolverCop, cop_wins

    if hasattr(g, "n"):
        t, labels = g, None
    elif g.is_finite:
        from ..families import materialize
        t, labels = materialize(g)
    else:
        t, labels = truncate(g, radius)
    ok, table = cop_wins(t, k)
    if not ok:
        raise RegistryError(f"{k} cops have no winning strategy on the solved graph")
    return SolverCop(table, k, labels)


def make_robber(name: str, g) -> RobberAgent:
    head, *args = name.split(":")
    if head == "concrete" and args and args[0].startswith("at="):
        at = parse_vertex_arg(g, args[0][3:])
        if len(args) == 1:
            return StationaryRobber(at)
        if len(args) == 2 and args[1].startswith("walk="):
            return RandomWalkRobber(at, _int(args[1][5:], "seed"))
        if len(args) == 2 and args[1] == "flee":
            return FleeingRobber(at)
    if head == "sn-robber" and len(args) == 1:
        return SnRobber(_int(args[0], "n"))
    if head == "comb-robber" and not args:
        return CombRobber()
    if head == "phantom-greedy" and len(args) <= 1:
        return GreedyPhantom(_int(args[0], "horizon") if args else None)
    raise RegistryError(f"unknown robber strategy {name!r}")


COP_NAMES = ("ray-one-cop", "sn-cop:<n>[:<k>]", "push:<pivot>", "ends-two-cop[:<pivot>]",
             "subdivision-one-cop", "solver:<k>[:<radius>]", "random:<k>:<seed>",
             "greedy[:<k>]", "one-push")
ROBBER_NAMES = ("concrete:at=<v>[:walk=<seed>|:flee]", "sn-robber:<n>", "comb-robber",
                "phantom-greedy[:<horizon>]")

__all__ = [
    "COP_NAMES", "ROBBER_NAMES", "CombRobber", "Exploration", "FiniteEndsCop", "FleeingRobber",
    "GreedyCop", "GreedyPhantom", "OmegaEmbedding", "OnePushCop", "PushCop", "RandomCop",
    "RandomWalkRobber", "RayOneCop", "RegistryError", "ScriptedCop", "SnCop", "SnRobber",
    "SolverGuidedPhantom", "StationaryRobber", "SubdivisionCop", "comb_robber_strategy",
    "explore", "finite_ends_two_cop", "finite_tree_push_strategy", "greedy_choice",
    "make_cop", "make_robber", "omega_subtree_reduction", "one_cop_suite", "parse_vertex_arg",
    "ray_one_cop", "sn_cop_strategy", "sn_robber_strategy", "solver_replay_cop",
    "subdivision_one_cop",
]
