"""Exhaustive phantom: every class choice explored against a deterministic cop."""

from __future__ import annotations

import copy
import sys
from dataclasses import dataclass, field

from ..game import ALL, CopStrategy, all_vertices, expand_candidates, partition_candidates


@dataclass
class Exploration:
    captured: bool            # True: every robber line of play is captured
    worst_round: int | None   # deepest capture over all lines (when captured)
    states: int               # distinct (cop state, candidate set) pairs visited
    trap: list = field(default_factory=list)  # probes along an evading line


class _Evasion(Exception):
    def __init__(self, trail):
        self.trail = trail


def explore(g, cop: CopStrategy, *, state_limit: int = 200_000) -> Exploration:
    """Play `cop` against all phantom choices on a finite graph.

    Positions are keyed by (cop.state_key(), candidate set); revisiting a
    position on the current line means the robber can repeat it forever.
    """
    if not g.is_finite:
        raise ValueError("exhaustive exploration needs a finite graph")
    cop.start(g)
    if cop.state_key() is None:
        raise ValueError(f"{cop.name} exposes no state_key")
    memo: dict = {}
    on_line: set = set()
    trail: list = []

    def solve(c: CopStrategy, C) -> int:
        key = (c.state_key(), C)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if key in on_line:
            raise _Evasion(list(trail))
        if len(memo) >= state_limit:
            raise RuntimeError(f"exploration exceeded {state_limit} states")
        on_line.add(key)
        probe = tuple(c.next_probe())
        trail.append(probe)
        classes = partition_candidates(g, all_vertices(g) if C is ALL else C, probe)
        worst = 0
        for dist in sorted(classes):
            cls = classes[dist]
            if len(cls) == 1:
                continue
            nxt = copy.deepcopy(c)
            nxt.observe(probe, dist)
            worst = max(worst, solve(nxt, frozenset(expand_candidates(g, cls))))
        trail.pop()
        on_line.discard(key)
        memo[key] = worst + 1
        return worst + 1

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20_000))
    try:
        worst = solve(cop, ALL)
    except _Evasion as e:
        return Exploration(False, None, len(memo), e.trail)
    finally:
        sys.setrecursionlimit(limit)
    return Exploration(True, worst, len(memo))
