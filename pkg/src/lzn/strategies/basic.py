"""General-purpose cops and robbers: scripted, random, greedy, and simple concrete robbers."""

from __future__ import annotations

import random
from collections.abc import Callable

from ..game import (
    ALL,
    ConcreteRobber,
    ContractViolation,
    CopStrategy,
    PhantomRobber,
    class_of,
    expand_candidates,
    partition_candidates,
)
from ..graph import LazyTree, ball, bfs_order


def _family_kind(g) -> str | None:
    fam = getattr(g, "family", None)
    return fam.kind if fam is not None else None


class RayOneCop(CopStrategy):
    """Probe the degree-one endpoint forever."""

    name = "ray-one-cop"

    def reset(self):
        if _family_kind(self.graph) != "ray":
            raise ContractViolation(self.name, "only defined on the ray")

    def next_probe(self):
        return (self.graph.root,)

    def state_key(self):
        return ()


class ScriptedCop(CopStrategy):
    """Probe script(round) for each round; oblivious to answers."""

    def __init__(self, script: Callable[[object, int], tuple], name: str, cops: int = 1):
        self.script = script
        self.name = name
        self.cops = cops

    _shared = ("graph", "script")

    def reset(self):
        self.round = 0

    def next_probe(self):
        self.round += 1
        return tuple(self.script(self.graph, self.round))

    def state_key(self):
        return self.round


def random_vertex(g, rng: random.Random, depth_cap: int):
    """Seeded random vertex: uniform on finite graphs, random descent on lazy trees,
    random walk from the root otherwise."""
    if hasattr(g, "n"):
        return rng.randrange(g.n)
    if g.is_finite:
        verts = bfs_order(g, g.root)
        return verts[rng.randrange(len(verts))]
    depth = rng.randint(0, depth_cap)
    if isinstance(g, LazyTree):
        addr = ()
        for _ in range(depth):
            a = g.arity(addr)
            if a == 0:
                break
            addr += (rng.randrange(a),)
        return addr
    v = g.root
    for _ in range(depth):
        nb = g.neighbors(v)
        v = nb[rng.randrange(len(nb))]
    return v


class RandomCop(CopStrategy):
    """k independent seeded random probes per round.

    Generator: random.Random(seed) (Mersenne Twister). On infinite graphs a probe
    descends to a depth drawn uniformly from [0, round + slack].
    """

    def __init__(self, k: int, seed: int, slack: int = 6):
        self.cops = k
        self.seed = seed
        self.slack = slack
        self.name = f"random:{k}:{seed}"

    def reset(self):
        self.rng = random.Random(self.seed)
        self.round = 0

    def next_probe(self):
        self.round += 1
        cap = self.round + self.slack
        return tuple(random_vertex(self.graph, self.rng, cap) for _ in range(self.cops))


class GreedyCop(CopStrategy):
    """Tracks candidates and probes to minimize the largest resulting class.

    Probe candidates are the tracked set and its neighbors; the first probe (while
    the candidate set is symbolic) is the root repeated.
    """

    def __init__(self, k: int = 1, pool_cap: int = 400):
        self.cops = k
        self.pool_cap = pool_cap
        self.name = f"greedy:{k}"

    def reset(self):
        self.C = ALL

    def _pool(self):
        pool = sorted(expand_candidates(self.graph, self.C))
        return pool[: self.pool_cap]

    def next_probe(self):
        if self.C is ALL:
            return (self.graph.root,) * self.cops
        pool = self._pool()
        best, best_score = None, None
        probes = [(u,) for u in pool]
        if self.cops >= 2:
            probes = [(u, w) + (w,) * (self.cops - 2) for i, u in enumerate(pool) for w in pool[i:]]
        for p in probes:
            sizes = sorted((len(c) for c in partition_candidates(self.graph, self.C, p).values()),
                           reverse=True)
            score = (sizes[0], sum(s * s for s in sizes))
            if best_score is None or score < best_score:
                best, best_score = p, score
        return best

    def observe(self, probe, dist):
        cls = class_of(self.graph, self.C, probe, dist)
        self.C = expand_candidates(self.graph, cls) if cls else ALL

    def state_key(self):
        return self.C if self.C is ALL else frozenset(self.C)


# --- robbers ---------------------------------------------------------------

class StationaryRobber(ConcreteRobber):
    def __init__(self, at):
        self.at = at
        self.name = "concrete:stationary"

    def place(self, view):
        return self.at


class RandomWalkRobber(ConcreteRobber):
    """Lazy random walk driven by its own random.Random(seed)."""

    def __init__(self, at, seed: int):
        self.at = at
        self.seed = seed
        self.name = f"concrete:walk={seed}"

    def place(self, view):
        self.rng = random.Random(self.seed)
        return self.at

    def move(self, view):
        opts = (view.position,) + tuple(view.graph.neighbors(view.position))
        return opts[self.rng.randrange(len(opts))]


class FleeingRobber(ConcreteRobber):
    """Moves to maximize the total distance to the last probe (ties: stay, then neighbor order)."""

    def __init__(self, at):
        self.at = at
        self.name = "concrete:flee"

    def place(self, view):
        return self.at

    def move(self, view):
        g = view.graph
        best, score = view.position, sum(g.distance(u, view.position) for u in view.probe)
        for y in g.neighbors(view.position):
            s = sum(g.distance(u, y) for u in view.probe)
            if s > score:
                best, score = y, s
        return best


def _vertex_key(v):
    return (0, v) if isinstance(v, int) else (1, v)


class GreedyPhantom(PhantomRobber):
    """Largest class; ties broken by the smallest vertex. On infinite graphs the
    first (symbolic) choice is made among classes meeting ball(root, horizon)."""

    def __init__(self, horizon: int | None = None):
        self.horizon = horizon
        self.name = "phantom-greedy"

    def choose(self, view, classes):
        return greedy_choice(classes)

    def choose_symbolic(self, view, probe):
        if self.horizon is None:
            return super().choose_symbolic(view, probe)
        g = view.graph
        region = ball(g, g.root, self.horizon)
        vectors = {tuple(g.distance(u, x) for u in probe) for x in region}
        sized = {d: class_of(g, ALL, probe, d) for d in vectors}
        return self.choose(view, sized)


def greedy_choice(classes):
    return min(classes, key=lambda d: (-len(classes[d]), _vertex_key(min(classes[d], key=_vertex_key))))


class SolverGuidedPhantom(PhantomRobber):
    """Chooses a class whose expansion is a robber win for the table's cop count;
    among those, the largest (ties: smallest vertex). Finite graphs only.
    States the table never reached are solved on first use."""

    def __init__(self, table):
        self.table = table
        self.name = "phantom-solver"
        self._extra: dict[int, bool] = {}

    def _robber_wins(self, state: int) -> bool:
        if state in self.table:
            return not self.table.entry(state).win
        if state not in self._extra:
            from ..solver import solve_exact

            sub = solve_exact(self.table.graph, self.table.k, state)
            self._extra[state] = not sub.initial_entry.win
        return self._extra[state]

    def choose(self, view, classes):
        g = view.graph
        safe = {}
        for d, cls in classes.items():
            if len(cls) < 2:
                continue
            nxt = 0
            for v in expand_candidates(g, cls):
                nxt |= 1 << v
            if self._robber_wins(nxt):
                safe[d] = cls
        return greedy_choice(safe or classes)
