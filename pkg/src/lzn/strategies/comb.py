"""Evasion of one cop on the comb, and the scripted one-cop suite it is tested against."""

from __future__ import annotations

from ..families import DecoratedTree, comb_leaf, comb_position, comb_spine_vertex, truncate
from ..game import ContractViolation, CopStrategy, PhantomRobber, probe_response
from .basic import GreedyCop, RandomCop, ScriptedCop


def _is_comb(g) -> bool:
    fam = getattr(g, "family", None)
    return isinstance(g, DecoratedTree) and fam is not None and fam.kind == "comb"


def _require_comb(g, who: str):
    if not _is_comb(g):
        raise ContractViolation(who, "only defined on the comb")


def spine_of(g: DecoratedTree, x) -> tuple[int, bool]:
    """(spine position, is_leaf) of a comb vertex."""
    p = comb_position(g, x)
    if p is not None:
        return p, False
    return comb_position(g, x[:-1]), True


class CombRobber(PhantomRobber):
    """Keeps a designated spine vertex v and one more vertex in every chosen class.

    With u, w the spine neighbours of v and v' its leaf, the expanded candidates
    contain {u, v, w, v'}. A probe on v's left side (or at v) cannot separate w
    from v'; a probe on the right side cannot separate u from v'; a probe at v'
    cannot separate u from w. The robber answers with that class.
    """

    name = "comb-robber"

    def __init__(self):
        self.v: int | None = None
        self.trail: list[tuple[int, int, object]] = []

    def start(self, view):
        _require_comb(view.graph, self.name)
        if view.cops != 1:
            raise ContractViolation(self.name, f"needs exactly one cop, got {view.cops}")
        self.v = None
        self.trail = []

    def choose_symbolic(self, view, probe):
        g = view.graph
        x = probe[0]
        p, _ = spine_of(g, x)
        # every radius-2 sphere meets the spine and has >= 2 vertices
        cands = [q for q in range(p - 3, p + 4)
                 if g.distance(comb_spine_vertex(g, q), x) == 2]
        self.v = min(cands)
        self.trail.append((view.round, self.v, None))
        return (2,)

    def choose(self, view, classes):
        g = view.graph
        v = self.v
        probe = view.probe
        p, leaf = spine_of(g, probe[0])
        if leaf and p == v:
            target, partner, new_v = comb_spine_vertex(g, v - 1), comb_spine_vertex(g, v + 1), v - 1
        elif p <= v:
            target, partner, new_v = comb_spine_vertex(g, v + 1), comb_leaf(g, v), v + 1
        else:
            target, partner, new_v = comb_spine_vertex(g, v - 1), comb_leaf(g, v), v - 1
        d = probe_response(g, target, probe)
        cls = classes.get(d)
        if cls is None or target not in cls or partner not in cls:
            raise AssertionError(f"case analysis broken at spine position {v} for probe {probe}")
        self.v = new_v
        self.trail.append((view.round, new_v, partner))
        return d


def comb_robber_strategy() -> CombRobber:
    return CombRobber()


# --- one-cop suite -----------------------------------------------------------

def _zigzag(i: int) -> int:
    return (i + 1) // 2 if i % 2 else -(i // 2)


def _scripted(name: str, fn) -> ScriptedCop:
    return ScriptedCop(lambda g, r: (fn(g, r),), name)


class OnePushCop(CopStrategy):
    """Single-cop imitation of the pivot push: the pivot and one of its
    neighbours are probed in alternate rounds; a neighbour that answered
    closer than the preceding pivot probe becomes the pivot."""

    name = "one-push"

    def reset(self):
        self.pivot = self.graph.root
        self.back = None
        self.idx = 0
        self.on_pivot = True
        self.dp = None

    def _nbrs(self):
        return [y for y in self.graph.neighbors(self.pivot) if y != self.back]

    def next_probe(self):
        if self.on_pivot:
            return (self.pivot,)
        nb = self._nbrs()
        return (nb[self.idx % len(nb)],)

    def observe(self, probe, dist):
        if self.on_pivot:
            self.dp = dist[0]
        elif dist[0] < self.dp:
            self.back, self.pivot, self.idx = self.pivot, probe[0], 0
        else:
            self.idx += 1
        self.on_pivot = not self.on_pivot

    def state_key(self):
        return (self.pivot, self.back, self.idx, self.on_pivot, self.dp)


def solver_replay_cop(g, radius: int = 5):
    """Win-table strategy of the radius-`radius` truncation, played on the infinite comb."""
    from ..solver import cop_wins, SolverCop

    t, labels = truncate(g, radius)
    ok, table = cop_wins(t, 1)
    if not ok:
        raise AssertionError(f"truncation of radius {radius} is not one-cop-win")
    cop = SolverCop(table, labels=labels)
    cop.name = f"solver-replay:{radius}"
    return cop


def one_cop_suite(g, seeds: int = 100) -> list[CopStrategy]:
    """Scripted, adaptive and random one-cop strategies on the comb."""
    _require_comb(g, "one-cop suite")
    sv, lf = comb_spine_vertex, comb_leaf
    cops: list[CopStrategy] = [
        _scripted("sweep-right", lambda g, r: sv(g, r - 1)),
        _scripted("sweep-left", lambda g, r: sv(g, 1 - r)),
        _scripted("sweep-right-slow", lambda g, r: sv(g, (r - 1) // 2)),
        _scripted("zigzag", lambda g, r: sv(g, _zigzag(r - 1))),
        _scripted("leaf-sweep", lambda g, r: lf(g, r - 1)),
        _scripted("leaf-zigzag", lambda g, r: lf(g, _zigzag(r - 1))),
        _scripted("fixed-root", lambda g, r: g.root),
        _scripted("fixed-leaf", lambda g, r: lf(g, 0)),
        _scripted("root-leaf", lambda g, r: g.root if r % 2 else lf(g, 0)),
        _scripted("spine-leaf-sweep", lambda g, r: sv(g, r // 2) if r % 2 else lf(g, r // 2 - 1)),
        OnePushCop(),
        GreedyCop(1),
        solver_replay_cop(g),
    ]
    cops += [RandomCop(1, seed) for seed in range(seeds)]
    return cops
