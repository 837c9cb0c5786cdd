"""Strategies on the subdivided trees S(n), and the embedding into the omega tree."""

from __future__ import annotations

import copy
import math
from collections.abc import Callable
from dataclasses import dataclass

from ..families import sn_branching, sn_child_branch
from ..game import ConcreteRobber, ContractViolation, CopStrategy, TwinCertificate, probe_response
from ..graph import Address, LazyTree, is_prefix


def _require_sn(g, n: int, who: str):
    fam = getattr(g, "family", None)
    if fam is None or fam.kind != "sn" or fam.param != n:
        raise ContractViolation(who, f"only defined on sn:{n}")


class SnCop(CopStrategy):
    """Branch-by-branch descent on S(n).

    At the current root b the children branch nodes are probed in address order,
    `cops` per round, leaving out the last one. A strictly closer child means the
    robber lies toward it; all-equal answers through the whole schedule mean the
    omitted child. `embed` maps addresses to vertices of the played graph (for
    truncations); `iterations` records (round, root) at each iteration start.
    """

    _shared = ("graph", "embed")

    def __init__(self, n: int, cops: int | None = None,
                 embed: Callable[[Address], object] | None = None):
        if n < 2:
            raise ValueError("S(n) needs n >= 2")
        self.n = n
        self.m = sn_branching(n)
        self.cops = n if cops is None else cops
        self.embed = embed
        self.name = f"sn-cop:{n}" + ("" if cops is None else f":{cops}")

    def reset(self):
        if self.embed is None:
            _require_sn(self.graph, self.n, self.name)
        self.root: Address = ()
        self.pos = 0
        self.round = 0
        self.iterations: list[tuple[int, Address]] = [(1, ())]

    def _group(self) -> list[int]:
        return list(range(self.pos, min(self.pos + self.cops, self.m - 1)))

    def next_probe(self):
        group = self._group()
        group += [group[-1]] * (self.cops - len(group))
        addrs = [sn_child_branch(self.n, self.root, i) for i in group]
        return tuple(map(self.embed, addrs)) if self.embed else tuple(addrs)

    def _descend(self, child: int):
        self.root = sn_child_branch(self.n, self.root, child)
        self.pos = 0
        self.iterations.append((self.round + 1, self.root))

    def observe(self, probe, dist):
        self.round += 1
        group = self._group()
        ds = dist[: len(group)]
        low = min(ds)
        if low != max(ds):
            closer = [i for i, d in zip(group, ds) if d == low]
            self._descend(closer[0])
            return
        self.pos += self.cops
        if self.pos >= self.m - 1:
            self._descend(self.m - 1)

    def state_key(self):
        return (self.root, self.pos)


@dataclass
class _Level:
    node: Address     # branch node the robber stood on (virtually, at time 0)
    time: int         # round at which the robber stood on it
    comp: int         # chosen child component


class SnRobber(ConcreteRobber):
    """Omniscient robber beating n-1 cops on S(n).

    At each branch node it simulates the cops n rounds ahead (on a replica) and
    enters a child component they will not probe, reaching that child's branch
    node exactly n rounds later. Play starts as if the robber had stood on the
    first child branch node of the root at time 0. `twin` certifies that a
    second vertex is consistent with every answer: a mirror position in another
    unprobed component, or the position n steps up the tree.
    """

    def __init__(self, n: int):
        self.n = n
        self.m = sn_branching(n)
        self.name = f"sn-robber:{n}"
        self.levels: list[_Level] = []

    def start(self, view):
        _require_sn(view.graph, self.n, self.name)
        if view.cops > self.n - 1:
            raise ContractViolation(self.name, f"evasion needs at most {self.n - 1} cops, got {view.cops}")

    def _choose(self, view, node: Address) -> int:
        g = view.graph
        # full replay (determinism check) on every 8th decision
        base = view.fork(verify=len(self.levels) % 8 == 1)
        for i in range(self.m):
            branch = node + (i,)
            replica = copy.deepcopy(base)
            for j in range(self.n):
                probe = tuple(replica.next_probe())
                if any(is_prefix(branch, u) for u in probe):
                    break
                replica.observe(probe, probe_response(g, branch + (0,) * j, probe))
            else:
                return i
        raise AssertionError(f"every component below {node} is probed within {self.n} rounds")

    def place(self, view):
        self.levels = []
        node = sn_child_branch(self.n, (), 0)
        self.levels = [_Level(node, 0, self._choose(view, node))]
        return node + (self.levels[-1].comp,)

    def move(self, view):
        lvl = self.levels[-1]
        pos = view.position
        if view.round - lvl.time < self.n:
            return pos + (0,)
        comp = self._choose(view, pos)
        self.levels.append(_Level(pos, view.round, comp))
        return pos + (comp,)

    def twin(self, view):
        lvl = self.levels[-1]
        steps = view.round - lvl.time
        window = view.transcript.rounds[lvl.time: view.round]
        for i in range(self.m):
            if i == lvl.comp:
                continue
            branch = lvl.node + (i,)
            if not any(is_prefix(branch, u) for rec in window for u in rec.probe):
                return TwinCertificate(lvl.time + 1, [branch + (0,) * q for q in range(steps)])
        if len(lvl.node) >= steps:
            return TwinCertificate(lvl.time + 1, [lvl.node[: len(lvl.node) - q] for q in range(1, steps + 1)])
        return None


@dataclass(frozen=True)
class OmegaEmbedding:
    """Copy of the regular tree of the given arity inside the omega tree."""

    root: Address
    arity: int

    def embed(self, addr: Address) -> Address:
        if any(i >= self.arity for i in addr):
            raise ValueError(f"{addr} is not an address of the {self.arity}-ary tree")
        return self.root + addr

    def verify(self, g: LazyTree, radius: int) -> None:
        frontier: list[Address] = [()]
        for _ in range(radius + 1):
            nxt = []
            for a in frontier:
                v = self.embed(a)
                if g.arity(v) < self.arity:
                    raise AssertionError(f"{v} has {g.arity(v)} < {self.arity} children")
                nxt.extend(a + (i,) for i in range(self.arity))
            frontier = nxt


def omega_subtree_reduction(m: int) -> OmegaEmbedding:
    """Subtree of the omega tree in which every vertex has >= 2*ceil(sqrt(m+1)) children."""
    if m < 1:
        raise ValueError("need at least one cop")
    arity = 2 * _ceil_sqrt(m + 1)
    return OmegaEmbedding((0,) * (arity - 1), arity)


def _ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1
