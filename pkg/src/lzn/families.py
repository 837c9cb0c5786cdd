"""Graph families: infinite trees, decorated ray trees, truncations, and the
localizing subdivision G' of an arbitrary locally finite graph."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .graph import (
    Address,
    FiniteGraph,
    GraphError,
    LazyGraph,
    LazyTree,
    bfs_order,
    format_address,
    hat_graph,
    read_graph,
)

UNCOUNTABLE = "uncountable"


# --- descriptors -----------------------------------------------------------

@dataclass(frozen=True)
class Decoration:
    """Eventually periodic rule: spine position p >= 1 carries tree `at(p)`.

    Each decoration is a finite tree whose vertex 0 is identified with the
    spine vertex; K_1 means a bare spine vertex.
    """

    cycle: tuple[FiniteGraph, ...]
    prefix: tuple[FiniteGraph, ...] = ()

    def __post_init__(self):
        if not self.cycle:
            raise GraphError("decoration cycle must be nonempty")
        for t in self.cycle + self.prefix:
            if not t.is_tree():
                raise GraphError("decorations must be trees")

    def at(self, p: int) -> FiniteGraph:
        if p < 1:
            raise GraphError("spine positions start at 1")
        if p <= len(self.prefix):
            return self.prefix[p - 1]
        return self.cycle[(p - 1 - len(self.prefix)) % len(self.cycle)]

    @property
    def eventually_bare(self) -> bool:
        return all(t.n == 1 for t in self.cycle)


BARE = Decoration((FiniteGraph(1),))
LEAF = Decoration((FiniteGraph(2, [(0, 1)]),))


@dataclass(frozen=True)
class DecoratedRayTree:
    core: FiniteGraph
    spines: tuple[int, ...]
    decorations: tuple[Decoration, ...]

    def __post_init__(self):
        if not self.core.is_tree():
            raise GraphError("core must be a tree")
        if len(self.spines) != len(self.decorations):
            raise GraphError("one decoration rule per spine")
        if any(not self.core.is_vertex(c) for c in self.spines):
            raise GraphError("spine attached outside the core")


@dataclass(frozen=True)
class Family:
    kind: str
    param: object = None

    KINDS = ("ray", "double-ray", "regular", "omega", "tn", "sn", "hat", "comb",
             "decorated", "finite", "subdivided")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise GraphError(f"unknown family {self.kind!r}")
        if self.kind == "regular" and (not isinstance(self.param, int) or self.param < 2):
            raise GraphError("RegularTree needs degree >= 2")
        if self.kind in ("tn", "sn") and (not isinstance(self.param, int) or self.param < 2):
            raise GraphError(f"{self.kind} needs n >= 2")

    @property
    def end_count(self):
        if self.kind == "regular" and self.param == 2:
            return 2
        if self.kind in ("regular", "omega", "tn", "sn"):
            return UNCOUNTABLE
        if self.kind == "ray":
            return 1
        if self.kind in ("double-ray", "comb"):
            return 2
        if self.kind in ("hat", "finite"):
            return 0
        if self.kind == "decorated":
            return len(self.param.spines)
        return self.param.end_count

    @property
    def decorated(self) -> DecoratedRayTree | None:
        """The decorated-ray description, for families that have one."""
        if self.kind == "ray":
            return DecoratedRayTree(FiniteGraph(1), (0,), (BARE,))
        if self.kind == "double-ray":
            return DecoratedRayTree(FiniteGraph(1), (0, 0), (BARE, BARE))
        if self.kind == "comb":
            return DecoratedRayTree(FiniteGraph(2, [(0, 1)]), (0, 0), (LEAF, LEAF))
        if self.kind == "decorated":
            return self.param
        return None

    def __str__(self):
        if self.kind in ("regular", "tn", "sn"):
            return f"{self.kind}:{self.param}"
        if self.kind == "subdivided":
            return f"subdivided:{self.param}"
        if self.kind == "decorated" and isinstance(self.param, DecoratedRayTree):
            for name, preset in DECORATED_PRESETS.items():
                if preset == self.param:
                    return f"decorated:{name}"
        return self.kind


def _k(n):
    return FiniteGraph(n, [(0, i) for i in range(1, n)])


DECORATED_PRESETS: dict[str, DecoratedRayTree] = {
    # double ray with periodic hanging trees of heights 0..2
    "double": DecoratedRayTree(
        FiniteGraph(1), (0, 0),
        (Decoration((FiniteGraph(1), _k(2), FiniteGraph(3, [(0, 1), (1, 2)]), _k(4))),
         Decoration((_k(2), FiniteGraph(1)), prefix=(_k(3),))),
    ),
    # the hat with two rays attached at leaves
    "hat2": DecoratedRayTree(hat_graph(), (4, 9), (LEAF, BARE)),
    # three spines from a path core, one of them eventually bare
    "tripod": DecoratedRayTree(
        FiniteGraph(3, [(0, 1), (1, 2)]), (0, 1, 2),
        (LEAF, Decoration((FiniteGraph(1),), prefix=(_k(3), _k(2))), Decoration((_k(2), FiniteGraph(1))))),
}


def parse_descriptor(text: str) -> Family:
    text = text.strip()
    head, _, rest = text.partition(":")
    try:
        if head in ("ray", "double-ray", "omega", "hat", "comb") and not rest:
            return Family(head)
        if head in ("regular", "tn", "sn"):
            return Family(head, int(rest))
        if head == "file":
            return Family("finite", read_graph(Path(rest)))
        if head == "decorated":
            if rest not in DECORATED_PRESETS:
                raise GraphError(f"unknown decorated preset {rest!r}; known: {sorted(DECORATED_PRESETS)}")
            return Family("decorated", DECORATED_PRESETS[rest])
        if head == "subdivided":
            return Family("subdivided", parse_descriptor(rest))
    except ValueError as exc:
        raise GraphError(f"bad family descriptor {text!r}: {exc}") from None
    raise GraphError(f"bad family descriptor {text!r}")


# --- tree families ---------------------------------------------------------

def _regular_arity(delta):
    return lambda addr: delta if not addr else delta - 1


def sn_branching(n: int) -> int:
    return n * (n - 1) + 1


def is_branch_node(n: int, addr: Address) -> bool:
    return len(addr) % n == 0


def sn_tn_address(n: int, addr: Address) -> Address:
    """T(n) address of a branch node of S(n)."""
    if not is_branch_node(n, addr):
        raise GraphError(f"{format_address(addr)} is a path node")
    return addr[::n]


def sn_branch_address(n: int, tn_addr: Address) -> Address:
    out: list[int] = []
    for i in tn_addr:
        out.append(i)
        out.extend([0] * (n - 1))
    return tuple(out)


def sn_path_triple(n: int, addr: Address) -> tuple[Address, int, int]:
    """(parent branch address, child index, step 1..n-1) of a path node."""
    step = len(addr) % n
    if step == 0:
        raise GraphError(f"{format_address(addr)} is a branch node")
    parent = addr[:len(addr) - step]
    return parent, addr[len(parent)], step


def sn_child_branch(n: int, b: Address, i: int) -> Address:
    return b + (i,) + (0,) * (n - 1)


class DecoratedTree(LazyTree):
    """LazyTree view of a DecoratedRayTree.

    Node kinds: ("core", c), ("spine", s, p) with p >= 1, and
    ("deco", s, p, x) for decoration vertex x != 0 hanging at spine position p.
    A core vertex lists its spines before its core children; a spine vertex
    lists its continuation first, then its decoration children.
    """

    def __init__(self, desc: DecoratedRayTree, name: str = "decorated"):
        self.desc = desc
        self._core_kids = _rooted_children(desc.core, 0)
        self._spines_at: dict[int, list[int]] = {}
        for s, c in enumerate(desc.spines):
            self._spines_at.setdefault(c, []).append(s)
        self._node: dict[Address, tuple] = {(): ("core", 0)}
        self._deco_kids: dict[FiniteGraph, dict] = {}
        super().__init__(self._arity_of, name=name)

    def _decoration_children(self, t: FiniteGraph) -> dict:
        kids = self._deco_kids.get(t)
        if kids is None:
            kids = self._deco_kids[t] = _rooted_children(t, 0)
        return kids

    def child_nodes(self, node: tuple) -> list[tuple]:
        kind = node[0]
        if kind == "core":
            c = node[1]
            out = [("spine", s, 1) for s in self._spines_at.get(c, [])]
            out += [("core", x) for x in self._core_kids[c]]
            return out
        if kind == "spine":
            _, s, p = node
            kids = self._decoration_children(self.desc.decorations[s].at(p))
            return [("spine", s, p + 1)] + [("deco", s, p, x) for x in kids[0]]
        _, s, p, x = node
        kids = self._decoration_children(self.desc.decorations[s].at(p))
        return [("deco", s, p, y) for y in kids[x]]

    def node(self, addr: Address) -> tuple:
        hit = self._node.get(addr)
        if hit is not None:
            return hit
        k = len(addr)
        while addr[:k] not in self._node:
            k -= 1
        cur = self._node[addr[:k]]
        for j in range(k, len(addr)):
            kids = self.child_nodes(cur)
            if not 0 <= addr[j] < len(kids):
                raise GraphError(f"{format_address(addr)} is not a vertex")
            cur = kids[addr[j]]
            self._node[addr[:j + 1]] = cur
        return cur

    def _arity_of(self, addr: Address) -> int:
        return len(self.child_nodes(self.node(addr)))

    @cached_property
    def core_addresses(self) -> dict[int, Address]:
        out = {0: ()}
        for c in bfs_order(self.desc.core, 0):
            base = out[c]
            offset = len(self._spines_at.get(c, []))
            for j, x in enumerate(self._core_kids[c]):
                out[x] = base + (offset + j,)
        return out

    def spine_address(self, s: int, p: int) -> Address:
        c = self.desc.spines[s]
        idx = self._spines_at[c].index(s)
        return self.core_addresses[c] + (idx,) + (0,) * (p - 1)

    @cached_property
    def _core_subtree_spines(self) -> dict[int, frozenset]:
        out: dict[int, frozenset] = {}
        for c in reversed(bfs_order(self.desc.core, 0)):
            acc = set(self._spines_at.get(c, []))
            for x in self._core_kids[c]:
                acc |= out[x]
            out[c] = frozenset(acc)
        return out

    def subtree_ends(self, addr: Address) -> frozenset:
        node = self.node(addr)
        if node[0] == "core":
            return self._core_subtree_spines[node[1]]
        if node[0] == "spine":
            return frozenset((node[1],))
        return frozenset()

    def ends_through(self, x: Address, y: Address) -> frozenset:
        """Spines (ends) in the component of T - xy containing y."""
        if len(y) == len(x) + 1:
            return self.subtree_ends(y)
        return frozenset(range(len(self.desc.spines))) - self.subtree_ends(x)

    def spine_position(self, addr: Address) -> tuple[int, int] | None:
        node = self.node(addr)
        if node[0] == "spine":
            return node[1], node[2]
        return None


def _rooted_children(t: FiniteGraph, root: int) -> dict[int, tuple[int, ...]]:
    parent = {root: None}
    order = [root]
    for x in order:
        for y in t.neighbors(x):
            if y not in parent:
                parent[y] = x
                order.append(y)
    return {x: tuple(y for y in t.neighbors(x) if parent.get(y) == x) for x in order}


def comb_position(g: DecoratedTree, addr: Address) -> int | None:
    """Signed spine position of a comb vertex, or None for a leaf."""
    node = g.node(addr)
    if node[0] == "core":
        return 0 if node[1] == 0 else None
    if node[0] == "spine":
        return node[2] if node[1] == 0 else -node[2]
    return None


def comb_spine_vertex(g: DecoratedTree, pos: int) -> Address:
    if pos == 0:
        return ()
    return g.spine_address(0 if pos > 0 else 1, abs(pos))


def comb_leaf(g: DecoratedTree, pos: int) -> Address:
    base = comb_spine_vertex(g, pos)
    return base + ((2,) if pos == 0 else (1,))


# --- build -----------------------------------------------------------------

def build(d: Family):
    kind = d.kind
    if kind == "hat":
        g = hat_graph()
    elif kind == "finite":
        g = d.param
        if not g.is_connected():
            raise GraphError("graph must be connected")
    elif kind == "subdivided":
        g = localize_subdivision(build(d.param))
    elif d.decorated is not None:
        g = DecoratedTree(d.decorated, name=str(d))
    elif kind == "regular":
        g = LazyTree(_regular_arity(d.param), name=str(d))
    elif kind == "omega":
        g = LazyTree(lambda addr: len(addr) + 1, name="omega")
    elif kind == "tn":
        m = sn_branching(d.param)
        g = LazyTree(lambda addr: m, name=str(d))
    elif kind == "sn":
        n, m = d.param, sn_branching(d.param)
        g = LazyTree(lambda addr: m if len(addr) % n == 0 else 1, name=str(d))
    else:
        raise GraphError(f"cannot build {d}")
    g.family = d
    return g


def truncate(g, radius: int) -> tuple[FiniteGraph, list]:
    """Induced subgraph on ball(root, radius); index 0 is the root, BFS order."""
    if radius < 0:
        raise GraphError("negative radius")
    order = bfs_order(g, g.root, radius)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u in order for v in g.neighbors(u)
             if v in index and index[u] < index[v]]
    return FiniteGraph(len(order), edges), order


def materialize(g) -> tuple[FiniteGraph, list]:
    """Whole finite lazy graph as a FiniteGraph with its BFS correspondence."""
    if not g.is_finite:
        raise GraphError("cannot materialize an infinite graph")
    order = bfs_order(g, g.root)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u in order for v in g.neighbors(u) if index[u] < index[v]]
    return FiniteGraph(len(order), edges), order


# --- localizing subdivision ----------------------------------------------

def halve(g, root=None) -> LazyGraph:
    """Subdivide every edge once: ('v', x) for vertices, ('m', x, y) with x < y for midpoints."""

    def oracle(h):
        if h[0] == "v":
            x = h[1]
            return [("m",) + tuple(sorted((x, y))) for y in g.neighbors(x)]
        return [("v", h[1]), ("v", h[2])]

    return LazyGraph(("v", g.root if root is None else root), oracle,
                     finite=g.is_finite, name="halved")


class SubdivisionPlan:
    """Level sizes of H around v, and the derived s_i and D_i (computed on demand)."""

    def __init__(self, h, v, max_level: int | None = None):
        self.h = h
        self.v = v
        self.max_level = max_level
        self._levels = [[v]]
        self._seen = {v}
        self._exhausted = False

    def __repr__(self):
        return f"SubdivisionPlan(levels={[len(x) for x in self._levels]})"

    def _grow(self, i: int) -> None:
        while len(self._levels) <= i and not self._exhausted:
            if self.max_level is not None and len(self._levels) > self.max_level:
                raise GraphError(f"level {i} exceeds max_level {self.max_level}")
            nxt = []
            for x in self._levels[-1]:
                for y in self.h.neighbors(x):
                    if y not in self._seen:
                        self._seen.add(y)
                        nxt.append(y)
            if not nxt:
                self._exhausted = True
            else:
                self._levels.append(sorted(nxt))

    def level(self, i: int) -> list:
        self._grow(i)
        return self._levels[i] if i < len(self._levels) else []

    def level_size(self, i: int) -> int:
        return len(self.level(i))

    @property
    def eccentricity(self) -> int | None:
        """Last nonempty level for finite H; None while unknown."""
        return len(self._levels) - 1 if self._exhausted else None

    def finish(self) -> int:
        while not self._exhausted:
            self._grow(len(self._levels))
        return len(self._levels) - 1

    def s(self, i: int) -> int:
        if self.level_size(i) == 0 or self.level_size(i + 1) == 0:
            raise GraphError(f"no H-edges between levels {i} and {i + 1}")
        return 2 + self.level_size(i) + self.level_size(i + 1)

    def D(self, i: int) -> int:
        if self.level_size(i) == 0:
            raise GraphError(f"level {i} is empty")
        return i + sum(self.s(j) for j in range(i))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self._levels[: self.finish() + 1])

    def s_values(self) -> tuple[int, ...]:
        return tuple(self.s(i) for i in range(self.finish()))

    def D_values(self) -> tuple[int, ...]:
        return tuple(self.D(i) for i in range(self.finish() + 1))


def subdivision_plan(h, v, max_level: int | None = None) -> SubdivisionPlan:
    """Plan for an already halved graph h around vertex v."""
    if not h.is_finite and max_level is None:
        raise GraphError("infinite input needs max_level (or use localize_subdivision, which is lazy)")
    return SubdivisionPlan(h, v, max_level)


class SubdividedGraph(LazyGraph):
    """G': H with each level-i H-edge replaced by a path with s_i internal vertices.

    Path vertex ids are ('s', a, b, k) with a in L_i, b in L_{i+1}, 1 <= k <= s_i
    counted from a.
    """

    def __init__(self, g, plan: SubdivisionPlan, h):
        self.base = g
        self.plan = plan
        self.h = h
        self._level_of: dict = {}
        super().__init__(plan.v, self._oracle, finite=g.is_finite, name="subdivided")

    def h_level(self, x) -> int:
        lvl = self._level_of.get(x)
        if lvl is None:
            i = 0
            while True:
                layer = self.plan.level(i)
                if not layer:
                    raise GraphError(f"{x!r} is not an H-vertex")
                for y in layer:
                    self._level_of.setdefault(y, i)
                if x in self._level_of:
                    return self._level_of[x]
                i += 1
        return lvl

    def is_h_vertex(self, x) -> bool:
        return x[0] != "s"

    def h_neighbors(self, w, level: int | None = None) -> list:
        out = list(self.h.neighbors(w))
        if level is not None:
            out = [y for y in out if self.h_level(y) == level]
        return sorted(out)

    def edge_length(self, i: int) -> int:
        return self.plan.s(i) + 1

    def _first_step(self, a, b):
        """Neighbor of H-vertex a on the subdivided H-edge toward b."""
        la, lb = self.h_level(a), self.h_level(b)
        if lb == la + 1:
            return ("s", a, b, 1)
        if la == lb + 1:
            return ("s", b, a, self.plan.s(lb))
        raise GraphError("H-edge inside a level")

    def _oracle(self, x):
        if x[0] != "s":
            return sorted(self._first_step(x, y) for y in self.h.neighbors(x))
        _, a, b, k = x
        s = self.plan.s(self.h_level(a))
        lo = a if k == 1 else ("s", a, b, k - 1)
        hi = b if k == s else ("s", a, b, k + 1)
        return [lo, hi]

    def radius_of(self, x) -> int:
        """Distance from the root v, read off the plan."""
        if x[0] != "s":
            return self.plan.D(self.h_level(x))
        return self.plan.D(self.h_level(x[1])) + x[3]

    def format_vertex(self, x) -> str:
        if x[0] == "v":
            return f"v{x[1]}"
        if x[0] == "m":
            return f"m{x[1]}-{x[2]}"
        return f"{self.format_vertex(x[1])}~{self.format_vertex(x[2])}@{x[3]}"

    def parse_vertex(self, text: str):
        for x in bfs_order(self, self.root, None if self.is_finite else 200):
            if self.format_vertex(x) == text:
                return x
        raise GraphError(f"unknown vertex {text!r}")


def localize_subdivision(g, v=None) -> SubdividedGraph:
    """G' of an arbitrary connected locally finite graph, rooted at original vertex v."""
    h = halve(g, v)
    plan = SubdivisionPlan(h, h.root)
    for bad in _same_level_edges(h, plan):
        raise GraphError(f"H has an edge inside a level: {bad}")
    return SubdividedGraph(g, plan, h)


def _same_level_edges(h, plan, probe_levels: int = 4):
    # bipartite by construction; checked on the first few levels as a guard
    for i in range(probe_levels):
        layer = set(plan.level(i))
        for x in layer:
            for y in h.neighbors(x):
                if y in layer:
                    yield (x, y)

