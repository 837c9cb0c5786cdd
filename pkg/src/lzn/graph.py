"""Finite graphs, lazily expanded graphs, and tree utilities."""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from pathlib import Path

Vertex = Hashable
Address = tuple[int, ...]

FORMAT_HEADER = "# lzn-graph v1"


class GraphError(ValueError):
    pass


class UnreachableVertex(GraphError):
    def __init__(self, u, v):
        super().__init__(f"unreachable vertex: {v!r} from {u!r}")


def format_address(addr: Address) -> str:
    return "r" if not addr else ".".join(map(str, addr))


def parse_address(text: str) -> Address:
    text = text.strip()
    if text in ("r", "()", ""):
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise GraphError(f"bad tree address {text!r}") from None


class FiniteGraph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    is_finite = True
    root = 0

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._rows: dict[int, list[int]] = {}
        self.family = None

    def __repr__(self):
        return f"FiniteGraph(n={self.n}, m={self.edge_count()})"

    def __eq__(self, other):
        return isinstance(other, FiniteGraph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(map(len, self.adj)) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_vertex(self, v) -> bool:
        return isinstance(v, int) and 0 <= v < self.n

    def distances_from(self, u: int) -> list[int]:
        """BFS row from u; unreachable vertices get -1."""
        row = self._rows.get(u)
        if row is None:
            row = [-1] * self.n
            row[u] = 0
            queue = deque([u])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if row[y] < 0:
                        row[y] = row[x] + 1
                        queue.append(y)
            self._rows[u] = row
        return row

    def distance(self, u: int, v: int) -> int:
        d = self.distances_from(u)[v]
        if d < 0:
            raise UnreachableVertex(u, v)
        return d

    def distance_matrix(self) -> list[list[int]]:
        return [list(self.distances_from(u)) for u in range(self.n)]

    def is_connected(self) -> bool:
        return min(self.distances_from(0)) >= 0

    def is_tree(self) -> bool:
        return self.edge_count() == self.n - 1 and self.is_connected()

    def format_vertex(self, v: int) -> str:
        return str(v)

    def parse_vertex(self, text: str) -> int:
        v = int(text)
        if not self.is_vertex(v):
            raise GraphError(f"vertex {v} out of range")
        return v


class LazyGraph:
    """Locally finite graph given by a root and a pure neighbor oracle.

    The oracle is consulted at most once per vertex; callers see an ordered
    tuple of neighbors.
    """

    is_finite = False

    def __init__(self, root: Vertex, oracle: Callable[[Vertex], Sequence[Vertex]],
                 *, finite: bool = False, name: str = "lazy"):
        self.root = root
        self._oracle = oracle
        self._nbrs: dict[Vertex, tuple] = {}
        self._bfs: dict[Vertex, tuple[dict, list]] = {}
        self.is_finite = finite
        self.name = name
        self.family = None

    def __repr__(self):
        return f"LazyGraph({self.name})"

    def neighbors(self, v: Vertex) -> tuple:
        nb = self._nbrs.get(v)
        if nb is None:
            nb = tuple(self._oracle(v))
            self._nbrs[v] = nb
        return nb

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def distance(self, u: Vertex, v: Vertex) -> int:
        if u == v:
            return 0
        seen, frontier = self._bfs.get(u, (None, None))
        if seen is None:
            seen, frontier = {u: 0}, [u]
            self._bfs[u] = (seen, frontier)
        d = seen.get(v)
        while d is None:
            if not frontier:
                raise UnreachableVertex(u, v)
            nxt = []
            for x in frontier:
                dx = seen[x] + 1
                for y in self.neighbors(x):
                    if y not in seen:
                        seen[y] = dx
                        nxt.append(y)
            frontier[:] = nxt
            d = seen.get(v)
        return d

    def format_vertex(self, v) -> str:
        return repr(v)

    def parse_vertex(self, text: str):
        raise GraphError(f"{self.name}: vertices cannot be parsed from text")


class LazyTree(LazyGraph):
    """Rooted locally finite tree whose vertices are child-index addresses."""

    def __init__(self, arity: Callable[[Address], int], *, name: str = "tree"):
        super().__init__((), self._tree_neighbors, name=name)
        self._arity_fn = arity
        self._arity: dict[Address, int] = {}

    def arity(self, addr: Address) -> int:
        a = self._arity.get(addr)
        if a is None:
            a = self._arity_fn(addr)
            self._arity[addr] = a
        return a

    def children(self, addr: Address) -> list[Address]:
        return [addr + (i,) for i in range(self.arity(addr))]

    def _tree_neighbors(self, addr: Address) -> list[Address]:
        nbrs = [addr[:-1]] if addr else []
        nbrs.extend(self.children(addr))
        return nbrs

    def is_vertex(self, addr) -> bool:
        if not isinstance(addr, tuple):
            return False
        return all(isinstance(i, int) and 0 <= i < self.arity(addr[:k])
                   for k, i in enumerate(addr))

    def distance(self, u: Address, v: Address) -> int:
        return tree_address_distance(u, v)

    def format_vertex(self, v: Address) -> str:
        return format_address(v)

    def parse_vertex(self, text: str) -> Address:
        addr = parse_address(text)
        if not self.is_vertex(addr):
            raise GraphError(f"{text!r} is not a vertex of {self.name}")
        return addr


def common_prefix_length(a: Address, b: Address) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def tree_address_distance(a: Address, b: Address) -> int:
    return len(a) + len(b) - 2 * common_prefix_length(a, b)


def is_prefix(a: Address, b: Address) -> bool:
    return len(a) <= len(b) and b[:len(a)] == a


def distance(g, u, v) -> int:
    return g.distance(u, v)


def _bfs_layers(g, center, r: int) -> Iterator[list]:
    """Yield spheres 0..r around center; queries neighbors only inside ball(center, r-1)."""
    seen = {center}
    layer = [center]
    yield layer
    for _ in range(r):
        nxt = []
        for x in layer:
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        layer = nxt
        yield layer
        if not layer:
            return


def sphere(g, center, r: int) -> set:
    if r < 0:
        raise GraphError("negative radius")
    layers = list(_bfs_layers(g, center, r))
    return set(layers[r]) if len(layers) > r else set()


def ball(g, center, r: int) -> set:
    if r < 0:
        raise GraphError("negative radius")
    out = set()
    for layer in _bfs_layers(g, center, r):
        out.update(layer)
    return out


def bfs_order(g, center, r: int | None = None) -> list:
    """Vertices of ball(center, r) in BFS discovery order (whole component if r is None)."""
    out = []
    seen = {center}
    queue = deque([(center, 0)])
    while queue:
        x, d = queue.popleft()
        out.append(x)
        if r is not None and d >= r:
            continue
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append((y, d + 1))
    return out


def subdivide_edge(g: FiniteGraph, e: tuple[int, int], k: int) -> FiniteGraph:
    u, v = e
    if not (g.is_vertex(u) and g.is_vertex(v) and g.has_edge(u, v)):
        raise GraphError(f"{e} is not an edge")
    if k < 0:
        raise GraphError("negative subdivision count")
    if k == 0:
        return g
    edges = [x for x in g.edges() if x != (min(u, v), max(u, v))]
    chain = [u] + list(range(g.n, g.n + k)) + [v]
    edges.extend(zip(chain, chain[1:]))
    return FiniteGraph(g.n + k, edges)


def induced_subgraph(g: FiniteGraph, verts: Sequence[int]) -> FiniteGraph:
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u in verts for v in g.adj[u] if v in index and u < v]
    return FiniteGraph(len(verts), edges)


def path_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> FiniteGraph:
    return FiniteGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def hat_graph() -> FiniteGraph:
    # root 0, middle vertices 1..3, leaves 4..9 (two per middle vertex)
    edges = [(0, 1), (0, 2), (0, 3)]
    edges += [(1 + i // 2, 4 + i) for i in range(6)]
    return FiniteGraph(10, edges)


# --- trees -----------------------------------------------------------------

def _require_tree(t: FiniteGraph):
    if not t.is_tree():
        raise GraphError("input is not a tree")


def tree_centers(t: FiniteGraph) -> list[int]:
    _require_tree(t)
    if t.n <= 2:
        return list(range(t.n))
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_form(t: FiniteGraph, root: int, banned: int | None = None) -> str:
    """AHU encoding of the tree rooted at root, skipping the branch through banned."""
    parent = {root: banned}
    order = [root]
    for x in order:
        for y in t.adj[x]:
            if y != parent[x] and y not in parent:
                parent[y] = x
                order.append(y)
    codes: dict[int, str] = {}
    for x in reversed(order):
        kids = sorted(codes[y] for y in t.adj[x] if parent.get(y) == x and y != banned)
        codes[x] = "(" + "".join(kids) + ")"
    return codes[root]


def canonical_tree_form(t: FiniteGraph) -> str:
    centers = tree_centers(t)
    if len(centers) == 1:
        return rooted_form(t, centers[0])
    a, b = centers
    halves = sorted((rooted_form(t, a, banned=b), rooted_form(t, b, banned=a)))
    return "[" + "".join(halves) + "]"


TREE_ENUMERATION_CAP = 14


def enumerate_trees(n: int) -> list[FiniteGraph]:
    """One representative per isomorphism class of n-vertex trees, sorted by canonical form."""
    if not 1 <= n <= TREE_ENUMERATION_CAP:
        raise GraphError(f"tree enumeration supports 1 <= n <= {TREE_ENUMERATION_CAP}")
    level = {canonical_tree_form(FiniteGraph(1)): FiniteGraph(1)}
    for size in range(2, n + 1):
        grown: dict[str, FiniteGraph] = {}
        for t in level.values():
            base = t.edges()
            for v in range(t.n):
                child = FiniteGraph(size, base + [(v, size - 1)])
                grown.setdefault(canonical_tree_form(child), child)
        level = grown
    return [level[key] for key in sorted(level)]


def prufer_to_tree(seq: Sequence[int], n: int) -> FiniteGraph:
    if n == 1:
        return FiniteGraph(1)
    if len(seq) != n - 2:
        raise GraphError("Pruefer sequence length must be n - 2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return FiniteGraph(n, edges)


def enumerate_trees_prufer(n: int) -> dict[str, FiniteGraph]:
    """Brute force over all Pruefer sequences; exponential, for small n only."""
    forms: dict[str, FiniteGraph] = {}
    for seq in itertools.product(range(n), repeat=max(n - 2, 0)):
        t = prufer_to_tree(seq, n)
        forms.setdefault(canonical_tree_form(t), t)
    return forms


HAT_FORM = canonical_tree_form(hat_graph())
_HAT_CROSSCHECK_LIMIT = 13


def contains_hat_bruteforce(t: FiniteGraph) -> bool:
    """Literal check: some 10-vertex induced subgraph is isomorphic to the hat."""
    if t.n < 10:
        return False
    for subset in itertools.combinations(range(t.n), 10):
        sub = induced_subgraph(t, subset)
        if sub.edge_count() == 9 and sub.is_connected() and canonical_tree_form(sub) == HAT_FORM:
            return True
    return False


def contains_hat(t: FiniteGraph) -> bool:
    _require_tree(t)
    found = any(
        sum(1 for w in t.adj[v] if t.degree(w) >= 3) >= 3 for v in range(t.n)
    )
    if t.n <= _HAT_CROSSCHECK_LIMIT:
        assert found == contains_hat_bruteforce(t), "degree characterization disagrees"
    return found


def canonical_graph_form(g: FiniteGraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Minimum relabeled edge list over all vertex permutations (tiny graphs only)."""
    best = None
    edges = g.edges()
    for perm in itertools.permutations(range(g.n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return g.n, best


def enumerate_connected_graphs(n: int) -> list[FiniteGraph]:
    """Connected graphs on n vertices up to isomorphism, by brute force."""
    if not 1 <= n <= 6:
        raise GraphError("connected graph enumeration supports 1 <= n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    found: dict = {}
    for mask in range(1 << len(pairs)):
        if bin(mask).count("1") < n - 1:
            continue
        g = FiniteGraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if g.is_connected():
            found.setdefault(canonical_graph_form(g), g)
    return [found[key] for key in sorted(found)]


# --- text formats --------------------------------------------------------

def graph_to_text(g: FiniteGraph) -> str:
    lines = [FORMAT_HEADER, f"vertices {g.n}"]
    lines += [f"edge {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> FiniteGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != FORMAT_HEADER:
        raise GraphError(f"missing header {FORMAT_HEADER!r}")
    if len(lines) < 2 or not lines[1].startswith("vertices "):
        raise GraphError("second line must be 'vertices <n>'")
    try:
        n = int(lines[1].split()[1])
        edges = []
        for ln in lines[2:]:
            tag, u, v = ln.split()
            if tag != "edge":
                raise GraphError(f"unexpected line {ln!r}")
            edges.append((int(u), int(v)))
    except (ValueError, IndexError):
        raise GraphError("malformed graph file") from None
    return FiniteGraph(n, edges)


def read_graph(path: str | Path) -> FiniteGraph:
    return graph_from_text(Path(path).read_text())


def write_graph(g: FiniteGraph, path: str | Path) -> None:
    Path(path).write_text(graph_to_text(g))


def correspondence_to_text(labels: Sequence, fmt: Callable = str) -> str:
    return "".join(f"{i} {fmt(v)}\n" for i, v in enumerate(labels))


def graph_to_dot(g: FiniteGraph, labels: Sequence | None = None,
                 colors: dict[int, str] | None = None, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = []
        if labels is not None:
            attrs.append(f'label="{labels[v]}"')
        if colors and v in colors:
            attrs.append(f'style=filled fillcolor="{colors[v]}"')
        out.append(f"  {v}" + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    out += [f"  {u} -- {v};" for u, v in g.edges()]
    out.append("}")
    return "\n".join(out) + "\n"
