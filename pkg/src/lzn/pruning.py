"""Tree order, recursive pruning labels and end labels.

Labels are natural numbers. Finite trees are labelled both by the literal stage
recursion (`pruning_stages`) and by a bottom-up rule (`recursive_pruning`):
a leaf gets 0, and a vertex whose children have maximum label M gets M when a
single child attains M and M + 1 otherwise. Decorated ray trees are labelled
the same way on their finite parts; every spine tail carries the constant
label 1 + (largest label of a decoration vertex adjacent to the tail), or 0
when the tail is eventually bare.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from .families import UNCOUNTABLE, DecoratedRayTree, DecoratedTree, Family, _rooted_children, build
from .graph import FiniteGraph, GraphError, LazyTree, bfs_order, graph_to_dot, is_prefix

NO_PRUNING = "no recursive pruning exists"
PALETTE = ("#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b", "#fdae6b", "#e6550d", "#a63603")


# --- tree order --------------------------------------------------------------

def parents(t: FiniteGraph, root: int = 0) -> list[int | None]:
    par: list[int | None] = [None] * t.n
    for v in bfs_order(t, root):
        for y in t.neighbors(v):
            if y != root and par[y] is None and y != par[v]:
                par[y] = v
    return par


def tree_order_leq(t, u, v, root: int = 0) -> bool:
    """u precedes v: u lies on the path from the root to v."""
    if isinstance(t, LazyTree):
        return is_prefix(u, v)
    par = parents(t, root)
    x = v
    while x is not None:
        if x == u:
            return True
        x = par[x]
    return False


# --- finite trees --------------------------------------------------------------

def combine(child_labels: Sequence[int]) -> int:
    if not child_labels:
        return 0
    top = max(child_labels)
    return top if list(child_labels).count(top) == 1 else top + 1


def finite_labels(t: FiniteGraph, root: int = 0) -> list[int]:
    if not t.is_tree():
        raise GraphError("recursive pruning is defined on trees")
    kids = _rooted_children(t, root)
    lab = [0] * t.n
    for v in reversed(bfs_order(t, root)):
        lab[v] = combine([lab[c] for c in kids[v]])
    return lab


def pruning_stages(t: FiniteGraph, root: int = 0) -> list[int]:
    """Literal stage recursion: at stage a, every remaining vertex whose
    remaining up-set is totally ordered receives a; then they are removed."""
    if not t.is_tree():
        raise GraphError("recursive pruning is defined on trees")
    par = parents(t, root)
    below = [[x for x in range(t.n) if _leq(par, v, x)] for v in range(t.n)]
    lab: list[int | None] = [None] * t.n
    stage = 0
    while any(x is None for x in lab):
        alive = {x for x in range(t.n) if lab[x] is None}
        hit = []
        for v in alive:
            up = [x for x in below[v] if x in alive]
            if all(_leq(par, a, b) or _leq(par, b, a) for i, a in enumerate(up) for b in up[i + 1:]):
                hit.append(v)
        for v in hit:
            lab[v] = stage
        stage += 1
    return lab  # type: ignore[return-value]


def _leq(par, u, v) -> bool:
    while v is not None:
        if v == u:
            return True
        v = par[v]
    return False


# --- labels container ----------------------------------------------------------

class PruningLabels:
    """Label lookup; finite trees by index, decorated ray trees by address."""

    def __init__(self, tree, finite: list[int] | None = None, desc: DecoratedRayTree | None = None):
        self.tree = tree
        self.finite = finite
        self.desc = desc
        if desc is not None:
            self._symbolic(desc)

    def __getitem__(self, v) -> int:
        if self.finite is not None:
            return self.finite[v]
        node = self.tree.node(v)
        if node[0] == "core":
            return self.core[node[1]]
        if node[0] == "spine":
            return self.spine_label(node[1], node[2])
        _, s, p, x = node
        return _deco_labels(self.desc.decorations[s].at(p))[x]

    label = __getitem__

    def spine_label(self, s: int, p: int) -> int:
        pre = self.spine_prefix[s]
        return pre[p - 1] if p <= len(pre) else self.tail[s]

    def _symbolic(self, desc: DecoratedRayTree) -> None:
        self.tail: list[int] = []
        self.spine_prefix: list[list[int]] = []
        for dec in desc.decorations:
            if dec.eventually_bare:
                tail = 0
            else:
                tail = 1 + max(max(_root_child_labels(t), default=-1) for t in dec.cycle)
            pre = [0] * len(dec.prefix)
            nxt = tail
            for p in range(len(dec.prefix), 0, -1):
                nxt = pre[p - 1] = combine([nxt] + _root_child_labels(dec.at(p)))
            self.tail.append(tail)
            self.spine_prefix.append(pre)
        kids = _rooted_children(desc.core, 0)
        self.core = [0] * desc.core.n
        for c in reversed(bfs_order(desc.core, 0)):
            below = [self.core[x] for x in kids[c]]
            below += [self.spine_label(s, 1) for s, at in enumerate(desc.spines) if at == c]
            self.core[c] = combine(below)


@lru_cache(maxsize=None)
def _deco_labels(t: FiniteGraph) -> tuple[int, ...]:
    return tuple(finite_labels(t, 0))


def _root_child_labels(t: FiniteGraph) -> list[int]:
    lab = _deco_labels(t)
    return [lab[y] for y in t.neighbors(0)]


def _description(t) -> tuple[object, DecoratedRayTree | None]:
    if isinstance(t, Family):
        if t.end_count == UNCOUNTABLE:
            raise GraphError(NO_PRUNING)
        if t.decorated is None and t.kind not in ("hat", "finite"):
            raise GraphError(f"no pruning procedure for {t}")
        t = build(t)
    if isinstance(t, DecoratedRayTree):
        return DecoratedTree(t), t
    if isinstance(t, DecoratedTree):
        return t, t.desc
    fam = getattr(t, "family", None)
    if fam is not None and fam.end_count == UNCOUNTABLE:
        raise GraphError(NO_PRUNING)
    if isinstance(t, FiniteGraph):
        return t, None
    raise GraphError(f"no pruning procedure for {t!r}")


def recursive_pruning(t, root: int = 0) -> PruningLabels:
    """Labels of a finite tree (rooted at `root`), a decorated ray tree, or a family."""
    tree, desc = _description(t)
    if desc is None:
        return PruningLabels(tree, finite=finite_labels(tree, root))
    return PruningLabels(tree, desc=desc)


# --- ends ----------------------------------------------------------------------

@dataclass(frozen=True)
class EndInfo:
    labels: tuple[int, ...]      # end label per spine
    alpha: int
    attaining: tuple[int, ...]   # spines whose end label is alpha


def end_labels(desc: DecoratedRayTree, labels: PruningLabels) -> EndInfo:
    if not desc.spines:
        raise GraphError("no ends")
    ends = tuple(labels.tail)
    alpha = max(ends)
    return EndInfo(ends, alpha, tuple(s for s, e in enumerate(ends) if e == alpha))


def essential_alpha(desc: DecoratedRayTree, labels: PruningLabels,
                    max_depth: int = 10_000) -> tuple[int, int]:
    """(stable value, first stable depth) of the largest label among vertices
    at each depth that lie on a ray from the root."""
    if not desc.spines:
        raise GraphError("no essential vertices")
    depth = _core_depths(desc.core)
    kids = _rooted_children(desc.core, 0)
    carries = [False] * desc.core.n
    for c in reversed(bfs_order(desc.core, 0)):
        carries[c] = c in desc.spines or any(carries[x] for x in kids[c])
    horizon = max(depth[c] + len(d.prefix) for c, d in zip(desc.spines, desc.decorations)) + 1
    if horizon > max_depth:
        raise GraphError(f"no stabilization within depth {max_depth}")
    seq = []
    for i in range(horizon + 1):
        vals = [labels.core[c] for c in range(desc.core.n) if carries[c] and depth[c] == i]
        vals += [labels.spine_label(s, i - depth[c]) for s, c in enumerate(desc.spines) if i > depth[c]]
        seq.append(max(vals))
    alpha = seq[-1]
    j = horizon
    while j > 0 and seq[j - 1] == alpha:
        j -= 1
    return alpha, j


def _core_depths(core: FiniteGraph) -> list[int]:
    return list(core.distances_from(0))


def truncation_margin(desc: DecoratedRayTree) -> int:
    """Radius slack after which truncation no longer changes inner labels."""
    trees = [t for d in desc.decorations for t in d.cycle + d.prefix]
    height = max(max(t.distances_from(0)) for t in trees)
    cycle = max(len(d.cycle) for d in desc.decorations)
    return height + 2 * cycle + 2


# --- export --------------------------------------------------------------------

def labels_to_text(vertices, labels: PruningLabels, fmt=str) -> str:
    return "".join(f"vertex {fmt(v)} label {labels[v]}\n" for v in vertices)


def labels_to_dot(t: FiniteGraph, labels: Sequence[int], names: Sequence | None = None) -> str:
    shown = [f"{names[v] if names is not None else v}:{labels[v]}" for v in range(t.n)]
    colors = {v: PALETTE[min(labels[v], len(PALETTE) - 1)] for v in range(t.n)}
    return graph_to_dot(t, shown, colors, name="pruning")
