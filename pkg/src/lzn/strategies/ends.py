"""Two-cop strategies on trees: pivot pushing on finite trees and the
ray-scanning recursion for trees with finitely many ends."""

from __future__ import annotations

from ..families import DecoratedTree
from ..game import ContractViolation, CopStrategy


class PushFrame:
    """One cop holds the pivot, the other cycles through the pivot's eligible neighbors.

    A neighbor strictly closer than the pivot becomes the new pivot and the cops
    swap roles. `excluded` neighbors lead out of the region and are never probed.
    """

    def __init__(self, g, pivot, excluded=(), slot: int = 0):
        self.g = g
        self.pivot = pivot
        self.slot = slot
        self.nbrs = [y for y in g.neighbors(pivot) if y not in set(excluded)]
        self.idx = 0

    def probe(self):
        q = self.nbrs[self.idx % len(self.nbrs)] if self.nbrs else self.pivot
        return (self.pivot, q) if self.slot == 0 else (q, self.pivot)

    def observe(self, probe, dist):
        dp, dq = dist[self.slot], dist[1 - self.slot]
        if self.nbrs and dq < dp:
            q = probe[1 - self.slot]
            return PushFrame(self.g, q, (self.pivot,), 1 - self.slot)
        self.idx += 1
        return self

    def key(self):
        return ("push", self.pivot, self.slot, tuple(self.nbrs), self.idx % max(len(self.nbrs), 1))


class PushCop(CopStrategy):
    """Push strategy on a finite tree, starting from `pivot` (default: vertex 0)."""

    cops = 2

    def __init__(self, pivot=None):
        self.start_pivot = pivot
        self.name = f"push:{pivot}"

    def reset(self):
        g = self.graph
        if not (hasattr(g, "is_tree") and g.is_tree()):
            raise ContractViolation(self.name, "push strategy needs a finite tree")
        pivot = g.root if self.start_pivot is None else self.start_pivot
        self.frame = PushFrame(g, pivot)
        self.round = 0
        self.pivots: list[tuple[int, object]] = [(1, pivot)]

    def next_probe(self):
        return self.frame.probe()

    def observe(self, probe, dist):
        self.round += 1
        old = self.frame.pivot
        self.frame = self.frame.observe(probe, dist)
        if self.frame.pivot != old:
            self.pivots.append((self.round + 1, self.frame.pivot))

    def state_key(self):
        return self.frame.key()


def finite_tree_push_strategy(v) -> PushCop:
    return PushCop(v)


class RayFrame:
    """Region of a decorated ray tree with at least one end, entered at `pivot`.

    Both cops first probe the pivot (answer d); then the first cop stays on the
    pivot while the second probes v_i for i = d+1, d, ... along a ray R toward
    one end of the region. With answers (d1, d2):
      d1 + d2 == i  robber on R (captured);
      d1 - d2 == i  robber in the part S_i hanging off R at v_i;
      d2 - d1 == i  robber in S_0, the rest of the region at the pivot.
    """

    def __init__(self, g: DecoratedTree, pivot, excluded=()):
        self.g = g
        self.pivot = pivot
        self.excluded = frozenset(excluded)
        self.ends = region_ends(g, pivot, self.excluded)
        self.end = min(self.ends)
        self.ray = [pivot]
        self.i = None
        self.log: list[tuple] = []

    def vertex(self, i: int):
        while len(self.ray) <= i:
            cur = self.ray[-1]
            prev = self.ray[-2] if len(self.ray) > 1 else None
            for y in self.g.neighbors(cur):
                if y == prev or (prev is None and y in self.excluded):
                    continue
                if self.end in self.g.ends_through(cur, y):
                    self.ray.append(y)
                    break
            else:
                raise AssertionError("ray toward the chosen end is broken")
        return self.ray[i]

    def probe(self):
        if self.i is None:
            return (self.pivot, self.pivot)
        return (self.pivot, self.vertex(self.i))

    def observe(self, probe, dist):
        d1, d2 = dist
        if self.i is None:
            self.i = d1 + 1
            return self
        i = self.i
        on_ray, in_si, in_s0 = d1 + d2 == i, d1 - d2 == i, d2 - d1 == i
        verdicts = [name for name, hit in (("ray", on_ray), ("S_i", in_si), ("S_0", in_s0)) if hit]
        if d1 == 0 or d2 == 0:
            verdicts = ["ray"]
        if len(verdicts) > 1:
            raise AssertionError(f"trichotomy violated at i={i}: d1={d1} d2={d2}")
        self.log.append((i, d1, d2, verdicts[0] if verdicts else None))
        if on_ray or d1 == 0 or d2 == 0:
            return self
        if in_si:
            vi = self.vertex(i)
            return make_frame(self.g, vi, (self.vertex(i - 1), self.vertex(i + 1)))
        if in_s0:
            return make_frame(self.g, self.pivot, self.excluded | {self.vertex(1)})
        self.i -= 1
        if self.i < 1:
            raise AssertionError("scan passed the pivot without locating the robber")
        return self

    def key(self):
        return ("ray", self.pivot, self.excluded, self.i)


def region_ends(g: DecoratedTree, pivot, excluded) -> frozenset:
    out = frozenset()
    for y in g.neighbors(pivot):
        if y not in excluded:
            out |= g.ends_through(pivot, y)
    return out


def make_frame(g: DecoratedTree, pivot, excluded=()):
    if region_ends(g, pivot, frozenset(excluded)):
        return RayFrame(g, pivot, excluded)
    return PushFrame(g, pivot, excluded)


class FiniteEndsCop(CopStrategy):
    """Two cops on a tree with finitely many ends, given as a decorated ray tree."""

    cops = 2
    name = "ends-two-cop"

    def __init__(self, pivot=None):
        self.start_pivot = pivot

    def reset(self):
        g = self.graph
        if not isinstance(g, DecoratedTree):
            raise ContractViolation(self.name, "needs a decorated ray tree description")
        pivot = g.root if self.start_pivot is None else self.start_pivot
        self.frame = make_frame(g, pivot)
        self.round = 0
        self.pivots: list[tuple[int, object]] = [(1, pivot)]
        self.log: list[tuple] = []

    def next_probe(self):
        return self.frame.probe()

    def observe(self, probe, dist):
        self.round += 1
        old = self.frame
        seen = len(old.log) if isinstance(old, RayFrame) else 0
        self.frame = old.observe(probe, dist)
        if isinstance(old, RayFrame) and len(old.log) > seen:
            self.log.append((self.round,) + old.log[-1])
        if self.frame.pivot != old.pivot:
            self.pivots.append((self.round + 1, self.frame.pivot))

    def state_key(self):
        return self.frame.key()


def finite_ends_two_cop(g: DecoratedTree, v=None) -> FiniteEndsCop:
    if not isinstance(g, DecoratedTree):
        raise ContractViolation("ends-two-cop", "description/graph mismatch")
    return FiniteEndsCop(v)
