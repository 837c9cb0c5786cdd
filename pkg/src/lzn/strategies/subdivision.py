"""One cop on the level-subdivided graph G'."""

from __future__ import annotations

from ..families import SubdividedGraph
from ..game import ContractViolation, CopStrategy


class SubdivisionCop(CopStrategy):
    """Phase strategy around the root v of G'.

    start   probe v; an answer within 1 of some D_l starts phase 2 at level l,
            otherwise the robber is inside band i (D_{i-1} < d < D_i) and
            phase 1 runs on X = L_i followed by L_{i-1}.
    phase 1 alternate X[j] and v until a v-answer lies within 1 of D_{i-1}
            or D_i; an exhausted X restarts.
    phase 2 scan L_l until an answer is at most |L_l| + 1 (vertex w), probe v
            once to learn the side, then scan the H-neighbours of w on that
            side until an answer is at most the path length s; restart after.
    """

    name = "subdivision-one-cop"

    def reset(self):
        g = self.graph
        if not isinstance(g, SubdividedGraph):
            raise ContractViolation(self.name, "needs a graph built by localize_subdivision")
        self.plan = g.plan
        self.round = 0
        self._restart()
        self.phase_log: list[tuple[int, str, int]] = []
        self.episode = 0

    _shared = ("graph", "plan")

    def _restart(self):
        self.phase = "start"
        self.band = None
        self.X: tuple = ()
        self.j = 0
        self.level = None
        self.w = None
        self.nbrs: tuple = ()
        self.bound = None

    def _near_level(self, d: int):
        i = 0
        while True:
            D = self.plan.D(i)
            if abs(d - D) <= 1:
                return i, None
            if d < D:
                return None, i
            i += 1
            if not self.plan.level(i):
                raise AssertionError(f"distance {d} beyond the last level")

    def _after_v(self, d: int):
        near, band = self._near_level(d)
        if near is not None:
            self._enter_scan(near)
        else:
            self.phase = "p1x"
            self.band = band
            self.X = tuple(self.plan.level(band)) + tuple(self.plan.level(band - 1))
            self.j = 0
            self.episode += 1

    def _enter_scan(self, lvl: int):
        self.phase = "p2scan"
        self.level = lvl
        self.X = tuple(self.plan.level(lvl))
        self.j = 0

    def next_probe(self):
        if self.phase in ("start", "p1v", "p2v"):
            return (self.plan.v,)
        if self.phase in ("p1x", "p2scan"):
            return (self.X[self.j],)
        return (self.nbrs[self.j],)

    def observe(self, probe, dist):
        self.round += 1
        d = dist[0]
        if self.phase == "p1x" or self.phase == "p1v":
            self.phase_log.append((self.round, self.phase, self.episode))
        ph = self.phase
        if ph == "start":
            self._after_v(d)
        elif ph == "p1x":
            self.j += 1
            self.phase = "p1v"
        elif ph == "p1v":
            i = self.band
            if abs(d - self.plan.D(i - 1)) <= 1:
                self._enter_scan(i - 1)
            elif abs(d - self.plan.D(i)) <= 1:
                self._enter_scan(i)
            elif self.j >= len(self.X):
                self._restart()
                self._after_v(d)
            else:
                self.phase = "p1x"
        elif ph == "p2scan":
            if d <= len(self.X) + 1:
                self.w = self.X[self.j]
                self.phase = "p2v"
            else:
                self.j += 1
                if self.j >= len(self.X):
                    self._restart()
        elif ph == "p2v":
            D = self.plan.D(self.level)
            side = self.level - 1 if d < D else self.level + 1
            self.nbrs = tuple(self.graph.h_neighbors(self.w, side))
            self.bound = self.plan.s(min(side, self.level))
            self.j = 0
            self.phase = "p2nbr" if self.nbrs else "start"
        else:
            self.j += 1
            if d <= self.bound or self.j >= len(self.nbrs):
                self._restart()

    def state_key(self):
        return (self.phase, self.band, self.X, self.j, self.level, self.w, self.nbrs)


def subdivision_one_cop(g) -> SubdivisionCop:
    if not isinstance(g, SubdividedGraph):
        raise ContractViolation("subdivision-one-cop", "missing plan or H-vertex tags")
    return SubdivisionCop()
