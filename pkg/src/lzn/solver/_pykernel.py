"""Pure-Python partition/expand kernel over bitmask candidate sets."""

from __future__ import annotations


class Kernel:
    __slots__ = ("n", "radius", "spheres", "closed")

    def __init__(self, dist: list[list[int]], closed: list[int]):
        n = len(dist)
        radius = max(max(row) for row in dist) + 1
        spheres = [[0] * radius for _ in range(n)]
        for u, row in enumerate(dist):
            sph = spheres[u]
            for x, d in enumerate(row):
                sph[d] |= 1 << x
        self.n = n
        self.radius = radius
        self.spheres = spheres
        self.closed = list(closed)

    def classes(self, state: int, probe) -> list[int]:
        """Nonempty classes of state under probe, in lexicographic order of distance vectors."""
        parts = [state]
        for u in probe:
            sph = self.spheres[u]
            nxt = []
            for part in parts:
                rest = part
                for layer in sph:
                    piece = rest & layer
                    if piece:
                        nxt.append(piece)
                        rest ^= piece
                        if not rest:
                            break
            parts = nxt
        return parts

    def expand(self, mask: int) -> int:
        closed = self.closed
        acc = 0
        while mask:
            low = mask & -mask
            acc |= closed[low.bit_length() - 1]
            mask ^= low
        return acc

    def successors(self, state: int, probe) -> tuple[int, ...]:
        """Sorted distinct expansions of the non-singleton classes."""
        out = {self.expand(c) for c in self.classes(state, probe) if c & (c - 1)}
        return tuple(sorted(out))

    def all_successors(self, state: int, probes) -> list[tuple[int, ...]]:
        return [self.successors(state, p) for p in probes]

    def scores(self, state: int, probes) -> list[tuple[int, int]]:
        """(largest class size, sum of squared class sizes) per probe."""
        out = []
        for p in probes:
            sizes = [c.bit_count() for c in self.classes(state, p)]
            out.append((max(sizes), sum(s * s for s in sizes)))
        return out

    def restrict(self, state: int, u: int, d: int) -> int:
        return state & self.spheres[u][d] if d < self.radius else 0
