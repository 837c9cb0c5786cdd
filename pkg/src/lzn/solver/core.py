"""Candidate-set game on finite graphs: exact least fixpoint, goal-directed
prover, certificate checking, and strategy extraction."""

from __future__ import annotations

import itertools
import os
import sys
from collections import deque
from dataclasses import dataclass

from ..game import CopStrategy
from ..graph import FiniteGraph, GraphError
from . import Kernel

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, explored: int, budget: int):
        super().__init__(f"state budget exceeded: explored {explored} states (budget {budget})")
        self.explored = explored
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get("LZN_BUDGET_STATES")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("LZN_BUDGET_STATES must be positive")
    return value


def make_kernel(g: FiniteGraph, kernel_cls=None):
    if not g.is_connected():
        raise GraphError("graph must be connected")
    closed = [(1 << v) | sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]
    return (kernel_cls or Kernel)(g.distance_matrix(), closed)


def probe_tuples(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations_with_replacement(range(n), k))


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Entry:
    rank: int | None          # None: robber wins
    probe: tuple | None

    @property
    def win(self) -> bool:
        return self.rank is not None


LOSE = Entry(None, None)


class WinTable:
    """Per-state verdicts. States are bitmasks over vertex indices."""

    def __init__(self, g: FiniteGraph, k: int, initial: int, method: str):
        self.graph = g
        self.k = k
        self.initial = initial
        self.method = method
        self.entries: dict[int, Entry] = {}

    def __contains__(self, state: int) -> bool:
        return state in self.entries

    def __len__(self):
        return len(self.entries)

    def entry(self, state: int) -> Entry:
        return self.entries.get(state, LOSE)

    @property
    def initial_entry(self) -> Entry:
        return self.entry(self.initial)

    def to_text(self) -> str:
        lines = [f"# k {self.k} method {self.method} states {len(self.entries)}"]
        for state in sorted(self.entries, key=lambda s: (s.bit_count(), members(s))):
            e = self.entries[state]
            verts = " ".join(map(str, members(state)))
            if e.win:
                lines.append(f"state {verts} -> win {e.rank} probe {' '.join(map(str, e.probe))}")
            else:
                lines.append(f"state {verts} -> lose")
        return "\n".join(lines) + "\n"


def solve_exact(g: FiniteGraph, k: int, initial: int | None = None,
                budget: int | None = None, kernel=None) -> WinTable:
    """Least fixpoint over the states reachable from `initial` (default V)."""
    if k < 1:
        raise ValueError("need at least one cop")
    budget = default_budget() if budget is None else budget
    kernel = kernel or make_kernel(g)
    probes = probe_tuples(g.n, k)
    start = (1 << g.n) - 1 if initial is None else initial
    index = {start: 0}
    states = [start]
    options: list[list[tuple[int, tuple[int, ...]]]] = []
    for sid in itertools.count():
        if sid >= len(states):
            break
        state = states[sid]
        succ_lists = kernel.all_successors(state, probes)
        opts: dict[tuple[int, ...], int] = {}
        immediate = None
        for pi, succs in enumerate(succ_lists):
            if not succs:
                immediate = pi
                break
            if state in succs:
                continue
            opts.setdefault(succs, pi)
        if immediate is not None:
            options.append([(immediate, ())])
            continue
        resolved = []
        for succs, pi in opts.items():
            ids = []
            for s in succs:
                j = index.get(s)
                if j is None:
                    j = index[s] = len(states)
                    states.append(s)
                    if len(states) > budget:
                        raise BudgetExceeded(len(states), budget)
                ids.append(j)
            resolved.append((pi, tuple(ids)))
        options.append(resolved)

    rank = [0] * len(states)
    witness: list[int | None] = [None] * len(states)
    remaining: list[list[int]] = []
    preds: list[list[tuple[int, int]]] = [[] for _ in states]
    queue: deque[int] = deque()
    for sid, opts in enumerate(options):
        remaining.append([len(ids) for _, ids in opts])
        for oi, (pi, ids) in enumerate(opts):
            if not ids and not rank[sid]:
                rank[sid] = 1
                witness[sid] = pi
                queue.append(sid)
            for j in ids:
                preds[j].append((sid, oi))
    while queue:
        s = queue.popleft()
        for t, oi in preds[s]:
            if rank[t]:
                continue
            remaining[t][oi] -= 1
            if remaining[t][oi] == 0:
                rank[t] = rank[s] + 1
                witness[t] = options[t][oi][0]
                queue.append(t)

    table = WinTable(g, k, start, "exact")
    for sid, state in enumerate(states):
        table.entries[state] = Entry(rank[sid], probes[witness[sid]]) if rank[sid] else LOSE
    return table


def prove(g: FiniteGraph, k: int, initial: int | None = None, *, width: int = 6,
          budget: int | None = None, kernel=None) -> WinTable | None:
    """Goal-directed search for a cop-win certificate.

    Tries the `width` most informative probes per state (smallest largest class,
    then smallest sum of squared class sizes). Returns a table of proven states
    or None; None does not mean the robber wins.
    """
    budget = default_budget() if budget is None else budget
    kernel = kernel or make_kernel(g)
    probes = probe_tuples(g.n, k)
    start = (1 << g.n) - 1 if initial is None else initial
    won: dict[int, Entry] = {}
    failed: set[int] = set()
    on_path: set[int] = set()
    visited = 0

    def attempt(state: int) -> int | None:
        nonlocal visited
        hit = won.get(state)
        if hit is not None:
            return hit.rank
        if state in failed or state in on_path:
            return None
        visited += 1
        if visited > budget:
            raise BudgetExceeded(visited, budget)
        on_path.add(state)
        scores = kernel.scores(state, probes)
        order = sorted(range(len(probes)), key=lambda i: (scores[i], i))
        tried: set[tuple[int, ...]] = set()
        for pi in order:
            if len(tried) >= width:
                break
            succs = kernel.successors(state, probes[pi])
            if succs in tried or state in succs:
                continue
            tried.add(succs)
            worst = 0
            for s in sorted(succs, key=int.bit_count):
                r = attempt(s)
                if r is None:
                    break
                worst = max(worst, r)
            else:
                won[state] = Entry(worst + 1, probes[pi])
                on_path.discard(state)
                return worst + 1
        on_path.discard(state)
        failed.add(state)
        return None

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20_000))
    try:
        ok = attempt(start) is not None
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return None
    table = WinTable(g, k, start, "prover")
    table.entries.update(won)
    return table


def check_win_table(table: WinTable, kernel=None) -> None:
    """Independently re-derive every CopWin claim from its witness probe."""
    kernel = kernel or make_kernel(table.graph)
    for state, e in table.entries.items():
        if not e.win:
            continue
        if len(e.probe) != table.k:
            raise AssertionError(f"witness {e.probe} has wrong arity")
        for s in kernel.successors(state, e.probe):
            sub = table.entries.get(s)
            if sub is None or not sub.win or sub.rank >= e.rank:
                raise AssertionError(f"state {members(state)}: successor {members(s)} not won below rank {e.rank}")
        if e.rank == 1 and kernel.successors(state, e.probe):
            raise AssertionError("rank-1 state with non-singleton classes")


def cop_wins(g: FiniteGraph, k: int, state: int | None = None, *, method: str = "auto",
             budget: int | None = None) -> tuple[bool, WinTable]:
    if g.n == 1:
        state = 1 if state is None else state
        table = WinTable(g, k, state, "trivial")
        table.entries[state] = Entry(1, (0,) * k)
        return True, table
    kernel = make_kernel(g)
    if method in ("auto", "prover"):
        table = prove(g, k, state, budget=budget, kernel=kernel)
        if table is not None:
            return True, table
        if method == "prover":
            raise RuntimeError("prover found no certificate")
    if method not in ("auto", "exact", "prover"):
        raise ValueError(f"unknown method {method!r}")
    table = solve_exact(g, k, state, budget=budget, kernel=kernel)
    return table.initial_entry.win, table


def localization_number(g: FiniteGraph, k_max: int, *, method: str = "auto",
                        budget: int | None = None) -> tuple[int | None, WinTable | None]:
    """Least k <= k_max with a cop win from V, or None if it exceeds k_max."""
    for k in range(1, k_max + 1):
        ok, table = cop_wins(g, k, method=method, budget=budget)
        if ok:
            return k, table
    return None, None


class SolverCop(CopStrategy):
    """Plays the witness probe of the tracked candidate state.

    `labels` maps table indices to vertices of the graph actually played on,
    e.g. addresses when a truncation's table is replayed on the infinite
    family. Observations inconsistent with the table's graph restart the
    tracking from V; unknown states probe the root.
    """

    _shared = ("graph", "table", "kernel", "labels", "index")

    def __init__(self, table: WinTable, k: int | None = None, labels=None, kernel=None):
        k = table.k if k is None else k
        if k < table.k:
            raise ValueError("cannot play a table with fewer cops than it was solved for")
        self.table = table
        self.cops = k
        self.kernel = kernel or make_kernel(table.graph)
        self.labels = labels
        self.index = {v: i for i, v in enumerate(labels)} if labels is not None else None
        self.name = f"solver:{k}"

    def reset(self):
        self.state = self.table.initial

    def next_probe(self):
        e = self.table.entry(self.state)
        probe = e.probe if e.win else (0,)
        probe = tuple(probe) + (probe[-1],) * (self.cops - len(probe))
        return tuple(self.labels[i] for i in probe) if self.labels is not None else probe

    def observe(self, probe, dist):
        m = self.state
        for u, d in zip(probe, dist):
            if self.index is not None:
                u = self.index[u]
            m = self.kernel.restrict(m, u, d)
        full = (1 << self.table.graph.n) - 1
        self.state = self.kernel.expand(m) if m else full

    def state_key(self):
        return self.state


def synthesize_strategy(g: FiniteGraph, k: int, table: WinTable, labels=None) -> SolverCop:
    if table.graph is not g and table.graph != g:
        raise ValueError("table was computed for a different graph")
    if not table.initial_entry.win:
        raise ValueError("initial state is a robber win; no strategy to synthesize")
    return SolverCop(table, k, labels)
