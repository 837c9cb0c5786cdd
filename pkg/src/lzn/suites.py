"""Verification suites behind `lzn verify`; each yields named pass/fail checks."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

from .families import (
    build,
    comb_position,
    localize_subdivision,
    materialize,
    parse_descriptor,
    truncate,
)
from .game import play
from .graph import (
    FiniteGraph,
    ball,
    bfs_order,
    contains_hat,
    enumerate_connected_graphs,
    enumerate_trees,
    hat_graph,
    prufer_to_tree,
    tree_address_distance,
)
from .pruning import (
    end_labels,
    essential_alpha,
    finite_labels,
    parents,
    pruning_stages,
    recursive_pruning,
)
from .solver import SolverCop, cop_wins, localization_number
from .strategies import (
    CombRobber,
    FiniteEndsCop,
    FleeingRobber,
    GreedyPhantom,
    PushCop,
    RandomCop,
    RandomWalkRobber,
    SnCop,
    SnRobber,
    StationaryRobber,
    SubdivisionCop,
    explore,
    one_cop_suite,
)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _robbers(at, seed: int = 0):
    return (StationaryRobber(at), FleeingRobber(at), RandomWalkRobber(at, seed))


# --- trees -------------------------------------------------------------------

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def seager(max_n: int = 10) -> Iterator[Check]:
    total = 0
    for n in range(1, max_n + 1):
        trees = enumerate_trees(n)
        total += len(trees)
        if n in TREE_COUNTS:
            yield Check(f"tree count n={n}", len(trees) == TREE_COUNTS[n], f"{len(trees)} trees")
        bad = []
        for t in trees:
            want = 2 if contains_hat(t) else 1
            got, _ = localization_number(t, 2)
            if got != want:
                bad.append((t.edges(), got, want))
        yield Check(f"zeta vs hat-freeness n={n}", not bad, f"{len(trees)} trees, mismatches {bad[:3]}")
    yield Check("trees enumerated", True, f"{total} trees for n <= {max_n}")
    yield from hat_checks()


def hat_checks() -> Iterator[Check]:
    t = hat_graph()
    one, _ = cop_wins(t, 1, method="exact")
    two, table = cop_wins(t, 2)
    yield Check("hat: one cop loses", not one)
    yield Check("hat: two cops win", two, f"rank {table.initial_entry.rank}")
    bound = table.initial_entry.rank
    rounds = []
    for v in range(t.n):
        out, _ = play(t, SolverCop(table), StationaryRobber(v), bound)
        rounds.append(out.round if out.captured else None)
    yield Check("hat: synthesized strategy captures all starts within rank",
                all(r is not None for r in rounds), f"rounds {rounds}, rank {bound}")


def push_checks() -> Iterator[Check]:
    from .graph import path_graph

    for label, t, pivot in (("P3", path_graph(3), 1), ("hat", hat_graph(), 0)):
        worst, pivot_ok, fails = 0, True, []
        for v in range(t.n):
            for robber in _robbers(v):
                cop = PushCop(pivot)
                out, tr = play(t, cop, robber, 4 * t.n)
                if not out.captured:
                    fails.append((v, robber.name))
                    continue
                worst = max(worst, out.round)
                pivot_ok &= pivot_claim_holds(cop, tr)
        yield Check(f"push {label}: all starts captured", not fails, f"worst round {worst}")
        yield Check(f"push {label}: robber on the pivot is captured by that probe", pivot_ok)


def pivot_claim_holds(cop, transcript) -> bool:
    """No probe round finds the robber on the current pivot uncaptured."""
    pivots = dict(cop.pivots)
    cur = None
    for rec in transcript.rounds:
        cur = pivots.get(rec.index, cur)
        if rec.robber == cur and rec.candidates != 1:
            return False
    return True


# --- S(n) --------------------------------------------------------------------

def sn_progress_holds(cop: SnCop, transcript, n: int) -> bool:
    """Distance from the robber to the current root drops at every new iteration."""
    pos = {rec.index: rec.robber for rec in transcript.rounds}
    dists = [tree_address_distance(pos[r], root) for r, root in cop.iterations if r in pos]
    return all(b <= a - 1 for a, b in zip(dists, dists[1:]))


def sn_upper(n: int) -> Iterator[Check]:
    g = build(parse_descriptor(f"sn:{n}"))
    limit = 50 * n
    starts = sorted(ball(g, (), 3 * n))
    worst, fails, progress = 0, [], True
    for v in starts:
        for robber in _robbers(v, seed=len(v)):
            cop = SnCop(n)
            out, tr = play(g, cop, robber, limit)
            if not out.captured:
                fails.append((v, robber.name))
                continue
            worst = max(worst, out.round)
            progress &= sn_progress_holds(cop, tr, n)
    yield Check(f"sn:{n} {n} cops capture every start within radius {3 * n}", not fails,
                f"{len(starts)} starts x 3 robbers, worst round {worst} (limit {limit})")
    yield Check(f"sn:{n} per-iteration progress", progress)


def _evades(g, cop, n: int, rounds: int) -> tuple[bool, str]:
    out, tr = play(g, cop, SnRobber(n), rounds, track="witness")
    return (not out.captured and len(tr.rounds) == rounds), str(out)


def sn_lower(n: int, seeds: int = 100, rounds: int = 200) -> Iterator[Check]:
    g = build(parse_descriptor(f"sn:{n}"))
    ok, info = _evades(g, SnCop(n, n - 1), n, rounds)
    yield Check(f"sn:{n} robber evades the {n - 1}-cop descent", ok, info)
    lost = [s for s in range(seeds) if not _evades(g, RandomCop(n - 1, s), n, rounds)[0]]
    yield Check(f"sn:{n} robber evades {seeds} random {n - 1}-cop strategies", not lost, f"lost to {lost[:5]}")
    t, labels = truncate(g, 3 * n)
    won, table = cop_wins(t, 1)
    if not won:
        yield Check(f"sn:{n} truncation solvable", False, "no one-cop win on the truncation")
        return
    ok, info = _evades(g, SolverCop(table, n - 1, labels), n, rounds)
    yield Check(f"sn:{n} robber evades the radius-{3 * n} solver strategy", ok,
                f"{info}; truncation {t.n} vertices, rank {table.initial_entry.rank}")


def sn(max_n: int = 3, seeds: int = 100) -> Iterator[Check]:
    for n in range(2, max_n + 1):
        yield from sn_upper(n)
        yield from sn_lower(n, seeds)


# --- comb --------------------------------------------------------------------

def comb_invariant(view) -> bool:
    C = view.candidates
    return len(C) >= 2 and any(comb_position(view.graph, x) is not None for x in C)


def comb(seeds: int = 100, rounds: int = 100, max_radius: int = 5) -> Iterator[Check]:
    g = build(parse_descriptor("comb"))
    caught, broken = [], []
    for cop in one_cop_suite(g, seeds):
        bad = []
        out, _ = play(g, cop, CombRobber(), rounds,
                      on_round=lambda view: bad.append(view.round) if not comb_invariant(view) else None)
        if out.captured:
            caught.append(cop.name)
        if bad:
            broken.append(cop.name)
    yield Check(f"comb robber evades the one-cop suite for {rounds} rounds", not caught, f"captured by {caught[:5]}")
    yield Check("comb: spine vertex plus another candidate after every probe", not broken, f"{broken[:5]}")
    for r in range(max_radius + 1):
        t, _ = truncate(g, r)
        hat = contains_hat(t)
        z, _ = localization_number(t, 2)
        yield Check(f"comb truncation radius {r}: hat-free with zeta 1", not hat and z == 1,
                    f"{t.n} vertices, zeta {z}")


# --- ends --------------------------------------------------------------------

def ends(radius: int = 8, rounds: int = 300) -> Iterator[Check]:
    yield from push_checks()
    for name, r in (("comb", radius), ("decorated:double", radius), ("double-ray", 10)):
        g = build(parse_descriptor(name))
        fails, worst, pivot_ok, tri_ok = [], 0, True, True
        for v in sorted(ball(g, (), r)):
            for robber in _robbers(v, seed=len(v)):
                cop = FiniteEndsCop()
                out, tr = play(g, cop, robber, rounds)
                if not out.captured:
                    fails.append((v, robber.name))
                    continue
                worst = max(worst, out.round)
                pivot_ok &= pivot_claim_holds(cop, tr)
                tri_ok &= all(trichotomy_holds(*entry[1:4]) for entry in cop.log)
        yield Check(f"{name}: two cops capture every start within radius {r}", not fails,
                    f"worst round {worst} (limit {rounds})")
        yield Check(f"{name}: robber on the pivot is captured by that probe", pivot_ok)
        yield Check(f"{name}: at most one distance test holds per scan round", tri_ok)


def trichotomy_holds(i: int, d1: int, d2: int) -> bool:
    if d1 == 0 or d2 == 0:
        return True
    return (d1 + d2 == i) + (d1 - d2 == i) + (d2 - d1 == i) <= 1


# --- subdivision -------------------------------------------------------------

def subdivision_levels_match(gp) -> bool:
    """s_i and D_i against breadth-first distances from the root."""
    fg, order = materialize(gp)
    dist = fg.distances_from(0)
    for idx, x in enumerate(order):
        if gp.is_h_vertex(x) and dist[idx] != gp.plan.D(gp.h_level(x)):
            return False
        if not gp.is_h_vertex(x):
            _, a, b, k = x
            if gp.plan.s(gp.h_level(a)) != 2 + gp.plan.level_size(gp.h_level(a)) + gp.plan.level_size(gp.h_level(b)):
                return False
            if dist[idx] != gp.plan.D(gp.h_level(a)) + k:
                return False
    return True


def phase_one_confined(cop: SubdivisionCop, transcript) -> bool:
    pos = {rec.index: rec.robber for rec in transcript.rounds}
    episodes: dict[int, list] = {}
    for r, _, ep in cop.phase_log:
        episodes.setdefault(ep, []).append(pos[r])
    for seen in episodes.values():
        paths = {x[1:3] for x in seen if x[0] == "s"}
        if len(paths) > 1:
            return False
        if paths:
            (a, b), = paths
            if any(x[0] != "s" and x not in (a, b) for x in seen):
                return False
    return True


def subdivision(max_n: int = 5) -> Iterator[Check]:
    for n in range(1, max_n + 1):
        graphs = enumerate_connected_graphs(n)
        zeta_bad, capture_bad, phantom_bad, level_bad, confine_bad = [], [], [], [], []
        sizes = []
        for G in graphs:
            gp = localize_subdivision(G)
            fg, _ = materialize(gp)
            sizes.append(fg.n)
            z, _ = localization_number(fg, 1)
            if z != 1:
                zeta_bad.append(G.edges())
            if not subdivision_levels_match(gp):
                level_bad.append(G.edges())
            for x in bfs_order(gp, gp.root):
                for robber in _robbers(x):
                    cop = SubdivisionCop()
                    out, tr = play(gp, cop, robber, 10 * fg.n)
                    if not out.captured:
                        capture_bad.append((G.edges(), x, robber.name))
                    elif not phase_one_confined(cop, tr):
                        confine_bad.append((G.edges(), x, robber.name))
            out, _ = play(gp, SubdivisionCop(), GreedyPhantom(), 10 * fg.n)
            if not out.captured or not explore(gp, SubdivisionCop()).captured:
                phantom_bad.append(G.edges())
        tag = f"n={n} ({len(graphs)} graphs, G' sizes {min(sizes)}..{max(sizes)})"
        yield Check(f"subdivision {tag}: solver zeta(G') = 1", not zeta_bad, f"{zeta_bad[:3]}")
        yield Check(f"subdivision {tag}: s_i and D_i match BFS", not level_bad, f"{level_bad[:3]}")
        yield Check(f"subdivision {tag}: one cop captures every concrete start", not capture_bad,
                    f"{capture_bad[:3]}")
        yield Check(f"subdivision {tag}: phase-1 confinement", not confine_bad, f"{confine_bad[:3]}")
        yield Check(f"subdivision {tag}: greedy and exhaustive phantoms captured", not phantom_bad,
                    f"{phantom_bad[:3]}")


# --- pruning -----------------------------------------------------------------

def random_tree(rng: random.Random, n: int) -> FiniteGraph:
    if n == 1:
        return FiniteGraph(1)
    return prufer_to_tree([rng.randrange(n) for _ in range(n - 2)], n)


def pruning(trees: int = 1000, max_n: int = 30, seed: int = 0) -> Iterator[Check]:
    g = build(parse_descriptor("comb"))
    lab = recursive_pruning(g)
    from .families import comb_leaf, comb_spine_vertex

    span = range(-6, 7)
    leaves = {lab[comb_leaf(g, p)] for p in span}
    spine = {lab[comb_spine_vertex(g, p)] for p in span if p}
    yield Check("comb labels: leaves 0, spine 1, root 2",
                leaves == {0} and spine == {1} and lab[()] == 2, f"leaves {leaves} spine {spine} root {lab[()]}")
    info = end_labels(g.desc, lab)
    yield Check("comb: alpha 1 attained by 2 ends", info.alpha == 1 and len(info.attaining) == 2, str(info))
    ess = essential_alpha(g.desc, lab)
    yield Check("comb: essential alpha stabilizes at depth 1", ess == (1, 1), str(ess))
    rng = random.Random(seed)
    mismatch, nonmono = 0, 0
    for _ in range(trees):
        n = rng.randint(1, max_n)
        t = random_tree(rng, n)
        root = rng.randrange(n)
        fast, slow = finite_labels(t, root), pruning_stages(t, root)
        mismatch += fast != slow
        par = parents(t, root)
        nonmono += any(par[v] is not None and fast[par[v]] < fast[v] for v in range(n))
    yield Check(f"pruning: fast labels equal the stage recursion on {trees} random trees", mismatch == 0,
                f"{mismatch} mismatches")
    yield Check("pruning: labels monotone along the tree order", nonmono == 0, f"{nonmono} violations")


SUITES = {
    "seager": seager,
    "sn": sn,
    "comb": comb,
    "subdivision": subdivision,
    "ends": ends,
    "pruning": pruning,
}
