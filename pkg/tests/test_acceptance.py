"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run alone with `pytest tests/test_acceptance.py -v` or `python tests/test_acceptance.py`.
"""

import random
import time

import pytest

from lzn import suites
from lzn.families import build, parse_descriptor
from lzn.game import play, probe_response, replay
from lzn.graph import FiniteGraph, ball, enumerate_trees
from lzn.strategies import FleeingRobber, GreedyCop, RandomCop, RandomWalkRobber, StationaryRobber

RESULTS: dict[int, str] = {}

TREES_TOTAL = 201          # sum of per-n counts 1,1,1,2,3,6,11,23,47,106
SEAGER_SECONDS = 600
SN_ROUNDS = 200
SN_SEEDS = 100
COMB_ROUNDS = 100
COMB_SEEDS = 100
COMB_MAX_RADIUS = 5
ENDS_RADIUS = 8
ENDS_ROUNDS = 300
SUBDIVISION_MAX_N = 5
PRUNING_TREES = 1000
PRUNING_MAX_N = 30
ENGINE_PLAYS = 500
ENGINE_ROUNDS = 25
BRANCHING_ROUNDS = 8         # exponential-growth families: candidate sets grow ~2^rounds
BRANCHING = ("regular:3", "sn:2")


def _record(num: int, title: str, checks, extra: str = "") -> None:
    checks = list(checks)
    failed = [c for c in checks if not c.ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks" + (f"; {extra}" if extra else "")
    if failed:
        detail += "; first failure: " + failed[0].line()
    line = f"{'PASS' if not failed else 'FAIL'} criterion {num} ({title}): {detail}"
    RESULTS[num] = line
    print(line)
    assert not failed, line


def test_criterion_1_tree_oracle():
    t0 = time.perf_counter()
    checks = list(suites.seager(max_n=10))
    elapsed = time.perf_counter() - t0
    total = sum(len(enumerate_trees(n)) for n in range(1, 11))
    checks.append(suites.Check("tree total", total == TREES_TOTAL, f"{total}"))
    checks.append(suites.Check("runtime", elapsed <= SEAGER_SECONDS, f"{elapsed:.1f}s"))
    _record(1, "zeta 1 iff hat-free on all trees up to 10 vertices", checks, f"{total} trees in {elapsed:.1f}s")


def test_criterion_2_hat():
    _record(2, "hat needs exactly two cops", suites.hat_checks())


def test_criterion_3_sn_upper():
    checks = [c for n in (2, 3) for c in suites.sn_upper(n)]
    _record(3, "n cops capture on S(n), n = 2, 3", checks)


def test_criterion_4_sn_lower():
    checks = [c for n in (2, 3) for c in suites.sn_lower(n, seeds=SN_SEEDS, rounds=SN_ROUNDS)]
    _record(4, "S(n) robber evades n - 1 cops, n = 2, 3", checks)


def test_criterion_5_comb():
    _record(5, "comb robber evades one cop", suites.comb(seeds=COMB_SEEDS, rounds=COMB_ROUNDS,
                                                         max_radius=COMB_MAX_RADIUS))


def test_criterion_6_ends():
    _record(6, "two cops on trees with finitely many ends", suites.ends(radius=ENDS_RADIUS, rounds=ENDS_ROUNDS))


def test_criterion_7_subdivision():
    _record(7, "one cop on the localizing subdivision", suites.subdivision(max_n=SUBDIVISION_MAX_N))


def test_criterion_8_pruning():
    _record(8, "pruning labels", suites.pruning(trees=PRUNING_TREES, max_n=PRUNING_MAX_N))


def _random_connected(rng: random.Random, n: int) -> FiniteGraph:
    t = suites.random_tree(rng, n)
    extra = [(a, b) for a in range(n) for b in range(a + 1, n) if not t.has_edge(a, b) and rng.random() < 0.2]
    return FiniteGraph(n, list(t.edges()) + extra)


def _random_play(rng: random.Random):
    pool = ["comb", "sn:2", "double-ray", "ray", "decorated:tripod", "regular:3", "hat"]
    rounds = ENGINE_ROUNDS
    if rng.random() < 0.5:
        g: object = _random_connected(rng, rng.randint(1, 8))
        start = rng.randrange(g.n)
    else:
        desc = rng.choice(pool)
        g = build(parse_descriptor(desc))
        if isinstance(g, FiniteGraph):
            start = rng.randrange(g.n)
        else:
            start = rng.choice(sorted(ball(g, g.root, 3)))
        if desc in BRANCHING:
            rounds = BRANCHING_ROUNDS
    seed = rng.randrange(10**6)
    k = rng.randint(1, 2)
    cop = RandomCop(k, seed) if rng.random() < 0.7 else GreedyCop(k)
    robber = rng.choice([StationaryRobber(start), FleeingRobber(start), RandomWalkRobber(start, seed)])
    return g, cop, robber, seed, rounds


def _fresh(cop):
    return RandomCop(cop.cops, cop.seed) if isinstance(cop, RandomCop) else GreedyCop(cop.cops)


def _fresh_robber(robber):
    if isinstance(robber, RandomWalkRobber):
        return RandomWalkRobber(robber.at, robber.seed)
    return type(robber)(robber.at)


def test_criterion_9_engine():
    rng = random.Random(2024)
    unsound = inexact = unreplayable = 0
    for _ in range(ENGINE_PLAYS):
        g, cop, robber, seed, rounds = _random_play(rng)
        flags = {"sound": True, "exact": True}

        def check(view):
            C = view.candidates
            flags["sound"] &= view.position in C
            flags["exact"] &= all(probe_response(g, x, view.probe) == view.dist for x in C)

        _, tr = play(g, cop, robber, rounds, seed=seed, on_round=check)
        unsound += not flags["sound"]
        inexact += not flags["exact"]
        try:
            replay(cop, tr)
            again = play(g, _fresh(cop), _fresh_robber(robber), rounds, seed=seed)[1]
            unreplayable += again.to_text() != tr.to_text()
        except Exception:
            unreplayable += 1
    checks = [
        suites.Check("soundness", unsound == 0, f"{unsound} violations"),
        suites.Check("filtration exactness", inexact == 0, f"{inexact} violations"),
        suites.Check("replay", unreplayable == 0, f"{unreplayable} mismatches"),
    ]
    _record(9, "engine soundness on random plays", checks, f"{ENGINE_PLAYS} plays")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
