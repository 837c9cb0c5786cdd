import pytest

from lzn.families import build, comb_leaf, comb_spine_vertex, parse_descriptor
from lzn.game import (
    ALL,
    CandidateOverflow,
    ContractViolation,
    ConcreteRobber,
    CopStrategy,
    GameError,
    NondeterministicStrategy,
    PhantomRobber,
    UnsupportedPartition,
    expand_candidates,
    fork_for_lookahead,
    partition_candidates,
    play,
    probe_response,
    replay,
)
from lzn.graph import FiniteGraph, complete_graph, cycle_graph, path_graph
from lzn.strategies.basic import (
    FleeingRobber,
    GreedyPhantom,
    RandomCop,
    RandomWalkRobber,
    RayOneCop,
    ScriptedCop,
    StationaryRobber,
)


def test_probe_response_examples():
    ray = build(parse_descriptor("ray"))
    assert probe_response(ray, (0,) * 5, ((),)) == (5,)
    k3 = complete_graph(3)
    assert probe_response(k3, 2, (0, 1)) == (1, 1)
    assert 0 in probe_response(k3, 1, (0, 1))


def test_partition_examples():
    k3 = complete_graph(3)
    classes = partition_candidates(k3, {0, 1, 2}, (0, 1))
    assert classes == {(0, 1): {0}, (1, 0): {1}, (1, 1): {2}}
    assert partition_candidates(k3, {1, 2}, (0,)) == {(1,): {1, 2}}
    assert partition_candidates(k3, {2}, (0, 1)) == {(1, 1): {2}}


def test_symbolic_partition():
    t3 = build(parse_descriptor("regular:3"))
    classes = partition_candidates(t3, ALL, ((),))
    assert len(classes[(2,)]) == 6
    with pytest.raises(UnsupportedPartition):
        partition_candidates(t3, ALL, ((), (0,)))
    assert sum(map(len, partition_candidates(path_graph(4), ALL, (0,)).values())) == 4


def test_expand_examples():
    ray = build(parse_descriptor("ray"))
    assert expand_candidates(ray, {(0, 0, 0)}) == {(0, 0), (0, 0, 0), (0, 0, 0, 0)}
    assert expand_candidates(complete_graph(3), {1}) == {0, 1, 2}
    comb = build(parse_descriptor("comb"))
    leaf = comb_leaf(comb, 3)
    assert expand_candidates(comb, {leaf}) == {leaf, comb_spine_vertex(comb, 3)}


@pytest.mark.parametrize("robber", [StationaryRobber((0, 0, 0)), FleeingRobber((0,) * 7),
                                    RandomWalkRobber((0,) * 4, 3)])
def test_ray_endpoint_captures_in_round_one(robber):
    out, tr = play(build(parse_descriptor("ray")), RayOneCop(), robber, 10)
    assert out.captured and out.round == 1 and len(tr) == 1


def test_k3_greedy_phantom_evades_any_one_cop():
    k3 = complete_graph(3)
    cops = [RandomCop(1, s) for s in range(20)] + [ScriptedCop(lambda g, r: (r % 3,), "cycle")]
    for cop in cops:
        out, _ = play(k3, cop, GreedyPhantom(), 60)
        assert not out.captured and out.round == 60


def test_singleton_graph():
    out, _ = play(FiniteGraph(1), ScriptedCop(lambda g, r: (0,), "only"), StationaryRobber(0), 1)
    assert out.captured and out.round == 1


def test_capture_is_singleton_candidates_not_distance_zero():
    g = path_graph(3)
    out, tr = play(g, ScriptedCop(lambda g, r: (1,), "mid"), StationaryRobber(0), 5)
    assert not out.captured
    assert all(rec.dist == (1,) and rec.candidates == 2 for rec in tr.rounds)


def test_transcript_format_and_determinism():
    g = cycle_graph(6)
    runs = [play(g, RandomCop(1, 9), RandomWalkRobber(0, 4), 12, seed=4)[1].to_text() for _ in range(2)]
    assert runs[0] == runs[1]
    lines = runs[0].splitlines()
    assert lines[0] == "# seed 4"
    assert lines[2].startswith("round 1 probe ") and " dist " in lines[2] and " candidates " in lines[2]
    assert lines[3].startswith("robber ")


def test_replay_reproduces_probes():
    g = cycle_graph(7)
    cop = RandomCop(2, 5)
    _, tr = play(g, cop, RandomWalkRobber(3, 1), 15)
    again = replay(cop, tr)
    fork = fork_for_lookahead(cop)
    assert again.next_probe() == fork.next_probe()


def test_fork_does_not_advance_the_live_strategy():
    cop = RandomCop(1, 2)
    cop.start(cycle_graph(5))
    fork = fork_for_lookahead(cop)
    fork.next_probe()
    fork.next_probe()
    assert cop.round == 0


class _Flaky(CopStrategy):
    name = "flaky"
    calls = 0

    def next_probe(self):
        type(self).calls += 1
        return (1,) if type(self).calls == 1 else (0,)


def test_nondeterminism_is_detected():
    g = path_graph(3)
    cop = _Flaky()
    _, tr = play(g, cop, StationaryRobber(2), 3)
    with pytest.raises(NondeterministicStrategy):
        replay(cop, tr)


class _Teleporter(ConcreteRobber):
    name = "teleporter"

    def place(self, view):
        return 0

    def move(self, view):
        return 4


class _EmptyChooser(PhantomRobber):
    name = "empty"

    def choose(self, view, classes):
        return (99,)


def test_contract_violations_name_the_violator():
    g = path_graph(5)
    cop = ScriptedCop(lambda g, r: (2,), "mid")
    with pytest.raises(ContractViolation, match="teleporter"):
        play(g, cop, _Teleporter(), 4)
    with pytest.raises(ContractViolation, match="empty"):
        play(g, cop, _EmptyChooser(), 4)
    with pytest.raises(ContractViolation, match="two"):
        play(g, ScriptedCop(lambda g, r: (0, 1), "two", cops=1), StationaryRobber(0), 2)
    with pytest.raises(ContractViolation):
        play(g, cop, StationaryRobber(17), 2)


def test_play_argument_checks():
    g = path_graph(3)
    cop = ScriptedCop(lambda g, r: (0,), "end")
    with pytest.raises(GameError):
        play(g, cop, StationaryRobber(0), 0)
    with pytest.raises(GameError):
        play(g, cop, GreedyPhantom(), 3, track="witness")
    with pytest.raises(GameError):
        play(g, cop, StationaryRobber(0), 3, track="psychic")


def test_phantom_on_infinite_graph_needs_horizon():
    ray = build(parse_descriptor("ray"))
    with pytest.raises(ContractViolation):
        play(ray, RayOneCop(), GreedyPhantom(), 3)
    out, _ = play(ray, RayOneCop(), GreedyPhantom(horizon=4), 3)
    assert out.captured and out.round == 1


def test_candidate_sets_finite_after_round_one():
    t3 = build(parse_descriptor("regular:3"))
    seen = []
    play(t3, RandomCop(1, 0), RandomWalkRobber((0, 1), 2), 6, on_round=lambda v: seen.append(v.candidates))
    assert seen and all(isinstance(c, set) for c in seen)


def test_candidate_overflow():
    t3 = build(parse_descriptor("regular:3"))
    cop = ScriptedCop(lambda g, r: ((),), "root")
    with pytest.raises(CandidateOverflow):
        play(t3, cop, StationaryRobber((0,) * 8), 30, candidate_limit=50)
