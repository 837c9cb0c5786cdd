import itertools

import pytest

from lzn.families import build, parse_descriptor, truncate
from lzn.game import play
from lzn.graph import FiniteGraph, complete_graph, cycle_graph, hat_graph, path_graph, star_graph
from lzn.solver import (
    BudgetExceeded,
    CKernel,
    PyKernel,
    SolverCop,
    check_win_table,
    cop_wins,
    localization_number,
    make_kernel,
    prove,
    solve_exact,
    synthesize_strategy,
)
from lzn.solver.core import mask_of, members, probe_tuples
from lzn.strategies.basic import FleeingRobber, RandomWalkRobber, StationaryRobber


def test_p3_pair_is_rank_one():
    g = path_graph(3)
    ok, table = cop_wins(g, 1, mask_of([0, 2]), method="exact")
    assert ok and table.initial_entry.rank == 1


def test_k3_one_cop_loses():
    assert not solve_exact(complete_graph(3), 1).initial_entry.win


def test_k3_two_cops_rank_one():
    ok, table = cop_wins(complete_graph(3), 2, method="exact")
    assert ok and table.initial_entry.rank == 1
    assert len(set(table.initial_entry.probe)) == 2


@pytest.mark.parametrize("g,zeta", [(path_graph(5), 1), (hat_graph(), 2), (complete_graph(3), 2),
                                     (star_graph(4), 1), (FiniteGraph(1), 1)])
def test_localization_number(g, zeta):
    assert localization_number(g, 3)[0] == zeta


def test_exceeds_k_max():
    assert localization_number(complete_graph(4), 2) == (None, None)


def test_probe_tuples_nondecreasing():
    probes = probe_tuples(4, 2)
    assert len(probes) == 10 and all(a <= b for a, b in probes)


def test_mask_round_trip():
    assert members(mask_of([0, 3, 5])) == [0, 3, 5]


@pytest.mark.parametrize("method", ["exact", "prover"])
def test_win_tables_check(method):
    for g, k in [(hat_graph(), 2), (path_graph(7), 1), (cycle_graph(6), 2)]:
        ok, table = cop_wins(g, k, method=method)
        assert ok
        check_win_table(table)


def test_check_win_table_rejects_forged_entries():
    _, table = cop_wins(hat_graph(), 2, method="exact")
    state, e = next((s, e) for s, e in table.entries.items() if e.win and e.rank >= 2)
    table.entries[state] = type(e)(1, e.probe)
    with pytest.raises(AssertionError):
        check_win_table(table)


def test_prover_agrees_with_fixpoint_on_small_graphs():
    from lzn.graph import enumerate_connected_graphs

    for g in enumerate_connected_graphs(5):
        exact = solve_exact(g, 1).initial_entry.win
        proved = prove(g, 1) is not None
        assert proved <= exact


@pytest.mark.skipif(CKernel is None, reason="compiled kernel not built")
def test_kernels_agree():
    gs = [hat_graph(), cycle_graph(7), truncate(build(parse_descriptor("comb")), 4)[0]]
    for g in gs:
        for k in (1, 2):
            a = solve_exact(g, k, kernel=make_kernel(g, PyKernel))
            b = solve_exact(g, k, kernel=make_kernel(g, CKernel))
            assert a.entries == b.entries


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        solve_exact(cycle_graph(10), 1, budget=5)
    assert info.value.explored > 5


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("LZN_BUDGET_STATES", "3")
    with pytest.raises(BudgetExceeded):
        solve_exact(cycle_graph(10), 1)


def test_monotone_in_subsets():
    g = hat_graph()
    table = solve_exact(g, 1)
    won = {s: e.rank for s, e in table.entries.items() if e.win}
    for big, r in won.items():
        for v in members(big):
            small = big & ~(1 << v)
            if small and small in table.entries:
                e = table.entries[small]
                assert e.win and e.rank <= r


def test_synthesized_p3_captures_every_start_within_two():
    g = path_graph(3)
    _, table = cop_wins(g, 1, method="exact")
    for start in range(3):
        for robber in (StationaryRobber(start), FleeingRobber(start), RandomWalkRobber(start, 1)):
            out, _ = play(g, synthesize_strategy(g, 1, table), robber, 10)
            assert out.captured and out.round <= 2


def test_synthesized_hat_captures_every_start_within_rank():
    g = hat_graph()
    _, table = cop_wins(g, 2, method="exact")
    rank = table.initial_entry.rank
    for start in range(10):
        out, _ = play(g, synthesize_strategy(g, 2, table), StationaryRobber(start), 3 * g.n)
        assert out.captured and out.round <= rank


def test_synthesize_refuses_robber_wins():
    g = complete_graph(3)
    table = solve_exact(g, 1)
    with pytest.raises(ValueError):
        synthesize_strategy(g, 1, table)


def test_solver_cop_pads_extra_cops():
    g = path_graph(4)
    _, table = cop_wins(g, 1)
    cop = SolverCop(table, 3)
    cop.start(g)
    assert len(cop.next_probe()) == 3
    with pytest.raises(ValueError):
        SolverCop(solve_exact(complete_graph(3), 2), 1)


def test_win_table_text():
    _, table = cop_wins(complete_graph(3), 2, method="exact")
    text = table.to_text()
    assert "state 0 1 2 -> win 1 probe" in text


def test_rank_one_states_split_into_singletons():
    g = cycle_graph(5)
    table = solve_exact(g, 2)
    for state, e in table.entries.items():
        if e.win and e.rank == 1:
            vecs = [tuple(g.distance(u, x) for u in e.probe) for x in members(state)]
            assert len(set(vecs)) == len(vecs)


def test_k3_hand_fixpoint():
    g = complete_graph(3)
    table = solve_exact(g, 1)
    assert len(table) == 1 and not table.initial_entry.win
    for pair in itertools.combinations(range(3), 2):
        ok, t = cop_wins(g, 1, mask_of(pair), method="exact")
        assert ok and t.initial_entry.rank == 1


def test_pure_python_fallback_selected_by_env():
    import subprocess
    import sys

    code = "import lzn.solver as s; print(s.KERNEL_NAME)"
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"LZN_KERNEL": "python", "PATH": ""})
    assert res.stdout.strip() == "python"


def test_bench_report_shape(monkeypatch):
    from lzn import bench

    monkeypatch.setattr(bench, "workloads", lambda: [("P6 k=1", path_graph(6), 1)])
    rows = bench.run(repeat=1)
    assert rows[0]["states"] >= 1
    assert bench.report(rows).splitlines()[1].startswith("P6 k=1")
