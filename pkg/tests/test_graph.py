import itertools

import pytest

from lzn.families import build, parse_descriptor, truncate
from lzn.graph import (
    FiniteGraph,
    GraphError,
    LazyGraph,
    UnreachableVertex,
    ball,
    bfs_order,
    canonical_tree_form,
    complete_graph,
    contains_hat,
    contains_hat_bruteforce,
    cycle_graph,
    enumerate_connected_graphs,
    enumerate_trees,
    enumerate_trees_prufer,
    format_address,
    graph_from_text,
    graph_to_dot,
    graph_to_text,
    hat_graph,
    parse_address,
    path_graph,
    prufer_to_tree,
    read_graph,
    sphere,
    star_graph,
    subdivide_edge,
    tree_address_distance,
    write_graph,
)


def test_distance_identity_and_path():
    p5 = path_graph(5)
    assert p5.distance(2, 2) == 0
    assert p5.distance(0, 4) == 4


def test_distance_sn_child_branch():
    g = build(parse_descriptor("sn:2"))
    for i in range(3):
        assert g.distance((), (i, 0)) == 2


def test_unreachable_vertex():
    g = FiniteGraph(3, [(0, 1)])
    with pytest.raises(UnreachableVertex):
        g.distance(0, 2)


def test_sphere_examples():
    ray = build(parse_descriptor("ray"))
    assert sphere(ray, (), 3) == {(0, 0, 0)}
    t3 = build(parse_descriptor("regular:3"))
    assert len(sphere(t3, (), 2)) == 6
    assert sphere(hat_graph(), 4, 0) == {4}


def test_ball_examples():
    ray = build(parse_descriptor("ray"))
    assert ball(ray, (), 2) == {(), (0,), (0, 0)}
    assert len(ball(build(parse_descriptor("regular:3")), (), 1)) == 4
    assert len(ball(build(parse_descriptor("omega")), (), 2)) == 4


def test_lazy_queries_stay_inside_the_ball():
    queried = set()
    base = build(parse_descriptor("regular:3"))

    def oracle(v):
        queried.add(v)
        return base.neighbors(v)

    g = LazyGraph((), oracle)
    for r in range(4):
        queried.clear()
        sphere(g, (), r)
        assert queried <= ball(base, (), r + 1)


def test_lazy_graph_rejects_asymmetric_oracle_results_consistently():
    calls = []

    def oracle(v):
        calls.append(v)
        return [v + 1] if v == 0 else [v - 1, v + 1]

    g = LazyGraph(0, oracle)
    assert g.neighbors(3) == g.neighbors(3)
    assert calls.count(3) == 1


def test_subdivide_edge_examples():
    k2 = complete_graph(2)
    assert canonical_tree_form(subdivide_edge(k2, (0, 1), 1)) == canonical_tree_form(path_graph(3))
    assert subdivide_edge(k2, (0, 1), 0) == k2
    c5 = subdivide_edge(complete_graph(3), (0, 1), 2)
    assert c5.n == 5 and c5.edge_count() == 5 and all(c5.degree(v) == 2 for v in range(5))
    with pytest.raises(GraphError):
        subdivide_edge(path_graph(3), (0, 2), 1)


def test_contains_hat_examples():
    assert contains_hat(hat_graph())
    assert not any(contains_hat(path_graph(n)) for n in range(1, 14))
    comb = build(parse_descriptor("comb"))
    for r in range(7):
        t, _ = truncate(comb, r)
        assert not contains_hat(t)
    with pytest.raises(GraphError):
        contains_hat(cycle_graph(4))


def test_contains_hat_characterization_on_eleven_vertices():
    for t in enumerate_trees(11):
        assert contains_hat(t) == contains_hat_bruteforce(t)


def test_canonical_forms():
    a = FiniteGraph(3, [(0, 1), (1, 2)])
    b = FiniteGraph(3, [(2, 0), (0, 1)])
    assert canonical_tree_form(a) == canonical_tree_form(b)
    assert canonical_tree_form(star_graph(3)) != canonical_tree_form(path_graph(4))
    assert len({canonical_tree_form(t) for t in enumerate_trees(4)}) == 2
    with pytest.raises(GraphError):
        canonical_tree_form(cycle_graph(3))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6),
                                     (7, 11), (8, 23), (9, 47), (10, 106)])
def test_tree_counts(n, count):
    assert len(enumerate_trees(n)) == count


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_matches_prufer_oracle(n):
    assert {canonical_tree_form(t) for t in enumerate_trees(n)} == set(enumerate_trees_prufer(n))


def test_enumeration_cap():
    with pytest.raises(GraphError):
        enumerate_trees(0)
    with pytest.raises(GraphError):
        enumerate_trees(99)


def test_prufer_round_trip_edges():
    t = prufer_to_tree([3, 3, 3], 5)
    assert sorted(t.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]


def test_connected_graph_counts():
    assert [len(enumerate_connected_graphs(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]


def test_text_format_round_trip(tmp_path):
    g = hat_graph()
    text = graph_to_text(g)
    assert text.splitlines()[:2] == ["# lzn-graph v1", "vertices 10"]
    assert graph_from_text(text) == g
    path = tmp_path / "hat.txt"
    write_graph(g, path)
    assert read_graph(path) == g


@pytest.mark.parametrize("bad", ["vertices 3\nedge 0 1\n", "# lzn-graph v1\nvertices 2\nedge 0 5\n",
                                 "# lzn-graph v1\nvertices 2\nbogus\n"])
def test_text_format_errors(bad):
    with pytest.raises(GraphError):
        graph_from_text(bad)


def test_dot_export():
    dot = graph_to_dot(path_graph(2), ["a", "b"])
    assert dot.startswith("graph G {") and "0 -- 1;" in dot and 'label="a"' in dot


def test_addresses():
    assert format_address(()) == "r"
    assert parse_address("1.0.2") == (1, 0, 2)
    assert parse_address(format_address((3, 1))) == (3, 1)
    assert tree_address_distance((0, 1, 2), (0, 2)) == 3
    with pytest.raises(GraphError):
        parse_address("1.x")


def test_bfs_order_is_deterministic():
    g = build(parse_descriptor("comb"))
    assert bfs_order(g, (), 3) == bfs_order(build(parse_descriptor("comb")), (), 3)


def test_triangle_inequality_small_graphs():
    for g in enumerate_connected_graphs(4):
        for a, b, c in itertools.product(range(g.n), repeat=3):
            assert g.distance(a, c) <= g.distance(a, b) + g.distance(b, c)
