import pytest

from lzn.families import (
    DECORATED_PRESETS,
    UNCOUNTABLE,
    DecoratedRayTree,
    Decoration,
    Family,
    build,
    comb_leaf,
    comb_position,
    comb_spine_vertex,
    halve,
    is_branch_node,
    localize_subdivision,
    materialize,
    parse_descriptor,
    sn_branching,
    sn_path_triple,
    subdivision_plan,
    truncate,
)
from lzn.graph import (
    FiniteGraph,
    GraphError,
    canonical_tree_form,
    complete_graph,
    cycle_graph,
    hat_graph,
    path_graph,
    sphere,
)


def test_hat_structure():
    g = build(parse_descriptor("hat"))
    assert g.n == 10 and g.is_tree()
    assert sorted(g.degree(v) for v in range(10)) == [1] * 6 + [3] * 4


def test_sn2_branching():
    g = build(parse_descriptor("sn:2"))
    assert sn_branching(2) == 3
    assert len(g.neighbors(())) == 3
    for i in range(3):
        assert len(g.neighbors((i,))) == 2
        assert not is_branch_node(2, (i,))
        assert is_branch_node(2, (i, 0))


@pytest.mark.parametrize("n", [2, 3])
def test_sn_degrees_and_branch_spacing(n):
    g = build(parse_descriptor(f"sn:{n}"))
    m = n * (n - 1) + 1
    assert len(g.neighbors(())) == m
    branch = (0,) * n
    assert is_branch_node(n, branch) and len(g.neighbors(branch)) == m + 1
    assert g.distance((), branch) == n
    for step in range(1, n):
        assert len(g.neighbors((0,) * step)) == 2
    parent, child, step = sn_path_triple(n, (1,) + (0,) * (n - 2))
    assert parent == () and child == 1 and step == n - 1


def test_comb_degrees():
    g = build(parse_descriptor("comb"))
    for pos in range(-5, 6):
        v = comb_spine_vertex(g, pos)
        assert len(g.neighbors(v)) == 3
        assert comb_position(g, v) == pos
        leaf = comb_leaf(g, pos)
        assert g.neighbors(leaf) == (v,)
        assert comb_position(g, leaf) is None


def test_comb_child_order():
    g = build(parse_descriptor("comb"))
    assert g.neighbors(()) == ((0,), (1,), (2,))
    assert comb_leaf(g, 0) == (2,)
    assert comb_leaf(g, 1) == (0, 1)


@pytest.mark.parametrize("desc,radius,size", [("ray", 5, 6), ("comb", 2, 8), ("regular:3", 2, 10),
                                              ("double-ray", 3, 7), ("omega", 2, 4)])
def test_truncation_sizes(desc, radius, size):
    t, order = truncate(build(parse_descriptor(desc)), radius)
    assert t.n == size and order[0] == build(parse_descriptor(desc)).root


def test_truncated_ray_is_a_path():
    t, _ = truncate(build(parse_descriptor("ray")), 5)
    assert canonical_tree_form(t) == canonical_tree_form(path_graph(6))


def test_comb_truncations_grow_by_two_spine_and_two_leaves():
    g = build(parse_descriptor("comb"))
    sizes = [truncate(g, r)[0].n for r in range(1, 9)]
    assert all(b - a == 4 for a, b in zip(sizes, sizes[1:]))


def test_build_is_deterministic():
    for desc in ("comb", "sn:3", "omega", "decorated:tripod"):
        a, b = build(parse_descriptor(desc)), build(parse_descriptor(desc))
        assert truncate(a, 5)[1] == truncate(b, 5)[1]


@pytest.mark.parametrize("bad", ["sn:1", "regular:1", "tn:x", "nope", "decorated:zzz", "ray:3"])
def test_bad_descriptors(bad):
    with pytest.raises(GraphError):
        build(parse_descriptor(bad))


def test_file_descriptor(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text("# lzn-graph v1\nvertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n")
    g = build(parse_descriptor(f"file:{path}"))
    assert g == complete_graph(3)


def test_subdivision_plan_k3():
    h = halve(complete_graph(3))
    plan = subdivision_plan(h, h.root)
    assert plan.sizes() == (1, 2, 2, 1)
    assert plan.s_values() == (5, 6, 5)
    assert plan.D_values() == (0, 6, 13, 19)


def test_subdivision_plan_k2():
    h = halve(complete_graph(2))
    plan = subdivision_plan(h, h.root)
    assert plan.sizes() == (1, 1, 1)
    assert plan.s_values() == (4, 4)
    assert plan.D_values() == (0, 5, 10)


def test_plan_invariants_on_cycle():
    h = halve(cycle_graph(5))
    plan = subdivision_plan(h, h.root)
    sizes = plan.sizes()
    assert sizes[0] == 1
    for i, s in enumerate(plan.s_values()):
        assert s == 2 + sizes[i] + sizes[i + 1]
    d = plan.D_values()
    assert all(a < b for a, b in zip(d, d[1:]))


@pytest.mark.parametrize("g,size", [(complete_graph(2), 11), (complete_graph(3), 38)])
def test_localized_subdivision_sizes(g, size):
    t, _ = materialize(localize_subdivision(g))
    assert t.n == size


def test_localized_subdivision_levels_sit_at_D():
    gp = localize_subdivision(complete_graph(4))
    t, order = materialize(gp)
    dist = t.distances_from(0)
    for x, i in zip(order, range(t.n)):
        if gp.is_h_vertex(x):
            assert dist[i] == gp.plan.D(gp.h_level(x))
    first = [i for i, x in enumerate(order) if gp.is_h_vertex(x) and gp.h_level(x) == 1]
    assert all(dist[i] == 1 + gp.plan.s(0) for i in first)


def test_infinite_subdivision_is_lazy():
    gp = localize_subdivision(build(parse_descriptor("regular:3")))
    assert not gp.is_finite
    assert len(sphere(gp, gp.root, 3)) > 0


def test_end_counts():
    assert parse_descriptor("ray").end_count == 1
    assert parse_descriptor("comb").end_count == 2
    assert parse_descriptor("double-ray").end_count == 2
    assert parse_descriptor("regular:2").end_count == 2
    assert parse_descriptor("hat").end_count == 0
    assert parse_descriptor("decorated:tripod").end_count == 3
    for desc in ("regular:3", "omega", "tn:2", "sn:2"):
        assert parse_descriptor(desc).end_count == UNCOUNTABLE


@pytest.mark.parametrize("name", sorted(DECORATED_PRESETS))
def test_decorated_boundary_carries_one_vertex_per_spine(name):
    g = build(parse_descriptor(f"decorated:{name}"))
    desc = DECORATED_PRESETS[name]
    core_radius = max(desc.core.distances_from(0))
    for r in range(core_radius + 1, core_radius + 10):
        on_spines = [v for v in sphere(g, g.root, r) if g.node(v)[0] == "spine"]
        assert len(on_spines) == len(desc.spines)


def test_decorated_validation():
    with pytest.raises(GraphError):
        DecoratedRayTree(cycle_graph(3), (0,), (Decoration((FiniteGraph(1),)),))
    with pytest.raises(GraphError):
        DecoratedRayTree(FiniteGraph(1), (0, 0), (Decoration((FiniteGraph(1),)),))
    with pytest.raises(GraphError):
        DecoratedRayTree(FiniteGraph(1), (3,), (Decoration((FiniteGraph(1),)),))


def test_family_str_round_trips():
    for desc in ("ray", "comb", "sn:3", "regular:4", "decorated:hat2", "omega"):
        assert str(parse_descriptor(desc)) == desc
    assert Family("hat").end_count == 0
    assert build(Family("hat")) == hat_graph()
