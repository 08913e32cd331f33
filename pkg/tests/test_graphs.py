"""Graph model: validation, truncations, operators, closure surgery."""

import pytest

from cuspzeta import (CuspRay, CuspidalGraph, OrientedEdge, ValidationError,
                      build_nagao, closure_matrix, complete_graph, cycle_graph,
                      finite_graph, graph_from_document, graph_to_document,
                      petersen_graph, transfer_matrix, truncate, validate,
                      vertex_operators)
from cuspzeta.graphs import check, induced_edges, ray_segment_vertices


def pair(eid, a, b, rid, w=1):
    return OrientedEdge(eid, a, b, rid, w)


def test_validate_collects_structural_violations():
    g = CuspidalGraph(
        vertices=("a", "a", "b:c"),
        edges=(
            pair("e", "a", "zz", "e"),
            pair("f", "a", "a", "missing"),
            pair("g", "a", "a", "h", w=0),
            pair("h", "a", "b:c", "g"),
            pair("x:y", "a", "a", "e2"),
            pair("e2", "a", "a", "x:y"),
        ),
        cusps=(
            CuspRay("c", "nowhere", 2, (), ()),
            CuspRay("c", "a", 0, (), (1, 0)),
            CuspRay("d:e", "a", 1, (), (1,)),
        ),
        tree_valency={"a": 99},
    )
    problems = validate(g)
    text = "\n".join(problems)
    assert "duplicate vertex id 'a'" in text
    assert "vertex id 'b:c' contains ':'" in text
    assert "unknown vertex 'zz'" in text
    assert "is its own reversal" in text
    assert "missing reversal" in text
    assert "nonpositive weight" in text
    assert "edge id 'x:y' contains ':'" in text
    assert "duplicate cusp id 'c'" in text
    assert "cusp id 'd:e' contains ':'" in text
    assert "unknown vertex" in text
    assert "empty period" in text
    assert "ray parameter 0 below 1" in text
    assert "nonpositive entry weight" in text
    assert "does not match total outgoing weight" in text
    assert "missing tree valency for vertex 'b:c'" in text


def test_validate_reversal_consistency():
    g = CuspidalGraph(
        vertices=("a", "b", "c"),
        edges=(
            pair("e", "a", "b", "f"),
            pair("f", "b", "a", "e"),
            pair("p", "b", "c", "q"),
            pair("q", "c", "a", "p"),
        ),
        cusps=(),
        tree_valency={"a": 1, "b": 2, "c": 1},
    )
    problems = validate(g)
    assert any("disagree on endpoints" in p for p in problems)


def test_validate_disconnected_core():
    g = CuspidalGraph(
        vertices=("a", "b", "c", "d"),
        edges=(
            pair("e", "a", "b", "f"), pair("f", "b", "a", "e"),
            pair("p", "c", "d", "q"), pair("q", "d", "c", "p"),
        ),
        cusps=(),
        tree_valency={"a": 1, "b": 1, "c": 1, "d": 1},
    )
    problems = validate(g)
    assert any("not connected" in p for p in problems)


def test_check_raises_with_all_violations():
    g = CuspidalGraph(("a",), (), (CuspRay("c", "a", 2, (), ()),), {"a": 2})
    with pytest.raises(ValidationError) as err:
        check(g)
    assert any("empty period" in v for v in err.value.violations)


def test_document_roundtrip():
    g = build_nagao([2, 3], extra=[5])
    doc = graph_to_document(g)
    back = graph_from_document(doc)
    assert graph_to_document(back) == doc
    with pytest.raises(ValidationError, match="malformed graph document"):
        graph_from_document({"vertices": ["a"]})


def test_build_nagao_shapes():
    g = build_nagao([2])
    assert g.vertices == ("x0",)
    assert g.tree_valency["x0"] == 3
    c = g.cusps[0]
    assert c.entry_weight == 3
    assert [c.valency_param(n) for n in range(1, 5)] == [2, 2, 2, 2]
    assert c.limit_valency() == 2

    g2 = build_nagao([2, 3])
    c2 = g2.cusps[0]
    # vertex at distance n has valency qs[n mod 2] + 1
    assert g2.tree_valency["x0"] == 3
    assert [c2.valency_param(n) + 1 for n in range(1, 6)] == [4, 3, 4, 3, 4]
    assert c2.limit_valency() is None

    g3 = build_nagao([2], extra=[5, 7])
    c3 = g3.cusps[0]
    assert g3.tree_valency["x0"] == 6
    assert [c3.valency_param(n) + 1 for n in range(1, 6)] == [8, 3, 3, 3, 3]

    with pytest.raises(ValueError):
        build_nagao([])
    with pytest.raises(ValueError):
        build_nagao([2, 0])
    with pytest.raises(ValueError):
        build_nagao([2], extra=[0])


def test_ray_vertex_indexing():
    g = build_nagao([2])
    c = g.cusps[0]
    assert g.ray_vertex(c, 0) == "x0"
    assert g.ray_vertex(c, 3) == "c0:y3"
    up, down = g.ray_edge_pair(c, 0)
    assert (up.id, up.weight) == ("c0:u0", 3)
    assert (down.id, down.weight) == ("c0:d0", 2)
    up1, down1 = g.ray_edge_pair(c, 1)
    assert (up1.weight, down1.weight) == (1, 2)
    assert g.ray_tree_valency(c, 4) == 3
    with pytest.raises(ValueError):
        c.valency_param(0)


def test_truncation_counts_and_euler():
    g = build_nagao([2])
    for depth in range(5):
        t = truncate(g, depth)
        assert len(t.vertices) == 1 + depth
        assert len(t.edges) == 2 * depth
        assert t.euler_characteristic == 1
        assert t.depth == depth
    with pytest.raises(ValueError):
        truncate(g, -1)


def test_truncation_euler_constant_in_depth(two_cusp):
    values = {truncate(two_cusp, d).euler_characteristic for d in range(6)}
    assert values == {1}


def test_retained_out_weight():
    g = build_nagao([2])
    t = truncate(g, 2)
    assert t.retained_out_weight("x0") == 3
    assert t.retained_out_weight("c0:y1") == 3
    # boundary vertex keeps only the inward edge
    assert t.retained_out_weight("c0:y2") == 2


def test_transfer_matrix_entries():
    g = build_nagao([2])
    m = transfer_matrix(truncate(g, 2))
    assert set(m.index) == {"c0:u0", "c0:d0", "c0:u1", "c0:d1"}
    expected = {
        ("c0:u1", "c0:u0"): 1,
        ("c0:d0", "c0:u0"): 1,
        ("c0:d1", "c0:u1"): 1,
        ("c0:u0", "c0:d0"): 2,
        ("c0:d0", "c0:d1"): 2,
    }
    assert m.entries == expected
    assert m.entry("c0:u1", "c0:u0") == 1
    assert m.entry("c0:u0", "c0:u1") == 0
    dense = m.dense()
    assert sum(sum(row) for row in dense) == 7


def test_transfer_matrix_is_stable_under_deeper_truncation():
    g = build_nagao([3])
    small = transfer_matrix(truncate(g, 3))
    big = transfer_matrix(truncate(g, 6))
    kept = {k: w for k, w in big.entries.items()
            if k[0] in set(small.index) and k[1] in set(small.index)}
    # interior entries agree; only the old boundary column differs
    for key, w in small.entries.items():
        if "u2" not in key[1] and "d2" not in key[1]:
            assert kept[key] == w


def test_vertex_operators_nagao_depth_one():
    g = build_nagao([2])
    vs = vertex_operators(truncate(g, 1))
    assert vs.index == ("x0", "c0:y1")
    assert vs.adjacency == [[0, 2], [3, 0]]
    assert vs.excess == [2, 1]
    assert vs.euler_characteristic == 1


def test_complete_graph_transfer_column_sums():
    g = complete_graph(4)
    m = transfer_matrix(truncate(g, 0))
    assert m.size == 12
    assert set(m.column_sums().values()) == {2}


def test_finite_graph_parallel_edges_and_loops():
    g = finite_graph([("a", "b"), ("a", "b"), ("b", "a"), ("a", "a"), ("a", "a")])
    assert not validate(g)
    ids = {e.id for e in g.edges}
    assert len(ids) == 10
    loops = [e for e in g.edges if e.origin == e.terminus]
    assert len(loops) == 4
    for e in loops:
        assert e.inverse in ids and e.inverse != e.id
    # loop contributes twice to the weighted valency
    assert g.tree_valency["a"] == 3 + 4


def test_finite_graph_weights():
    g = finite_graph([("a", "b")], weights={"a.b": 5, "b.a": 7})
    w = {e.id: e.weight for e in g.edges}
    assert w == {"a.b": 5, "b.a": 7}
    assert g.tree_valency == {"a": 5, "b": 7}


def test_named_families():
    c3 = cycle_graph(3)
    assert len(c3.vertices) == 3 and len(c3.edges) == 6
    k4 = complete_graph(4)
    assert len(k4.vertices) == 4 and len(k4.edges) == 12
    pet = petersen_graph()
    assert len(pet.vertices) == 10 and len(pet.edges) == 30
    assert all(v == 3 for v in pet.tree_valency.values())
    for g in (c3, k4, pet):
        assert not validate(g)


def test_induced_edges_on_ray_segment():
    g = build_nagao([2])
    c = g.cusps[0]
    seg = ray_segment_vertices(g, c, 4, 6)
    assert seg == ["c0:y4", "c0:y5", "c0:y6"]
    edges = induced_edges(g, seg)
    assert {e.id for e in edges} == {"c0:u4", "c0:d4", "c0:u5", "c0:d5"}
    both = induced_edges(g, ["x0", "c0:y1"])
    assert {e.id for e in both} == {"c0:u0", "c0:d0"}
    with pytest.raises(ValueError):
        ray_segment_vertices(g, c, 0, 2)
    with pytest.raises(ValueError):
        ray_segment_vertices(g, c, 3, 2)


def test_closure_matrix_rewrites_boundary_columns():
    g = build_nagao([2])
    depth = 3
    closed = closure_matrix(g, depth)
    plain = transfer_matrix(truncate(g, depth + 1))
    assert closed.index == plain.index
    out_id, back_id, prev_id = "c0:u3", "c0:d3", "c0:d2"
    assert closed.entry(back_id, out_id) == 2
    assert closed.entry(out_id, back_id) == 1
    assert closed.entry(prev_id, back_id) == 1
    # no other entries in the rewired columns
    for (to_id, from_id), w in closed.entries.items():
        if from_id in (out_id, back_id):
            assert (to_id, from_id) in {
                (back_id, out_id), (out_id, back_id), (prev_id, back_id)
            }
        else:
            assert plain.entry(to_id, from_id) == w
    # untouched columns match the plain truncation
    for (to_id, from_id), w in plain.entries.items():
        if from_id not in (out_id, back_id):
            assert closed.entry(to_id, from_id) == w


def test_closure_matrix_degenerate_parameter():
    g = build_nagao([1])
    closed = closure_matrix(g, 2)
    # weight q - 1 = 0 leaves no spillover entry
    assert closed.entry("c0:d1", "c0:d2") == 0
    assert closed.entry("c0:d2", "c0:u2") == 1


def test_closure_matrix_preconditions():
    with pytest.raises(ValueError, match="period one"):
        closure_matrix(build_nagao([2, 3]), 4)
    g = build_nagao([2], extra=[5, 7])
    with pytest.raises(ValueError, match="does not clear the preperiod"):
        closure_matrix(g, 2)
    closure_matrix(g, 3)
    with pytest.raises(ValueError):
        closure_matrix(build_nagao([2]), 0)


def test_closure_matrix_two_cusps(two_cusp):
    closed = closure_matrix(two_cusp, 2)
    assert closed.entry("a:d2", "a:u2") == 2
    assert closed.entry("b:d2", "b:u2") == 3
    assert closed.entry("b:d1", "b:d2") == 2
