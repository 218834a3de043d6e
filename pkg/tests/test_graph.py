from __future__ import annotations

import json
import random

import pytest

from graphcond.corpus import add_pending_edge, outer_vertices, random_embedded_graph
from graphcond.graph import (
    FaceSelection,
    GraphError,
    build_graph,
    delete_vertices,
    face_darts,
    faces,
    graph_from_json,
    graph_to_json,
    validate_cyclic_order,
)
from graphcond.lattice import dual_graph, hexagon
from graphcond.matching import count_matchings_oracle


def square(weights=(1, 1, 1, 1)):
    # a-b-c-d-a drawn counterclockwise: a (0,0), b (1,0), c (1,1), d (0,1)
    edges = [("a", "b", weights[0]), ("b", "c", weights[1]), ("c", "d", weights[2]), ("d", "a", weights[3])]
    rotation = {"a": [0, 3], "b": [1, 0], "c": [2, 1], "d": [3, 2]}
    return build_graph("abcd", edges, rotation)


def test_square_construction():
    g = square()
    assert (g.n, g.m) == (4, 4)
    assert g.degree("a") == 2
    assert sorted(g.neighbors("a")) == ["b", "d"]


def test_unknown_vertex_rejected():
    with pytest.raises(GraphError):
        build_graph("ab", [("a", "z")])


def test_bad_rotation_rejected():
    with pytest.raises(GraphError):
        build_graph("abc", [("a", "b"), ("b", "c")], {"a": [0], "b": [1], "c": [1]})
    with pytest.raises(GraphError):
        build_graph("ab", [("a", "b")], {"a": [0, 0], "b": [0]})


def test_self_loop_and_duplicate_vertex_rejected():
    with pytest.raises(GraphError):
        build_graph("ab", [("a", "a")])
    with pytest.raises(GraphError):
        build_graph(["a", "a"], [])


def test_float_weights_refused():
    with pytest.raises(TypeError):
        build_graph("ab", [("a", "b", 0.5)])


def test_square_faces():
    fs = faces(square())
    assert sorted(len(f) for f in fs) == [4, 4]


def test_single_edge_has_one_face():
    g = build_graph("uv", [("u", "v")], {"u": [0], "v": [0]})
    fs = faces(g)
    assert len(fs) == 1
    # the open walk visits u then v; closing it returns to u
    assert sorted(fs[0]) == ["u", "v"]


def test_hexagon_dual_euler():
    g = dual_graph(hexagon(1, 1, 1))
    assert g.n - g.m + len(faces(g)) == 2
    g = dual_graph(hexagon(2, 3, 1))
    assert g.n - g.m + len(faces(g)) == 2


def test_every_dart_used_once():
    g = dual_graph(hexagon(2, 2, 2))
    darts = [d for f in face_darts(g) for d in f]
    assert len(darts) == 2 * g.m == len(set(darts))


def test_faces_need_connected_graph():
    g = build_graph("abcd", [("a", "b"), ("c", "d")], {"a": [0], "b": [0], "c": [1], "d": [1]})
    with pytest.raises(GraphError):
        faces(g)


def test_cyclic_order_accepts_face_order():
    g = square()
    assert validate_cyclic_order(FaceSelection(g, ("a", "b", "c", "d")))
    assert validate_cyclic_order(FaceSelection(g, ("c", "d", "a", "b")))
    assert validate_cyclic_order(FaceSelection(g, ("d", "c", "b", "a")))


def test_cyclic_order_rejects_interleaved():
    with pytest.raises(GraphError):
        validate_cyclic_order(FaceSelection(square(), ("a", "c", "b", "d")))


def test_pending_edge_ends_may_swap():
    # square a b c d with a leaf p hanging from b into the outer face
    g0 = square()
    edges = list(g0.edges) + [("b", "p", 1)]
    rotation = {v: list(r) for v, r in g0.rotation.items()}
    rotation["b"] = [1, 4, 0]
    rotation["p"] = [4]
    g = build_graph(list(g0.vertices) + ["p"], edges, rotation)
    walk_order = ("a", "b", "p", "c")
    swapped = ("a", "p", "b", "c")
    found = []
    for marked in (walk_order, swapped):
        try:
            validate_cyclic_order(FaceSelection(g, marked))
            found.append(True)
        except GraphError:
            found.append(False)
    assert found == [True, True]
    # without the pending-edge convention p cannot jump past c
    with pytest.raises(GraphError):
        validate_cyclic_order(FaceSelection(g, ("a", "b", "c", "p")))


def test_validation_invariant_under_even_rotation_and_relabeling():
    rng = random.Random(5)
    for _ in range(20):
        eg = random_embedded_graph(rng, max_vertices=14)
        ov = outer_vertices(eg)
        if len(ov) < 4:
            continue
        m = ov[:4]
        validate_cyclic_order(FaceSelection(eg.graph, tuple(m)))
        validate_cyclic_order(FaceSelection(eg.graph, tuple(m[2:] + m[:2])))
        relabel = {v: ("x", i) for i, v in enumerate(eg.graph.vertices)}
        g2 = build_graph(
            [relabel[v] for v in eg.graph.vertices],
            [(relabel[u], relabel[v], w) for u, v, w in eg.graph.edges],
            {relabel[v]: r for v, r in eg.graph.rotation.items()},
        )
        validate_cyclic_order(FaceSelection(g2, tuple(relabel[v] for v in m)))


def test_delete_vertices():
    g = square()
    assert delete_vertices(g, []) == g
    empty = delete_vertices(g, "abcd")
    assert empty.n == 0 and count_matchings_oracle(empty) == 1
    edge = delete_vertices(g, "cd")
    assert edge.vertices == ("a", "b") and edge.m == 1
    assert edge.rotation == {"a": (0,), "b": (0,)}


def test_json_round_trip():
    rng = random.Random(3)
    eg = random_embedded_graph(rng)
    eg, _, _ = add_pending_edge(eg, rng)
    data = json.loads(json.dumps(graph_to_json(eg.graph)))
    assert graph_from_json(data) == eg.graph


def test_hexagon_dual_round_trips_through_build_graph():
    g = dual_graph(hexagon(2, 1, 2))
    g2 = build_graph(g.vertices, g.edges, g.rotation)
    assert g2 == g


def test_malformed_json_graph():
    with pytest.raises(GraphError):
        graph_from_json({"vertices": [1, 2]})
