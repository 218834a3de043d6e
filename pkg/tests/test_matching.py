from __future__ import annotations

import random
from fractions import Fraction

import pytest

from graphcond.corpus import add_pending_edge, random_embedded_graph
from graphcond.formulas import macmahon
from graphcond.graph import build_graph
from graphcond.lattice import dual_graph, hexagon
from graphcond.matching import (
    StateLimitExceeded,
    bandwidth,
    count_matchings_fast,
    count_matchings_oracle,
    vertex_order,
)

BACKENDS = ["numba", "numpy", "python"]


def cycle(n, weights=None):
    weights = weights or [1] * n
    return build_graph(range(n), [(i, (i + 1) % n, weights[i]) for i in range(n)])


def test_four_cycle():
    assert count_matchings_oracle(cycle(4)) == 2


def test_weighted_four_cycle():
    # matchings {e0, e2} and {e1, e3}
    assert count_matchings_oracle(cycle(4, [2, 3, 5, 7])) == 31


def test_odd_graph_is_zero():
    assert count_matchings_oracle(cycle(5)) == 0
    assert count_matchings_fast(cycle(5)) == 0


def test_empty_graph_is_one():
    g = build_graph([], [])
    assert count_matchings_oracle(g) == 1
    assert count_matchings_fast(g) == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_hexagon_222(backend):
    assert count_matchings_fast(dual_graph(hexagon(2, 2, 2)), backend=backend) == macmahon(2, 2, 2) == 20


@pytest.mark.parametrize("backend", BACKENDS)
def test_fast_matches_oracle_random(backend):
    rng = random.Random(11)
    for _ in range(60):
        eg = random_embedded_graph(rng, max_vertices=16)
        if rng.random() < 0.3:
            eg, _, _ = add_pending_edge(eg, rng)
        g = eg.graph
        assert count_matchings_fast(g, backend=backend) == count_matchings_oracle(g)


def test_fraction_weights_use_exact_path():
    g = cycle(4, [Fraction(1, 2), 3, Fraction(-5, 3), 7])
    expected = Fraction(1, 2) * Fraction(-5, 3) + 3 * 7
    assert count_matchings_oracle(g) == expected
    assert count_matchings_fast(g) == expected


def test_large_values_reconstructed_exactly():
    # weights near 10^6 on a 4x4 grid push the count past the 64-bit range
    rng = random.Random(2)
    pts = [(i, j) for i in range(4) for j in range(4)]
    edges = [((i, j), (i + di, j + dj)) for i, j in pts for di, dj in ((1, 0), (0, 1)) if (i + di, j + dj) in pts]
    big = build_graph(pts, [(u, v, rng.randint(10**6, 2 * 10**6)) for u, v in edges])
    assert abs(count_matchings_oracle(big)) > 2**64
    assert count_matchings_fast(big, backend="numba") == count_matchings_oracle(big)
    assert count_matchings_fast(big, backend="numpy") == count_matchings_oracle(big)


def test_disconnected_components_multiply():
    g = build_graph(range(8), [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    assert count_matchings_fast(g) == 4 == count_matchings_oracle(g)


def test_state_cap():
    with pytest.raises(StateLimitExceeded):
        count_matchings_fast(dual_graph(hexagon(4, 4, 4)), max_states=4)
    with pytest.raises(StateLimitExceeded):
        count_matchings_fast(dual_graph(hexagon(3, 3, 3)), backend="python", max_states=4)


def test_backend_env(monkeypatch):
    monkeypatch.setenv("GRAPHCOND_BACKEND", "python")
    assert count_matchings_fast(dual_graph(hexagon(2, 1, 2))) == macmahon(2, 1, 2)
    monkeypatch.setenv("GRAPHCOND_BACKEND", "fortran")
    with pytest.raises(ValueError):
        count_matchings_fast(dual_graph(hexagon(1, 1, 1)))


def test_vertex_order_reduces_bandwidth():
    n = 30
    edges = [(i, (i * 7) % n) for i in range(n)] + [(i, i + 1) for i in range(n - 1)]
    edges = [(a, b) for a, b in edges if a != b]
    order = vertex_order(list(range(n)), edges)
    assert sorted(order) == list(range(n))
    assert bandwidth(order, edges) <= bandwidth(list(range(n)), edges)
