"""Random embedded graphs for identity testing.

Graphs are connected induced subgraphs of small lattices (square grid,
grid with one diagonal per square, honeycomb) whose rotation system comes
from the lattice geometry.  Marked vertices are drawn from the outer face,
so the cyclic-order hypothesis holds by construction.  Coordinates are only
used to sort edges by direction and to find the outer face; they never enter
a count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Hashable

from .graph import WeightedPlanarGraph, build_graph, face_darts

__all__ = [
    "EmbeddedGraph",
    "LATTICES",
    "random_embedded_graph",
    "outer_face",
    "outer_vertices",
    "add_pending_edge",
    "pick_cyclic",
    "pick_bipartite_blocks",
    "pick_with_pending",
]

LATTICES = ("grid", "diagonal", "honeycomb")


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: WeightedPlanarGraph
    pos: dict  # vertex -> (X, Y) integer coordinates in the plane
    lattice: str


def _half(d):
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _cmp_dir(d1, d2):
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _lattice_points(kind: str, w: int, h: int):
    """Vertices with planar positions and the lattice edges among them."""
    if kind in ("grid", "diagonal"):
        pts = {(i, j): (i, j) for i in range(w) for j in range(h)}
        steps = [(1, 0), (0, 1)] + ([(1, 1)] if kind == "diagonal" else [])
        edges = []
        for (i, j) in pts:
            for di, dj in steps:
                if (i + di, j + dj) in pts:
                    edges.append(((i, j), (i + di, j + dj)))
        return pts, edges
    if kind == "honeycomb":
        # brick-wall model: horizontal edges everywhere, vertical ones on alternate columns
        pts = {(i, j): (i, j) for i in range(w) for j in range(h)}
        edges = []
        for (i, j) in pts:
            if (i + 1, j) in pts:
                edges.append(((i, j), (i + 1, j)))
            if (i + j) % 2 == 0 and (i, j + 1) in pts:
                edges.append(((i, j), (i, j + 1)))
        return pts, edges
    raise ValueError(f"unknown lattice {kind!r}")


def _embed(vertices, pos, edges, weights) -> WeightedPlanarGraph:
    inc: dict[Hashable, list[int]] = {v: [] for v in vertices}
    for e, (u, v) in enumerate(edges):
        inc[u].append(e)
        inc[v].append(e)

    def direction(v, e):
        a, b = edges[e]
        other = b if a == v else a
        return (pos[other][0] - pos[v][0], pos[other][1] - pos[v][1])

    rotation = {
        v: sorted(inc[v], key=cmp_to_key(lambda e1, e2, v=v: _cmp_dir(direction(v, e1), direction(v, e2))))
        for v in vertices
    }
    wedges = [(u, v, w) for (u, v), w in zip(edges, weights)]
    return build_graph(vertices, wedges, rotation)


def random_embedded_graph(
    rng: random.Random,
    lattice: str | None = None,
    max_vertices: int = 24,
    min_vertices: int = 4,
    weight_range: tuple[int, int] = (-9, 9),
    edge_drop: float = 0.15,
) -> EmbeddedGraph:
    """A connected random subgraph of a small lattice, with random integer weights."""
    kind = lattice or rng.choice(LATTICES)
    w = rng.randint(2, 6)
    h = rng.randint(2, 6)
    pts, edges = _lattice_points(kind, w, h)
    adj: dict = {p: [] for p in pts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    target = rng.randint(min_vertices, min(max_vertices, len(pts)))
    start = rng.choice(sorted(pts))
    chosen = {start}
    frontier = set(adj[start])
    while len(chosen) < target and frontier:
        nxt = rng.choice(sorted(frontier))
        chosen.add(nxt)
        frontier.discard(nxt)
        frontier.update(q for q in adj[nxt] if q not in chosen)
    verts = sorted(chosen)
    kept = [(u, v) for u, v in edges if u in chosen and v in chosen]
    # drop some edges, keeping the graph connected
    rng.shuffle(kept)
    final = list(kept)
    for e in kept:
        if rng.random() < edge_drop:
            trial = [f for f in final if f != e]
            if _connected(verts, trial):
                final = trial
    final.sort()
    lo, hi = weight_range
    weights = [rng.randint(lo, hi) for _ in final]
    pos = {v: pts[v] for v in verts}
    return EmbeddedGraph(_embed(verts, pos, final, weights), pos, kind)


def _connected(verts, edges) -> bool:
    if not verts:
        return True
    adj = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        u = stack.pop()
        for x in adj[u]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == len(verts)


def outer_face(eg: EmbeddedGraph) -> list[tuple[Hashable, int]]:
    """Darts of the unbounded face: the walk with the most negative signed area."""
    g = eg.graph
    if g.n == 1:
        return [(g.vertices[0], -1)]
    best, best_area = None, None
    for walk in face_darts(g):
        pts = [eg.pos[v] for v, _ in walk]
        area = sum(
            pts[i][0] * pts[(i + 1) % len(pts)][1] - pts[(i + 1) % len(pts)][0] * pts[i][1]
            for i in range(len(pts))
        )
        if best_area is None or area < best_area:
            best, best_area = walk, area
    return best


def outer_vertices(eg: EmbeddedGraph) -> list[Hashable]:
    """Distinct vertices of the outer face in order of first visit."""
    out, seen = [], set()
    for v, _ in outer_face(eg):
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def add_pending_edge(
    eg: EmbeddedGraph, rng: random.Random, weight: int | None = None
) -> tuple[EmbeddedGraph, Hashable, Hashable]:
    """Attach a new degree-one vertex to an outer-face vertex, inside the outer face.

    Returns the new graph, the attachment vertex and the new leaf.
    """
    g = eg.graph
    walk = outer_face(eg)
    idx = rng.randrange(len(walk))
    q, e_out = walk[idx]
    _, e_prev = walk[idx - 1]
    # the outer-face corner at q lies between the arriving edge e_prev and e_out
    leaf = ("pend", len(g.vertices))
    new_e = g.m
    rotation = {v: list(r) for v, r in g.rotation.items()}
    rot = rotation[q]
    if e_prev >= 0 and e_prev in rot:
        rot.insert(rot.index(e_prev), new_e)
    else:
        rot.append(new_e)
    rotation[leaf] = [new_e]
    w = weight if weight is not None else rng.choice([x for x in range(-9, 10) if x != 0])
    edges = list(g.edges) + [(q, leaf, w)]
    graph = build_graph(list(g.vertices) + [leaf], edges, rotation)
    pos = dict(eg.pos)
    pos[leaf] = eg.pos[q]
    return EmbeddedGraph(graph, pos, eg.lattice), q, leaf


def pick_cyclic(eg: EmbeddedGraph, rng: random.Random, count: int) -> list[Hashable] | None:
    """``count`` outer-face vertices in face order, rotated to a random start."""
    ov = outer_vertices(eg)
    if len(ov) < count:
        return None
    idx = sorted(rng.sample(range(len(ov)), count))
    chosen = [ov[i] for i in idx]
    s = rng.randrange(count)
    chosen = chosen[s:] + chosen[:s]
    if rng.random() < 0.5:
        chosen = chosen[::-1]
    return chosen


def pick_bipartite_blocks(
    eg: EmbeddedGraph, rng: random.Random, k: int, tries: int = 200
) -> tuple[list, list] | None:
    """a_1..a_k in one colour class and b_1..b_k in the other, reading a_1..a_k, b_k..b_1 around the outer face."""
    parts = eg.graph.bipartition()
    if parts is None:
        return None
    V1, _ = parts
    ov = outer_vertices(eg)
    if len(ov) < 2 * k:
        return None
    for _ in range(tries):
        idx = sorted(rng.sample(range(len(ov)), 2 * k))
        seq = [ov[i] for i in idx]
        colors = [v in V1 for v in seq]
        for s in range(2 * k):
            rot = colors[s:] + colors[:s]
            if all(rot[i] == rot[0] for i in range(k)) and all(rot[i] != rot[0] for i in range(k, 2 * k)):
                seq = seq[s:] + seq[:s]
                return seq[:k], seq[k:][::-1]
    return None


def pick_with_pending(
    eg: EmbeddedGraph, rng: random.Random, count: int, q: Hashable, leaf: Hashable
) -> list[Hashable] | None:
    """Like :func:`pick_cyclic`, but always marking both ends of the pending edge q-leaf.

    When the two ends are adjacent in the marked order they are listed in a
    random order, which the pending-edge convention allows.
    """
    ov = outer_vertices(eg)
    others = [v for v in ov if v not in (q, leaf)]
    if count < 2 or len(others) < count - 2:
        return None
    chosen = set(rng.sample(others, count - 2)) | {q, leaf}
    seq = [v for v in ov if v in chosen]
    i, j = seq.index(q), seq.index(leaf)
    # the swap is only allowed when nothing marked sits between the two ends
    if (j - i) % count in (1, count - 1) and rng.random() < 0.5:
        seq[i], seq[j] = seq[j], seq[i]
    s = rng.randrange(count)
    return seq[s:] + seq[:s]
