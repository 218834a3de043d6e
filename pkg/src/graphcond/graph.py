"""Weighted planar graphs given by a rotation system.

A graph is immutable once built.  Vertices are opaque hashable ids (strings,
integers, tuples); internally they are mapped to dense indices in declaration
order.  Edges are identified by their position in the edge list, so parallel
edges are allowed.  The optional rotation system lists, for every vertex, its
incident edge indices in counterclockwise order; faces are read off from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .exact import Scalar, as_scalar, scalar_to_str

__all__ = [
    "GraphError",
    "WeightedPlanarGraph",
    "FaceSelection",
    "build_graph",
    "faces",
    "face_darts",
    "validate_cyclic_order",
    "delete_vertices",
    "graph_to_json",
    "graph_from_json",
]


class GraphError(ValueError):
    """Raised on malformed graphs or violated graph preconditions."""


@dataclass(frozen=True, eq=False)
class WeightedPlanarGraph:
    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable, Scalar], ...]
    rotation: Mapping[Hashable, tuple[int, ...]] | None = None
    index: Mapping[Hashable, int] = field(default_factory=dict, repr=False)
    incident: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ends(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return self.index[u], self.index[v]

    def degree(self, v: Hashable) -> int:
        return len(self.incident[self.index[v]])

    def neighbors(self, v: Hashable) -> list[Hashable]:
        out = []
        for e in self.incident[self.index[v]]:
            a, b, _ = self.edges[e]
            out.append(b if a == v else a)
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for e in self.incident[i]:
                a, b = self.edge_ends(e)
                j = b if a == i else a
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def components(self) -> list[list[int]]:
        """Connected components as lists of dense vertex indices."""
        comp = [-1] * self.n
        out: list[list[int]] = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members = [s]
            stack = [s]
            while stack:
                i = stack.pop()
                for e in self.incident[i]:
                    a, b = self.edge_ends(e)
                    j = b if a == i else a
                    if comp[j] < 0:
                        comp[j] = comp[s]
                        members.append(j)
                        stack.append(j)
            out.append(sorted(members))
        return out

    def bipartition(self) -> tuple[set[Hashable], set[Hashable]] | None:
        """Two color classes, or None if the graph has an odd cycle."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                i = stack.pop()
                for e in self.incident[i]:
                    a, b = self.edge_ends(e)
                    j = b if a == i else a
                    if color[j] < 0:
                        color[j] = 1 - color[i]
                        stack.append(j)
                    elif color[j] == color[i]:
                        return None
        c0 = {self.vertices[i] for i in range(self.n) if color[i] == 0}
        c1 = {self.vertices[i] for i in range(self.n) if color[i] == 1}
        return c0, c1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedPlanarGraph):
            return NotImplemented
        rot_a = None if self.rotation is None else dict(self.rotation)
        rot_b = None if other.rotation is None else dict(other.rotation)
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and rot_a == rot_b
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))


@dataclass(frozen=True)
class FaceSelection:
    graph: WeightedPlanarGraph
    marked: tuple[Hashable, ...]
    face_witness: tuple[Hashable, ...] | None = None


def build_graph(
    vertices: Iterable[Hashable],
    weighted_edges: Iterable[Sequence[Any]],
    rotation: Mapping[Hashable, Sequence[int]] | None = None,
) -> WeightedPlanarGraph:
    """Build a graph from vertex ids, ``(u, v[, w])`` edges and an optional rotation.

    Missing weights default to 1.  Weights may be ints, Fractions or decimal
    strings; they are normalized to exact scalars.
    """
    verts = tuple(vertices)
    index: dict[Hashable, int] = {}
    for i, v in enumerate(verts):
        if v in index:
            raise GraphError(f"duplicate vertex id {v!r}")
        index[v] = i
    edges = []
    incident: list[list[int]] = [[] for _ in verts]
    for e, item in enumerate(weighted_edges):
        if len(item) == 2:
            u, v = item
            w: Any = 1
        elif len(item) == 3:
            u, v, w = item
        else:
            raise GraphError(f"edge {e} must be (u, v) or (u, v, w), got {item!r}")
        for x in (u, v):
            if x not in index:
                raise GraphError(f"edge {e} references unknown vertex {x!r}")
        if u == v:
            raise GraphError(f"edge {e} is a self-loop at {u!r}")
        edges.append((u, v, as_scalar(w)))
        incident[index[u]].append(e)
        incident[index[v]].append(e)

    rot = None
    if rotation is not None:
        rot = {}
        for v, order in rotation.items():
            if v not in index:
                raise GraphError(f"rotation given for unknown vertex {v!r}")
            order = tuple(int(e) for e in order)
            if len(set(order)) != len(order):
                raise GraphError(f"duplicate edge id in rotation of {v!r}")
            if sorted(order) != sorted(incident[index[v]]):
                raise GraphError(
                    f"rotation of {v!r} must list each incident edge exactly once"
                )
            rot[v] = order
        for v in verts:
            if v not in rot:
                if incident[index[v]]:
                    raise GraphError(f"rotation missing for vertex {v!r}")
                rot[v] = ()
    return WeightedPlanarGraph(
        vertices=verts,
        edges=tuple(edges),
        rotation=rot,
        index=index,
        incident=tuple(tuple(x) for x in incident),
    )


def _require_rotation(graph: WeightedPlanarGraph) -> Mapping[Hashable, tuple[int, ...]]:
    if graph.rotation is None:
        raise GraphError("graph has no rotation system")
    return graph.rotation


def face_darts(graph: WeightedPlanarGraph) -> list[list[tuple[Hashable, int]]]:
    """Faces as lists of darts ``(tail vertex, edge index)``.

    Arriving at a vertex along edge ``e``, the walk leaves along the edge
    preceding ``e`` in that vertex's counterclockwise rotation.  Every dart is
    used by exactly one face.
    """
    rot = _require_rotation(graph)
    pos = {v: {e: i for i, e in enumerate(order)} for v, order in rot.items()}
    used: set[tuple[Hashable, int]] = set()
    out = []
    for e, (u, v, _) in enumerate(graph.edges):
        for tail in (u, v):
            if (tail, e) in used:
                continue
            face = []
            t, ed = tail, e
            while (t, ed) not in used:
                used.add((t, ed))
                face.append((t, ed))
                a, b, _ = graph.edges[ed]
                head = b if t == a else a
                order = rot[head]
                ed = order[(pos[head][ed] - 1) % len(order)]
                t = head
            out.append(face)
    return out


def faces(graph: WeightedPlanarGraph) -> list[list[Hashable]]:
    """Face boundaries as vertex sequences (one entry per dart, not closed)."""
    _require_rotation(graph)
    if graph.n and not graph.is_connected():
        raise GraphError("face extraction requires a connected graph")
    if graph.n == 1:
        return [[graph.vertices[0]]]
    return [[t for t, _ in f] for f in face_darts(graph)]


def _pending_pairs(graph: WeightedPlanarGraph, marked: set) -> set[frozenset]:
    pairs = set()
    for u, v, _ in graph.edges:
        if u in marked and v in marked and (graph.degree(u) == 1 or graph.degree(v) == 1):
            pairs.add(frozenset((u, v)))
    return pairs


def _cyclic_match(order: Sequence, target: Sequence) -> bool:
    n = len(order)
    if n != len(target):
        return False
    if n == 0:
        return True
    try:
        s = list(order).index(target[0])
    except ValueError:
        return False
    fwd = [order[(s + i) % n] for i in range(n)]
    bwd = [order[(s - i) % n] for i in range(n)]
    t = list(target)
    return fwd == t or bwd == t


def _swap_variants(order: list, pairs: set[frozenset]) -> list[list]:
    """All orders reachable by swapping cyclically adjacent pending-edge ends."""
    seen = {tuple(order)}
    frontier = [tuple(order)]
    while frontier:
        cur = frontier.pop()
        n = len(cur)
        for i in range(n):
            j = (i + 1) % n
            if frozenset((cur[i], cur[j])) in pairs:
                nxt = list(cur)
                nxt[i], nxt[j] = nxt[j], nxt[i]
                t = tuple(nxt)
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return [list(x) for x in seen]


def face_orders(walk: Sequence[Hashable], marked: set) -> list[list[Hashable]]:
    """Cyclic orders of ``marked`` read off a face walk.

    Repeated visits are collapsed to the first one; since "first" depends on
    where the closed walk is entered, every entry point is tried.
    """
    hits = [v for v in walk if v in marked]
    if set(hits) != marked:
        return []
    out = []
    seen = set()
    for s in range(len(hits)):
        order = []
        got = set()
        for i in range(len(hits)):
            v = hits[(s + i) % len(hits)]
            if v not in got:
                got.add(v)
                order.append(v)
        key = tuple(order)
        if key not in seen:
            seen.add(key)
            out.append(order)
    return out


def validate_cyclic_order(selection: FaceSelection) -> list[Hashable]:
    """Return a face walk on which the marked vertices occur in the given cyclic order.

    Either orientation of the face is accepted.  Pending edges whose two ends
    are both marked may have their ends listed in either order.  Raises
    :class:`GraphError` when no face qualifies.
    """
    g = selection.graph
    marked = list(selection.marked)
    if len(marked) < 2 or len(marked) % 2:
        raise GraphError("marked list must have even length >= 2")
    if len(set(marked)) != len(marked):
        raise GraphError("marked vertices must be distinct")
    for v in marked:
        if v not in g.index:
            raise GraphError(f"unknown marked vertex {v!r}")
    mset = set(marked)
    pairs = _pending_pairs(g, mset)
    walks = faces(g)
    if selection.face_witness is not None:
        walks = [list(selection.face_witness)] + walks
    any_face = False
    for walk in walks:
        for order in face_orders(walk, mset):
            any_face = True
            for variant in _swap_variants(order, pairs):
                if _cyclic_match(variant, marked):
                    return list(walk)
    if not any_face:
        raise GraphError("no face contains all marked vertices")
    raise GraphError("marked vertices are not in cyclic order on any face")


def delete_vertices(graph: WeightedPlanarGraph, S: Iterable[Hashable]) -> WeightedPlanarGraph:
    """Induced subgraph on ``vertices - S``; the rotation system is restricted."""
    S = set(S)
    for v in S:
        if v not in graph.index:
            raise GraphError(f"unknown vertex {v!r}")
    if not S:
        return graph
    verts = [v for v in graph.vertices if v not in S]
    keep = [e for e, (u, v, _) in enumerate(graph.edges) if u not in S and v not in S]
    renum = {e: i for i, e in enumerate(keep)}
    edges = [graph.edges[e] for e in keep]
    rot = None
    if graph.rotation is not None:
        rot = {
            v: [renum[e] for e in graph.rotation[v] if e in renum] for v in verts
        }
    return build_graph(verts, edges, rot)


def _id_to_key(v: Hashable) -> str:
    return json.dumps(v)


def graph_to_json(graph: WeightedPlanarGraph) -> dict:
    """JSON-ready dict; weights become decimal strings, rotation keys JSON-encoded ids."""
    out: dict[str, Any] = {
        "vertices": [_jsonable(v) for v in graph.vertices],
        "edges": [
            {"u": _jsonable(u), "v": _jsonable(v), "w": scalar_to_str(w)}
            for u, v, w in graph.edges
        ],
    }
    if graph.rotation is not None:
        out["rotation"] = {
            _id_to_key(_jsonable(v)): list(graph.rotation[v]) for v in graph.vertices
        }
    return out


def _jsonable(v: Hashable) -> Any:
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _hashable(v: Any) -> Hashable:
    if isinstance(v, list):
        return tuple(_hashable(x) for x in v)
    return v


def graph_from_json(data: Mapping[str, Any]) -> WeightedPlanarGraph:
    """Inverse of :func:`graph_to_json`.

    Rotation keys may be JSON-encoded ids (as written by :func:`graph_to_json`)
    or the plain string form of the id.
    """
    try:
        verts = [_hashable(v) for v in data["vertices"]]
        edges = []
        for item in data["edges"]:
            w = item.get("w", "1")
            edges.append((_hashable(item["u"]), _hashable(item["v"]), w))
    except (KeyError, TypeError, AttributeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    rotation = None
    if "rotation" in data and data["rotation"] is not None:
        lookup: dict[str, Hashable] = {}
        for v in verts:
            lookup[_id_to_key(_jsonable(v))] = v
            lookup.setdefault(str(v), v)
        rotation = {}
        for key, order in data["rotation"].items():
            if key not in lookup:
                raise GraphError(f"rotation given for unknown vertex {key!r}")
            rotation[lookup[key]] = order
    return build_graph(verts, edges, rotation)


def weights_are_integral(graph: WeightedPlanarGraph) -> bool:
    return all(not isinstance(w, Fraction) for _, _, w in graph.edges)
