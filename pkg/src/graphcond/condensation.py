"""Condensation matrices and exact residuals of the condensation identities.

Every ``verify_*`` function returns a residual (or an ``(lhs, rhs)`` pair)
rather than a boolean, so that a failure shows by how much it failed.
Matching counts come from ``counter``: ``"oracle"`` (default), ``"fast"``, or
any callable taking a graph.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Hashable, Sequence

from .exact import Scalar, normalize
from .graph import FaceSelection, GraphError, WeightedPlanarGraph, delete_vertices, validate_cyclic_order
from .matching import count_matchings_fast, count_matchings_oracle
from .pfaffian import SkewMatrix, determinant, pfaffian, swap_pair

__all__ = [
    "PatternError",
    "MatchingCache",
    "condensation_matrix",
    "verify_theorem_2_1",
    "verify_prop_2_2",
    "verify_corollary_2_4",
    "verify_kuo_4pt",
    "kuo_bipartite_4pt",
    "verify_kuo_unbalanced",
    "block_reorder",
    "permutation_sign",
]


class PatternError(ValueError):
    """Matrix entries that should vanish by colour class do not."""


def _resolve(counter) -> Callable[[WeightedPlanarGraph], Scalar]:
    if counter is None or counter == "oracle":
        return count_matchings_oracle
    if counter == "fast":
        return count_matchings_fast
    if callable(counter):
        return counter
    raise ValueError(f"unknown counter {counter!r}")


class MatchingCache:
    """M(G minus S) for subsets S of a fixed graph, computed once each."""

    def __init__(self, graph: WeightedPlanarGraph, counter=None):
        self.graph = graph
        self.count = _resolve(counter)
        self._memo: dict[frozenset, Scalar] = {}

    def __call__(self, removed: Sequence[Hashable] = ()) -> Scalar:
        key = frozenset(removed)
        if key not in self._memo:
            self._memo[key] = self.count(delete_vertices(self.graph, key))
        return self._memo[key]


def _check_marked(graph: WeightedPlanarGraph, marked: Sequence[Hashable], validate: bool) -> None:
    marked = list(marked)
    if len(marked) < 2 or len(marked) % 2:
        raise GraphError("need an even number (>= 2) of marked vertices")
    if len(set(marked)) != len(marked):
        raise GraphError("marked vertices must be distinct")
    for v in marked:
        if v not in graph.index:
            raise GraphError(f"unknown marked vertex {v!r}")
    if validate and graph.rotation is not None:
        validate_cyclic_order(FaceSelection(graph, tuple(marked)))


def condensation_matrix(
    graph: WeightedPlanarGraph,
    marked: Sequence[Hashable],
    counter=None,
    validate: bool = True,
    cache: MatchingCache | None = None,
) -> SkewMatrix:
    """Skew matrix with (i, j) entry M(G minus {a_i, a_j}) above the diagonal."""
    _check_marked(graph, marked, validate)
    M = cache or MatchingCache(graph, counter)
    return SkewMatrix.from_upper(len(marked), lambda i, j: M((marked[i], marked[j])))


def _colour_classes(graph: WeightedPlanarGraph, parts):
    """Given classes, checked to be proper; otherwise a 2-colouring of the graph.

    Pass the classes explicitly for disconnected graphs, whose 2-colouring is
    not unique.
    """
    if parts is None:
        parts = graph.bipartition()
        if parts is None:
            raise GraphError("graph is not bipartite")
        return parts
    V1, V2 = set(parts[0]), set(parts[1])
    if V1 & V2 or (V1 | V2) != set(graph.vertices):
        raise GraphError("colour classes must partition the vertices")
    for u, v, _ in graph.edges:
        if (u in V1) == (v in V1):
            raise GraphError(f"edge {u!r}-{v!r} joins two vertices of one class")
    return V1, V2


def verify_theorem_2_1(
    graph: WeightedPlanarGraph,
    marked: Sequence[Hashable],
    counter=None,
    validate: bool = True,
) -> Scalar:
    """M(G)^(k-1) M(G minus all marked) - Pf(A)."""
    M = MatchingCache(graph, counter)
    A = condensation_matrix(graph, marked, validate=validate, cache=M)
    k = len(marked) // 2
    return normalize(M() ** (k - 1) * M(marked) - pfaffian(A))


def verify_prop_2_2(
    graph: WeightedPlanarGraph,
    marked: Sequence[Hashable],
    counter=None,
    validate: bool = True,
) -> tuple[Scalar, Scalar]:
    """Both sides of the pairing identity for a_1 against each other a_j."""
    _check_marked(graph, marked, validate)
    M = MatchingCache(graph, counter)
    lhs = M() * M(marked)
    rhs: Scalar = 0
    everything = set(marked)
    for j in range(1, len(marked)):
        pair = (marked[0], marked[j])
        term = M(pair) * M(everything - set(pair))
        # j is 0-based here; odd 1-based positions sit on the left
        if j % 2 == 0:
            lhs += term
        else:
            rhs += term
    return normalize(lhs), normalize(rhs)


def verify_corollary_2_4(
    graph: WeightedPlanarGraph,
    a: Sequence[Hashable],
    b: Sequence[Hashable],
    counter=None,
    validate: bool = True,
    parts: tuple | None = None,
) -> Scalar:
    """M(G)^(k-1) M(G minus all) - det[M(G minus {a_i, b_j})].

    The marked vertices must read a_1..a_k, b_k..b_1 around a face, with the
    a's in one colour class and the b's in the other.
    """
    a, b = list(a), list(b)
    k = len(a)
    if k == 0 or len(b) != k:
        raise GraphError("need k >= 1 vertices on each side")
    parts = _colour_classes(graph, parts)
    V1, V2 = parts
    if len(V1) != len(V2):
        raise GraphError("colour classes have different sizes")
    if not (set(a) <= V1 and set(b) <= V2) and not (set(a) <= V2 and set(b) <= V1):
        raise GraphError("the a's and the b's must fill opposite colour classes")
    _check_marked(graph, a + b[::-1], validate)
    M = MatchingCache(graph, counter)
    det = determinant([[M((ai, bj)) for bj in b] for ai in a])
    return normalize(M() ** (k - 1) * M(a + b) - det)


def verify_kuo_4pt(
    graph: WeightedPlanarGraph,
    a: Hashable,
    b: Hashable,
    c: Hashable,
    d: Hashable,
    counter=None,
    validate: bool = True,
) -> dict[str, Scalar]:
    """Residuals of the three-term identity and of its Pfaffian form, for four vertices in cyclic order."""
    marked = [a, b, c, d]
    _check_marked(graph, marked, validate)
    M = MatchingCache(graph, counter)
    lhs = M() * M(marked)
    three = M((a, b)) * M((c, d)) - M((a, c)) * M((b, d)) + M((a, d)) * M((b, c))
    A = condensation_matrix(graph, marked, validate=False, cache=M)
    return {
        "three_term": normalize(lhs - three),
        "pfaffian": normalize(lhs - pfaffian(A)),
    }


def kuo_bipartite_4pt(
    graph: WeightedPlanarGraph,
    a: Hashable,
    b: Hashable,
    c: Hashable,
    d: Hashable,
    counter=None,
    validate: bool = True,
    parts: tuple | None = None,
) -> Scalar:
    """Residual of the two-term identity for balanced bipartite G with a, c and b, d in opposite classes."""
    parts = _colour_classes(graph, parts)
    V1, V2 = parts
    if len(V1) != len(V2):
        raise GraphError("colour classes have different sizes")
    if not ({a, c} <= V1 and {b, d} <= V2) and not ({a, c} <= V2 and {b, d} <= V1):
        raise GraphError("a, c and b, d must lie in opposite colour classes")
    _check_marked(graph, [a, b, c, d], validate)
    M = MatchingCache(graph, counter)
    return normalize(
        M() * M((a, b, c, d)) - M((a, b)) * M((c, d)) - M((a, d)) * M((b, c))
    )


def verify_kuo_unbalanced(
    graph: WeightedPlanarGraph,
    a: Hashable,
    b: Hashable,
    c: Hashable,
    d: Hashable,
    counter=None,
    validate: bool = True,
    parts: tuple | None = None,
) -> Scalar:
    """M(G-b)M(G-{a,c,d}) - M(G-a)M(G-{b,c,d}) - M(G-c)M(G-{a,b,d}).

    G bipartite with one class a vertex larger; a, b, c in the larger class.
    """
    parts = _colour_classes(graph, parts)
    V1, V2 = parts
    if len(V1) < len(V2):
        V1, V2 = V2, V1
    if len(V1) != len(V2) + 1:
        raise GraphError("need one colour class exactly one vertex larger")
    if not ({a, b, c} <= V1 and d in V2):
        raise GraphError("a, b, c must lie in the larger class and d in the smaller")
    _check_marked(graph, [a, b, c, d], validate)
    M = MatchingCache(graph, counter)
    return normalize(
        M((b,)) * M((a, c, d)) - M((a,)) * M((b, c, d)) - M((c,)) * M((a, b, d))
    )


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def block_reorder(A, classes: Sequence[Hashable], row_class: Hashable | None = None):
    """Bring a checkerboard skew matrix to the block form [[0, B], [-B^T, 0]].

    ``classes[i]`` is the colour of index i; entries joining two indices of
    the same colour must vanish.  Rows of B are the indices of ``row_class``
    (default: the colour of index 0) in their original order, columns the
    rest.  Returns ``(B, sign)`` with Pf(A) = sign * (-1)^(k(k-1)/2) * det(B);
    ``sign`` is accumulated one simultaneous row/column swap at a time.
    """
    if not isinstance(A, SkewMatrix):
        A = SkewMatrix(A)
    n = A.n
    if len(classes) != n:
        raise ValueError("one class label per index is required")
    labels = list(dict.fromkeys(classes))
    if len(labels) != 2:
        raise PatternError("need exactly two colour classes")
    if row_class is None:
        row_class = classes[0]
    if row_class not in labels:
        raise ValueError(f"row class {row_class!r} does not occur")
    rows = [i for i in range(n) if classes[i] == row_class]
    cols = [i for i in range(n) if classes[i] != row_class]
    if len(rows) != len(cols):
        raise PatternError("colour classes have different sizes")
    for i, j in combinations(range(n), 2):
        if classes[i] == classes[j] and A[i, j] != 0:
            raise PatternError(f"entry ({i}, {j}) joins two indices of one class but is {A[i, j]}")
    target = rows + cols
    # selection sort by simultaneous swaps: position p receives original index target[p]
    where = list(range(n))  # where[p] = original index now at position p
    cur, sign = A, 1
    for p in range(n):
        q = where.index(target[p])
        if q != p:
            cur, s = swap_pair(cur, p, q)
            sign *= s
            where[p], where[q] = where[q], where[p]
    k = len(rows)
    B = [[cur[i, k + j] for j in range(k)] for i in range(k)]
    assert sign == permutation_sign(target)
    return B, sign
