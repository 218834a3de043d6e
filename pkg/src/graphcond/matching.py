"""Weighted perfect-matching sums M(G).

``count_matchings_oracle`` is the reference: it branches on the lowest
uncovered vertex.  ``count_matchings_fast`` runs a frontier dynamic program
over a low-bandwidth vertex order and must return the same value.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt, prod

import numpy as np

from . import _kernels
from ._kernels import MAX_WIDTH, StateLimitExceeded
from ._settings import default_backend, default_max_states
from .exact import Scalar, normalize
from .graph import WeightedPlanarGraph

__all__ = [
    "count_matchings_oracle",
    "count_matchings_fast",
    "StateLimitExceeded",
    "vertex_order",
    "bandwidth",
]


def count_matchings_oracle(graph: WeightedPlanarGraph) -> Scalar:
    """Sum over all perfect matchings of the product of edge weights."""
    n = graph.n
    if n % 2:
        return 0
    adj: list[list[tuple[int, Scalar]]] = [[] for _ in range(n)]
    for e, (u, v, w) in enumerate(graph.edges):
        i, j = graph.index[u], graph.index[v]
        adj[i].append((j, w))
        adj[j].append((i, w))
    covered = [False] * n

    def rec(start: int) -> Scalar:
        i = start
        while i < n and covered[i]:
            i += 1
        if i == n:
            return 1
        covered[i] = True
        total: Scalar = 0
        for j, w in adj[i]:
            if not covered[j]:
                covered[j] = True
                total += w * rec(i + 1)
                covered[j] = False
        covered[i] = False
        return total

    return normalize(rec(0))


def bandwidth(order: list[int], edges: list[tuple[int, int]]) -> int:
    pos = {v: k for k, v in enumerate(order)}
    return max((abs(pos[a] - pos[b]) for a, b in edges), default=0)


def vertex_order(members: list[int], edges: list[tuple[int, int]]) -> list[int]:
    """Low-bandwidth order of ``members``: declaration order or reverse Cuthill-McKee."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import reverse_cuthill_mckee

    natural = list(members)
    if len(members) < 3 or not edges:
        return natural
    local = {v: k for k, v in enumerate(members)}
    rows = [local[a] for a, b in edges] + [local[b] for a, b in edges]
    cols = [local[b] for a, b in edges] + [local[a] for a, b in edges]
    mat = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(members),) * 2
    )
    perm = reverse_cuthill_mckee(mat, symmetric_mode=True)
    rcm = [members[k] for k in perm]
    best = natural
    best_bw = bandwidth(natural, edges)
    for cand in (rcm, rcm[::-1]):
        bw = bandwidth(cand, edges)
        if bw < best_bw:
            best, best_bw = cand, bw
    return best


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    out = []
    p = 2**31 - 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return tuple(out)


def _primes_for_bound(bound: int) -> tuple[int, ...]:
    count = 1
    while prod(_primes(count)) <= 2 * bound:
        count += 1
    return _primes(count)


def _crt(residues: list[int], primes: tuple[int, ...]) -> int:
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = ((int(r) - x) * pow(mod, -1, p)) % p
        x += mod * t
        mod *= p
    if x > mod // 2:
        x -= mod
    return x


def _component_value(
    graph: WeightedPlanarGraph,
    members: list[int],
    edges: list[tuple[int, int, Scalar]],
    backend: str,
    max_states: int,
) -> Scalar:
    if len(members) % 2:
        return 0
    if len(members) == 0:
        return 1
    pairs = [(a, b) for a, b, _ in edges]
    order = vertex_order(members, pairs)
    pos = {v: k for k, v in enumerate(order)}
    fwd: list[list[tuple[int, Scalar]]] = [[] for _ in order]
    for a, b, w in edges:
        pa, pb = pos[a], pos[b]
        if pa > pb:
            pa, pb = pb, pa
        fwd[pa].append((pb - pa, w))
    width = max((d for lst in fwd for d, _ in lst), default=0)
    integral = all(not isinstance(w, Fraction) for _, _, w in edges)
    if backend == "python" or width > MAX_WIDTH or not integral:
        return normalize(_kernels.frontier_python(len(order), fwd, max_states))

    absum = [0] * len(order)
    for a, b, w in edges:
        absum[pos[a]] += abs(w)
        absum[pos[b]] += abs(w)
    bound = isqrt(prod(max(1, s) for s in absum)) + 1
    primes = _primes_for_bound(bound)
    ptr = np.zeros(len(order) + 1, dtype=np.int64)
    offs, wres = [], []
    for i, lst in enumerate(fwd):
        ptr[i + 1] = ptr[i] + len(lst)
        for d, w in lst:
            offs.append(d)
            wres.append([w % p for p in primes])
    offs_a = np.asarray(offs, dtype=np.int64)
    wres_a = np.asarray(wres, dtype=np.int64).reshape(len(offs), len(primes))
    primes_a = np.asarray(primes, dtype=np.int64)
    if backend == "numba":
        res, status = _kernels.frontier_numba(ptr, offs_a, wres_a, primes_a, max_states)
    else:
        res, status = _kernels.frontier_numpy(ptr, offs_a, wres_a, primes_a, max_states)
    if status == _kernels.TOO_MANY_STATES:
        raise StateLimitExceeded(f"frontier exceeded {max_states} states")
    return _crt([int(r) for r in res], primes)


def count_matchings_fast(
    graph: WeightedPlanarGraph,
    backend: str | None = None,
    max_states: int | None = None,
) -> Scalar:
    """Same value as :func:`count_matchings_oracle`, via frontier dynamic programming.

    The graph is split into connected components (counts multiply); zero-weight
    edges are dropped.  Raises :class:`StateLimitExceeded` when the frontier
    outgrows ``max_states``.
    """
    backend = backend or default_backend()
    max_states = max_states or default_max_states()
    if graph.n % 2:
        return 0
    total: Scalar = 1
    by_comp: dict[int, list[tuple[int, int, Scalar]]] = {}
    comps = graph.components()
    where = {}
    for c, members in enumerate(comps):
        for v in members:
            where[v] = c
    for u, v, w in graph.edges:
        if w == 0:
            continue
        a, b = graph.index[u], graph.index[v]
        by_comp.setdefault(where[a], []).append((a, b, w))
    for c, members in enumerate(comps):
        if len(members) % 2:
            return 0
    for c, members in enumerate(comps):
        val = _component_value(graph, members, by_comp.get(c, []), backend, max_states)
        if val == 0:
            return 0
        total *= val
    return normalize(total)
