"""Frontier dynamic-programming kernels for perfect-matching sums.

Vertices are processed in a fixed order 0..n-1.  A state is a bitmask over
the vertices ahead of the current one that are already covered: bit t of the
state held before vertex i means vertex i+t is covered.  Vertex i is either
already covered (bit 0 set) or is matched now to a forward neighbour i+d, in
which case bit d is set.  Either way the state is shifted right by one.  The
bandwidth of the order therefore has to stay below 63.

The numba and numpy kernels do the same work on residues modulo several
31-bit primes (the caller reconstructs the exact value by CRT).  The python
kernel works on exact integers or fractions directly and has no width limit.
"""

from __future__ import annotations

import numpy as np

from ._settings import numba_jit_options

MAX_WIDTH = 62

OK = 0
TOO_MANY_STATES = 1


class StateLimitExceeded(RuntimeError):
    """The frontier grew beyond the configured state cap."""


def frontier_numpy(ptr, offs, wres, primes, max_states):
    """Vectorized kernel.  ``wres[t, q]`` is the weight of forward edge t mod ``primes[q]``."""
    n = len(ptr) - 1
    P = len(primes)
    states = np.zeros(1, dtype=np.int64)
    vals = np.ones((1, P), dtype=np.int64)
    one = np.int64(1)
    for i in range(n):
        covered = (states & one) == one
        parts_s = [states[covered] >> one]
        parts_v = [vals[covered]]
        free_s = states[~covered]
        free_v = vals[~covered]
        for t in range(ptr[i], ptr[i + 1]):
            d = np.int64(offs[t])
            ok = ((free_s >> d) & one) == 0
            if not ok.any():
                continue
            parts_s.append((free_s[ok] | (one << d)) >> one)
            parts_v.append(free_v[ok] * wres[t] % primes)
        S = np.concatenate(parts_s)
        if S.size == 0:
            return np.zeros(P, dtype=np.int64), OK
        V = np.concatenate(parts_v, axis=0)
        order = np.argsort(S, kind="stable")
        S = S[order]
        V = V[order]
        starts = np.flatnonzero(np.concatenate(([True], S[1:] != S[:-1])))
        states = S[starts]
        vals = np.add.reduceat(V, starts, axis=0) % primes
        if states.size > max_states:
            return np.zeros(P, dtype=np.int64), TOO_MANY_STATES
    if states.size == 1 and states[0] == 0:
        return vals[0].copy(), OK
    return np.zeros(P, dtype=np.int64), OK


def _frontier_loops(ptr, offs, wres, primes, max_states):
    n = ptr.shape[0] - 1
    P = primes.shape[0]
    states = np.zeros(1, dtype=np.int64)
    vals = np.ones((1, P), dtype=np.int64)
    for i in range(n):
        ns = states.shape[0]
        lo = ptr[i]
        hi = ptr[i + 1]
        cap = ns * (hi - lo + 1)
        S = np.empty(cap, dtype=np.int64)
        V = np.empty((cap, P), dtype=np.int64)
        c = 0
        for s in range(ns):
            st = states[s]
            if st & 1:
                S[c] = st >> 1
                for q in range(P):
                    V[c, q] = vals[s, q]
                c += 1
            else:
                for t in range(lo, hi):
                    d = offs[t]
                    if (st >> d) & 1 == 0:
                        S[c] = (st | (np.int64(1) << d)) >> 1
                        for q in range(P):
                            V[c, q] = vals[s, q] * wres[t, q] % primes[q]
                        c += 1
        if c == 0:
            return np.zeros(P, dtype=np.int64), OK
        order = np.argsort(S[:c], kind="mergesort")
        new_states = np.empty(c, dtype=np.int64)
        new_vals = np.zeros((c, P), dtype=np.int64)
        u = -1
        prev = np.int64(-1)
        for r in range(c):
            j = order[r]
            if u < 0 or S[j] != prev:
                u += 1
                prev = S[j]
                new_states[u] = prev
            for q in range(P):
                new_vals[u, q] = (new_vals[u, q] + V[j, q]) % primes[q]
        states = new_states[: u + 1]
        vals = new_vals[: u + 1]
        if u + 1 > max_states:
            return np.zeros(P, dtype=np.int64), TOO_MANY_STATES
    if states.shape[0] == 1 and states[0] == 0:
        return vals[0].copy(), OK
    return np.zeros(P, dtype=np.int64), OK


try:
    from numba import njit

    frontier_numba = njit(**numba_jit_options)(_frontier_loops)
except ImportError:  # pragma: no cover - numba is a declared dependency
    frontier_numba = None


def frontier_python(n, fwd, max_states):
    """Exact kernel on Python numbers; ``fwd[i]`` lists ``(d, weight)`` pairs."""
    states = {0: 1}
    for i in range(n):
        nxt: dict[int, object] = {}
        for st, val in states.items():
            if st & 1:
                key = st >> 1
                nxt[key] = nxt.get(key, 0) + val
                continue
            for d, w in fwd[i]:
                if not (st >> d) & 1:
                    key = (st | (1 << d)) >> 1
                    nxt[key] = nxt.get(key, 0) + val * w
        states = {k: v for k, v in nxt.items() if v != 0}
        if not states:
            return 0
        if len(states) > max_states:
            raise StateLimitExceeded(
                f"frontier exceeded {max_states} states at vertex {i} of {n}"
            )
    return states.get(0, 0)
