"""Exact Pfaffians and determinants.

The Pfaffian is expanded along the first remaining row, with results
memoized per subset of surviving indices, so a 2k x 2k matrix costs at most
2^(2k) subproblems and never divides.  Determinants use fraction-free
(Bareiss) elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Scalar, as_scalar, normalize

__all__ = [
    "SkewMatrix",
    "NotSkewError",
    "pfaffian",
    "pfaffian_expand_row",
    "determinant",
    "swap_pair",
    "block_skew",
    "pfaffian_block",
]


class NotSkewError(ValueError):
    pass


class SkewMatrix:
    """Square skew-symmetric matrix of exact scalars (immutable)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise NotSkewError("matrix is not square")
            if r[i] != 0:
                raise NotSkewError(f"nonzero diagonal entry at {i}")
            for j in range(i):
                if r[j] != -rows[j][i]:
                    raise NotSkewError(f"entries ({i},{j}) and ({j},{i}) are not negatives")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, key, value):
        raise AttributeError("SkewMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SkewMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SkewMatrix({[list(r) for r in self.rows]!r})"

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_upper(cls, n: int, upper) -> "SkewMatrix":
        """Build from a callable ``upper(i, j)`` giving entries for i < j."""
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = as_scalar(upper(i, j))
                rows[i][j] = v
                rows[j][i] = -v
        return cls(rows)


def _as_skew(A) -> SkewMatrix:
    return A if isinstance(A, SkewMatrix) else SkewMatrix(A)


def pfaffian(A) -> Scalar:
    """Pf(A) by expansion along the first row, memoized over index subsets."""
    A = _as_skew(A)
    n = A.n
    if n % 2:
        raise NotSkewError("Pfaffian needs even dimension")
    rows = A.rows
    memo: dict[int, Scalar] = {0: 1}

    def pf(mask: int) -> Scalar:
        if mask in memo:
            return memo[mask]
        idx = [k for k in range(n) if mask >> k & 1]
        first = idx[0]
        rest = mask & ~(1 << first)
        total: Scalar = 0
        for t, j in enumerate(idx[1:]):
            a = rows[first][j]
            if a == 0:
                continue
            sub = pf(rest & ~(1 << j))
            if t % 2:
                total -= a * sub
            else:
                total += a * sub
        memo[mask] = total
        return total

    return normalize(pf((1 << n) - 1))


def pfaffian_expand_row(A, row: int) -> Scalar:
    """Pf(A) expanded along ``row`` (0-based); the minors use :func:`pfaffian`."""
    A = _as_skew(A)
    n = A.n
    if n % 2:
        raise NotSkewError("Pfaffian needs even dimension")
    if n == 0:
        return 1
    total: Scalar = 0
    for j in range(n):
        if j == row:
            continue
        keep = [k for k in range(n) if k not in (row, j)]
        minor = [[A.rows[a][b] for b in keep] for a in keep]
        # 1-based sign (-1)^(i+j+1+[i>j]); shifting both indices keeps the parity
        sign = -1 if (row + j + 1 + (1 if row > j else 0)) % 2 else 1
        total += sign * A.rows[row][j] * pfaffian(minor)
    return normalize(total)


def determinant(M: Sequence[Sequence]) -> Scalar:
    """Exact determinant; fraction-free Bareiss elimination with row pivoting."""
    a = [[as_scalar(x) for x in r] for r in M]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    integral = all(not isinstance(x, Fraction) for r in a for x in r)
    sign = 1
    prev: Scalar = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = num // prev if integral else Fraction(num) / prev
            a[i][k] = 0
        prev = piv
    return normalize(sign * a[n - 1][n - 1])


def swap_pair(A, i: int, j: int) -> tuple[SkewMatrix, int]:
    """Interchange rows i, j and columns i, j at once; the Pfaffian changes sign."""
    A = _as_skew(A)
    n = A.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices {i}, {j} out of range for size {n}")
    if i == j:
        raise ValueError("swap_pair needs two distinct indices")
    perm = list(range(n))
    perm[i], perm[j] = j, i
    rows = [[A.rows[perm[r]][perm[c]] for c in range(n)] for r in range(n)]
    return SkewMatrix(rows), -1


def block_skew(B: Sequence[Sequence]) -> SkewMatrix:
    """The 2k x 2k matrix [[0, B], [-B^T, 0]]."""
    k = len(B)
    rows = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        if len(B[i]) != k:
            raise ValueError("block must be square")
        for j in range(k):
            v = as_scalar(B[i][j])
            rows[i][k + j] = v
            rows[k + j][i] = -v
    return SkewMatrix(rows)


def pfaffian_block(B: Sequence[Sequence]) -> Scalar:
    """Pf([[0, B], [-B^T, 0]]) = (-1)^(k(k-1)/2) det(B)."""
    k = len(B)
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    return normalize(sign * determinant(B))
