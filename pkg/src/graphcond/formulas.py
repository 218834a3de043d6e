"""Closed-form tiling counts and the hypergeometric identities behind them.

All evaluation is exact: factorial ratios are formed over Python integers and
divided once, and sums with rational terms use Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

from .exact import Scalar, normalize

__all__ = [
    "FormulaError",
    "pochhammer",
    "superfactorial",
    "macmahon",
    "clp_formula",
    "eisenkolbl_bracket",
    "eisenkolbl_bracket_det",
    "reciprocal_det_form",
    "eisenkolbl_formula",
    "staircase_product",
    "p_poly",
    "d_factor",
    "q_poly",
    "p_sum",
    "q_sum",
    "count_h_kl",
    "count_h_prime_kl",
    "hypergeometric",
    "hyp2f1_terminating",
    "verify_gauss",
    "count_by_shape",
    "closed_form_count",
    "theorem_4_1_assembly",
    "dent_block_form",
]


class FormulaError(ValueError):
    pass


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial a(a+1)...(a+k-1); equals 1 for k = 0."""
    if k < 0:
        raise FormulaError("pochhammer length must be nonnegative")
    out: Scalar = 1
    for i in range(k):
        out *= a + i
    return normalize(out)


def superfactorial(n: int) -> int:
    """0! 1! ... (n-1)!, so that superfactorial(0) = 1."""
    return prod(factorial(i) for i in range(n))


def _exact_div(num: int, den: int) -> Scalar:
    if den == 0:
        raise FormulaError("division by zero")
    return normalize(Fraction(num, den))


def macmahon(a: int, b: int, c: int) -> int:
    """Lozenge tilings of the hexagon with sides a, b, c, a, b, c."""
    if min(a, b, c) < 0:
        raise FormulaError("hexagon sides must be nonnegative")
    sf = superfactorial
    return _exact_div(
        sf(a) * sf(b) * sf(c) * sf(a + b + c), sf(a + b) * sf(b + c) * sf(a + c)
    )


def clp_formula(m: int, n: int, xs: Sequence[int]) -> int:
    """Tilings of the trapezoid with sides m, n, m+n, n minus top down cells at xs."""
    xs = list(xs)
    if m < 0 or n < 0 or len(xs) != n:
        raise FormulaError(f"need n={n} positions with m, n >= 0")
    if any(b <= a for a, b in zip(xs, xs[1:])) or (xs and (xs[0] < 1 or xs[-1] > m + n)):
        raise FormulaError(f"positions must be strictly increasing in [1, {m + n}]")
    num = prod(xs[j] - xs[i] for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return _exact_div(num, den)


# ---------------------------------------------------------------------------
# one dent on each of three sides


def _check_rst(a, b, c, r, s, t):
    if min(a, b, c) < 0:
        raise FormulaError("a, b, c must be nonnegative")
    for name, val, hi in (("r", r, a + 2), ("s", s, b + 2), ("t", t, c + 2)):
        if not 0 <= val <= hi:
            raise FormulaError(f"{name}={val} outside [0, {hi}]")


def eisenkolbl_bracket(a: int, b: int, c: int, r: int, s: int, t: int) -> int:
    rp, sp, tp = a + 2 - r, b + 2 - s, c + 2 - t
    A, B, C = a + 1, b + 1, c + 1
    return (
        A * B * C * rp * sp * tp
        + A * B * C * r * s * t
        - rp * sp * tp * r * s * t
        + A * C * sp * tp * r * s
        + B * A * rp * tp * s * t
        + C * B * rp * sp * r * t
    )


def eisenkolbl_bracket_det(a: int, b: int, c: int, r: int, s: int, t: int) -> Scalar:
    """The six-term bracket rewritten as a scaled 3x3 determinant of reciprocals.

    The determinant reads each dent position from the far end of its side,
    so r and r' = a+2-r (likewise s, t) trade places relative to the bracket.
    Defined only when r, s, t, r', s', t' are all nonzero.
    """
    rp, sp, tp = a + 2 - r, b + 2 - s, c + 2 - t
    if 0 in (r, s, t, rp, sp, tp):
        raise FormulaError("determinant form needs r, s, t and their complements nonzero")
    return reciprocal_det_form(a, b, c, rp, sp, tp)


def reciprocal_det_form(a: int, b: int, c: int, r: int, s: int, t: int) -> Scalar:
    """r s t r' s' t' (a+1)(b+1)(c+1) det[[1/r', 1/(b+1), 1/t], [-1/r, 1/s', 1/(c+1)], [-1/(a+1), -1/s, 1/t']]."""
    from .pfaffian import determinant

    rp, sp, tp = a + 2 - r, b + 2 - s, c + 2 - t
    if 0 in (r, s, t, rp, sp, tp):
        raise FormulaError("determinant form needs r, s, t and their complements nonzero")
    F = Fraction
    mat = [
        [F(1, rp), F(1, b + 1), F(1, t)],
        [-F(1, r), F(1, sp), F(1, c + 1)],
        [-F(1, a + 1), -F(1, s), F(1, tp)],
    ]
    scale = r * s * t * rp * sp * tp * (a + 1) * (b + 1) * (c + 1)
    return normalize(scale * determinant(mat))


def eisenkolbl_formula(a: int, b: int, c: int, r: int, s: int, t: int) -> int:
    """Tilings of the hexagon with sides a, b+3, c, a+3, b, c+3 minus one up-dent per long side.

    r, s, t are 0-based positions along the sides of lengths a+3, b+3, c+3,
    counted counterclockwise from the south-west, east and north-west corners.
    """
    _check_rst(a, b, c, r, s, t)
    P = pochhammer
    pre = (
        P(r + 1, b) * P(s + 1, c) * P(t + 1, a)
        * P(a + 3 - r, c) * P(b + 3 - s, a) * P(c + 3 - t, b)
    )
    sf = superfactorial
    num = sf(a + 1) * sf(b + 1) * sf(c + 1) * sf(a + b + c + 3)
    den = sf(b + c + 3) * sf(a + c + 3) * sf(a + b + 3)
    return _exact_div(pre * num * eisenkolbl_bracket(a, b, c, r, s, t), den)


# ---------------------------------------------------------------------------
# two-notch hexagons


def staircase_product(base: Scalar, m: int, M: int) -> Scalar:
    """prod over 1 <= i <= m, 1 <= j <= M of (base + i + j).

    Written out by distinct factors this is (base+2)^1 (base+3)^2 ... with
    exponents rising to min(m, M), flat, then falling back to 1.
    """
    out: Scalar = 1
    for j in range(2, m + M + 1):
        e = min(j - 1, m, M, m + M + 1 - j)
        if e > 0:
            out *= (base + j) ** e
    return normalize(out)


def _mM(x: int, y: int) -> tuple[int, int]:
    return min(x, y), max(x, y)


def p_sum(y: int, k: int, z: Scalar, l: Scalar) -> Scalar:
    P = pochhammer
    total: Scalar = 0
    for i in range(1, k + 2):
        term = (
            P(l - k + i, k - i + 1) * P(l + y + 1, i - 1)
            * P(z + 1, i - 1) * P(z + i + 1, k - i + 1)
        )
        total += Fraction((-1) ** (i - 1), factorial(i - 1) * factorial(k - i + 1)) * term
    return normalize(total)


def q_sum(y: int, k: int, z: Scalar, l: Scalar) -> Scalar:
    P = pochhammer
    total: Scalar = 0
    for i in range(1, k + 2):
        term = (
            P(l - k + i, k - i + 1) * P(l + y + 1, i - 1)
            * P(l - k - z, i - 1) * P(l - k - z + i, k - i + 1)
        )
        total += Fraction((-1) ** (i - 1), factorial(i - 1) * factorial(k - i + 1)) * term
    return normalize(total)


def _linear_part(x: int, y: int, k: int, z: Scalar, l: Scalar) -> Scalar:
    m, M = _mM(x, y)
    return pochhammer(l + 1, y) * pochhammer(z + k - l + 1, x) * staircase_product(z + k, m, M)


def p_poly(x: int, y: int, k: int, z: Scalar, l: Scalar) -> Scalar:
    return normalize(_linear_part(x, y, k, z, l) * p_sum(y, k, z, l))


def d_factor(y: int, k: int, z: Scalar) -> Scalar:
    """Ramp-plateau-ramp product in z, with the two degenerate branches for small y."""
    nu = min(y - 1, k)
    if nu >= 1:
        out: Scalar = 1
        for j in range(1, y + k - 1):
            e = min(j, nu, y + k - 1 - j)
            out *= (z + 1 + j) ** e
        return normalize(out)
    if nu == 0:
        return 1
    return normalize(Fraction(1) / pochhammer(z + 1, k))


def q_poly(x: int, y: int, k: int, z: Scalar, l: Scalar) -> Scalar:
    return normalize(d_factor(y, k, z) * _linear_part(x, y, k, z, l) * q_sum(y, k, z, l))


def _check_xyzkl(x, y, z, k, l):
    if min(x, y, z, k) < 0:
        raise FormulaError("x, y, z, k must be nonnegative")
    if not 0 <= l <= z + k:
        raise FormulaError(f"l={l} outside [0, {z + k}]")


def count_h_kl(x: int, y: int, z: int, k: int, l: int) -> int:
    """Tilings of the two-notch hexagon with the side-k notch just above the east corner."""
    _check_xyzkl(x, y, z, k, l)
    p00 = p_poly(x, y, k, 0, 0)
    if p00 == 0:
        raise FormulaError("p(0,0) vanished")
    return normalize(macmahon(x, y, k) * Fraction(p_poly(x, y, k, z, l)) / p00)


def count_h_prime_kl(x: int, y: int, z: int, k: int, l: int) -> int:
    """Tilings of the two-notch hexagon with the side-k notch just below the north-east corner."""
    _check_xyzkl(x, y, z, k, l)
    q00 = q_poly(x, y, k, 0, 0)
    if q00 == 0:
        raise FormulaError("q(0,0) vanished")
    return normalize(comb(x + k, k) * Fraction(q_poly(x, y, k, z, l)) / q00)


# ---------------------------------------------------------------------------
# hypergeometric series


def hypergeometric(upper: Sequence[Scalar], lower: Sequence[Scalar], arg: Scalar = 1) -> Scalar:
    """Terminating pFq.  Some upper parameter must be a nonpositive integer."""
    stops = [-int(a) for a in upper if a == int(a) and a <= 0]
    if not stops:
        raise FormulaError("series does not terminate: no nonpositive integer upper parameter")
    n = min(stops)
    total: Scalar = 0
    term: Scalar = Fraction(1)
    for j in range(n + 1):
        total += term
        if j == n:
            break
        num = prod((a + j for a in upper), start=Fraction(1)) * arg
        den = prod((b + j for b in lower), start=1) * (j + 1)
        if den == 0:
            raise FormulaError(f"lower parameter hits a pole at term {j + 1}")
        term = term * num / den
    return normalize(total)


def hyp2f1_terminating(minus_k: int, b: Scalar, c: Scalar) -> Scalar:
    """2F1[-k, b; c; 1] summed term by term; ``minus_k`` must be a nonpositive integer."""
    if minus_k > 0:
        raise FormulaError("first upper parameter must be a nonpositive integer")
    return hypergeometric([minus_k, b], [c], 1)


def verify_gauss(k: int, y: int, z: int) -> Scalar:
    """2F1[-k, k+y; z; 1] - (z-y-k)_k / (z)_k; zero for z >= 1."""
    if z < 1:
        raise FormulaError("need z >= 1 so that (z)_k does not vanish")
    lhs = hyp2f1_terminating(-k, k + y, z)
    rhs = Fraction(pochhammer(z - y - k, k)) / pochhammer(z, k)
    return normalize(lhs - rhs)


# ---------------------------------------------------------------------------


def count_by_shape(family: str, params: tuple) -> int:
    """Closed-form count for a family returned by :func:`lattice.identify_shape`."""
    if family == "hexagon":
        return macmahon(*params)
    if family == "t":
        m, n, xs = params
        return clp_formula(m, n, xs)
    if family == "hkl":
        return count_h_kl(*params)
    if family == "hkl_prime":
        return count_h_prime_kl(*params)
    raise FormulaError(f"no closed form for family {family!r}")


_SHAPE_CACHE: dict[frozenset, tuple] = {}


def closed_form_count(region) -> tuple[int, str]:
    """Count a region by a closed formula when its shape is recognized, else by counting.

    Returns ``(value, source)`` where source names the formula family or is
    ``"count"``.
    """
    from .lattice import count_tilings, identify_shape

    if not region.balanced:
        return 0, "unbalanced"
    key = region.normalized().cells
    if key not in _SHAPE_CACHE:
        shape = identify_shape(region)
        if shape is not None:
            _SHAPE_CACHE[key] = (count_by_shape(*shape), shape[0])
        else:
            _SHAPE_CACHE[key] = (count_tilings(region), "count")
    return _SHAPE_CACHE[key]


def _dent_condensation(x: int, y: int, z: int, k: int, dents):
    """H* with its strings, the marked cells in boundary order, and the condensation matrix."""
    from .lattice import boundary_order, h_star_strings
    from .pfaffian import SkewMatrix

    star = h_star_strings(x, y, z, k, dents)
    R = star.region
    a_cells, b_cells = list(star["a"]), list(star["b"])
    is_dent = set(a_cells)
    order = boundary_order(R, a_cells + b_cells, start=b_cells[0])
    sources: dict[str, int] = {}

    def entry(i, j):
        ci, cj = order[i], order[j]
        if (ci in is_dent) == (cj in is_dent):
            if R.minus([ci, cj]).balanced:
                raise FormulaError("same-class deletion unexpectedly balanced")
            sources["unbalanced"] = sources.get("unbalanced", 0) + 1
            return 0
        val, src = closed_form_count(R.minus([ci, cj]))
        sources[src] = sources.get(src, 0) + 1
        return val

    A = SkewMatrix.from_upper(2 * k, entry)
    return R, order, is_dent, A, sources


def theorem_4_1_assembly(x: int, y: int, z: int, k: int, dents, with_sources: bool = False):
    """Both sides of the k-dent Pfaffian identity.

    lhs counts the dented hexagon directly.  rhs is Pf[M(H* minus {c_i, c_j})]
    divided by M(H*)^(k-1), where the c's are the dents and string cells in
    boundary order; entries come from closed forms where the reduced region is
    recognized, pairs of two dents or two string cells are 0 by balance.
    """
    from .lattice import count_tilings, h_k_region
    from .pfaffian import pfaffian

    dents = [tuple(d) for d in dents]
    lhs = count_tilings(h_k_region(x, y, z, k, dents))
    R, _, _, A, sources = _dent_condensation(x, y, z, k, dents)
    whole, src = closed_form_count(R)
    sources["whole:" + src] = 1
    if whole == 0:
        raise FormulaError("M(H*) vanished")
    rhs = normalize(Fraction(pfaffian(A)) / Fraction(whole) ** (k - 1))
    if with_sources:
        return lhs, rhs, sources
    return lhs, rhs


def dent_block_form(x: int, y: int, z: int, k: int, dents) -> dict:
    """The condensation matrix of the dent identity brought to block form.

    Marked cells are labelled ``a1.., b1..`` in boundary order from the first
    string cell.  Returns the labels in that order, the k x k block ``B``
    (rows a's, columns b's), the reordering sign, the sign pattern of B
    relative to the unsigned counts, and both Pf(A) and sign * Pf(block).
    """
    from .condensation import block_reorder
    from .pfaffian import pfaffian, pfaffian_block

    dents = [tuple(d) for d in dents]
    R, order, is_dent, A, _ = _dent_condensation(x, y, z, k, dents)
    labels, na, nb = [], 0, 0
    for c in order:
        if c in is_dent:
            na += 1
            labels.append(f"a{na}")
        else:
            nb += 1
            labels.append(f"b{nb}")
    classes = ["a" if c in is_dent else "b" for c in order]
    B, sign = block_reorder(A, classes, row_class="a")
    rows = [c for c in order if c in is_dent]
    cols = [c for c in order if c not in is_dent]
    pattern = []
    for i, ci in enumerate(rows):
        row = []
        for j, cj in enumerate(cols):
            m = closed_form_count(R.minus([ci, cj]))[0]
            row.append(0 if m == 0 else (1 if B[i][j] == m else (-1 if B[i][j] == -m else None)))
        pattern.append(row)
    return {
        "labels": labels,
        "B": B,
        "sign": sign,
        "pattern": pattern,
        "pf": pfaffian(A),
        "pf_block": normalize(sign * pfaffian_block(B)),
    }
