from __future__ import annotations

import random

from hypothesis import assume, given
from hypothesis import strategies as st

from graphcond.condensation import block_reorder, permutation_sign, verify_corollary_2_4, verify_theorem_2_1
from graphcond.corpus import pick_bipartite_blocks, pick_cyclic, random_embedded_graph
from graphcond.formulas import (
    count_h_kl,
    count_h_prime_kl,
    eisenkolbl_bracket,
    eisenkolbl_bracket_det,
    eisenkolbl_formula,
    macmahon,
    p_sum,
    q_sum,
)
from graphcond.lattice import count_tilings, eisenkolbl_region, transform_region
from graphcond.matching import count_matchings_fast, count_matchings_oracle
from graphcond.pfaffian import SkewMatrix, block_skew, determinant, pfaffian, pfaffian_block, pfaffian_expand_row, swap_pair

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def skew_matrices(draw, max_half=4):
    n = 2 * draw(st.integers(min_value=1, max_value=max_half))
    upper = {(i, j): draw(small_ints) for i in range(n) for j in range(i + 1, n)}
    return SkewMatrix.from_upper(n, lambda i, j: upper[i, j])


@given(skew_matrices())
def test_pfaffian_squared_is_determinant(A):
    assert pfaffian(A) ** 2 == determinant(A.tolist())


@given(skew_matrices(), st.data())
def test_row_expansion_agrees(A, data):
    row = data.draw(st.integers(min_value=0, max_value=A.n - 1))
    assert pfaffian_expand_row(A, row) == pfaffian(A)


@given(skew_matrices(), st.data())
def test_swap_flips_sign(A, data):
    i = data.draw(st.integers(min_value=0, max_value=A.n - 1))
    j = data.draw(st.integers(min_value=0, max_value=A.n - 1).filter(lambda x: x != i))
    B, s = swap_pair(A, i, j)
    assert pfaffian(B) == s * pfaffian(A) == -pfaffian(A)


@given(skew_matrices(), st.permutations(range(8)))
def test_relabelling_multiplies_by_permutation_sign(A, perm):
    perm = [p for p in perm if p < A.n]
    B = SkewMatrix([[A[perm[r], perm[c]] for c in range(A.n)] for r in range(A.n)])
    assert pfaffian(B) == permutation_sign(perm) * pfaffian(A)


@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=4, max_size=4), st.integers(1, 4))
def test_block_pfaffian(rows, k):
    B = [r[:k] for r in rows[:k]]
    assert pfaffian_block(B) == pfaffian(block_skew(B))
    assert pfaffian_block(B) == (-1) ** (k * (k - 1) // 2) * determinant(B)
    classes = ["r"] * k + ["c"] * k
    B2, sign = block_reorder(block_skew(B), classes)
    assert B2 == B and sign == 1


@given(st.integers(min_value=0, max_value=10**9))
def test_fast_counter_matches_oracle(seed):
    eg = random_embedded_graph(random.Random(seed), max_vertices=14)
    for backend in ("numpy", "python"):
        assert count_matchings_fast(eg.graph, backend=backend) == count_matchings_oracle(eg.graph)


@given(st.integers(min_value=0, max_value=10**9), st.integers(1, 3))
def test_pfaffian_identity_on_random_graphs(seed, k):
    rng = random.Random(seed)
    eg = random_embedded_graph(rng, max_vertices=14)
    m = pick_cyclic(eg, rng, 2 * k)
    assume(m is not None)
    assert verify_theorem_2_1(eg.graph, m) == 0
    # any rotation or reversal of the cyclic order is an equally valid input
    s = rng.randrange(2 * k)
    assert verify_theorem_2_1(eg.graph, (m[s:] + m[:s])[::-1]) == 0


@given(st.integers(min_value=0, max_value=10**9), st.integers(1, 3))
def test_determinant_identity_on_random_graphs(seed, k):
    rng = random.Random(seed)
    eg = random_embedded_graph(rng, lattice="grid", max_vertices=14)
    parts = eg.graph.bipartition()
    assume(len(parts[0]) == len(parts[1]))
    picked = pick_bipartite_blocks(eg, rng, k)
    assume(picked is not None)
    assert verify_corollary_2_4(eg.graph, *picked) == 0


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_lattice_symmetries_preserve_counts(a, b, c, data):
    r = data.draw(st.integers(0, a + 2))
    s = data.draw(st.integers(0, b + 2))
    t = data.draw(st.integers(0, c + 2))
    R = eisenkolbl_region(a, b, c, r, s, t)
    index = data.draw(st.integers(0, 11))
    assert count_tilings(transform_region(R, index)) == count_tilings(R) == eisenkolbl_formula(a, b, c, r, s, t)


@given(st.integers(0, 6), st.integers(0, 5), st.integers(-8, 8), st.integers(-8, 8))
def test_q_is_p_under_substitution(y, k, z, l):
    assert q_sum(y, k, z, l) == p_sum(y, k, l - k - 1 - z, l)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.data())
def test_bracket_and_determinant_agree(a, b, c, data):
    r = data.draw(st.integers(1, a + 1))
    s = data.draw(st.integers(1, b + 1))
    t = data.draw(st.integers(1, c + 1))
    assert eisenkolbl_bracket(a, b, c, r, s, t) == eisenkolbl_bracket_det(a, b, c, r, s, t)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 4), st.data())
def test_formulas_are_nonnegative_integers(x, y, z, k, data):
    l = data.draw(st.integers(0, z + k))
    for v in (count_h_kl(x, y, z, k, l), count_h_prime_kl(x, y, z, k, l), macmahon(x, y, z)):
        assert isinstance(v, int) and v >= 0
    r = data.draw(st.integers(0, x + 2))
    s = data.draw(st.integers(0, y + 2))
    t = data.draw(st.integers(0, z + 2))
    v = eisenkolbl_formula(x, y, z, r, s, t)
    assert isinstance(v, int) and v >= 0
