"""Verification sweeps shared by the command line and the test suite.

A suite is a function returning a list of :class:`Outcome`, one per instance,
sorted by instance key.  Randomized suites draw everything from a single
``random.Random(seed)``, so a seed reproduces a run exactly.  Each outcome
carries a JSON-ready ``replay`` record that rebuilds the failing instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .condensation import (
    block_reorder,
    condensation_matrix,
    kuo_bipartite_4pt,
    verify_corollary_2_4,
    verify_kuo_4pt,
    verify_kuo_unbalanced,
    verify_prop_2_2,
    verify_theorem_2_1,
)
from .corpus import (
    add_pending_edge,
    pick_bipartite_blocks,
    pick_cyclic,
    pick_with_pending,
    random_embedded_graph,
)
from .exact import normalize, scalar_to_str
from .formulas import (
    clp_formula,
    closed_form_count,
    count_h_kl,
    count_h_prime_kl,
    eisenkolbl_bracket,
    eisenkolbl_bracket_det,
    eisenkolbl_formula,
    macmahon,
    theorem_4_1_assembly,
    verify_gauss,
)
from .graph import _jsonable, graph_to_json
from .lattice import (
    DOWN,
    UP,
    RegionError,
    augmented_region,
    count_tilings,
    dual_graph,
    eisenkolbl_region,
    f_region,
    h_kl_region,
    h_prime_kl_region,
    hexagon,
    t_region,
)
from .matching import count_matchings_fast, count_matchings_oracle
from .pfaffian import pfaffian, pfaffian_block

__all__ = ["Outcome", "SUITES", "run_suite", "summarize"]


@dataclass(frozen=True)
class Outcome:
    key: tuple
    ok: bool
    detail: str
    replay: dict = field(default_factory=dict, compare=False)


def _graph_replay(graph, marked, **extra) -> dict:
    out = {"graph": graph_to_json(graph), "marked": [_jsonable(v) for v in marked]}
    out.update(extra)
    return out


def _res(r) -> str:
    return scalar_to_str(normalize(r))


# ---------------------------------------------------------------------------
# randomized graph suites


def suite_kuo4(seed: int = 0, trials: int = 200, **_) -> list[Outcome]:
    """Four-vertex condensation on random embedded graphs, general and bipartite forms."""
    rng = random.Random(seed)
    out = []
    trial = 0
    while len(out) < trials:
        eg = random_embedded_graph(rng)
        m = pick_cyclic(eg, rng, 4)
        trial += 1
        if m is None:
            continue
        g = eg.graph
        res = verify_kuo_4pt(g, *m)
        ok = res["three_term"] == 0 and res["pfaffian"] == 0
        detail = f"three_term={_res(res['three_term'])} pfaffian={_res(res['pfaffian'])}"
        parts = g.bipartition()
        if parts is not None and len(parts[0]) == len(parts[1]):
            V1 = parts[0]
            a, b, c, d = m
            if (a in V1) == (c in V1) and (b in V1) == (d in V1) and (a in V1) != (b in V1):
                r2 = kuo_bipartite_4pt(g, a, b, c, d)
                ok = ok and r2 == 0
                detail += f" bipartite={_res(r2)}"
        out.append(Outcome(("kuo4", trial), ok, detail, _graph_replay(g, m, lattice=eg.lattice)))
    return out


def _thm21_instances(rng: random.Random, trials: int, ks, pending_every: int = 10):
    """Yields (trial, k, graph, marked, pending) with at least one pending-edge instance per k."""
    for k in ks:
        made = 0
        while made < trials:
            eg = random_embedded_graph(rng)
            pending = made % pending_every == 0
            if pending:
                eg, q, leaf = add_pending_edge(eg, rng)
                m = pick_with_pending(eg, rng, 2 * k, q, leaf)
            else:
                m = pick_cyclic(eg, rng, 2 * k)
            if m is None:
                continue
            yield made, k, eg, m, pending
            made += 1


def suite_thm21(seed: int = 0, trials: int = 200, k: int | None = None, **_) -> list[Outcome]:
    """The 2k-point Pfaffian identity with oracle-counted entries."""
    rng = random.Random(seed)
    ks = [k] if k else [1, 2, 3]
    out = []
    for t, kk, eg, m, pending in _thm21_instances(rng, trials, ks):
        r = verify_theorem_2_1(eg.graph, m)
        out.append(
            Outcome(
                ("thm21", kk, t),
                r == 0,
                f"k={kk} pending={pending} residual={_res(r)}",
                _graph_replay(eg.graph, m, k=kk),
            )
        )
    return out


def suite_prop22(seed: int = 0, trials: int = 200, k: int | None = None, **_) -> list[Outcome]:
    """The pairing identity for a_1 against the other marked vertices."""
    rng = random.Random(seed)
    ks = [k] if k else [1, 2, 3]
    out = []
    for t, kk, eg, m, pending in _thm21_instances(rng, trials, ks):
        lhs, rhs = verify_prop_2_2(eg.graph, m)
        out.append(
            Outcome(
                ("prop22", kk, t),
                lhs == rhs,
                f"k={kk} pending={pending} lhs={_res(lhs)} rhs={_res(rhs)}",
                _graph_replay(eg.graph, m, k=kk),
            )
        )
    return out


def _block_sign_check(graph, marked, parts) -> tuple[bool, str]:
    """Pf(A) against sign * Pf(block form) after reordering the marked vertices by colour."""
    A = condensation_matrix(graph, marked, validate=False)
    V1 = parts[0]
    classes = [v in V1 for v in marked]
    B, sign = block_reorder(A, classes)
    direct = pfaffian(A)
    via_block = sign * pfaffian_block(B)
    return direct == via_block, f"pf={_res(direct)} block={_res(via_block)}"


def suite_cor24(seed: int = 0, trials: int = 200, k: int | None = None, **_) -> list[Outcome]:
    """The determinant form on balanced bipartite graphs, plus block-form sign bookkeeping.

    Each instance also reorders the condensation matrix of a random (possibly
    interleaved) choice of outer vertices into block form and compares the
    signed determinant with the direct Pfaffian.
    """
    rng = random.Random(seed)
    ks = [k] if k else [1, 2, 3]
    out = []
    for kk in ks:
        made = 0
        while made < trials:
            eg = random_embedded_graph(rng, lattice=rng.choice(["grid", "honeycomb"]))
            g = eg.graph
            parts = g.bipartition()
            if parts is None or len(parts[0]) != len(parts[1]):
                continue
            ab = pick_bipartite_blocks(eg, rng, kk)
            if ab is None:
                continue
            a, b = ab
            r = verify_corollary_2_4(g, a, b)
            ok = r == 0
            detail = f"k={kk} residual={_res(r)}"
            ok_blk, d_blk = _block_sign_check(g, a + b[::-1], parts)
            ok, detail = ok and ok_blk, detail + " ordered " + d_blk
            mixed = _pick_mixed(eg, rng, kk, parts)
            if mixed is not None:
                ok_mix, d_mix = _block_sign_check(g, mixed, parts)
                ok, detail = ok and ok_mix, detail + " interleaved " + d_mix
            out.append(
                Outcome(("cor24", kk, made), ok, detail, _graph_replay(g, a + b[::-1], k=kk))
            )
            made += 1
    return out


def _pick_mixed(eg, rng, k, parts, tries: int = 50):
    V1 = parts[0]
    for _ in range(tries):
        m = pick_cyclic(eg, rng, 2 * k)
        if m is None:
            return None
        if sum(v in V1 for v in m) == k:
            return m
    return None


def suite_kuo_unbalanced(seed: int = 0, trials: int = 100, **_) -> list[Outcome]:
    """The three-term identity for bipartite graphs with one extra vertex in a class."""
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        eg = random_embedded_graph(rng, lattice=rng.choice(["grid", "honeycomb"]))
        g = eg.graph
        parts = g.bipartition()
        if parts is None or abs(len(parts[0]) - len(parts[1])) != 1:
            continue
        big = parts[0] if len(parts[0]) > len(parts[1]) else parts[1]
        found = None
        for _ in range(50):
            m = pick_cyclic(eg, rng, 4)
            if m is None:
                break
            for s in range(4):
                r = m[s:] + m[:s]
                if r[0] in big and r[1] in big and r[2] in big and r[3] not in big:
                    found = r
                    break
            if found:
                break
        if found is None:
            continue
        res = verify_kuo_unbalanced(g, *found)
        out.append(
            Outcome(("kuo_unbalanced", len(out)), res == 0, f"residual={_res(res)}", _graph_replay(g, found))
        )
    return out


def suite_counters(seed: int = 0, trials: int = 200, **_) -> list[Outcome]:
    """Oracle and frontier counts on random graphs and on some of their vertex deletions."""
    rng = random.Random(seed)
    out = []
    for t in range(trials):
        eg = random_embedded_graph(rng)
        if t % 4 == 0:
            eg, _, _ = add_pending_edge(eg, rng)
        g = eg.graph
        graphs = [g]
        m = pick_cyclic(eg, rng, 2)
        if m is not None:
            from .graph import delete_vertices

            graphs.append(delete_vertices(g, m))
        ok, vals = True, []
        for h in graphs:
            a, b = count_matchings_oracle(h), count_matchings_fast(h)
            ok = ok and a == b
            vals.append(f"{_res(a)}/{_res(b)}")
        out.append(Outcome(("counters", t), ok, "oracle/fast " + " ".join(vals), _graph_replay(g, [])))
    return out


# ---------------------------------------------------------------------------
# lattice and formula suites


def suite_macmahon(max_size: int = 3, **_) -> list[Outcome]:
    out = []
    for a, b, c in itertools.product(range(max_size + 1), repeat=3):
        f, o = macmahon(a, b, c), count_tilings(hexagon(a, b, c))
        out.append(Outcome(("macmahon", a, b, c), f == o, f"formula={f} oracle={o}", {"a": a, "b": b, "c": c}))
    return out


def _increasing(m: int, n: int):
    return itertools.combinations(range(1, m + n + 1), n)


def suite_clp(max_size: int = 8, **_) -> list[Outcome]:
    """All trapezoids with m + n <= max_size and every choice of removed top cells."""
    out = []
    for total in range(max_size + 1):
        for n in range(total + 1):
            m = total - n
            for xs in _increasing(m, n):
                f, o = clp_formula(m, n, xs), count_tilings(t_region(m, n, xs))
                out.append(
                    Outcome(("clp", m, n, xs), f == o, f"formula={f} oracle={o}", {"m": m, "n": n, "xs": list(xs)})
                )
    return out


EISENKOLBL_SHAPES = ((1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 2, 1))


def suite_eisenkolbl(max_size: int | None = None, shapes=None, **_) -> list[Outcome]:
    """Dent formula against the oracle, and the bracket against its determinant form.

    ``shapes`` defaults to every (a, b, c) with entries in [0, max_size] when
    max_size is given, else to a fixed list of four shapes.
    """
    if shapes is None:
        if max_size is None:
            shapes = EISENKOLBL_SHAPES
        else:
            shapes = list(itertools.product(range(max_size + 1), repeat=3))
    out = []
    for a, b, c in shapes:
        for r, s, t in itertools.product(range(a + 3), range(b + 3), range(c + 3)):
            f = eisenkolbl_formula(a, b, c, r, s, t)
            o = count_tilings(eisenkolbl_region(a, b, c, r, s, t))
            ok = f == o
            detail = f"formula={f} oracle={o}"
            if 0 not in (r, s, t, a + 2 - r, b + 2 - s, c + 2 - t):
                br, det = eisenkolbl_bracket(a, b, c, r, s, t), eisenkolbl_bracket_det(a, b, c, r, s, t)
                ok = ok and br == det
                detail += f" bracket={br} det={_res(det)}"
            out.append(
                Outcome(
                    ("eisenkolbl", a, b, c, r, s, t), ok, detail,
                    {"family": "eisenkolbl", "params": dict(a=a, b=b, c=c, r=r, s=s, t=t)},
                )
            )
    return out


def dent_placements(x: int, y: int, z: int, k: int):
    """Every set of k distinct up cells on the S, NE and NW sides of the k-dent hexagon."""
    slots = (
        [("S", i) for i in range(x + k)]
        + [("NE", i) for i in range(y + k)]
        + [("NW", i) for i in range(z + k)]
    )
    for dents in itertools.combinations(slots, k):
        yield list(dents)


def suite_thm41(max_size: int = 2, kmax: int = 3, **_) -> list[Outcome]:
    """Dented hexagon count against the Pfaffian of closed-form entries, for all placements.

    Placements where two sides share their corner cell and both dents land
    on it are not regions and are skipped.
    """
    out = []
    for k in range(1, kmax + 1):
        for x, y, z in itertools.product(range(max_size + 1), repeat=3):
            for dents in dent_placements(x, y, z, k):
                try:
                    lhs, rhs = theorem_4_1_assembly(x, y, z, k, dents)
                except RegionError:
                    continue
                out.append(
                    Outcome(
                        ("thm41", k, x, y, z, tuple(dents)), lhs == rhs,
                        f"lhs={lhs} rhs={_res(rhs)}",
                        {"family": "hk", "params": {"x": x, "y": y, "z": z, "k": k, "dents": dents}},
                    )
                )
    return out


def suite_prop42(max_size: int = 3, kmax: int = 2, **_) -> list[Outcome]:
    """Both two-notch formulas against the oracle for every valid l."""
    out = []
    for x, y, z in itertools.product(range(max_size + 1), repeat=3):
        for k in range(kmax + 1):
            for l in range(z + k + 1):
                for name, build, formula in (
                    ("hkl", h_kl_region, count_h_kl),
                    ("hkl_prime", h_prime_kl_region, count_h_prime_kl),
                ):
                    f, o = formula(x, y, z, k, l), count_tilings(build(x, y, z, k, l))
                    out.append(
                        Outcome(
                            (name, x, y, z, k, l), f == o, f"formula={f} oracle={o}",
                            {"family": name, "params": dict(x=x, y=y, z=z, k=k, l=l)},
                        )
                    )
    return out


def _f_count(x, y, z, l, formula: bool):
    """F-region count, 0 when y < 0 (the term is absent from the recurrence)."""
    if y < 0:
        return 0
    R = f_region(x, y, z, l)
    return closed_form_count(R)[0] if formula else count_tilings(R)


def suite_recurrence48(max_size: int = 3, kmax: int = 2, **_) -> list[Outcome]:
    """The two-notch recurrence, once from formulas and once from oracle counts."""
    out = []
    for x, z, l in itertools.product(range(1, max_size + 1), repeat=3):
        for y in range(max_size + 1):
            for k in range(kmax + 1):
                if l > z + k:
                    continue
                parts = []
                ok = True
                for formula in (True, False):
                    H = count_h_kl if formula else (lambda *p: count_tilings(h_kl_region(*p)))
                    lhs = H(x, y, z, k, l) * _f_count(x - 1, y, z + k, l - 1, formula)
                    rhs = (
                        H(x - 1, y + 1, z, k, l - 1) * _f_count(x, y - 1, z + k, l, formula)
                        + H(x, y, z - 1, k, l - 1) * _f_count(x - 1, y, z + k + 1, l, formula)
                    )
                    ok = ok and lhs == rhs
                    parts.append(f"{'formula' if formula else 'oracle'}: {lhs}={rhs}")
                out.append(
                    Outcome(("recurrence48", x, y, z, k, l), ok, " ".join(parts), dict(x=x, y=y, z=z, k=k, l=l))
                )
    return out


def suite_augmented(max_size: int = 3, kmax: int = 2, **_) -> list[Outcome]:
    """The unbalanced three-term identity on the augmented two-notch regions."""
    out = []
    for x, z, l in itertools.product(range(1, max_size + 1), repeat=3):
        for y in range(max_size + 1):
            for k in range(kmax + 1):
                if l > z + k:
                    continue
                mr = augmented_region(x, y, z, k, l)
                R = mr.region
                g = dual_graph(R)
                ups = [c for c in R.cells if c.orient == UP]
                downs = [c for c in R.cells if c.orient == DOWN]
                # a notch can cut the dual graph apart; faces are then undefined
                r = verify_kuo_unbalanced(
                    g, mr["a"], mr["b"], mr["c"], mr["d"], counter="fast",
                    validate=g.is_connected(), parts=(ups, downs),
                )
                out.append(
                    Outcome(
                        ("augmented", x, y, z, k, l), r == 0, f"residual={_res(r)}",
                        {"family": "augmented", "params": dict(x=x, y=y, z=z, k=k, l=l)},
                    )
                )
    return out


def suite_gauss(kmax: int = 12, zmax: int = 12, ymax: int | None = None, **_) -> list[Outcome]:
    ymax = kmax if ymax is None else ymax
    out = []
    for k in range(kmax + 1):
        for y in range(ymax + 1):
            for z in range(1, zmax + 1):
                r = verify_gauss(k, y, z)
                out.append(Outcome(("gauss", k, y, z), r == 0, f"residual={_res(r)}", dict(k=k, y=y, z=z)))
    return out


SUITES: dict[str, Callable[..., list[Outcome]]] = {
    "kuo4": suite_kuo4,
    "thm21": suite_thm21,
    "prop22": suite_prop22,
    "cor24": suite_cor24,
    "kuo_unbalanced": suite_kuo_unbalanced,
    "counters": suite_counters,
    "macmahon": suite_macmahon,
    "clp": suite_clp,
    "eisenkolbl": suite_eisenkolbl,
    "thm41": suite_thm41,
    "prop42": suite_prop42,
    "recurrence48": suite_recurrence48,
    "augmented": suite_augmented,
    "gauss": suite_gauss,
}


def run_suite(name: str, **options: Any) -> list[Outcome]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    opts = {k: v for k, v in options.items() if v is not None}
    return sorted(SUITES[name](**opts), key=lambda o: o.key)


def summarize(outcomes: list[Outcome]) -> tuple[int, int]:
    """(passed, failed)."""
    passed = sum(o.ok for o in outcomes)
    return passed, len(outcomes) - passed
