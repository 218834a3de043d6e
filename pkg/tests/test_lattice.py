from __future__ import annotations

import itertools
import xml.dom.minidom

import pytest

from graphcond.condensation import verify_kuo_unbalanced
from graphcond.lattice import (
    DOWN,
    UP,
    Region,
    RegionError,
    TriCell,
    augmented_region,
    boundary_order,
    canonical_key,
    count_tilings,
    dual_graph,
    eisenkolbl_region,
    f_region,
    h_k_region,
    h_kl_region,
    h_prime_kl_region,
    h_star_strings,
    hexagon,
    hstar_region,
    identify_shape,
    region_from_spec,
    remove_forced,
    render,
    t_region,
    transform_region,
)

INTERLEAVED_DENTS = [("S", 2), ("S", 4), ("S", 5), ("S", 6), ("NE", 1), ("NW", 2), ("NW", 3)]


def test_cell_neighbours_are_mutual():
    c = TriCell(3, 2, UP)
    for d in c.neighbors():
        assert d.orient == DOWN and c in d.neighbors()


def test_hexagon_cells_and_counts():
    assert len(hexagon(1, 1, 1)) == 6
    assert len(hexagon(2, 2, 2)) == 24
    assert hexagon(2, 3, 1).balanced
    assert count_tilings(hexagon(1, 1, 1)) == 2
    assert count_tilings(hexagon(2, 2, 2)) == 20
    assert count_tilings(hexagon(2, 3, 1)) == 10
    assert count_tilings(hexagon(0, 3, 2)) == 1


def test_unbalanced_and_isolated():
    R = hexagon(1, 1, 1).minus([sorted(c for c in hexagon(1, 1, 1) if c.orient == UP)[0]])
    assert not R.balanced and count_tilings(R) == 0
    assert count_tilings(Region([TriCell(0, 0, UP), TriCell(5, 5, DOWN)])) == 0


def test_disconnected_region_multiplies():
    R = hexagon(1, 1, 1).plus(hexagon(1, 1, 1).translated(10, 0).cells)
    assert count_tilings(R) == 4


def test_t_region_validation():
    with pytest.raises(RegionError):
        t_region(2, 2, [3, 1])
    with pytest.raises(RegionError):
        t_region(2, 2, [1, 5])
    with pytest.raises(RegionError):
        t_region(2, 2, [1])


def test_t_region_figure_instance():
    assert count_tilings(t_region(6, 5, [1, 3, 4, 7, 10])) == 1701


def test_eisenkolbl_region_is_three_dent_hexagon():
    for r, s, t in itertools.product(range(4), range(4), range(4)):
        E = eisenkolbl_region(1, 1, 1, r, s, t)
        H = h_k_region(1, 1, 1, 3, [("S", r), ("NE", s), ("NW", t)])
        assert E.cells == H.cells


def test_eisenkolbl_rotation_symmetry():
    # (a, b, c, r, s, t) -> (b, c, a, s, t, r) is a lattice rotation of the region
    for a, b, c in [(1, 1, 2), (2, 1, 0)]:
        for r, s, t in itertools.product(range(a + 3), range(b + 3), range(c + 3)):
            R1 = eisenkolbl_region(a, b, c, r, s, t)
            R2 = eisenkolbl_region(b, c, a, s, t, r)
            assert canonical_key(R1) == canonical_key(R2)
            assert count_tilings(R1) == count_tilings(R2)


def test_remove_forced_keeps_count():
    for params in [(1, 1, 1, 1, 0), (2, 1, 2, 2, 0), (0, 2, 1, 2, 1), (2, 2, 0, 1, 1)]:
        R = h_kl_region(*params)
        assert count_tilings(remove_forced(R)) == count_tilings(R)


def test_transforms_preserve_counts():
    R = t_region(3, 2, [2, 4])
    n = count_tilings(R)
    for i in range(12):
        assert count_tilings(transform_region(R, i)) == n


def test_identify_shape():
    assert identify_shape(hexagon(2, 1, 3)) == ("hexagon", (2, 1, 3))
    assert identify_shape(transform_region(hexagon(2, 1, 3), 7))[0] == "hexagon"
    assert identify_shape(t_region(3, 2, [2, 4]))[0] == "t"
    assert identify_shape(h_kl_region(2, 1, 2, 1, 2)) == ("hkl", (2, 1, 2, 1, 2))
    assert identify_shape(Region([TriCell(0, 0, UP), TriCell(3, 3, UP)])) is None


def test_hstar_reduces_to_larger_hexagon():
    for a, b, c in itertools.product(range(3), repeat=3):
        assert identify_shape(hstar_region(a, b, c).region) == ("hexagon", (a + 1, b + 1, c + 1))


def test_f_regions_are_recognized():
    for x, y, z in itertools.product(range(3), repeat=3):
        for l in range(z + 1):
            fam = identify_shape(f_region(x, y, z, l))
            assert fam is not None and fam[0] in ("t", "hexagon")


def test_boundary_order_reproduces_interleaving_example():
    star = h_star_strings(1, 1, 1, 7, INTERLEAVED_DENTS)
    a, b = list(star["a"]), list(star["b"])
    order = boundary_order(star.region, a + b, start=b[0])
    names = {}
    na = nb = 0
    for c in order:
        if c in a:
            na += 1
            names[c] = f"a{na}"
        else:
            nb += 1
            names[c] = f"b{nb}"
    assert " ".join(names[c] for c in order) == "b1 b2 a1 b3 b4 a2 a3 a4 b5 a5 b6 b7 a6 a7"


def test_h_star_strings_balance():
    star = h_star_strings(1, 1, 1, 7, INTERLEAVED_DENTS)
    assert star.region.balanced
    assert len(star["a"]) == len(star["b"]) == 7


def test_overlapping_dents_rejected():
    with pytest.raises(RegionError):
        h_k_region(1, 1, 1, 2, [("S", 0), ("S", 0)])
    with pytest.raises(RegionError):
        h_k_region(1, 1, 1, 1, [("E", 0)])
    with pytest.raises(RegionError):
        h_k_region(1, 1, 1, 1, [("S", 9)])


def _key(R):
    r = remove_forced(R)
    return "dead" if r.has_isolated_cell() else canonical_key(r)


@pytest.mark.parametrize("x,y,z,k,l", [(1, 0, 1, 0, 1), (1, 1, 1, 1, 1), (2, 1, 2, 1, 3), (2, 2, 1, 2, 2)])
def test_augmented_deletions_are_recurrence_regions(x, y, z, k, l):
    mr = augmented_region(x, y, z, k, l)
    R = mr.region
    a, b, c, d = (mr[q] for q in "abcd")
    assert _key(R.minus([b])) == _key(h_kl_region(x, y, z, k, l))
    assert _key(R.minus([a, c, d])) == _key(f_region(x - 1, y, z + k, l - 1))
    assert _key(R.minus([a])) == _key(h_kl_region(x - 1, y + 1, z, k, l - 1))
    assert _key(R.minus([c])) == _key(f_region(x - 1, y, z + k + 1, l))
    assert _key(R.minus([a, b, d])) == _key(h_kl_region(x, y, z - 1, k, l - 1))
    if y:
        assert _key(R.minus([b, c, d])) == _key(f_region(x, y - 1, z + k, l))
    g = dual_graph(R)
    ups = [q for q in R.cells if q.orient == UP]
    downs = [q for q in R.cells if q.orient == DOWN]
    assert verify_kuo_unbalanced(g, a, b, c, d, counter="fast", validate=g.is_connected(), parts=(ups, downs)) == 0


def test_augmented_dual_can_be_disconnected():
    g = dual_graph(augmented_region(1, 0, 1, 1, 2).region)
    assert not g.is_connected()


def test_prime_notch_differs():
    assert h_kl_region(2, 2, 1, 1, 1).cells != h_prime_kl_region(2, 2, 1, 1, 1).cells


def test_region_from_spec():
    assert count_tilings(region_from_spec({"family": "hexagon", "params": {"a": 1, "b": 1, "c": 1}}).region) == 2
    spec = {"family": "hk", "params": {"x": 1, "y": 1, "z": 1, "dents": [["S", 0]]}}
    assert region_from_spec(spec).region.cells == h_k_region(1, 1, 1, 1, [("S", 0)]).cells
    with pytest.raises(RegionError):
        region_from_spec({"family": "square", "params": {}})
    with pytest.raises(RegionError):
        region_from_spec({"family": "hexagon", "params": {"a": 1, "b": 1}})
    with pytest.raises(RegionError):
        region_from_spec({"family": "hexagon", "params": {"a": 1, "b": 1, "c": "x"}})


def test_render_ascii_and_svg():
    mr = region_from_spec({"family": "eisenkolbl", "params": dict(a=3, b=4, c=5, r=4, s=3, t=2)})
    txt = render(mr.region, "ascii", list(mr.marks.values()))
    assert txt.count("*") == 3
    assert txt == render(mr.region, "ascii", list(mr.marks.values()))
    svg = render(mr.region, "svg", list(mr.marks.values()))
    doc = xml.dom.minidom.parseString(svg)
    assert len(doc.getElementsByTagName("polygon")) == len(mr.region) + 3
    assert svg == render(mr.region, "svg", list(mr.marks.values()))
    with pytest.raises(ValueError):
        render(mr.region, "png")
