from hypothesis import given, strategies as st

from numdom.bd_shape import BdShape
from numdom.conversions import (ANY, POLYNOMIAL, SIMPLEX, convert_powerset, embed, extract,
                                to_bds, to_grid, to_oct, to_polyhedron)
from numdom.grid import Grid
from numdom.linear_forms import Variable, congruence, point
from numdom.oct_shape import OctShape
from numdom.polyhedron import Polyhedron, Topology
from numdom.powerset import PointsetPowerset

A, B, C = Variable(0), Variable(1), Variable(2)


def wedge():
    return Polyhedron.from_constraints([A + B >= 5, 2 * A - B >= -2, -A + 2 * B >= -2])


def test_wedge_to_bds():
    expected = BdShape.from_constraints([A >= 1, B >= 1])
    for cc in (SIMPLEX, ANY):
        assert to_bds(wedge(), cc) == expected
    # along the ray (2, 1) the difference A - B is unbounded
    assert wedge().maximize(A - B)[0] is None
    assert to_bds(wedge(), POLYNOMIAL).is_universe()


def test_wedge_to_oct():
    expected = OctShape.from_constraints([A >= 1, B >= 1, A + B >= 5])
    for cc in (SIMPLEX, ANY):
        assert to_oct(wedge(), cc) == expected
    # syntactically only the facet A + B >= 5 is octagonal
    assert to_oct(wedge(), POLYNOMIAL) == OctShape.from_constraints([A + B >= 5], dim=2)


def test_trivial_conversions():
    for cc in (POLYNOMIAL, SIMPLEX, ANY):
        assert to_bds(Polyhedron.universe(2), cc).is_universe()
        assert to_bds(Polyhedron.empty(2), cc).is_empty()
        assert to_oct(Polyhedron.empty(2), cc).is_empty()
    assert to_bds(Polyhedron.from_constraints([A + B >= 1, A + B <= 0]), SIMPLEX).is_empty()


def test_nnc_emptiness_by_lp():
    p = Polyhedron.from_constraints([A > 0, A < 0], Topology.NNC)
    assert to_bds(p, SIMPLEX).is_empty()
    assert to_oct(p, SIMPLEX).is_empty()
    q = Polyhedron.from_constraints([A > 0, A < 1], Topology.NNC)
    assert to_bds(q, SIMPLEX) == BdShape.from_constraints([A >= 0, A <= 1])


def test_bds_round_trip():
    s = BdShape.from_constraints([A - B <= 2, B <= 3, A >= -1, C - A <= 0])
    for cc in (POLYNOMIAL, SIMPLEX, ANY):
        assert to_bds(to_polyhedron(s), cc) == s
    o = OctShape.from_constraints([A + B <= 2, A - B <= 1, B >= 0])
    assert to_oct(to_polyhedron(o), SIMPLEX) == o
    assert to_oct(s) == OctShape.from_bd_shape(s)
    assert to_bds(o) == o.to_bd_shape()


def test_integer_family():
    p = Polyhedron.from_constraints([2 * A >= 1, 2 * A <= 7])
    s = to_bds(p, SIMPLEX, family="integer")
    assert s.upper_bound(A) == 4 and s.lower_bound(A) == 0
    assert s.to_polyhedron().contains(p)


def test_grid_conversions():
    g = Grid.from_congruences([congruence(A, 0, 2), congruence(B, 1, 0)])
    p = to_polyhedron(g)
    assert p == Polyhedron.from_constraints([B == 1], dim=2)
    assert to_bds(g) == BdShape.from_constraints([B == 1], dim=2)
    assert to_polyhedron(Grid.empty(2)).is_empty()
    pt = Grid.from_congruences([congruence(A, 3, 0), congruence(B, 0, 0)])
    assert to_polyhedron(pt) == Polyhedron.from_generators([point((3, 0))], dim=2)
    h = to_grid(Polyhedron.from_constraints([A + B == 1, A >= 0]))
    assert h == Grid.from_congruences([congruence(A + B, 1, 0)], dim=2)
    assert to_grid(Polyhedron.empty(2)).is_empty()
    assert to_grid(BdShape.from_constraints([A == 2, B >= 0])) == \
        Grid.from_congruences([congruence(A, 2, 0)], dim=2)


def test_powerset_embed_extract():
    e = embed(wedge())
    assert isinstance(e, PointsetPowerset) and len(e) == 1
    ps = PointsetPowerset(1, [Polyhedron.from_constraints([A >= 0, A <= 1]),
                              Polyhedron.from_constraints([A >= 3, A <= 4])])
    assert extract(ps) == Polyhedron.from_constraints([A >= 0, A <= 4])
    assert extract(ps, lambda p: to_bds(p, SIMPLEX)) == \
        BdShape.from_constraints([A >= 0, A <= 4])
    boxes = convert_powerset(ps, lambda p: to_bds(p, SIMPLEX))
    assert len(boxes) == 2
    assert to_polyhedron(PointsetPowerset(2)).is_empty()


# -- properties -----------------------------------------------------------------

row = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-6, 6))


@st.composite
def polyhedra(draw):
    cs = []
    for a, b, c in draw(st.lists(row, min_size=1, max_size=5)):
        if a or b:
            cs.append(a * A + b * B + c >= 0)
    return Polyhedron.from_constraints(cs, dim=2)


@given(polyhedra())
def test_conversion_soundness_and_precision(p):
    for conv in (to_bds, to_oct):
        simplex = conv(p, SIMPLEX)
        poly = conv(p, POLYNOMIAL)
        assert simplex == conv(p, ANY)
        assert poly.contains(simplex)
        assert to_polyhedron(simplex).contains(p)


bd_row = st.tuples(st.sampled_from([(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1)]),
                   st.integers(-6, 6))


@given(polyhedra())
def test_galois_contraction(p):
    bd = to_bds(p, SIMPLEX)
    assert to_polyhedron(bd).contains(p)
    assert to_bds(to_polyhedron(bd), SIMPLEX) == bd


@given(st.lists(bd_row, max_size=5))
def test_galois_exact_on_bd_polyhedra(rows):
    p = Polyhedron.from_constraints([a * A + b * B + c >= 0 for (a, b), c in rows], dim=2)
    assert to_polyhedron(to_bds(p, SIMPLEX)) == p
    assert to_bds(p, POLYNOMIAL) == to_bds(p, SIMPLEX)


def test_galois_strict_on_wedge():
    assert to_polyhedron(to_bds(wedge(), SIMPLEX)).strictly_contains(wedge())


@given(polyhedra())
def test_grid_hull_contains(p):
    g = to_grid(p)
    assert to_polyhedron(g).contains(p)
