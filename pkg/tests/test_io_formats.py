import itertools
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from numdom.core import InvalidArgument, ParseError, TopologyMismatch
from numdom.io_formats import (PolyFile, domain_to_poly, parse_mps, parse_poly_file,
                               poly_to_domain, write_poly_file)
from numdom.linear_forms import Variable
from numdom.lp import MAXIMIZATION, LpProblem, LpStatus
from numdom.polyhedron import Polyhedron, Topology

A, B = Variable(0), Variable(1)


def rowset(pf):
    return {tuple(r) for r in pf.rows}


def cube_ine(n):
    rows = []
    for i in range(n):
        for s in (1, -1):
            rows.append([1] + [s if k == i else 0 for k in range(n)])
    body = "\n".join(" ".join(map(str, r)) for r in rows)
    return f"cube{n}\nH-representation\nbegin\n{2 * n} {n + 1} integer\n{body}\nend\n"


def wedge():
    return Polyhedron.from_constraints([A + B >= 5, A - 2 * B <= 2, B - 2 * A <= 2])


def test_unit_interval():
    pf = parse_poly_file("H-representation\nbegin\n2 2 integer\n0 1\n1 -1\nend\n")
    assert pf.representation == "H" and pf.columns == 2
    p = poly_to_domain(pf)
    assert p == Polyhedron.from_constraints([A >= 0, A <= 1])


def test_wedge_h_rows():
    pf = domain_to_poly(wedge(), "H")
    assert rowset(pf) == {(-5, 1, 1), (2, -1, 2), (2, 2, -1)}
    assert pf.number_type == "integer" and not pf.linearity


def test_wedge_v_rows():
    pf = domain_to_poly(wedge(), "V")
    assert rowset(pf) == {(1, 4, 1), (1, 1, 4), (0, 1, 2), (0, 2, 1)}


def test_cube3_vertices():
    pf = domain_to_poly(poly_to_domain(parse_poly_file(cube_ine(3))), "V")
    assert len(pf.rows) == 8 and all(r[0] == 1 for r in pf.rows)
    assert rowset(pf) == {(1,) + s for s in itertools.product((-1, 1), repeat=3)}


def test_cross4_facets():
    rows = []
    for i in range(4):
        for s in (1, -1):
            rows.append([1] + [s if k == i else 0 for k in range(4)])
    text = "V-representation\nbegin\n8 5 integer\n" + "\n".join(
        " ".join(map(str, r)) for r in rows) + "\nend\n"
    pf = domain_to_poly(poly_to_domain(parse_poly_file(text)), "H")
    expected = {(1,) + tuple(-s for s in signs)
                for signs in itertools.product((-1, 1), repeat=4)}
    assert rowset(pf) == expected


def test_empty_h_file():
    text = "H-representation\nbegin\n2 2 integer\n-1 1\n0 -1\nend\n"
    p = poly_to_domain(parse_poly_file(text))
    assert p.is_empty()
    v = domain_to_poly(p, "V")
    assert v.rows == [] and v.is_empty_declaration()
    assert poly_to_domain(parse_poly_file(write_poly_file(v))).is_empty()
    h = domain_to_poly(p, "H")
    assert poly_to_domain(h).is_empty()


def test_linearity_and_lines():
    text = "V-representation\nlinearity 1 2\nbegin\n2 3 rational\n1 1/2 0\n0 0 1\nend\n"
    pf = parse_poly_file(text)
    assert pf.linearity == {1}
    p = poly_to_domain(pf)
    assert p == Polyhedron.from_constraints([2 * A == 1], dim=2)
    h = domain_to_poly(p, "H")
    assert h.linearity and poly_to_domain(h) == p


def test_linearity_after_end_and_comments():
    text = ("* a comment\nH-representation\nbegin\n2 3 integer\n0 1 0\n0 0 1\nend\n"
            "linearity 1 1\n")
    p = poly_to_domain(parse_poly_file(text))
    assert p == Polyhedron.from_constraints([A == 0, B >= 0])


def test_ray_only_v_file_gets_origin():
    text = "V-representation\nbegin\n1 2 integer\n0 1\nend\n"
    assert poly_to_domain(parse_poly_file(text)) == Polyhedron.from_constraints([A >= 0])


def test_options_are_ignored_with_warning():
    text = "H-representation\nbegin\n1 2 integer\n0 1\nend\nincidence\n"
    with pytest.warns(UserWarning):
        pf = parse_poly_file(text)
    assert len(pf.rows) == 1


def test_canonical_writer_clears_denominators():
    pf = PolyFile("H", 3, [(Fraction(1, 2), Fraction(-1, 3), Fraction(0))])
    assert write_poly_file(pf).splitlines()[-2] == "3 -2 0"
    pf = PolyFile("V", 3, [(Fraction(2), Fraction(1), Fraction(3)),
                           (Fraction(0), Fraction(2), Fraction(4))])
    out = write_poly_file(pf)
    assert "1 1/2 3/2" in out and "0 1 2" in out and "rational" in out


def test_big_numbers_round_trip():
    big = 10 ** 40 + 7
    text = f"H-representation\nbegin\n1 2 rational\n{big}/3 -1\nend\n"
    pf = parse_poly_file(text)
    assert pf.rows[0][0] == Fraction(big, 3)
    again = parse_poly_file(write_poly_file(pf))
    assert again.rows == [(Fraction(big), Fraction(-3))]


@pytest.mark.parametrize("text,line,column", [
    ("begin\n1 2 integer\n1 x\nend\n", 3, 3),
    ("begin\n1 2 integer\n1 1/2\nend\n", 3, 3),
    ("begin\n2 2 integer\n1 1\nend\n", 4, 1),
    ("begin\n1 2 integer\n1 1 1\nend\n", 3, 1),
    ("begin\n1 2 floating\n", 2, 5),
    ("linearity 2 1\nbegin\n1 2 integer\n1 1\nend\n", 1, 1),
    ("junk\nmore junk\nbegin\n", 2, 1),
])
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as e:
        parse_poly_file(text)
    assert (e.value.line, e.value.column) == (line, column)


def test_missing_end():
    with pytest.raises(ParseError):
        parse_poly_file("begin\n1 2 integer\n1 1\n")


def test_strict_constraints_rejected():
    p = Polyhedron.from_constraints([A > 0], topology=Topology.NNC)
    with pytest.raises(TopologyMismatch):
        domain_to_poly(p, "H")
    with pytest.raises(InvalidArgument):
        domain_to_poly(p, "X")
    closed = Polyhedron.from_constraints([A >= 0], topology=Topology.NNC)
    assert rowset(domain_to_poly(closed, "H")) == {(0, 1)}


small_rows = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
                      min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(small_rows, st.sets(st.integers(0, 5), max_size=2))
def test_write_parse_idempotent(rows, lin):
    pf = PolyFile("H", 3, [tuple(Fraction(x, 2) for x in r) for r in rows],
                  {i for i in lin if i < len(rows)})
    once = write_poly_file(pf)
    assert write_poly_file(parse_poly_file(once)) == once
    assert parse_poly_file(once) == parse_poly_file(write_poly_file(parse_poly_file(once)))


@settings(max_examples=60, deadline=None)
@given(small_rows)
def test_h_v_h_round_trip(rows):
    p = poly_to_domain(PolyFile("H", 3, [tuple(map(Fraction, r)) for r in rows]))
    v = parse_poly_file(write_poly_file(domain_to_poly(p, "V")))
    q = poly_to_domain(v)
    assert q == p
    h = poly_to_domain(parse_poly_file(write_poly_file(domain_to_poly(q, "H"))))
    assert h == p


# -- MPS -------------------------------------------------------------------------

MINIMAL = """NAME tiny
ROWS
 N cost
 G r1
COLUMNS
 x cost 1 r1 1
RHS
 rhs r1 1
ENDATA
"""


def solve(mps, mode=None):
    prob = parse_mps(mps)
    cs, obj, sense = prob.to_lp()
    lp = LpProblem(len(prob.columns), cs, obj, mode or sense)
    return prob, lp, lp.solve()


def test_minimal_mps():
    prob, lp, status = solve(MINIMAL)
    cs, obj, _ = prob.to_lp()
    assert prob.objective == "cost" and prob.columns == ["x"]
    assert [str(c) for c in cs] == ["A >= 1", "A >= 0"]
    assert str(obj) == "A"
    assert status is LpStatus.OPTIMIZED and lp.optimal_value() == 1


def test_column_in_two_rows():
    text = """NAME two
ROWS
 N obj
 L a
 L b
COLUMNS
 x a 2 b 3
 y obj -1 a 1
RHS
 rhs a 10 b 6
ENDATA
"""
    prob, lp, status = solve(text)
    assert prob.coefficients["a"] == {"x": 2, "y": 1}
    assert prob.coefficients["b"] == {"x": 3}
    # min -y with 2x + y <= 10, 3x <= 6, x, y >= 0: optimum at x = 0, y = 10
    assert status is LpStatus.OPTIMIZED and lp.optimal_value() == -10


def test_default_bounds_against_vertices():
    # min x - y subject to x + y <= 4, x - y >= -2; default x, y >= 0.
    text = """NAME d
ROWS
 N obj
 L c1
 G c2
COLUMNS
 x obj 1 c1 1
 x c2 1
 y obj -1 c1 1
 y c2 -1
RHS
 rhs c1 4 c2 -2
ENDATA
"""
    prob, lp, status = solve(text)
    cs, obj, _ = prob.to_lp()
    verts = [g.rational_coords(2) for g in
             Polyhedron.from_constraints(list(cs), dim=2).minimized_generators()
             if g.is_point()]
    oracle = min(v[0] - v[1] for v in verts)
    assert status is LpStatus.OPTIMIZED and lp.optimal_value() == oracle == -2


def test_ranges_and_bounds():
    text = """NAME r
ROWS
 N obj
 E e
 L l
 G g
COLUMNS
 x obj 1 e 1
 x l 1 g 1
RHS
 e 2 l 5
 g 1
RANGES
 rng e 3 l 2
 rng g 4
BOUNDS
 FR bnd x
ENDATA
"""
    prob = parse_mps(text)
    cs, _, _ = prob.to_lp()
    p = Polyhedron.from_constraints(list(cs), dim=1)
    # e: [2, 5], l: [3, 5], g: [1, 5]
    assert p == Polyhedron.from_constraints([A >= 3, A <= 5])


def test_negative_range_on_equality():
    text = "ROWS\n N o\n E e\nCOLUMNS\n x e 1\nRHS\n e 2\nRANGES\n e -3\nENDATA\n"
    cs, _, _ = parse_mps(text).to_lp()
    assert Polyhedron.from_constraints(list(cs), dim=1) == \
        Polyhedron.from_constraints([A >= 0, A <= 2])


def test_bound_types_and_objsense():
    text = """NAME b
OBJSENSE
    MAX
ROWS
 N obj
COLUMNS
 x obj 1
 y obj 1
 z obj 1
RHS
 rhs obj -7
BOUNDS
 UP bnd x 3
 MI bnd y
 UP bnd y 1
 FX bnd z 2
ENDATA
"""
    prob, lp, status = solve(text)
    assert prob.sense is MAXIMIZATION
    assert prob.lower == {"x": 0, "y": None, "z": 2}
    # constant term: the objective row's RHS enters with a minus sign
    assert status is LpStatus.OPTIMIZED and lp.optimal_value() == 3 + 1 + 2 + 7


def test_negative_upper_bound_frees_lower():
    text = "ROWS\n N o\nCOLUMNS\n x o 1\nBOUNDS\n UP b x -1\nENDATA\n"
    with pytest.warns(UserWarning):
        prob = parse_mps(text)
    assert prob.lower["x"] is None and prob.upper["x"] == -1


@pytest.mark.parametrize("text,line", [
    ("ROWS\n N o\nCOLUMNS\n MARKER 'MARKER' 'INTORG'\nENDATA\n", 4),
    ("ROWS\n N o\nCOLUMNS\n x o 1\nBOUNDS\n BV b x\nENDATA\n", 6),
    ("ROWS\n N o\nCOLUMNS\n x nope 1\nENDATA\n", 4),
    ("ROWS\n Q o\n", 2),
    ("ROWS\n N o\nCOLUMNS\n x o abc\n", 4),
    ("ROWS\n N o\nCOLUMNS\n x o 1\nBOUNDS\n UP b y 1\n", 6),
])
def test_mps_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_mps(text)
    assert e.value.line == line


def test_mps_missing_sections():
    with pytest.raises(ParseError):
        parse_mps("NAME x\nENDATA\n")


def test_fixed_field_layout():
    text = ("NAME          FIXED\n"
            "ROWS\n"
            " N  COST\n"
            " L  LIM1\n"
            "COLUMNS\n"
            "    X1        COST         1.5   LIM1         1\n"
            "RHS\n"
            "    RHS       LIM1         4\n"
            "BOUNDS\n"
            " UP BND       X1           3\n"
            "ENDATA\n")
    prob, lp, status = solve(text, MAXIMIZATION)
    assert lp.optimal_value() == Fraction(9, 2)


def test_decimals_are_exact():
    text = "ROWS\n N o\n G r\nCOLUMNS\n x o 1 r 0.1\nRHS\n r 0.3\nENDATA\n"
    prob, lp, _ = solve(text)
    assert lp.optimal_value() == 3


def test_warns_nothing_on_clean_input():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_mps(MINIMAL)
