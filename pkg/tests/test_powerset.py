import pytest
from hypothesis import given, strategies as st

from numdom.core import DimensionMismatch
from numdom.linear_forms import Variable
from numdom.polyhedron import Polyhedron
from numdom.powerset import DomainOps, PointsetPowerset, Powerset, multiset_less

A, B = Variable(0), Variable(1)


def iv(lo, hi=None):
    cs = [A >= lo]
    if hi is not None:
        cs.append(A <= hi)
    return Polyhedron.from_constraints(cs)


def ps(*ivs):
    return Powerset([iv(*x) for x in ivs])


class TokenSets(DomainOps):
    """Finite subsets of a token alphabet ordered by inclusion."""

    def entails(self, a, b):
        return a <= b

    def equals(self, a, b):
        return a == b

    def meet(self, a, b):
        return a & b

    def upper_bound(self, a, b):
        return a | b

    def upper_bound_if_exact(self, a, b):
        return a | b

    def is_bottom(self, a):
        return not a

    def dimension(self, a):
        return None

    def widen(self, a, b):
        return b

    def certificate(self, a):
        return 4 - len(a)

    def copy(self, a):
        return a

    def format(self, a):
        return "".join(sorted(a)) or "-"


TOKENS = TokenSets()
token_set = st.frozensets(st.sampled_from("abcd"))
token_powerset = st.lists(token_set, max_size=4).map(lambda ds: Powerset(ds, TOKENS))


def test_add_disjunct_examples():
    assert ps((0, 1)).add_disjunct(iv(0, 2)) == ps((0, 2))
    assert len(ps((0, 1)).add_disjunct(iv(0, 2))) == 1
    assert ps((0, 1)).add_disjunct(Polyhedron.empty(1)) == ps((0, 1))
    two = Powerset([Polyhedron.from_constraints([A <= 1], dim=2),
                    Polyhedron.from_constraints([B <= 1])])
    assert len(two) == 2
    with pytest.raises(DimensionMismatch):
        ps((0, 1)).add_disjunct(Polyhedron.universe(2))


def test_lattice_examples():
    assert ps((0, 2)).meet_assign(ps((1, 3))) == ps((1, 2))
    assert ps((0, 1)).entails(ps((0, 2), (5, 6)))
    u = ps((0, 1)).upper_bound_assign(ps((2, 3)))
    assert len(u) == 2 and u == ps((0, 1), (2, 3))
    assert str(Powerset([frozenset("ab"), frozenset("c")], TOKENS)) == "{ ab, c }"


def test_pairwise_reduce_merges_exact_hulls():
    assert ps((0, 1), (1, 2)).pairwise_reduce() == ps((0, 2))
    assert len(ps((0, 1), (2, 3)).pairwise_reduce()) == 2


def test_bgp99_examples():
    assert ps((0, 1)).bgp99_extrapolation_assign(ps((0, 2))) == ps((0,))
    q = ps((0, 1), (5, 6))
    assert ps((0, 1), (5, 6)).bgp99_extrapolation_assign(q) == q
    assert ps((0, 1)).bgp99_extrapolation_assign(q, max_disjuncts=1) == ps((0, 6))


def test_certificate_widening_examples():
    q = ps((0, 1), (2, 3))
    assert ps((0, 1)).certificate_widening_assign(q) == q
    assert q.copy().certificate_widening_assign(q) == q
    assert ps((0, 1)).certificate_widening_assign(ps((0, 2))) == ps((0,))


def test_multiset_order():
    assert multiset_less([1, 1], [1], 3)
    assert not multiset_less([1], [1, 1], 3)
    assert multiset_less([0, 0, 0], [1], 3)
    assert not multiset_less([2], [1], 3)
    assert not multiset_less([1, 2], [2, 1], 3)


def test_pointset_transfer():
    s = PointsetPowerset(1, [iv(0, 1), iv(3, 4)])
    s.affine_image(A, A + 10)
    assert s.contains_point((13,)) and not s.contains_point((12,))
    s.add_constraint(A <= 11)
    assert len(s) == 1


# -- toy-domain lattice suite ---------------------------------------------------

@given(st.lists(token_set, max_size=5), st.randoms())
def test_omega_reduce_order_independent(ds, rnd):
    p = Powerset(ds, TOKENS)
    shuffled = list(ds)
    rnd.shuffle(shuffled)
    q = Powerset(shuffled, TOKENS)
    assert sorted(map(sorted, p)) == sorted(map(sorted, q))
    r = p.copy().omega_reduce()
    assert list(r) == list(p)
    for x in p:
        for y in p:
            assert x is y or not TOKENS.entails(x, y)


@given(token_powerset, token_powerset, token_powerset)
def test_toy_lattice_laws(x, y, z):
    j = x.copy().upper_bound_assign(y)
    m = x.copy().meet_assign(y)
    assert x.entails(j) and y.entails(j)
    assert m.entails(x) and m.entails(y)
    assert j == y.copy().upper_bound_assign(x)
    assert m == y.copy().meet_assign(x)
    assert x.copy().upper_bound_assign(x) == x
    assert x.copy().meet_assign(x) == x
    assert x.copy().upper_bound_assign(y).upper_bound_assign(z) == \
        x.copy().upper_bound_assign(y.copy().upper_bound_assign(z))
    assert x.copy().meet_assign(y).meet_assign(z) == \
        x.copy().meet_assign(y.copy().meet_assign(z))
    # least upper bound and greatest lower bound
    if x.entails(z) and y.entails(z):
        assert j.entails(z)
    if z.entails(x) and z.entails(y):
        assert z.entails(m)
    # absorption
    assert x.copy().upper_bound_assign(x.copy().meet_assign(y)) == x


@given(token_powerset, token_powerset)
def test_toy_widenings_are_upper_bounds(x, y):
    q = x.copy().upper_bound_assign(y)
    for w in (x.copy().bgp99_extrapolation_assign(q),
              x.copy().certificate_widening_assign(q)):
        assert q.entails(w)


# -- certificate widening chains ------------------------------------------------

@given(st.integers(1, 3), st.integers(0, 1), st.integers(-3, 3),
       st.lists(st.tuples(st.integers(-10, 10), st.integers(0, 3)), max_size=8))
def test_certificate_widening_chain_stabilizes(step, width, offset, noise):
    def piece(k):
        if k < len(noise) and k % 2:
            lo, w = noise[k]
            return iv(lo, lo + w)
        lo = step * k + offset
        return iv(lo, lo + width)

    cur = Powerset([piece(0)])
    history = []
    for k in range(1, 64):
        nxt = cur.copy().upper_bound_assign(Powerset([piece(k)]))
        w = cur.copy().certificate_widening_assign(nxt)
        assert nxt.entails(w)
        history.append(w == cur)
        cur = w
    assert all(history[-20:])
