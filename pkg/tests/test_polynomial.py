import itertools
import random

import pytest
from hypothesis import given, strategies as st

from arrangement_reg.polynomial import (
    Monomial,
    PolynomialRing,
    TermOrder,
    leading_term,
    monomials_of_degree,
    poly_mul,
)


def grevlex_greater(a, b):
    # definition: higher degree wins; otherwise the last nonzero entry of a - b is negative
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def lex_greater(a, b):
    return tuple(a) > tuple(b)


def test_poly_mul_examples(R, xyzw):
    x, y, z, w = xyzw
    assert poly_mul(x, w - y) == x * w - x * y
    f = x * w - y * z + 3 * x * x
    assert poly_mul(f, R.one()) == f


def test_poly_mul_four_terms(R, xyzw):
    x, y, z, w = xyzw
    t, s, v, u = 2, 3, 5, 7
    prod = poly_mul(t * x - s * z, v * x - u * y)
    expected = {(2, 0, 0, 0): t * v, (1, 1, 0, 0): -t * u, (1, 0, 1, 0): -s * v, (0, 1, 1, 0): s * u}
    assert len(prod) == 4
    assert prod.coefficients() == {m: c % R.p for m, c in expected.items()}


def test_ring_mismatch(R):
    S = PolynomialRing(3)
    with pytest.raises(ValueError):
        poly_mul(R.gen(0), S.gen(0))


def test_leading_term_grevlex_binomial(xyzw):
    x, y, z, w = xyzw
    m, c = leading_term(x * w - y * z, TermOrder.grevlex())
    # yz beats xw: the two tie on degree and yz has the smaller w-exponent
    assert grevlex_greater((0, 1, 1, 0), (1, 0, 0, 1))
    assert m == (0, 1, 1, 0)
    assert c == x.ring.p - 1


def test_leading_term_monomial_and_lex(R, xyzw):
    x, y, z, w = xyzw
    f = 4 * x * y * y
    assert leading_term(f) == ((1, 2, 0, 0), 4)
    assert leading_term(x + y, TermOrder.lex())[0] == (1, 0, 0, 0)


def test_leading_term_of_zero(R):
    with pytest.raises(ValueError):
        leading_term(R.zero())


exps = st.lists(st.integers(0, 5), min_size=4, max_size=4).map(tuple)


@given(exps, exps)
def test_grevlex_key_matches_definition(a, b):
    o = TermOrder.grevlex()
    assert (o.key(a) > o.key(b)) == grevlex_greater(a, b)


@given(exps, exps)
def test_lex_key_matches_definition(a, b):
    o = TermOrder.lex()
    assert (o.key(a) > o.key(b)) == lex_greater(a, b)


@pytest.mark.parametrize("order", [TermOrder.grevlex(), TermOrder.lex(), TermOrder.elimination(1),
                                   TermOrder.elimination(2)])
@given(a=exps, b=exps, c=exps)
def test_orders_total_and_multiplicative(order, a, b, c):
    ka, kb = order.key(a), order.key(b)
    assert (ka == kb) == (a == b)
    assert sum([ka < kb, ka == kb, ka > kb]) == 1
    ac, bc = Monomial(a) * c, Monomial(b) * c
    if ka < kb:
        assert order.key(ac) < order.key(bc)


def test_elimination_order_eliminates():
    o = TermOrder.elimination(1)
    # anything with the first variable beats anything without it
    for m in monomials_of_degree(4, 3):
        if m[0] == 0:
            assert o.key((1, 0, 0, 0)) > o.key(m)


def test_orders_are_well_orders_per_degree():
    o = TermOrder.grevlex()
    mons = monomials_of_degree(4, 3)
    assert len({o.key(m) for m in mons}) == len(mons) == 20


@given(st.randoms(use_true_random=False))
def test_product_of_homogeneous_is_homogeneous(rnd):
    R = PolynomialRing(4, 101)
    def rand_form(d):
        return R.zero() + sum((R.monomial(m, rnd.randrange(101)) for m in monomials_of_degree(4, d)), R.zero())
    d1, d2 = rnd.randrange(4), rnd.randrange(4)
    f, g = rand_form(d1), rand_form(d2)
    h = poly_mul(f, g)
    if f and g:
        assert h.is_homogeneous()
        assert h.degree == d1 + d2


def test_terms_sorted_descending(R, xyzw):
    x, y, z, w = xyzw
    f = w**2 + x * y + z**2 + x**2
    keys = [R.key(m) for m, _ in f.terms]
    assert keys == sorted(keys, reverse=True)


def test_str_round_trip_readable(xyzw):
    x, y, z, w = xyzw
    assert str(x * w - y * z) == "-y*z + x*w"


def test_monomial_enumeration_counts():
    for n, d in itertools.product(range(1, 5), range(5)):
        from math import comb
        assert len(monomials_of_degree(n, d)) == comb(n + d - 1, n - 1)


def test_evaluate(xyzw):
    x, y, z, w = xyzw
    q = x * w - y * z
    assert q.evaluate([1, 2, 3, 6]) == 0
    assert q.evaluate([1, 0, 0, 1]) == 1


def test_random_ring_arithmetic_consistency():
    R = PolynomialRing(3, 13)
    rng = random.Random(0)
    for _ in range(50):
        f = sum((R.monomial(m, rng.randrange(13)) for m in monomials_of_degree(3, 2)), R.zero())
        g = sum((R.monomial(m, rng.randrange(13)) for m in monomials_of_degree(3, 1)), R.zero())
        pt = [rng.randrange(13) for _ in range(3)]
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % 13
        assert (f - f).is_zero()
