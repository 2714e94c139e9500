import pytest
from hypothesis import given, strategies as st

from deodhar_lab.laurent import ONE, V, V_INV, ZERO, LaurentPoly
from oracles import conv

terms = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=6)
polys = terms.map(LaurentPoly.from_dict)


@given(terms, terms)
def test_product_matches_convolution(a, b):
    assert (LaurentPoly.from_dict(a) * LaurentPoly.from_dict(b)).terms() == conv(
        {k: c for k, c in a.items() if c}, {k: c for k, c in b.items() if c}
    )


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    assert p * ONE == p


@given(polys, polys)
def test_bar_is_a_ring_involution(p, q):
    assert p.bar().bar() == p
    assert (p * q).bar() == p.bar() * q.bar()
    assert (p + q).bar() == p.bar() + q.bar()


@given(polys)
def test_text_round_trip(p):
    assert LaurentPoly.from_text(p.to_text()) == p


@given(polys, st.integers(-5, 5))
def test_shift_is_monomial_product(p, k):
    assert p.shift(k) == p * LaurentPoly.monomial(k)


def test_trimming_and_zero():
    p = LaurentPoly(-2, (0, 0, 3, 0, 1, 0))
    assert (p.low, p.coeffs, p.high) == (0, (3, 0, 1), 2)
    assert LaurentPoly(5, (0, 0)) == ZERO
    assert ZERO.to_text() == "0"
    assert ZERO.bar() == ZERO


def test_specific_text_forms():
    assert (V + V_INV).to_text() == "-1:1,0,1"
    assert ((V + V_INV) ** 2).to_text() == "-2:1,0,2,0,1"
    assert LaurentPoly.from_text("1:1,0,1") == V + V**3
    assert (1 + V**2).pretty() == "1 + v^2"


def test_negative_power_only_for_units():
    assert V**-2 == V_INV * V_INV
    with pytest.raises(ValueError):
        (1 + V) ** -1


@pytest.mark.parametrize("bad", ["", "1:", ":1", "0:1,", "a:1", "1:x"])
def test_malformed_text(bad):
    with pytest.raises(ValueError):
        LaurentPoly.from_text(bad)


def test_membership_predicates():
    assert (V + 2 * V**3).in_v_zv()
    assert not (ONE + V).in_v_zv()
    assert (ONE + V).in_one_plus_v_zv()
    assert not (V - V**2).in_nonneg_poly()
    assert not V_INV.in_nonneg_poly()
    assert V.is_monomial() and not (V + 1).is_monomial()


def test_integers_coerce():
    assert V + 1 == LaurentPoly(0, (1, 1))
    assert 2 - V == LaurentPoly(0, (2, -1))
    assert 3 * V == LaurentPoly.monomial(1, 3)
    assert (1 + V).evaluate(2) == 3
