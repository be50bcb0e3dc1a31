from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gv4calc.hseries import (HSeries, formal_residue, generalized_binomial,
                             hseries_expand_factor, hseries_product_truncate)
from gv4calc.laurent import MVLaurent
from gv4calc.localized import LocalizedRat
from oracles import random_points, scalar_residue, scalar_series_power

L = LocalizedRat.power_of_linear


def const_series(cs, order):
    return HSeries([LocalizedRat.constant(c) for c in cs], order)


def test_generalized_binomial():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(2, 3) == 0
    assert generalized_binomial(-1, 4) == 1
    assert generalized_binomial(-4, 1) == -4
    assert generalized_binomial(-3, 2) == 6


def test_expand_positive_power():
    s = hseries_expand_factor((1, 2), 2, 3)
    assert list(s.coeffs) == [L(1, 2, 2), L(1, 2, 1) * 2, LocalizedRat.one(), LocalizedRat.zero()]


def test_expand_geometric():
    s = hseries_expand_factor((1, 2), -1, 2)
    assert list(s.coeffs) == [L(1, 2, -1), -L(1, 2, -2), L(1, 2, -3)]


def test_expand_h1_coefficient_of_minus_two_lambda1_to_minus_four():
    s = hseries_expand_factor((-2, 0), -4, 1)
    expected = LocalizedRat(MVLaurent.monomial((-5, 0), Fraction(1, 8)))
    assert s[1] == expected
    # scalar oracle at lambda1 = 1: (-2 + h)^-4 = 1/16 + h/8 + ...
    assert s[1].evaluate((1, 7)) == scalar_series_power(Fraction(-2), -4, 1)[1] == Fraction(1, 8)


def test_expand_rejects_zero_form():
    with pytest.raises(ValueError):
        hseries_expand_factor((0, 0), 2, 3)


def test_product_edge_cases():
    assert hseries_product_truncate([], 3) == HSeries.one(3)
    p = hseries_product_truncate([const_series([1, 1], 2), const_series([1, -1], 2)], 2)
    assert p == const_series([1, 0, -1], 2)


def test_product_commutes():
    fs = [hseries_expand_factor((1, -1), 3, 4), hseries_expand_factor((2, 1), -2, 4),
          hseries_expand_factor((0, 1), -5, 4)]
    assert hseries_product_truncate(fs, 4) == hseries_product_truncate(fs[::-1], 4)
    assert hseries_product_truncate(fs, 4) == hseries_product_truncate([fs[1], fs[2], fs[0]], 4)


def test_product_rejects_short_factor():
    with pytest.raises(ValueError):
        hseries_product_truncate([HSeries.one(1)], 2)


def test_residue_trivial_cases():
    assert formal_residue(1, []) == LocalizedRat.one()
    assert formal_residue(2, []) == LocalizedRat.zero()
    assert formal_residue(2, [((1, 1), 2)]) == L(1, 1, 1) * 2
    with pytest.raises(ValueError):
        formal_residue(0, [])
    with pytest.raises(ValueError):
        formal_residue(2, [((0, 0), 1)])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.sampled_from([(1, 0), (1, 1), (-2, 1), (3, -1)]))
def test_nonnegative_expansion_matches_int_pow(e, form):
    s = hseries_expand_factor(form, e, e)
    # sum_m coeff_m h^m at full order is (c + h)^e; compare with h as a third variable
    hx = MVLaurent(3, {(0, 0, 1): 1})
    c3 = MVLaurent(3, {(1, 0, 0): form[0], (0, 1, 0): form[1]})
    expected = (c3 + hx) ** e
    got = MVLaurent.zero(3)
    for m, coeff in enumerate(s.coeffs):
        r = coeff.reduced()
        assert not r.den
        lifted = MVLaurent(3, {(a, b, m): c for (a, b), c in r.signed_num().items()})
        got = got + lifted
    assert got == expected


factor_lists = st.lists(
    st.tuples(st.sampled_from([(1, 0), (0, 1), (-1, -1), (-1, 1), (-2, -1), (-2, 0), (1, 2)]),
              st.integers(-6, 6)),
    max_size=5,
)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), factor_lists)
def test_residue_matches_scalar_oracle(k, factors):
    value = formal_residue(k, factors)
    for pt in random_points(4, 3 + k):
        assert value.evaluate(pt) == scalar_residue(k, factors, pt)
