from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import golden
from gv4calc.localcurve import (LocalCurveParams, ResidueSummandSpec, alt_square_sum, dt4_deg1,
                                dt4_deg2, dt4_deg2_prefactor, gw_deg1, gw_deg2, residue_summand,
                                residue_summands, summand_factors, verify_conjecture_deg2)
from gv4calc.hseries import formal_residue
from gv4calc.localized import LocalizedRat, combine
from oracles import random_points, scalar_residue

P8 = LocalCurveParams.genus_zero(8, 6)
genus0 = st.builds(LocalCurveParams.genus_zero, st.integers(-6, 6), st.integers(-6, 6))


@st.composite
def higher_genus(draw):
    g = draw(st.integers(1, 4))
    l1, l2 = draw(st.integers(-5, 5)), draw(st.integers(-5, 5))
    return LocalCurveParams(g, l1, l2, 2 * g - 2 - l1 - l2)


def test_params_normalize_and_validate():
    p = LocalCurveParams(0, -16, 6, 8)
    assert (p.l1, p.l2, p.l3) == (8, 6, -16)
    assert p.raw == (-16, 6, 8) and p.was_normalized
    with pytest.raises(ValueError, match="2g-2"):
        LocalCurveParams(0, 1, 1, 1)
    with pytest.raises(ValueError):
        LocalCurveParams(-1, 0, 0, -4)


def test_gw_deg1_golden():
    assert gw_deg1(P8) == golden.DT4_1
    assert gw_deg1(LocalCurveParams(1, 1, 0, -1)).is_zero()
    assert gw_deg1(LocalCurveParams.genus_zero(0, -1)) == LocalizedRat.power_of_linear(1, 0, -1)


def test_dt4_deg1():
    assert dt4_deg1(P8) == golden.DT4_1
    assert dt4_deg1(LocalCurveParams(2, 2, 0, 0)).is_zero()
    p = LocalCurveParams.genus_zero(0, 0)
    assert dt4_deg1(p) == gw_deg1(p)


@pytest.mark.parametrize("l, direct", [(3, 6), (0, 0), (-3, 3), (1, 1), (-1, 0), (-2, 1), (5, 15)])
def test_alt_square_sum(l, direct):
    assert alt_square_sum(l) == direct
    if l >= 0:
        assert alt_square_sum(l) == Fraction(l * (l + 1), 2)
    else:
        lbar = -l - 1
        assert alt_square_sum(l) == Fraction(lbar * (lbar + 1), 2)


def test_gw_deg2_golden():
    assert gw_deg2(P8) == golden.GW2
    assert gw_deg2(LocalCurveParams(1, 3, -1, -2)).is_zero()


def test_dt4_deg2_golden():
    assert dt4_deg2(P8) == golden.DT4_2
    assert dt4_deg2(LocalCurveParams(3, 2, 1, 1)).is_zero()
    assert dt4_deg2(LocalCurveParams.genus_zero(0, -1)).is_zero()


def test_summand_ranges():
    ks = [(s.branch, s.k) for s in residue_summands(P8)]
    assert ks == [("A", 2), ("A", 4), ("A", 6), ("A", 8), ("B", 2), ("B", 4), ("B", 6)]
    odd = residue_summands(LocalCurveParams.genus_zero(5, -1))
    assert [(s.branch, s.k) for s in odd] == [("A", 1), ("A", 3), ("A", 5)]
    with pytest.raises(ValueError):
        ResidueSummandSpec("A", 3, P8)
    with pytest.raises(ValueError):
        ResidueSummandSpec("B", 8, P8)


def _unnormalized(l1, l2, l3):
    # bypass the l1 >= l2 >= l3 sort to evaluate the formulas with roles exchanged
    p = object.__new__(LocalCurveParams)
    for name, val in (("genus", 0), ("l1", l1), ("l2", l2), ("l3", l3), ("raw", (l1, l2, l3))):
        object.__setattr__(p, name, val)
    return p


def test_branch_swap_symmetry_at_golden_point():
    b = residue_summand(ResidueSummandSpec("B", 6, P8))
    a = formal_residue(6, summand_factors("A", _unnormalized(6, 8, -16), 6))
    assert b == a.swap()


def test_summand_sum_reproduces_golden_dt4_2():
    total = combine([residue_summand(s) for s in residue_summands(P8)], "add")
    assert dt4_deg2_prefactor(P8) * total == golden.DT4_2


@pytest.mark.parametrize("branch,k", [("A", 2), ("A", 4), ("B", 2), ("B", 6)])
def test_summand_oracle_small_case(branch, k):
    p = LocalCurveParams.genus_zero(8, 6)
    spec = ResidueSummandSpec(branch, k, p)
    v = residue_summand(spec)
    for pt in random_points(10, 1000 + k):
        assert v.evaluate(pt) == scalar_residue(k, summand_factors(branch, p, k), pt)


def test_summand_oracle_A_2_minus1_minus3():
    p = LocalCurveParams.genus_zero(2, -1)
    assert (p.l1, p.l2, p.l3) == (2, -1, -3)
    v = residue_summand(ResidueSummandSpec("A", 2, p))
    for pt in random_points(10, 7):
        assert v.evaluate(pt) == scalar_residue(2, summand_factors("A", p, 2), pt)


def test_verify_golden_case():
    rec = verify_conjecture_deg2(P8)
    assert rec.verified and rec.difference.is_zero()
    assert rec.certificate.all_zero
    assert rec.to_json()["l3"] == -16


def test_verify_higher_genus_trivially():
    rec = verify_conjecture_deg2(LocalCurveParams(1, 0, 0, 0))
    assert rec.verified
    assert rec.gw2.is_zero() and rec.dt4_1.is_zero() and rec.dt4_2.is_zero()


@pytest.mark.parametrize("l1,l2", [(0, 0), (1, 0), (2, -2), (3, 1), (4, 4), (5, -3), (-1, -1), (7, 2)])
def test_verify_small_cases(l1, l2):
    assert verify_conjecture_deg2(LocalCurveParams.genus_zero(l1, l2)).verified


def _mod_filter_dt4_deg2(p):
    # parity written as Mod[k - l + 1, 2] == 1 over 1 <= k <= l
    specs = []
    for branch, l in (("A", p.l1), ("B", p.l2)):
        for k in range(1, l + 1):
            if (k - l + 1) % 2 == 1:
                specs.append(ResidueSummandSpec(branch, k, p))
    if not specs:
        return LocalizedRat.zero()
    return dt4_deg2_prefactor(p) * combine([residue_summand(s) for s in specs], "add")


@settings(max_examples=15, deadline=None)
@given(genus0)
def test_parity_filter_agrees_with_mod_filter(p):
    assert dt4_deg2(p) == _mod_filter_dt4_deg2(p)


@settings(max_examples=40, deadline=None)
@given(genus0)
def test_degree_one_identity(p):
    assert dt4_deg1(p) == gw_deg1(p)


@settings(max_examples=30, deadline=None)
@given(higher_genus())
def test_higher_genus_vanishing(p):
    for f in (gw_deg1, gw_deg2, dt4_deg1, dt4_deg2):
        assert f(p).is_zero()


@settings(max_examples=15, deadline=None)
@given(genus0)
def test_swap_symmetry(p):
    # the formulas are written for l1 >= l2; exchanging roles of L1 and L2
    # means evaluating the same closed forms with (l1, l2) and (lambda1, lambda2) swapped
    swapped = _unnormalized(p.l2, p.l1, p.l3)
    assert gw_deg2(swapped) == gw_deg2(p).swap()
    assert dt4_deg2(swapped) == dt4_deg2(p).swap()
