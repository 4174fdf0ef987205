from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from runsgf.algebra import (
    DegenerateSystemError,
    PolyW,
    PolyZ,
    RationalGF,
    fraction_field_solve,
    gf_normalize,
    matvec,
    series_coeffs,
)

z = PolyZ.z()
w = PolyZ.const(PolyW.var())
one = PolyZ.const(1)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def uni(*cs):
    return PolyZ.from_univariate(cs)


def test_poly_product():
    assert (one - z) * (one - z) == uni(1, -2, 1)


def test_rational_product():
    assert Fraction(1, 6) * Fraction(1, 3) == Fraction(1, 18)


def test_u4_expansion_for_equal_probabilities():
    half = Fraction(1, 2)
    got = (one - z) * (one - z * half) * (one - z * half)
    assert got == uni(1, -2, Fraction(5, 4), Fraction(-1, 4))


def test_trailing_zeros_stripped():
    p = uni(1, 2, 0, 0)
    assert p.degree == 1
    assert (p - p).is_zero() and (p - p).degree == -1
    assert PolyW((3, 0, 0)).degree == 0


def test_division_by_zero_rational():
    with pytest.raises(ZeroDivisionError):
        Fraction(1, 2) / Fraction(0)


def test_exact_division_is_strict():
    with pytest.raises(ArithmeticError):
        uni(1, 0, 1).exact_div(uni(1, 1))
    assert (uni(1, -1) * (w + z)).exact_div(uni(1, -1)) == w + z


def test_normalize_cancels_common_factor():
    f = RationalGF(z - z * z, one - z)
    assert f.numerator == z and f.denominator == one


def test_normalize_scales_denominator():
    f = RationalGF(one * 3, uni(3, -3) - w * z * z * 3)
    assert f.denominator[0] == PolyW.const(1)
    assert f.numerator == one


def test_equality_by_cross_multiplication():
    p1, p2, k1, k2 = Fraction(1, 3), Fraction(2, 3), 2, 1
    h = RationalGF(PolyZ.monomial(p1**k1 * p2**k2, k1 + k2), uni(1, -p2) * uni(1, -(p1 + p2)))
    # same function, both sides multiplied by (1 - z); build without normalizing through __init__
    num = h.numerator * (one - z)
    den = h.denominator * (one - z)
    assert num * h.denominator == h.numerator * den
    assert RationalGF(num, den) == h
    assert gf_normalize(h) == h


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalGF(one, PolyZ())


def test_series_geometric():
    f = RationalGF(one, one - z)
    assert series_coeffs(f, 3) == [PolyW.const(1)] * 4


def test_series_two_state_unit_thresholds():
    # 1/(1 - 2z - (w-1) z^2): coefficient of z^3 must be 4 + 4w
    wm1 = PolyZ.const(PolyW((-1, 1)))
    f = RationalGF(one, uni(1, -2) - wm1 * z * z)
    assert series_coeffs(f, 3)[3] == PolyW((4, 4))


def _naive_series(num, den, n):
    """Power-series division by repeated subtraction, independent of the recurrence."""
    rem = [num[i] for i in range(n + 1)]
    out = []
    d0 = den[0].constant()
    for i in range(n + 1):
        c = rem[i] * (1 / d0)
        out.append(c)
        for j in range(den.degree + 1):
            if i + j <= n:
                rem[i + j] = rem[i + j] - c * den[j]
    return out


polys_w = st.lists(fractions, max_size=3).map(lambda cs: PolyW(tuple(cs)))
polys_z = st.lists(polys_w, max_size=4).map(lambda cs: PolyZ(tuple(cs)))


@given(polys_z, st.lists(polys_w, max_size=3), st.integers(0, 12))
def test_series_matches_long_division(num, tail, n):
    den = PolyZ((PolyW.const(1),) + tuple(tail))
    f = RationalGF(num, den)
    assert series_coeffs(f, n) == _naive_series(f.numerator, f.denominator, n)


@given(polys_z, polys_z)
def test_add_sub_roundtrip(a, b):
    assert (a + b) - b == a


@given(fractions, fractions)
def test_rational_roundtrip(a, b):
    assert (a + b) - b == a


def test_solve_identity():
    rhs = [RationalGF(z, one - z), RationalGF(w * z), RationalGF.const(3)]
    ident = [[RationalGF.const(int(i == j)) for j in range(3)] for i in range(3)]
    assert all(a == b for a, b in zip(fraction_field_solve(ident, rhs), rhs))


def test_solve_singular():
    g = RationalGF(z, one - z)
    with pytest.raises(DegenerateSystemError):
        fraction_field_solve([[g, g], [g, g]], [g, g])


gfs = st.builds(
    lambda a, b, c: RationalGF(uni(0, a, b), uni(1, c)),
    fractions,
    fractions,
    fractions,
)


@settings(max_examples=25, deadline=None)
@given(st.lists(gfs, min_size=9, max_size=9), st.lists(gfs, min_size=3, max_size=3))
def test_solve_satisfies_system(entries, rhs):
    m = [[RationalGF.const(1) if i == j else entries[3 * i + j] for j in range(3)] for i in range(3)]
    x = fraction_field_solve(m, rhs)
    assert all(a == b for a, b in zip(matvec(m, x), rhs))


def test_solve_with_mark():
    g = RationalGF(z, one - z)
    m = [[RationalGF.const(1), -g * w], [-g, RationalGF.const(1)]]
    rhs = [g, g]
    x = fraction_field_solve(m, rhs)
    assert all(a == b for a, b in zip(matvec(m, x), rhs))
    assert x[0].var == "w"
