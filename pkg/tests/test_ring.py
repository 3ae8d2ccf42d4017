"""Exact ring arithmetic: normal forms, integration, grading, series."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crsphere.ring import (ExactScalar, SpherePoly, TSeries2, parse_poly,
                           parse_scalar, norm2, volume_factor, PolyParseError)

from conftest import coordinate_phase, oracle_monomial_integral


def z(n, j):
    return SpherePoly.z(n, j)


def w(n, j):
    return SpherePoly.w(n, j)


# -- strategies ---------------------------------------------------------------

def scalars():
    fr = st.fractions(min_value=-3, max_value=3, max_denominator=6)
    return st.builds(ExactScalar, fr, fr)


def exponent_tuples(n):
    return st.tuples(*[st.integers(0, 2) for _ in range(n + 1)])


def polys(n=1, max_terms=3):
    term = st.tuples(exponent_tuples(n), exponent_tuples(n), scalars())
    def build(ts):
        acc = {}
        for a, b, c in ts:
            acc[(a, b)] = acc.get((a, b), ExactScalar.zero()) + c
        return SpherePoly(n, acc)
    return st.lists(term, min_size=0, max_size=max_terms).map(build)


# -- normal form ----------------------------------------------------------------

def test_sphere_relation_collapses():
    assert z(1, 1) * w(1, 1) + z(1, 2) * w(1, 2) == SpherePoly.one(1)


def test_reduced_monomial_untouched():
    assert z(1, 1).to_grammar() == "(1/1,0/1) z1"


def test_single_division_step():
    assert z(1, 1) * w(1, 1) == SpherePoly.one(1) - z(1, 2) * w(1, 2)


def test_no_reducible_monomials_stored():
    p = (z(1, 1) * w(1, 1) + z(1, 2)) ** 3
    for a, b in p.terms:
        assert not (a[0] >= 1 and b[0] >= 1)


@given(polys())
def test_normal_form_idempotent(p):
    assert SpherePoly(p.n, p.terms) == p


@given(polys(), polys())
def test_product_well_defined_on_classes(p, q):
    relation = z(1, 1) * w(1, 1) + z(1, 2) * w(1, 2)
    assert p * q == (p + relation - 1) * q


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@given(polys())
def test_conjugate_involution(p):
    assert p.conjugate().conjugate() == p


# -- integration ------------------------------------------------------------------

def test_integral_examples():
    assert SpherePoly.one(1).integral() == ExactScalar.one()
    assert (z(1, 1) * w(1, 1)).integral() == ExactScalar(Fraction(1, 2))
    assert (z(1, 1) ** 2 * w(1, 1) ** 2).integral() == ExactScalar(Fraction(1, 3))


@pytest.mark.parametrize("n", [1, 2])
def test_integral_against_simplex_oracle(n):
    # all |a| <= 3 diagonal monomials against the Beta-integral oracle
    def tuples(width, total):
        if width == 1:
            yield (total,)
            return
        for h in range(total + 1):
            for rest in tuples(width - 1, total - h):
                yield (h,) + rest
    for d in range(4):
        for a in tuples(n + 1, d):
            got = SpherePoly.monomial(n, a, a).integral()
            want = oracle_monomial_integral(n, a, a)
            assert got == ExactScalar(want)


def test_offdiagonal_integrals_vanish(unit_phase):
    # coordinate-phase invariance forces them to zero; check both facts
    cases = [((1, 0), (0, 1)), ((2, 0), (0, 0)), ((2, 1), (1, 0)),
             ((1, 2), (2, 0))]
    for a, b in cases:
        p = SpherePoly.monomial(1, a, b)
        assert p.integral().is_zero()
        for j in (1, 2):
            assert coordinate_phase(p, j, unit_phase).integral() == p.integral()


@given(polys())
def test_integral_conjugation(p):
    assert p.conjugate().integral() == p.integral().conjugate()


@given(polys())
def test_integral_vanishes_off_zero_mode(p):
    q = p - p.fourier_project(0)
    assert q.integral().is_zero()


# -- grading -----------------------------------------------------------------------

def test_fourier_examples():
    p = z(1, 1) ** 2 * w(1, 2)
    assert p.fourier_project(1) == p
    assert (z(1, 1) + w(1, 1)).fourier_project(1) == z(1, 1)


@given(polys())
def test_fourier_partition(p):
    total = SpherePoly.zero(1)
    for m in p.modes():
        pm = p.fourier_project(m)
        assert pm.fourier_project(m) == pm
        total = total + pm
    assert total == p


@given(polys(), polys())
def test_grading_additive_under_products(p, q):
    for m in p.modes():
        for m2 in q.modes():
            prod = p.fourier_project(m) * q.fourier_project(m2)
            assert prod.fourier_project(m + m2) == prod


# -- series ------------------------------------------------------------------------

@given(polys(), polys(), polys())
def test_series_associativity(p, q, r):
    s1 = TSeries2(p, q, r)
    s2 = TSeries2(q, r, p)
    s3 = TSeries2(r, p, q)
    assert (s1 * s2) * s3 == s1 * (s2 * s3)


def test_series_truncation_drops_order3():
    t2 = TSeries2(SpherePoly.zero(1), SpherePoly.zero(1), SpherePoly.one(1))
    s = TSeries2(SpherePoly.zero(1), z(1, 1), w(1, 2))
    prod = t2 * s
    assert prod.c0.is_zero() and prod.c1.is_zero() and prod.c2.is_zero()


def test_fractional_power_binomial():
    v = z(1, 1) * w(1, 1)
    s = TSeries2(SpherePoly.one(1), v)
    p = s.fractional_power(Fraction(1, 2))
    # (1 + tv)^(1/2) = 1 + v/2 t - v^2/8 t^2 + O(t^3)
    assert p.c1 == v * Fraction(1, 2)
    assert p.c2 == v * v * Fraction(-1, 8)
    # square back, truncated
    sq = p * p
    assert sq.c0 == s.c0 and sq.c1 == s.c1 and sq.c2 == s.c2


def test_base_slice_of_series_is_round_value():
    s = TSeries2(SpherePoly.one(1), z(1, 1))
    assert s.c0 == SpherePoly.one(1)


# -- serialization ------------------------------------------------------------------

def test_scalar_roundtrip():
    s = ExactScalar(Fraction(-22, 7), Fraction(5, 3))
    assert parse_scalar(s.serialize()) == s
    assert s.serialize() == "-22/7+5/3*i"
    assert ExactScalar(0, Fraction(-1, 2)).serialize() == "0/1-1/2*i"


@given(polys(n=2))
def test_grammar_roundtrip(p):
    assert parse_poly(p.to_grammar(), 2) == p


def test_grammar_examples():
    p = parse_poly("(1/2,0/1) z1^2 w2 (0/1,-1/1) z2", 1)
    want = z(1, 1) ** 2 * w(1, 2) * Fraction(1, 2) \
        + z(1, 2) * ExactScalar(0, -1)
    assert p == want


def test_parse_error_positions():
    with pytest.raises(PolyParseError) as exc:
        parse_poly("(1/1,0/1) z1 $", 1)
    assert exc.value.line == 1 and exc.value.column == 14
    with pytest.raises(PolyParseError):
        parse_poly("(1/1,0/1) z5", 1)   # index out of range
    with pytest.raises(PolyParseError):
        parse_poly("z1", 1)             # variable before coefficient


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        z(1, 1) * z(2, 1)


def test_volume_factor_symbolic():
    vf = volume_factor(1)
    assert (vf.two_exponent, vf.pi_exponent) == (2, 2)
    assert str(volume_factor(2)) == "2^3 * pi^3"


def test_norm2_real_nonnegative():
    p = z(1, 1) * ExactScalar(0, 1) + w(1, 2) * 3
    v = norm2(p)
    assert v.is_real() and v.re > 0
