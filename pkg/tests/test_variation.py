"""Deformation tensors, mode analysis, embeddability and both Hessians."""

from fractions import Fraction

import pytest
from hypothesis import given

from crsphere.ring import ExactScalar, SpherePoly, norm2
from crsphere.frames import TensorField, index_pairs
from crsphere.variation import (DeformationTensor, conformal_exponent,
                                conformal_first_variation, conformal_hessian,
                                fourier_modes, is_embeddable, j_hessian,
                                j_hessian_via_T, round_webster_curvature,
                                validate_symmetry, yamabe_energy_series)
from crsphere.spectral import harmonic_decompose

from test_ring import polys, z, w


def defo(p: SpherePoly) -> DeformationTensor:
    return DeformationTensor.from_coefficient(p)


def real_zero_avg(p: SpherePoly) -> SpherePoly:
    v = p + p.conjugate()
    return v - SpherePoly.constant(v.n, v.integral())


# -- calibration constants ----------------------------------------------------

def test_round_curvature_and_exponent():
    assert round_webster_curvature(1) == 1
    assert round_webster_curvature(2) == 3
    assert round_webster_curvature(3) == 6
    assert conformal_exponent(1) == 4
    assert conformal_exponent(2) == 3


# -- symmetry ----------------------------------------------------------------------

def test_symmetry_vacuous_on_s3():
    assert validate_symmetry(defo(w(1, 1) ** 5))


def test_symmetric_pair_tensor_s5():
    pairs = index_pairs(2)
    c = z(2, 3)
    sym = TensorField(2, {(pairs[0], pairs[1]): c, (pairs[1], pairs[0]): c})
    assert validate_symmetry(DeformationTensor.from_tensor(sym))


def test_antisymmetric_pair_tensor_rejected():
    pairs = index_pairs(2)
    c = SpherePoly.one(2)
    anti = TensorField(2, {(pairs[0], pairs[1]): c,
                           (pairs[1], pairs[0]): c * -1})
    e = DeformationTensor.from_tensor(anti)
    assert not validate_symmetry(e)
    with pytest.raises(ValueError):
        j_hessian(e)


# -- fourier modes -------------------------------------------------------------------

def test_mode_examples():
    assert list(fourier_modes(defo(SpherePoly.one(1)))) == [0]
    e = defo(w(1, 1) * w(1, 2) ** 3)
    assert list(fourier_modes(e)) == [-4]
    e2 = defo(z(1, 1) * w(1, 2) + w(1, 1) ** 5)
    assert sorted(fourier_modes(e2)) == [-5, 0]


@given(polys(n=1))
def test_modes_sum_back(p):
    e = defo(p)
    total = SpherePoly.zero(1)
    for part in fourier_modes(e).values():
        total = total + part.coefficient
    assert total == p


@given(polys(n=1))
def test_mode_orthogonality(p):
    e = defo(p)
    rep = j_hessian(e)
    assert rep.norm2() == norm2(p)


# -- embeddability --------------------------------------------------------------------

def test_embeddability_examples():
    assert not is_embeddable(defo(w(1, 1) * w(1, 2) ** 3))   # m = -4
    assert is_embeddable(defo(SpherePoly.one(1)))             # m = 0
    assert is_embeddable(defo(w(1, 1) ** 4 * z(1, 2)))        # m = -3
    assert not is_embeddable(defo(w(1, 1) ** 5))              # m = -5
    assert is_embeddable(defo(SpherePoly.zero(1)))


def test_embeddability_rejected_above_s3():
    pairs = index_pairs(2)
    t = TensorField(2, {(pairs[0], pairs[0]): SpherePoly.one(2)})
    with pytest.raises(ValueError):
        is_embeddable(DeformationTensor.from_tensor(t))


# -- structure Hessian ------------------------------------------------------------------

def test_hessian_frozen_values():
    c = ExactScalar(Fraction(2, 3), Fraction(-1, 5))
    rep = j_hessian(defo(SpherePoly.constant(1, c)))
    assert rep.total == ExactScalar(c.abs2() * 4)

    assert j_hessian(defo(w(1, 1) * w(1, 2) ** 3)).total.is_zero()

    rep5 = j_hessian(defo(w(1, 1) ** 5))
    assert rep5.total == ExactScalar(Fraction(-1, 6))
    assert rep5.modes == ((-5, ExactScalar(Fraction(1, 6)),
                           ExactScalar(Fraction(-1, 6))),)
    assert not rep5.embeddable


def test_hessian_report_invariants():
    p = SpherePoly.one(1) + w(1, 1) ** 5 + z(1, 1) * w(1, 2)
    rep = j_hessian(defo(p))
    total = ExactScalar.zero()
    for _, _, wt in rep.modes:
        total = total + wt
    assert rep.total == total * rep.dimension
    assert rep.norm2() == norm2(p)


@given(polys(n=1))
def test_two_route_equality(p):
    e = defo(p)
    assert j_hessian(e).total == j_hessian_via_T(e)


@given(polys(n=1))
def test_hessian_real(p):
    assert j_hessian(defo(p)).total.is_real()


def test_two_route_equality_s5():
    pairs = index_pairs(2)
    cs = [SpherePoly.one(2), z(2, 1) * w(2, 2), w(2, 3) ** 2,
          z(2, 1) * z(2, 2) * z(2, 3)]
    for c in cs:
        t = TensorField(2, {(pairs[0], pairs[0]): c,
                            (pairs[1], pairs[2]): c,
                            (pairs[2], pairs[1]): c})
        e = DeformationTensor.from_tensor(t)
        assert validate_symmetry(e)
        assert j_hessian(e).total == j_hessian_via_T(e)


def test_sign_law_pure_modes():
    cases = [(w(1, 1) ** 5, -1), (w(1, 1) ** 2 * w(1, 2) ** 3, -1),
             (w(1, 1) * w(1, 2) ** 3, 0), (w(1, 1) ** 4, 0),
             (w(1, 1) ** 3, 1), (z(1, 1), 1), (SpherePoly.one(1), 1),
             (z(1, 1) ** 2 * w(1, 2), 1)]
    for p, sign in cases:
        total = j_hessian(defo(p)).total
        assert total.is_real()
        if sign < 0:
            assert total.re < 0
        elif sign == 0:
            assert total.is_zero()
        else:
            assert total.re > 0


def test_embeddable_nonzero_positive():
    p = z(1, 1) + w(1, 1) ** 4 * z(1, 2)   # modes 1 and -3, embeddable
    e = defo(p)
    assert is_embeddable(e)
    assert j_hessian(e).total.re > 0


def test_admissible_positivity_s5():
    pairs = index_pairs(2)
    n = 2
    t = TensorField(2, {(pairs[0], pairs[0]): z(2, 1) * z(2, 2),
                        (pairs[1], pairs[1]): SpherePoly.one(2)})
    e = DeformationTensor.from_tensor(t)
    assert e.admissible()
    rep = j_hessian(e)
    bound = rep.norm2() * (4 * n)
    assert rep.total.re >= bound.re > 0


# -- conformal direction -------------------------------------------------------------------

def test_conformal_first_variation_vanishes_on_examples():
    for p in (SpherePoly.one(1), (z(1, 1) + w(1, 1)) * Fraction(1, 2),
              z(1, 1) * w(1, 1)):
        assert conformal_first_variation(p).is_zero()


@given(polys(n=1, max_terms=2))
def test_conformal_first_variation_vanishes(p):
    v = p + p.conjugate()
    assert conformal_first_variation(v).is_zero()


def test_conformal_hessian_frozen_values():
    re_z1 = (z(1, 1) + w(1, 1)) * Fraction(1, 2)
    assert conformal_hessian(re_z1).is_zero()

    v = z(1, 1) * w(1, 1) - z(1, 2) * w(1, 2)
    assert conformal_hessian(v) == ExactScalar(4)

    re_z1sq = (z(1, 1) ** 2 + w(1, 1) ** 2) * Fraction(1, 2)
    assert conformal_hessian(re_z1sq) == ExactScalar(Fraction(2, 3))


def test_conformal_hessian_preconditions():
    with pytest.raises(ValueError):
        conformal_hessian(z(1, 1))            # not real
    with pytest.raises(ValueError):
        conformal_hessian(SpherePoly.one(1))  # nonzero average


@given(polys(n=1, max_terms=2))
def test_conformal_hessian_kernel(p):
    v = real_zero_avg(p)
    if v.is_zero():
        return
    h = conformal_hessian(v)
    assert h.is_real() and h.re >= 0
    linear = all(pp + qq == 1
                 for (pp, qq) in harmonic_decompose(v).components)
    assert h.is_zero() == linear


@given(polys(n=1, max_terms=2))
def test_yamabe_route_equality(p):
    v = real_zero_avg(p)
    series = yamabe_energy_series(v)
    assert series.c0.constant_term() == ExactScalar(round_webster_curvature(1))
    assert series.c1.constant_term().is_zero()
    assert series.c2.constant_term() * 2 == conformal_hessian(v)


def test_yamabe_route_equality_s5():
    v = real_zero_avg(z(2, 1) * w(2, 2) + z(2, 3) ** 2)
    series = yamabe_energy_series(v)
    assert series.c0.constant_term() == ExactScalar(round_webster_curvature(2))
    assert series.c1.constant_term().is_zero()
    assert series.c2.constant_term() * 2 == conformal_hessian(v)


def test_yamabe_series_of_zero_direction():
    s = yamabe_energy_series(SpherePoly.zero(1))
    assert s.c1.is_zero() and s.c2.is_zero()
    assert s.c0.constant_term() == ExactScalar(1)


def test_scale_direction_flat_to_second_order():
    # v = 1 rescales the contact form; the normalized energy cannot move
    s = yamabe_energy_series(SpherePoly.one(1))
    assert s.c1.is_zero() and s.c2.is_zero()
