"""The S^3 structure-equation solver against frozen values and closed forms."""

from fractions import Fraction

import pytest

from crsphere.ring import ExactScalar, SpherePoly, TSeries2
from crsphere.oracle3 import (FRAME_WEBSTER_CONSTANT, LEVI_CONSTANT,
                              SECOND_VARIATION_COEFF, check_connection_variation,
                              check_first_variation, check_torsion_variation,
                              deform_frame, mode_weighted_norm,
                              second_derivative_check, solve_structure)
from crsphere.variation import DeformationTensor, j_hessian

from test_ring import z, w


def series_of(e: SpherePoly):
    return solve_structure(deform_frame(e))


def test_round_base_point():
    ps = series_of(SpherePoly.zero(1))
    assert ps.torsion == TSeries2.zero(1)
    assert ps.webster == TSeries2.constant(1, ExactScalar(FRAME_WEBSTER_CONSTANT))
    # w(0) = -i theta
    assert ps.omega["th"] == TSeries2.constant(1, ExactScalar(0, -1))
    assert ps.omega["t1"] == TSeries2.zero(1)
    assert ps.omega["t1b"] == TSeries2.zero(1)


def test_constant_deformation_frozen_series():
    ps = series_of(SpherePoly.one(1))
    # W(t) = 1 + 2 t^2
    assert ps.webster.c0 == SpherePoly.one(1)
    assert ps.webster.c1.is_zero()
    assert ps.webster.c2 == SpherePoly.constant(1, 2)
    # A(t) = -2 t
    assert ps.torsion.c0.is_zero()
    assert ps.torsion.c1 == SpherePoly.constant(1, -2)
    assert ps.torsion.c2.is_zero()
    # w(t) = -i (1 + 2 t^2) theta
    assert ps.omega["th"].c1.is_zero()
    assert ps.omega["th"].c2 == SpherePoly.constant(1, ExactScalar(0, -2))
    assert ps.omega["t1"] == TSeries2.zero(1)


def test_renormalizer_is_half_norm():
    e = w(1, 1) ** 2 * z(1, 2)
    cf = deform_frame(e)
    assert cf.gamma == e * e.conjugate() * Fraction(1, 2)


def test_levi_constant():
    assert LEVI_CONSTANT == 2


def test_first_variation_samples():
    for e in (SpherePoly.one(1), w(1, 1) * w(1, 2) ** 3, z(1, 1) * w(1, 2) ** 2,
              z(1, 1) ** 2, w(1, 2) ** 4):
        verdict = check_first_variation(e)
        assert verdict.ok, verdict.to_text()


def test_first_variation_constant_is_flat():
    ps = series_of(SpherePoly.one(1))
    assert ps.webster.c1.is_zero()


def test_torsion_law_samples():
    # dA/dt = -(m/2 + 2) conj(E) on a pure mode-m coefficient
    cases = [(SpherePoly.one(1), 0), (z(1, 1), 1), (w(1, 1) * w(1, 2) ** 3, -4),
             (w(1, 2) ** 5, -5), (z(1, 1) * z(1, 2) ** 2, 3)]
    for e, m in cases:
        verdict = check_torsion_variation(e)
        assert verdict.ok, verdict.to_text()
        ps = series_of(e)
        want = e.conjugate() * ExactScalar(-(Fraction(m, 2) + 2))
        assert ps.torsion.c1 == want


def test_connection_law_samples():
    for e in (SpherePoly.one(1), z(1, 1) * w(1, 2), w(1, 1) ** 3):
        verdict = check_connection_variation(e)
        assert verdict.ok, verdict.to_text()


def test_second_derivative_frozen_values():
    cases = [(SpherePoly.one(1), ExactScalar(4)),
             (w(1, 1) * w(1, 2) ** 3, ExactScalar.zero()),
             (w(1, 1) ** 5, ExactScalar(Fraction(-1, 6))),
             (SpherePoly.one(1) + w(1, 1) ** 5, ExactScalar(Fraction(23, 6)))]
    for e, want in cases:
        verdict, d2 = second_derivative_check(e)
        assert verdict.ok, verdict.to_text()
        assert d2 == want


def test_second_derivative_matches_mode_report():
    for e in (z(1, 1) * w(1, 2), w(1, 1) ** 4, z(1, 2) ** 3 * w(1, 1)):
        _, d2 = second_derivative_check(e)
        assert d2 == j_hessian(DeformationTensor.from_coefficient(e)).total
        assert d2 == mode_weighted_norm(e)


def test_series_coefficient_constant():
    # order-t^2 of int W is exactly C * mode sum with C = 1/2
    e = SpherePoly.one(1) + w(1, 2) ** 4 * z(1, 1)
    ps = series_of(e)
    assert ps.webster.c2.integral() == \
        mode_weighted_norm(e) * ExactScalar(SECOND_VARIATION_COEFF)


def test_gauge_invariance():
    phase = ExactScalar(Fraction(3, 5), Fraction(4, 5))
    for e in (SpherePoly.one(1), w(1, 1) ** 2 * z(1, 2)):
        base = series_of(e).webster
        turned = solve_structure(deform_frame(e, phase=phase)).webster
        assert base == turned


def test_path_completion_independence():
    e = w(1, 1) ** 3
    tweaks = (z(1, 1), w(1, 2) ** 2, z(1, 1) * w(1, 1))
    base = series_of(e).webster.c2.integral()
    for g in tweaks:
        moved = solve_structure(deform_frame(e, second_order_tweak=g))
        assert moved.webster.c2.integral() == base
        # the order-t slice cannot move either
        assert moved.webster.c1 == series_of(e).webster.c1


def test_criticality_small_pool():
    for e in (z(1, 1), w(1, 1) * w(1, 2), z(1, 1) * z(1, 2) * w(1, 1),
              w(1, 2) ** 3):
        ps = series_of(e)
        assert ps.webster.c1.integral().is_zero()


def test_webster_is_real():
    ps = series_of(z(1, 1) * w(1, 2) ** 2)
    assert ps.webster == ps.webster.conjugate()


def test_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        deform_frame(SpherePoly.one(2))


def test_rejects_non_unit_phase():
    with pytest.raises(ValueError):
        deform_frame(SpherePoly.one(1), phase=ExactScalar(2))
