"""Second variation of the normalized total Webster curvature.

Two independent stories, both exact:

* Structure deformations E diagonalize over circle modes with weight
  (m + 4).  On S^3 the perturbed structure is embeddable exactly when all
  modes at or below -4 vanish, so embeddable directions have positive
  second variation, the mode -4 directions are neutral, and lower modes
  are negative: the saddle geometry is an embeddability statement.
* Conformal directions diagonalize over harmonic bidegrees, are never
  negative, and vanish exactly on the ambient-linear functions.
"""

from fractions import Fraction

from crsphere import SpherePoly
from crsphere.variation import (DeformationTensor, conformal_hessian,
                                is_embeddable, j_hessian, j_hessian_via_T,
                                yamabe_energy_series)

z1, z2 = SpherePoly.z(1, 1), SpherePoly.z(1, 2)
w1, w2 = SpherePoly.w(1, 1), SpherePoly.w(1, 2)

print("Structure directions on S^3:")
for p, label in [(SpherePoly.one(1), "E = 1            (mode  0)"),
                 (w1 * w2 ** 3, "E = w1 w2^3      (mode -4)"),
                 (w1 ** 5, "E = w1^5         (mode -5)"),
                 (z1 + w1 ** 4 * z2, "E = z1 + w1^4 z2 (modes 1, -3)")]:
    e = DeformationTensor.from_coefficient(p)
    rep = j_hessian(e)
    via = j_hessian_via_T(e)
    print(f"   {label}:")
    for m, nrm, wt in rep.modes:
        print(f"      mode {m:+d}: ||E^(m)||^2 = {nrm.serialize()}, "
              f"(m+4)-weighted = {wt.serialize()}")
    print(f"      total = {rep.total.serialize()}   "
          f"(covariant route agrees: {via == rep.total})")
    print(f"      embeddable perturbation: {is_embeddable(e)}")

print("\nConformal directions (real, zero average):")
for v, label in [((z1 + w1) * Fraction(1, 2), "Re z1"),
                 (z1 * w1 - z2 * w2, "|z1|^2 - |z2|^2"),
                 ((z1 ** 2 + w1 ** 2) * Fraction(1, 2), "Re z1^2")]:
    h = conformal_hessian(v)
    series = yamabe_energy_series(v)
    print(f"   {label:18s}: hessian = {h.serialize():12s} "
          f"series route x2 = {(series.c2.constant_term() * 2).serialize()}")

print("\nThe normalized energy is critical at the round sphere: its")
print("first-order coefficient vanishes for every direction, e.g.")
s = yamabe_energy_series(z1 * w1 - z2 * w2)
print("   order 0 (round value):", s.c0.constant_term().serialize())
print("   order 1 (criticality):", s.c1.constant_term().serialize())
