"""The global tangential frame of an odd sphere and its calculus.

The fields Z_jk = zbar_j d_k - zbar_k d_j and forms theta_jk = z_j dz_k -
z_k dz_j are an overcomplete global frame for the CR bundle; together with
the transverse field T they support exact covariant differentiation.  The
frame is tight: coefficient expansions reconstruct vectors on the nose and
preserve the Levi norm.
"""

from crsphere import SpherePoly, ExactScalar
from crsphere.frames import (bracket, contact_form, covariant_T, covariant_Z,
                             field_apply, form_eval, index_pairs,
                             levi_pairing, reeb, sharp_pairing, theta_form,
                             tight_expand, z_field, zbar_field)

n = 2   # S^5
pairs = index_pairs(n)
print(f"Frame index pairs on S^{2 * n + 1}: {pairs}")

T = reeb(n)
print("\nT acts on weight-m functions by i m / 2:")
print("   T z1 =", field_apply(T, SpherePoly.z(n, 1)).to_grammar())

print("\nDual pairings:")
print("   theta(T)        =", form_eval(contact_form(n), T).to_grammar())
print("   theta_12(Z_12)  =",
      form_eval(theta_form(n, 1, 2), z_field(n, 1, 2)).to_grammar())
print("   theta_12(Z_13)  =",
      form_eval(theta_form(n, 1, 2), z_field(n, 1, 3)).to_grammar())

print("\nLevi pairing is the positive coefficient pairing:")
print("   <Z_12, Z_12> =",
      levi_pairing(z_field(n, 1, 2), z_field(n, 1, 2)).to_grammar())
print("   <Z_12, Z_13> =",
      levi_pairing(z_field(n, 1, 2), z_field(n, 1, 3)).to_grammar())

print("\nMusical-map consistency i dtheta(Z_lm, Zbar_jk) = theta_jk(Z_lm):")
ok = all(sharp_pairing(z_field(n, *lm), zbar_field(n, *jk))
         == form_eval(theta_form(n, *jk), z_field(n, *lm))
         for lm in pairs for jk in pairs)
print("   holds for all", len(pairs) ** 2, "index pairs:", ok)

print("\nTransverse covariant derivative has frame weights -i / +i:")
mi = ExactScalar(0, -1)
print("   nabla_T Z_12 == -i Z_12 :",
      covariant_T(z_field(n, 1, 2)) == z_field(n, 1, 2) * mi)
print("   [T, Z_12]    == -i Z_12 :",
      bracket(T, z_field(n, 1, 2)) == z_field(n, 1, 2) * mi)

print("\nHolomorphic directions annihilate the holomorphic frame:")
print("   nabla_{Z_12} Z_13 =",
      "0" if covariant_Z(z_field(n, 1, 2), z_field(n, 1, 3)).is_zero()
      else "nonzero?!")
mixed = covariant_Z(z_field(n, 1, 2), zbar_field(n, 1, 2))
print("   nabla_{Z_12} Zbar_12 expands over the frame with coefficients:")
for jk, c in sorted(tight_expand(mixed).items()):
    if not c.is_zero():
        print(f"      Zbar_{jk[0]}{jk[1]}: {c.to_grammar()}")

print("\nTight-frame (Parseval) identity for a polynomial-coefficient field:")
v = z_field(n, 1, 2) * SpherePoly.w(n, 3) + z_field(n, 2, 3) * SpherePoly.w(n, 1)
total = SpherePoly.zero(n)
for jk in pairs:
    c = form_eval(theta_form(n, *jk), v)
    total = total + c * c.conjugate()
print("   sum |theta_jk(V)|^2 == <V, V> :", total == levi_pairing(v, v))
