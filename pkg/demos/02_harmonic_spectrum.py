"""Bidegree harmonics and the spectral sub-Laplacian.

Every polynomial on S^{2n+1} splits into restrictions of ambient harmonic
pieces of bidegree (p, q); the sub-Laplacian acts on the (p, q) space by
-lambda with lambda = p q + n (p+q)/2.  The splitting, the eigenvalues and
the Dirichlet energy are all computed exactly.
"""

from fractions import Fraction

from crsphere import SpherePoly, norm2
from crsphere.spectral import (dirichlet_energy, eigenvalue,
                               harmonic_decompose, sublaplacian)

z1, z2 = SpherePoly.z(1, 1), SpherePoly.z(1, 2)
w1, w2 = SpherePoly.w(1, 1), SpherePoly.w(1, 2)

print("Decomposing |z1|^2 on S^3:")
dec = harmonic_decompose(z1 * w1)
for (p, q), comp in sorted(dec.components.items()):
    print(f"   ({p},{q}) component: {comp.to_grammar()}")
print("   components sum back exactly:", dec.reconstruct() == z1 * w1)

print("\nEigenvalue table lambda(p,q,n) = p q + n (p+q)/2:")
for n in (1, 2):
    row = "   n=%d: " % n
    row += "  ".join(f"l({p},{q})={eigenvalue(p, q, n)}"
                     for p, q in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
    print(row)

print("\nThe sub-Laplacian acts diagonally:")
for p, label in [(z1, "z1"), (z1 * w2, "z1 conj(z2)"),
                 (z1 * w1 - z2 * w2, "|z1|^2 - |z2|^2")]:
    print(f"   Lap_b {label:18s} = {sublaplacian(p).to_grammar()}")

print("\nDirichlet energy (squared sub-gradient, probability measure):")
re_z1 = (z1 + w1) * Fraction(1, 2)
f = z1 * w1 - z2 * w2
for v, label in [(re_z1, "Re z1"), (f, "|z1|^2 - |z2|^2")]:
    print(f"   E({label}) = {dirichlet_energy(v).serialize()}")

print("\nSpectral gap: E(f) - n (||f||^2 - mean^2) >= 0 with null space")
print("exactly the constants plus ambient-linear functions:")
for v, label in [(re_z1, "Re z1"), (f, "|z1|^2 - |z2|^2")]:
    mean = v.integral()
    gap = dirichlet_energy(v) - (norm2(v) - mean * mean)
    print(f"   gap({label}) = {gap.serialize()}")
