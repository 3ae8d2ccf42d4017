"""Deformations of the CR structure and both Hessians of the normalized
total Webster curvature at the round sphere.

Two families of directions are analyzed:

* conformal directions (contact form rescaled by (1 + t v)^{4/(Q-2)} with
  the structure fixed), where the second variation is diagonal over the
  harmonic bidegree spaces and vanishes exactly on the ambient-linear
  functions; and
* structure directions, encoded by a deformation tensor E, where the
  second variation diagonalizes over circle-action modes m with weight
  (m + 4) and couples to embeddability of the perturbed structure: on S^3
  every nonzero mode below -3 must vanish for the perturbation to remain
  embeddable, and those are exactly the directions whose weights are
  negative or zero.

All functional values are reported in the rotation-invariant probability
measure; the symbolic volume factor relating them to the pseudohermitian
volume normalization is 2 pi per homogeneous-dimension unit and is
carried by the conventions ledger, never as a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import ExactScalar, SpherePoly, TSeries2, norm2
from .spectral import (eigenvalue, harmonic_decompose, sublaplacian,
                       sublaplacian_energy)
from .frames import (TensorField, covariant_T, field_apply, index_pairs,
                     reeb, tight_expand, z_field)

__all__ = [
    "DeformationTensor",
    "HessianReport",
    "validate_symmetry",
    "fourier_modes",
    "is_embeddable",
    "j_hessian",
    "j_hessian_via_T",
    "conformal_first_variation",
    "conformal_hessian",
    "yamabe_energy_series",
    "round_webster_curvature",
    "conformal_exponent",
    "EMBEDDABILITY_MODE_CUTOFF",
]

# Nonzero modes at or below this cutoff obstruct embeddability on S^3.
EMBEDDABILITY_MODE_CUTOFF = -4


def round_webster_curvature(n: int) -> Fraction:
    """Webster scalar curvature of the round S^{2n+1} in these conventions.

    Equals n(n+1)/2; derived independently by the S^3 structure-equation
    solver and pinned for general n by the requirement that the second
    conformal variation vanish on ambient-linear functions.
    """
    return Fraction(n * (n + 1), 2)


def conformal_exponent(n: int) -> Fraction:
    """The constant b_n = 2 + 2/n of the conformal sub-Laplacian."""
    return 2 + Fraction(2, n)


class DeformationTensor:
    """Infinitesimal deformation of the complex rotation on S^{2n+1}.

    On S^3 it is a single SpherePoly coefficient; in higher dimensions a
    TensorField with canonical coefficients and symmetric lowered form.
    """

    __slots__ = ("n", "coefficient", "tensor")

    def __init__(self, n: int, coefficient: SpherePoly | None,
                 tensor: TensorField | None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coefficient", coefficient)
        object.__setattr__(self, "tensor", tensor)

    def __setattr__(self, name, value):
        raise AttributeError("DeformationTensor is immutable")

    @staticmethod
    def from_coefficient(e: SpherePoly) -> "DeformationTensor":
        if e.n != 1:
            raise ValueError("scalar deformation coefficients live on S^3")
        return DeformationTensor(1, e, None)

    @staticmethod
    def from_tensor(t: TensorField) -> "DeformationTensor":
        if t.n == 1:
            c = tight_expand(t).coeffs.get(((1, 2), (1, 2)),
                                           SpherePoly.zero(1))
            return DeformationTensor(1, c, None)
        return DeformationTensor(t.n, None, tight_expand(t))

    def coefficients(self) -> dict:
        """Uniform view: map from ((j,k),(l,m)) to SpherePoly."""
        if self.n == 1:
            return {((1, 2), (1, 2)): self.coefficient}
        return dict(self.tensor.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients().values())

    def coefficient_modes(self) -> list[int]:
        ms: set[int] = set()
        for c in self.coefficients().values():
            ms.update(c.modes())
        return sorted(ms)

    def project_mode(self, m: int) -> "DeformationTensor":
        if self.n == 1:
            return DeformationTensor(1, self.coefficient.fourier_project(m),
                                     None)
        coeffs = {k: c.fourier_project(m)
                  for k, c in self.tensor.coeffs.items()}
        return DeformationTensor(self.n, None, TensorField(self.n, coeffs))

    def admissible(self) -> bool:
        """No negative circle modes (meaningful for n > 1 deformations)."""
        return all(m >= 0 for m in self.coefficient_modes())

    def __eq__(self, other):
        if not isinstance(other, DeformationTensor):
            return NotImplemented
        return self.n == other.n and self.coefficients() == other.coefficients()

    def __repr__(self):
        body = "; ".join(f"{k}: {c.to_grammar()}"
                         for k, c in sorted(self.coefficients().items()))
        return f"DeformationTensor(n={self.n}, {body})"


def validate_symmetry(e: DeformationTensor) -> bool:
    """Check symmetry of the lowered bilinear form on all frame pairs.

    Vacuous on S^3 (a single index); for n > 1 the form
    B(X, Y) = sum c theta_jk(X) theta_lm(Y) must satisfy B(X, Y) = B(Y, X)
    on every pair of frame fields.
    """
    if e.n == 1:
        return True
    t = e.tensor
    fields = [z_field(e.n, j, k) for (j, k) in index_pairs(e.n)]
    for a in range(len(fields)):
        for b in range(a + 1, len(fields)):
            if t.lowered_form(fields[a], fields[b]) != \
                    t.lowered_form(fields[b], fields[a]):
                return False
    return True


def fourier_modes(e: DeformationTensor) -> dict[int, DeformationTensor]:
    """Coefficient-wise circle-mode split; the parts sum back to e."""
    return {m: e.project_mode(m) for m in e.coefficient_modes()}


def is_embeddable(e: DeformationTensor) -> bool:
    """Embeddability of the infinitesimally perturbed structure on S^3.

    True exactly when every nonzero Fourier component has mode m > -4.
    In dimension five and higher perturbed structures are always
    embeddable, so the classifier refuses to run there.
    """
    if e.n != 1:
        raise ValueError("mode classifier applies to S^3 only; higher "
                         "dimensions are always embeddable")
    return all(m > EMBEDDABILITY_MODE_CUTOFF for m in e.coefficient_modes())


@dataclass(frozen=True)
class HessianReport:
    """Per-mode second-variation contributions of a deformation tensor."""

    dimension: int
    modes: tuple[tuple[int, ExactScalar, ExactScalar], ...]
    total: ExactScalar
    embeddable: bool

    def norm2(self) -> ExactScalar:
        acc = ExactScalar.zero()
        for _, nrm, _ in self.modes:
            acc = acc + nrm
        return acc

    def to_text(self) -> str:
        lines = [f"dimension: {self.dimension}"]
        for m, nrm, wt in self.modes:
            lines.append(f"mode {m}: norm2 = {nrm.serialize()} "
                         f"weighted = {wt.serialize()}")
        lines.append(f"total: {self.total.serialize()}")
        lines.append(f"embeddable: {'yes' if self.embeddable else 'no'}")
        return "\n".join(lines)


def j_hessian(e: DeformationTensor) -> HessianReport:
    """Mode-diagonal second variation: total = n sum_m (m+4) ||E^(m)||^2."""
    if not validate_symmetry(e):
        raise ValueError("deformation tensor has asymmetric lowered form")
    rows = []
    total = ExactScalar.zero()
    for m, part in sorted(fourier_modes(e).items()):
        nrm = ExactScalar.zero()
        for c in part.coefficients().values():
            nrm = nrm + norm2(c)
        if nrm.is_zero():
            continue
        weighted = nrm * (m + 4)
        rows.append((m, nrm, weighted))
        total = total + weighted
    total = total * e.n
    embeddable = is_embeddable(e) if e.n == 1 else True
    return HessianReport(dimension=e.n, modes=tuple(rows), total=total,
                         embeddable=embeddable)


def j_hessian_via_T(e: DeformationTensor) -> ExactScalar:
    """Second variation through the transverse covariant derivative.

    Computes -i n int <nabla_T E, E> + conj with the genuine derivation
    (no mode splitting); must equal j_hessian(e).total for every input.
    """
    if not validate_symmetry(e):
        raise ValueError("deformation tensor has asymmetric lowered form")
    t = reeb(e.n)
    two_i = ExactScalar(0, 2)
    acc = ExactScalar.zero()
    for c in e.coefficients().values():
        dc = field_apply(t, c) + c * two_i
        acc = acc + (dc * c.conjugate()).integral()
    half = ExactScalar(0, -e.n) * acc
    return half + half.conjugate()


# ---------------------------------------------------------------------------
# Conformal direction
# ---------------------------------------------------------------------------

def yamabe_energy_series(v: SpherePoly) -> TSeries2:
    """Normalized conformal energy along the family 1 + t v, to order t^2.

    Expands int u(-b_n Lap_b u + W0 u) divided by
    (int u^{2Q/(Q-2)})^{(Q-2)/Q} with exact binomial truncation of the
    fractional powers; all integrals in the probability measure.  The
    order-0 coefficient is the round value W0 (times the symbolic volume
    factor carried separately).
    """
    if not v.is_real():
        raise ValueError("conformal directions must be real-valued")
    n = v.n
    q_hom = 2 * n + 2
    b_n = conformal_exponent(n)
    w0 = round_webster_curvature(n)

    u = TSeries2(SpherePoly.one(n), v)
    lap_u = TSeries2(SpherePoly.zero(n), sublaplacian(v))
    integrand = u * (lap_u * ExactScalar(-b_n) + u * ExactScalar(w0))
    n0, n1, n2 = integrand.integral()
    numerator = TSeries2(SpherePoly.constant(n, n0),
                         SpherePoly.constant(n, n1),
                         SpherePoly.constant(n, n2))

    s = Fraction(2 * q_hom, q_hom - 2)
    d1 = v.integral() * ExactScalar(s)
    d2 = norm2(v) * ExactScalar(s * (s - 1) / 2)
    denominator = TSeries2(SpherePoly.one(n),
                           SpherePoly.constant(n, d1),
                           SpherePoly.constant(n, d2))
    dpow = denominator.fractional_power(Fraction(-(q_hom - 2), q_hom))
    return numerator * dpow


def conformal_first_variation(v: SpherePoly) -> ExactScalar:
    """First-order coefficient of the normalized energy along 1 + t v.

    The round structure is critical and the functional scale-invariant, so
    this vanishes identically; it is computed, not assumed.
    """
    return yamabe_energy_series(v).c1.constant_term()


def conformal_hessian(v: SpherePoly) -> ExactScalar:
    """Second variation in the conformal direction v (real, zero average).

    Spectral route, independent of the series expansion:

        2 * [ b_n * sum lambda_{p,q} ||v_pq||^2
              - (4/(Q-2)) * W0 * ||v||^2 ]

    Nonnegative, and zero exactly when v is spanned by Re z_j, Im z_j.
    """
    if not v.is_real():
        raise ValueError("conformal directions must be real-valued")
    if not v.integral().is_zero():
        raise ValueError("conformal Hessian requires zero average")
    n = v.n
    b_n = conformal_exponent(n)
    w0 = round_webster_curvature(n)
    coupling = Fraction(4, 2 * n) * w0      # (4/(Q-2)) * W0 = n + 1
    val = (ExactScalar(b_n) * sublaplacian_energy(v)
           - ExactScalar(coupling) * norm2(v))
    return val * 2
