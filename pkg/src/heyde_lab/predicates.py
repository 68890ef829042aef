"""Decision procedures for pairs of linear forms of two independent
group-valued random variables.

The central objects are instances (group, coefficients, two distributions)
for the forms L1 = a1*x1 + a2*x2 and L2 = b1*x1 + b2*x2.  The canonical
shape has a1 = a2 = b1 = I, so L1 = x1 + x2 and L2 = x1 + alpha*x2.

Conditional symmetry of L2 given L1 and independence of two forms are
decided exactly in probability space; the matching characteristic-function
equations are evaluated at a tolerance and serve as corroborating
predicates.  Any disagreement between an exact predicate and its
characteristic-function counterpart is a hard error upstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import CHAR_TOL, Distribution, char_values_list, push_forward
from .groups import (
    Endomorphism,
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    identity_endomorphism,
    neg_identity_endomorphism,
)


class NonCanonicalInstanceError(ValueError):
    """An operation requiring the canonical coefficient shape got a general
    instance; canonicalize first."""


@dataclass
class FormsInstance:
    """Coefficients and input distributions for the two linear forms."""

    group: FiniteAbelianGroup
    alpha1: Endomorphism
    alpha2: Endomorphism
    beta1: Endomorphism
    beta2: Endomorphism
    mu1: Distribution
    mu2: Distribution

    def __post_init__(self):
        parts = [self.alpha1, self.alpha2, self.beta1, self.beta2, self.mu1, self.mu2]
        if any(p.group != self.group for p in parts):
            raise ValueError("all instance components must share one group")

    @property
    def is_canonical(self) -> bool:
        ident = identity_endomorphism(self.group)
        return self.alpha1 == ident and self.alpha2 == ident and self.beta1 == ident


def canonical_instance(
    group: FiniteAbelianGroup,
    alpha: Endomorphism,
    mu1: Distribution,
    mu2: Distribution,
) -> FormsInstance:
    """L1 = x1 + x2, L2 = x1 + alpha*x2."""
    ident = identity_endomorphism(group)
    return FormsInstance(group, ident, ident, ident, alpha, mu1, mu2)


@dataclass
class JointDistribution:
    """Exact joint law of the pair (L1, L2)."""

    group: FiniteAbelianGroup
    probs: dict[tuple[GroupElement, GroupElement], Fraction]

    def __post_init__(self):
        total = sum(self.probs.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"joint probabilities sum to {total}")
        if any(p < 0 for p in self.probs.values()):
            raise ValueError("negative joint probability")
        self.probs = {k: p for k, p in self.probs.items() if p}

    def prob(self, s: GroupElement, t: GroupElement) -> Fraction:
        return self.probs.get((s, t), Fraction(0))

    def marginal_first(self) -> Distribution:
        out: dict[GroupElement, Fraction] = {}
        for (s, _t), p in self.probs.items():
            out[s] = out.get(s, Fraction(0)) + p
        return Distribution(self.group, out)

    def marginal_second(self) -> Distribution:
        out: dict[GroupElement, Fraction] = {}
        for (_s, t), p in self.probs.items():
            out[t] = out.get(t, Fraction(0)) + p
        return Distribution(self.group, out)

    def factorizes(self) -> bool:
        """Exact test that the joint is the product of its marginals."""
        m1 = self.marginal_first()
        m2 = self.marginal_second()
        for s in m1.support():
            ps = m1.probs[s]
            for t in m2.support():
                if self.prob(s, t) != ps * m2.probs[t]:
                    return False
        return True


def joint_of_forms(inst: FormsInstance) -> JointDistribution:
    """Enumerate the joint law of (L1, L2) over the support product."""
    probs: dict[tuple[GroupElement, GroupElement], Fraction] = {}
    a1, a2, b1, b2 = inst.alpha1, inst.alpha2, inst.beta1, inst.beta2
    for x1, p in inst.mu1.probs.items():
        u1 = a1(x1)
        v1 = b1(x1)
        for x2, q in inst.mu2.probs.items():
            key = (u1 + a2(x2), v1 + b2(x2))
            probs[key] = probs.get(key, Fraction(0)) + p * q
    return JointDistribution(inst.group, probs)


def conditional_symmetry_witness(
    inst: FormsInstance,
) -> tuple[GroupElement, GroupElement] | None:
    """A pair (s, t) with P(L1=s, L2=t) != P(L1=s, L2=-t), or None."""
    joint = joint_of_forms(inst)
    for (s, t), p in sorted(joint.probs.items(), key=lambda kv: (kv[0][0].coords, kv[0][1].coords)):
        if joint.prob(s, -t) != p:
            return (s, t)
    return None


def is_conditionally_symmetric(inst: FormsInstance) -> bool:
    """Exact symmetry of the conditional law of L2 given L1."""
    return conditional_symmetry_witness(inst) is None


def heyde_equation_check(inst: FormsInstance, tol: float = CHAR_TOL) -> bool:
    """Characteristic-function form of conditional symmetry (canonical
    instances only):

        f1(u+v) * f2(u + a~ v) == f1(u-v) * f2(u - a~ v)   for all u, v,

    where a~ is the adjoint of the coefficient of x2 in L2.  Compared at the
    given tolerance; must agree with :func:`is_conditionally_symmetric`.
    """
    if not inst.is_canonical:
        raise NonCanonicalInstanceError(
            "characteristic-function symmetry check requires the canonical "
            "coefficient shape; canonicalize first"
        )
    group = inst.group
    elements = group.elements
    f1 = char_values_list(inst.mu1)
    f2 = char_values_list(inst.mu2)
    index = group.index
    adj = inst.beta2.adjoint()
    adj_of = [adj(v) for v in elements]
    for u in elements:
        for v, av in zip(elements, adj_of):
            lhs = f1[index(u + v)] * f2[index(u + av)]
            rhs = f1[index(u - v)] * f2[index(u - av)]
            if abs(lhs - rhs) > tol:
                return False
    return True


def derived_forms(
    inst: FormsInstance,
) -> tuple[tuple[Endomorphism, Endomorphism], tuple[Endomorphism, Endomorphism]]:
    """Coefficients of the auxiliary forms

        M1 = (I + alpha) x1 + 2*alpha x2,   M2 = 2 x1 + (I + alpha) x2,

    which are independent whenever the canonical instance is conditionally
    symmetric.  The coefficients are endomorphisms even when I + alpha is
    not invertible.
    """
    if not inst.is_canonical:
        raise NonCanonicalInstanceError("derived forms need a canonical instance")
    group = inst.group
    ident = identity_endomorphism(group)
    alpha = inst.beta2
    i_plus = ident + alpha
    return ((i_plus, 2 * alpha), (2 * ident, i_plus))


def derived_forms_instance(inst: FormsInstance) -> FormsInstance:
    """Instance carrying (M1, M2) with the same input distributions."""
    (m11, m12), (m21, m22) = derived_forms(inst)
    return FormsInstance(inst.group, m11, m12, m21, m22, inst.mu1, inst.mu2)


def are_forms_independent(inst: FormsInstance) -> bool:
    """Exact independence of L1 and L2: the joint factorizes."""
    return joint_of_forms(inst).factorizes()


def independence_equation_check(inst: FormsInstance, tol: float = CHAR_TOL) -> bool:
    """Characteristic-function form of independence:

        f1(a1~ u + b1~ v) f2(a2~ u + b2~ v)
            == f1(a1~ u) f2(a2~ u) f1(b1~ v) f2(b2~ v)   for all u, v.

    Adjoints exist for arbitrary coefficient endomorphisms by the matrix
    compatibility congruence.  Must agree with
    :func:`are_forms_independent`.
    """
    group = inst.group
    elements = group.elements
    f1 = char_values_list(inst.mu1)
    f2 = char_values_list(inst.mu2)
    index = group.index
    a1 = inst.alpha1.adjoint()
    a2 = inst.alpha2.adjoint()
    b1 = inst.beta1.adjoint()
    b2 = inst.beta2.adjoint()
    a1u = [a1(u) for u in elements]
    a2u = [a2(u) for u in elements]
    b1v = [b1(v) for v in elements]
    b2v = [b2(v) for v in elements]
    for i in range(len(elements)):
        fu = f1[index(a1u[i])] * f2[index(a2u[i])]
        for j in range(len(elements)):
            lhs = f1[index(a1u[i] + b1v[j])] * f2[index(a2u[i] + b2v[j])]
            rhs = fu * f1[index(b1v[j])] * f2[index(b2v[j])]
            if abs(lhs - rhs) > tol:
                return False
    return True


def symmetry_forces_equal(inst: FormsInstance) -> bool:
    """Checkable consequence for the reflected form L2 = x1 - x2 on groups
    of odd order: a symmetric instance must have mu1 == mu2.

    Preconditions (odd order, canonical shape with alpha = -I, exact
    symmetry) are enforced; the return value should always be True, and a
    False return signals an implementation bug.
    """
    if inst.group.order % 2 == 0:
        raise ValueError("requires a group of odd order")
    if not inst.is_canonical or inst.beta2 != neg_identity_endomorphism(inst.group):
        raise ValueError("requires the canonical instance with alpha = -I")
    if not is_conditionally_symmetric(inst):
        raise ValueError("requires a conditionally symmetric instance")
    return inst.mu1 == inst.mu2


@dataclass
class CanonicalizationResult:
    instance: FormsInstance
    kernel: Subgroup


def canonicalize(inst: FormsInstance) -> CanonicalizationResult:
    """Reduce a general instance to an equivalent canonical one.

    With invertible a1, a2, b1, substituting y_j = a_j x_j and rescaling L2
    by a1 * b1^{-1} turns the pair into L1' = y1 + y2, L2' = y1 + alpha' y2
    with alpha' = a1 b1^{-1} b2 a2^{-1}; conditional symmetry is exactly
    preserved.  Also reports Ker(I + alpha'), the obstruction subgroup for
    the characterization.
    """
    for name, coeff in (("alpha1", inst.alpha1), ("alpha2", inst.alpha2), ("beta1", inst.beta1)):
        if not coeff.is_auto:
            raise ValueError(f"canonicalization requires {name} to be an automorphism")
    alpha_prime = (
        inst.alpha1
        @ inst.beta1.inverse()
        @ inst.beta2
        @ inst.alpha2.inverse()
    )
    new1 = push_forward(inst.mu1, inst.alpha1)
    new2 = push_forward(inst.mu2, inst.alpha2)
    canonical = canonical_instance(inst.group, alpha_prime, new1, new2)
    ker = (identity_endomorphism(inst.group) + alpha_prime).kernel()
    return CanonicalizationResult(canonical, ker)
