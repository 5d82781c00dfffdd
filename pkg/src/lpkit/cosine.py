"""Three-term-recurrence polynomial sequences, cosine sequences, and rescaling.

The u_i sequence satisfies lambda*u_i = c_i u_{i-1} + a_i u_i + b_i u_{i+1}
with u_0 = 1; the monic p_i sequence is the same recurrence written in the
normalized basis (all superdiagonal entries 1).  The top polynomial u_{d+1}
is the characteristic polynomial of A, and the evaluations u_i(theta) at an
eigenvalue theta are the coordinates of the corresponding eigenvector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CosineVanishes, NotAnEigenvalue, ZeroTarget
from .exactmath import Poly, Scalar, char_poly_oracle
from .system import TridiagonalSystem, realize_matrices

__all__ = [
    "PolynomialSequence",
    "CosineSequence",
    "u_polys",
    "p_polys",
    "char_poly",
    "cosine_sequence",
    "rescale_superdiagonal",
    "normalize",
    "constant_row_sum",
    "rebase_to_row_sum",
]


@dataclass(frozen=True)
class PolynomialSequence:
    """u_0..u_{d+1} (or monic p_0..p_{d+1}) with exact coefficients."""

    u: tuple[Poly, ...]
    basis_tag: str  # "as_given" | "normalized"


@dataclass(frozen=True)
class CosineSequence:
    """The evaluations u_i(theta) at an eigenvalue theta; alpha_0 = 1."""

    alpha: tuple[Scalar, ...]
    theta: Scalar


def u_polys(sys: TridiagonalSystem) -> PolynomialSequence:
    """The recurrence sequence for the stored feasible basis.

    deg u_i = i; the leading coefficient of u_i is 1/(b_0...b_{i-1}) for
    i <= d and 1 for the final polynomial u_{d+1}.
    """
    field = sys.field
    lam = Poly.x(field)
    seq = [Poly.constant(field, 1)]
    prev = Poly(field, [])  # u_{-1} = 0
    for i in range(sys.d):
        # b_i u_{i+1} = (lambda - a_i) u_i - c_i u_{i-1}
        rhs = lam * seq[i] - seq[i] * sys.a[i] - prev * sys.sub(i)
        nxt = rhs * sys.sup(i).inverse()
        prev = seq[i]
        seq.append(nxt)
    # final step: u_{d+1}/(b_0...b_{d-1}) = (lambda - a_d) u_d - c_d u_{d-1}
    b_prod = field.one()
    for x in sys.b:
        b_prod = b_prod * x
    top = (lam * seq[sys.d] - seq[sys.d] * sys.a[sys.d] - prev * sys.sub(sys.d)) * b_prod
    seq.append(top)
    return PolynomialSequence(tuple(seq), "as_given")


def p_polys(sys: TridiagonalSystem) -> PolynomialSequence:
    """The monic sequence: lambda*p_i = b_{i-1}c_i p_{i-1} + a_i p_i + p_{i+1}.

    Cross-checked against u_polys via p_i = u_i * (b_0...b_{i-1}) and
    p_{d+1} = u_{d+1}.
    """
    field = sys.field
    lam = Poly.x(field)
    seq = [Poly.constant(field, 1)]
    prev = Poly(field, [])
    for i in range(sys.d + 1):
        weight = sys.sup(i - 1) * sys.sub(i) if i >= 1 else field.zero()
        nxt = lam * seq[i] - seq[i] * sys.a[i] - prev * weight
        prev = seq[i]
        seq.append(nxt)
    useq = u_polys(sys).u
    b_prod = field.one()
    for i in range(sys.d + 1):
        assert seq[i] == useq[i] * b_prod, "monic/scaled sequences disagree"
        if i <= sys.d - 1:
            b_prod = b_prod * sys.b[i]
    assert seq[sys.d + 1] == useq[sys.d + 1], "top polynomials disagree"
    return PolynomialSequence(tuple(seq), "normalized")


def char_poly(sys: TridiagonalSystem) -> Poly:
    """The top recurrence polynomial u_{d+1}; checked against the generic oracle."""
    top = u_polys(sys).u[sys.d + 1]
    a_mat, _ = realize_matrices(sys)
    assert top == char_poly_oracle(a_mat), "recurrence char poly disagrees with oracle"
    return top


def cosine_sequence(sys: TridiagonalSystem, theta: Scalar) -> CosineSequence:
    """Evaluations (u_0(theta), ..., u_d(theta)); theta must be an eigenvalue."""
    seq = u_polys(sys)
    if not seq.u[sys.d + 1](theta).is_zero():
        raise NotAnEigenvalue(f"{theta} is not an eigenvalue of A")
    return CosineSequence(tuple(u(theta) for u in seq.u[:sys.d + 1]), theta)


def rescale_superdiagonal(sys: TridiagonalSystem, targets: Sequence[Scalar]) -> TridiagonalSystem:
    """Change feasible basis so that the superdiagonal becomes ``targets``.

    The diagonal, theta_star, and the products b_{i-1} c_i are unchanged.
    """
    targets = [sys.field.scalar(t) for t in targets]
    if len(targets) != sys.d:
        raise ZeroTarget(f"need {sys.d} targets, got {len(targets)}")
    if any(t.is_zero() for t in targets):
        raise ZeroTarget("superdiagonal targets must be nonzero")
    new_c = tuple(sys.b[k] * sys.c[k] / targets[k] for k in range(sys.d))
    return TridiagonalSystem(sys.d, sys.a, tuple(targets), new_c, sys.theta_star, sys.field)


def normalize(sys: TridiagonalSystem) -> TridiagonalSystem:
    """Rescale to the normalized feasible basis (all superdiagonal entries 1)."""
    return rescale_superdiagonal(sys, [sys.field.one()] * sys.d)


def constant_row_sum(sys: TridiagonalSystem) -> Optional[Scalar]:
    """The common row sum theta of A when it exists, else None.

    When present, theta is an eigenvalue and every cosine u_i(theta) is 1;
    both facts are asserted.
    """
    sums = [sys.sub(i) + sys.a[i] + sys.sup(i) for i in range(sys.d + 1)]
    if any(s != sums[0] for s in sums):
        return None
    theta = sums[0]
    alpha = cosine_sequence(sys, theta).alpha  # raises if not an eigenvalue
    assert all(x == sys.field.one() for x in alpha), "row-sum cosines must be all ones"
    return theta


def rebase_to_row_sum(sys: TridiagonalSystem, theta: Scalar) -> TridiagonalSystem:
    """Rescale to a feasible basis in which A has constant row sum theta.

    Possible exactly when no cosine u_i(theta) vanishes; the construction
    uses superdiagonal targets b_{i-1} * u_i(theta)/u_{i-1}(theta).
    """
    alpha = cosine_sequence(sys, theta).alpha
    for i, x in enumerate(alpha):
        if x.is_zero():
            raise CosineVanishes(i)
    targets = [sys.b[k] * alpha[k + 1] / alpha[k] for k in range(sys.d)]
    out = rescale_superdiagonal(sys, targets)
    assert constant_row_sum(out) == theta, "rebased matrix must have row sum theta"
    return out
