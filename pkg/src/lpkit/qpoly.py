"""Deciding Q-polynomiality: directly from the graph, and via the main theorem.

The direct route asks whether the adjacency graph is a path.  The theorem
route re-derives the same verdict from four conditions: a leaf exists
(decided by the cosine-ratio method, deliberately sharing no code with the
graph construction), the dual eigenvalues satisfy a three-term recurrence
with parameters (beta, gamma*), the trace scalars a_i fit a quadratic in
theta*_i with parameters (gamma, omega, eta*) once the recurrence is used to
extend theta* one step past each end, and theta*_i != theta*_0 for i >= 1.
The two routes must always agree; disagreement is an implementation bug.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .delta import build_delta, path_order
from .errors import NotConstant, NotQPolynomial, RouteUnavailable
from .exactmath import Matrix, Scalar, solve_affine
from .leaf import leaf_by_ratio
from .system import Spectrum, TridiagonalSystem, realize_matrices

__all__ = [
    "RecurrenceWitness",
    "QPolyVerdict",
    "solve_condition_ii",
    "extend_dual_eigenvalues",
    "solve_condition_iii",
    "compute_delta_star",
    "verify_aw2",
    "solve_witness",
    "is_q_polynomial",
    "leonard_ordering",
]


@dataclass(frozen=True)
class RecurrenceWitness:
    """The scalars realizing the theorem's conditions (ii) and (iii).

    theta_star_ext has length d+3 and covers indices -1..d+1; entry k holds
    the dual eigenvalue with index k-1.
    """

    beta: Scalar
    gamma_star: Scalar
    gamma: Scalar
    omega: Scalar
    eta_star: Scalar
    delta_star: Scalar
    theta_star_ext: tuple[Scalar, ...]


@dataclass(frozen=True)
class QPolyVerdict:
    qpoly: bool
    route: str  # "direct" | "theorem"
    witness: Optional[RecurrenceWitness] = None
    leonard_order: Optional[tuple[int, ...]] = None
    failed_condition: Optional[str] = None  # "i" | "ii" | "iii" | "iv"


def solve_condition_ii(theta_star: Sequence[Scalar]):
    """Solution set of gamma* = t*_{i-1} - beta t*_i + t*_{i+1} over (beta, gamma*).

    Returns (particular, nullspace basis) or None.  For d <= 2 there are no
    equations and the full two-dimensional set comes back.
    """
    theta_star = list(theta_star)
    d = len(theta_star) - 1
    field = theta_star[0].field
    # rows: t*_i * beta + gamma* = t*_{i-1} + t*_{i+1}, for 1 <= i <= d-1
    rows = []
    rhs = []
    for i in range(1, d):
        rows.append([theta_star[i], field.one()])
        rhs.append(theta_star[i - 1] + theta_star[i + 1])
    m = Matrix(field, len(rows), 2, [x for row in rows for x in row])
    return solve_affine(m, rhs)


def extend_dual_eigenvalues(theta_star: Sequence[Scalar], beta: Scalar,
                            gamma_star: Scalar) -> tuple[Scalar, ...]:
    """Prepend theta*_{-1} and append theta*_{d+1} using the recurrence."""
    theta_star = list(theta_star)
    before = gamma_star + beta * theta_star[0] - theta_star[1]
    after = gamma_star + beta * theta_star[-1] - theta_star[-2]
    return tuple([before] + theta_star + [after])


def solve_condition_iii(sys: TridiagonalSystem, theta_star_ext: Sequence[Scalar]):
    """Solution set over (gamma, omega, eta*) of the trace-scalar quadratic fit.

    Equations: a_i (t*_i - t*_{i-1})(t*_i - t*_{i+1}) = gamma t*_i^2 + omega t*_i + eta*
    for 0 <= i <= d, with indices read off the extended list.
    """
    ext = list(theta_star_ext)
    field = sys.field
    rows = []
    rhs = []
    for i in range(sys.d + 1):
        t = ext[i + 1]
        rows.append([t * t, t, field.one()])
        rhs.append(sys.a[i] * (t - ext[i]) * (t - ext[i + 2]))
    m = Matrix(field, len(rows), 3, [x for row in rows for x in row])
    return solve_affine(m, rhs)


def compute_delta_star(theta_star_ext: Sequence[Scalar], beta: Scalar,
                       gamma_star: Scalar) -> Scalar:
    """The common value of t*^2_{i-1} - beta t*_{i-1} t*_i + t*^2_i - gamma*(t*_{i-1}+t*_i).

    Raises NotConstant when the extended list does not actually satisfy the
    recurrence (a violated precondition).  Also asserts the product identity
    (t*_i - t*_{i-1})(t*_i - t*_{i+1}) = (2-beta) t*^2_i - 2 gamma* t*_i - delta*.
    """
    ext = list(theta_star_ext)
    d = len(ext) - 3
    for i in range(d + 1):
        if gamma_star != ext[i] - beta * ext[i + 1] + ext[i + 2]:
            raise NotConstant(f"recurrence fails at i = {i}")
    values = []
    for i in range(d + 2):
        prev, cur = ext[i], ext[i + 1]
        values.append(prev * prev - beta * prev * cur + cur * cur
                      - gamma_star * (prev + cur))
    if any(v != values[0] for v in values):
        raise NotConstant("expression is not independent of i")
    delta_star = values[0]
    two = beta.field.scalar(2)
    for i in range(d + 1):
        t = ext[i + 1]
        lhs = (t - ext[i]) * (t - ext[i + 2])
        rhs = (two - beta) * t * t - two * gamma_star * t - delta_star
        assert lhs == rhs, "product identity violated"
    return delta_star


def verify_aw2(sys: TridiagonalSystem, spec: Spectrum, witness: RecurrenceWitness) -> bool:
    """Exact matrix check of the cubic operator identity

    As^2 A - beta As A As + A As^2 - gamma*(A As + As A) - delta* A
      = gamma As^2 + omega As + eta* I
    where As is the diagonal operator.
    """
    a_mat, astar = realize_matrices(sys)
    n = sys.d + 1
    # cheap spectral consistency check: A = sum theta_i E_i
    recon = Matrix.zero(sys.field, n, n)
    for t, e in zip(spec.theta, spec.E):
        recon = recon + e.scale(t)
    assert recon == a_mat, "spectrum inconsistent with A"
    as2 = astar @ astar
    lhs = (as2 @ a_mat - (astar @ a_mat @ astar).scale(witness.beta) + a_mat @ as2
           - (a_mat @ astar + astar @ a_mat).scale(witness.gamma_star)
           - a_mat.scale(witness.delta_star))
    rhs = (as2.scale(witness.gamma) + astar.scale(witness.omega)
           + Matrix.identity(sys.field, n).scale(witness.eta_star))
    return lhs == rhs


def solve_witness(sys: TridiagonalSystem) -> Optional[RecurrenceWitness]:
    """One exact witness for conditions (ii) and (iii) jointly, if any exists.

    The affine solution set for (beta, gamma*) is parametrized symbolically;
    since the extended dual eigenvalues are affine in those parameters, the
    joint existence over (gamma, omega, eta*) reduces to one linear solve in
    the unknowns (gamma, omega, eta*, parameters).  No sampling is involved.
    """
    field = sys.field
    sol2 = solve_condition_ii(sys.theta_star)
    if sol2 is None:
        return None
    (beta0, gstar0), free = sol2
    k = len(free)
    d = sys.d
    ext0 = list(extend_dual_eigenvalues(sys.theta_star, beta0, gstar0))
    # directional derivatives of the two extension entries per free parameter
    # (the interior entries of the extended list do not depend on the parameters)
    d_before = [fv[1] + fv[0] * sys.theta_star[0] for fv in free]  # d gamma* + d beta * t*_0
    d_after = [fv[1] + fv[0] * sys.theta_star[d] for fv in free]
    zero = field.zero()
    rows = []
    rhs = []
    for i in range(d + 1):
        t = sys.theta_star[i]
        row = [t * t, t, field.one()]
        # constant part of a_i (t*_i - t*_{i-1})(t*_i - t*_{i+1})
        const = sys.a[i] * (t - ext0[i]) * (t - ext0[i + 2])
        param_coeffs = [zero] * k
        if i == 0 and d >= 0:
            # t*_{-1} is affine in the parameters; the product stays affine
            # because (t - t*_{-1}) is the only parameter-dependent factor
            factor = sys.a[0] * (t - ext0[2])
            param_coeffs = [factor * (-dv) for dv in d_before]
        if i == d:
            factor = sys.a[d] * (t - ext0[d])
            param_coeffs = [pc + factor * (-dv) for pc, dv in zip(param_coeffs, d_after)]
        # unknowns: (gamma, omega, eta*, t_1..t_k); move parameter terms left
        rows.append(row + [-pc for pc in param_coeffs])
        rhs.append(const)
    m = Matrix(field, len(rows), 3 + k, [x for row in rows for x in row])
    joint = solve_affine(m, rhs)
    if joint is None:
        return None
    particular, _ = joint
    gamma, omega, eta_star = particular[0], particular[1], particular[2]
    params = particular[3:]
    beta = beta0
    gstar = gstar0
    for t_val, fv in zip(params, free):
        beta = beta + t_val * fv[0]
        gstar = gstar + t_val * fv[1]
    ext = extend_dual_eigenvalues(sys.theta_star, beta, gstar)
    delta_star = compute_delta_star(ext, beta, gstar)
    return RecurrenceWitness(beta, gstar, gamma, omega, eta_star, delta_star, ext)


def is_q_polynomial(sys: TridiagonalSystem, spec: Spectrum,
                    route: str = "direct") -> QPolyVerdict:
    """Decide Q-polynomiality by the requested route.

    The theorem route needs d >= 3 (for d <= 2 the recurrence condition is
    underdetermined and the characterization degenerates); RouteUnavailable
    is raised there and callers should fall back to the direct route.
    """
    if route == "direct":
        order = path_order(build_delta(sys, spec))
        witness = solve_witness(sys) if order is not None and sys.d >= 3 else None
        return QPolyVerdict(order is not None, "direct",
                            witness=witness, leonard_order=order)
    if route != "theorem":
        raise ValueError(f"unknown route {route!r}")
    if sys.d < 3:
        raise RouteUnavailable("the theorem route requires d >= 3")
    # (i) some leaf is recognized by the ratio method
    has_leaf = any(leaf_by_ratio(sys, spec, r, s).confirmed
                   for r in range(sys.d + 1) for s in range(sys.d + 1) if r != s)
    if not has_leaf:
        return QPolyVerdict(False, "theorem", failed_condition="i")
    # (ii) the dual-eigenvalue recurrence is solvable
    if solve_condition_ii(sys.theta_star) is None:
        return QPolyVerdict(False, "theorem", failed_condition="ii")
    # (iii) jointly with (ii), the trace-scalar fit is solvable
    witness = solve_witness(sys)
    if witness is None:
        return QPolyVerdict(False, "theorem", failed_condition="iii")
    # (iv) theta*_i != theta*_0 for i >= 1
    if any(sys.theta_star[i] == sys.theta_star[0] for i in range(1, sys.d + 1)):
        return QPolyVerdict(False, "theorem", failed_condition="iv")
    return QPolyVerdict(True, "theorem", witness=witness)


def leonard_ordering(sys: TridiagonalSystem, spec: Spectrum) -> tuple[int, ...]:
    """The path order of the graph, verified to yield a Leonard system.

    Re-checks both tridiagonal zero/nonzero patterns exactly after the
    reordering; raises NotQPolynomial when the graph is not a path.
    """
    g = build_delta(sys, spec)
    order = path_order(g)
    if order is None:
        raise NotQPolynomial("the adjacency graph is not a path")
    _, astar = realize_matrices(sys)
    n = sys.d + 1
    for i in range(n):
        for j in range(n):
            prod = spec.E[order[i]] @ astar @ spec.E[order[j]]
            if abs(i - j) > 1:
                assert prod.is_zero(), "reordered idempotents violate the zero pattern"
            elif abs(i - j) == 1:
                assert not prod.is_zero(), "reordered idempotents violate the nonzero pattern"
    a_mat, _ = realize_matrices(sys)
    for i in range(n):
        for j in range(n):
            if abs(i - j) > 1:
                assert a_mat.at(i, j).is_zero()
            elif abs(i - j) == 1:
                assert not a_mat.at(i, j).is_zero()
    return order
