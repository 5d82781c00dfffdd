"""Tridiagonal/diagonal pairs in a fixed feasible basis.

A system holds the data of an irreducible tridiagonal matrix A (diagonal a_i,
superdiagonal b_i, subdiagonal c_i) together with the dual eigenvalues
theta*_i that make the companion operator Astar = diag(theta*_0..theta*_d).
This module computes spectra, rank-one spectral projectors, the trace scalars
a_i and a*_i, and the concrete conjugation realizing the antiautomorphism
that fixes A and the 0-th coordinate projector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import HintInvalid, IndexOutOfRange, NotMultiplicityFree
from .exactmath import FieldSpec, Matrix, Scalar, char_poly_oracle, poly_roots_in_field, rank

__all__ = [
    "TridiagonalSystem",
    "Spectrum",
    "make_system",
    "validate_system",
    "realize_matrices",
    "compute_spectrum",
    "intersection_a",
    "dual_a",
    "dagger_matrix",
    "dagger",
]


@dataclass(frozen=True)
class TridiagonalSystem:
    """Exact data of a tridiagonal/diagonal pair in a fixed feasible basis.

    a has length d+1 (diagonal), b length d (superdiagonal), c length d
    (subdiagonal entries c_1..c_d), theta_star length d+1.  The boundary
    conventions b_d = 0 and c_0 = 0 are implicit and never stored.
    """

    d: int
    a: tuple[Scalar, ...]
    b: tuple[Scalar, ...]
    c: tuple[Scalar, ...]
    theta_star: tuple[Scalar, ...]
    field: FieldSpec

    def sub(self, i: int) -> Scalar:
        """Subdiagonal entry c_i for 1 <= i <= d, zero at the boundary."""
        return self.c[i - 1] if 1 <= i <= self.d else self.field.zero()

    def sup(self, i: int) -> Scalar:
        """Superdiagonal entry b_i for 0 <= i <= d-1, zero at the boundary."""
        return self.b[i] if 0 <= i <= self.d - 1 else self.field.zero()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of A (pairwise distinct) with their rank-one projectors."""

    theta: tuple[Scalar, ...]
    E: tuple[Matrix, ...]

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    def index_of(self, theta: Scalar) -> int:
        return self.theta.index(theta)


def make_system(field: FieldSpec, a: Sequence, b: Sequence, c: Sequence,
                theta_star: Sequence) -> TridiagonalSystem:
    """Build a system from raw entries, embedding them into the field."""
    a = tuple(field.scalar(x) for x in a)
    b = tuple(field.scalar(x) for x in b)
    c = tuple(field.scalar(x) for x in c)
    theta_star = tuple(field.scalar(x) for x in theta_star)
    return TridiagonalSystem(len(a) - 1, a, b, c, theta_star, field)


def validate_system(sys: TridiagonalSystem) -> list[str]:
    """Check irreducibility and length consistency; returns all violations found."""
    violations = []
    if sys.d < 1:
        violations.append(f"d must be at least 1, got {sys.d}")
    if len(sys.a) != sys.d + 1:
        violations.append(f"diagonal length {len(sys.a)}, expected {sys.d + 1}")
    if len(sys.b) != sys.d:
        violations.append(f"superdiagonal length {len(sys.b)}, expected {sys.d}")
    if len(sys.c) != sys.d:
        violations.append(f"subdiagonal length {len(sys.c)}, expected {sys.d}")
    if len(sys.theta_star) != sys.d + 1:
        violations.append(f"theta_star length {len(sys.theta_star)}, expected {sys.d + 1}")
    for i, x in enumerate(sys.b):
        if x.is_zero():
            violations.append(f"superdiagonal zero at {i}")
    for i, x in enumerate(sys.c):
        if x.is_zero():
            violations.append(f"subdiagonal zero at {i + 1}")
    return violations


def realize_matrices(sys: TridiagonalSystem) -> tuple[Matrix, Matrix]:
    """The matrices representing (A, Astar) in the stored feasible basis."""
    n = sys.d + 1
    zero = sys.field.zero()
    rows = []
    for i in range(n):
        row = [zero] * n
        row[i] = sys.a[i]
        if i > 0:
            row[i - 1] = sys.c[i - 1]
        if i < n - 1:
            row[i + 1] = sys.b[i]
        rows.append(row)
    a_mat = Matrix(sys.field, n, n, [x for row in rows for x in row])
    astar = Matrix.diagonal(sys.field, list(sys.theta_star))
    return a_mat, astar


def compute_spectrum(sys: TridiagonalSystem,
                     theta_hint: Optional[Sequence[Scalar]] = None) -> Spectrum:
    """Eigenvalues and primitive idempotents of A.

    With a hint, each hinted value is verified to be a root of the
    characteristic polynomial and the hint order is kept.  Without a hint,
    roots are found in the ground field and sorted canonically.  Raises
    NotMultiplicityFree when A has fewer than d+1 distinct in-field
    eigenvalues.
    """
    a_mat, _ = realize_matrices(sys)
    charpoly = char_poly_oracle(a_mat)
    n = sys.d + 1
    if theta_hint is not None:
        theta = tuple(sys.field.scalar(t) for t in theta_hint)
        if len(theta) != n:
            raise HintInvalid(f"hint has {len(theta)} values, expected {n}")
        if len(set(theta)) != n:
            raise HintInvalid("hint contains duplicates")
        for t in theta:
            if not charpoly(t).is_zero():
                raise HintInvalid(f"{t} is not an eigenvalue")
    else:
        roots = poly_roots_in_field(charpoly)
        if len(roots) != n:
            raise NotMultiplicityFree(
                f"found {len(roots)} distinct in-field eigenvalues, need {n}")
        theta = tuple(r for r, _ in roots)

    # Lagrange product: E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j)
    identity = Matrix.identity(sys.field, n)
    idempotents = []
    for i in range(n):
        acc = identity
        denom = sys.field.one()
        for j in range(n):
            if j == i:
                continue
            acc = acc @ (a_mat - identity.scale(theta[j]))
            denom = denom * (theta[i] - theta[j])
        idempotents.append(acc.scale(denom.inverse()))
    return Spectrum(theta, tuple(idempotents))


def _coordinate_projector(field: FieldSpec, n: int, i: int) -> Matrix:
    flat = [field.zero()] * (n * n)
    flat[i * n + i] = field.one()
    return Matrix(field, n, n, flat)


def intersection_a(sys: TridiagonalSystem, i: int) -> Scalar:
    """The trace scalar a_i = tr(Estar_i A); equals the (i,i)-entry of A."""
    if not 0 <= i <= sys.d:
        raise IndexOutOfRange(f"index {i} out of 0..{sys.d}")
    a_mat, _ = realize_matrices(sys)
    proj = _coordinate_projector(sys.field, sys.d + 1, i)
    traced = (proj @ a_mat).trace()
    assert traced == sys.a[i], "tr(Estar_i A) disagrees with the diagonal entry"
    return sys.a[i]


def dual_a(sys: TridiagonalSystem, spec: Spectrum, r: int) -> Scalar:
    """The trace scalar a*_r = tr(E_r Astar); also checks E_r Astar E_r = a*_r E_r."""
    if not 0 <= r <= sys.d:
        raise IndexOutOfRange(f"index {r} out of 0..{sys.d}")
    _, astar = realize_matrices(sys)
    e_r = spec.E[r]
    value = (e_r @ astar).trace()
    assert (e_r @ astar @ e_r) == e_r.scale(value), "E_r Astar E_r != a*_r E_r"
    return value


def dagger_matrix(sys: TridiagonalSystem) -> Matrix:
    """Diagonal K with K_0 = 1 and K_i = prod_{h<i} b_h / c_{h+1}.

    Conjugation by K realizes the unique antiautomorphism fixing A and the
    0-th coordinate projector: the ratio K_{i+1}/K_i = b_i/c_{i+1} makes the
    conjugated transpose reproduce the tridiagonal entries of A, and any
    antiautomorphism fixing both generators of the full matrix algebra is
    that unique one.
    """
    diag = [sys.field.one()]
    for h in range(sys.d):
        diag.append(diag[-1] * sys.b[h] / sys.c[h])
    return Matrix.diagonal(sys.field, diag)


def dagger(sys: TridiagonalSystem, x: Matrix) -> Matrix:
    """Apply the antiautomorphism: K^{-1} X^T K with K from dagger_matrix."""
    k = dagger_matrix(sys)
    k_inv = Matrix.diagonal(sys.field, [k.at(i, i).inverse() for i in range(k.rows)])
    return k_inv @ x.transpose() @ k
