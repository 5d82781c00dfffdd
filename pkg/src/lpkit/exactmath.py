"""Exact scalar, polynomial, and dense-matrix arithmetic over a pluggable field.

Two ground fields are supported: arbitrary-precision rationals (backed by
``fractions.Fraction``) and prime fields GF(p).  Every operation is exact;
there are no epsilon tolerances anywhere in this package, and floating-point
input is rejected at parse time.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DivisionByZero, FieldMismatch, ParseError, ShapeMismatch

__all__ = [
    "FieldSpec",
    "RATIONALS",
    "GF",
    "Scalar",
    "Poly",
    "Matrix",
    "rank",
    "solve_affine",
    "char_poly_oracle",
    "poly_roots_in_field",
]


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of the ground field: the rationals, or GF(p) for prime p."""

    kind: str  # "rationals" | "prime"
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.modulus is not None:
                raise ValueError("rationals carry no modulus")
        elif self.kind == "prime":
            if self.modulus is None or not _is_prime(self.modulus):
                raise ValueError(f"modulus {self.modulus!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def scalar(self, value: Union[int, Fraction, "Scalar"]) -> "Scalar":
        """Embed an integer or Fraction into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value} does not belong to {self}")
            return value
        if self.is_prime_field:
            if isinstance(value, Fraction):
                if value.denominator == 1:
                    value = value.numerator
                else:
                    num = value.numerator % self.modulus
                    den = value.denominator % self.modulus
                    if den == 0:
                        raise DivisionByZero("denominator vanishes mod p")
                    return Scalar(self, num * pow(den, -1, self.modulus) % self.modulus)
            return Scalar(self, value % self.modulus)
        return Scalar(self, Fraction(value))

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def parse_scalar(self, text: str) -> "Scalar":
        """Parse a decimal integer or "num/den" string.  Floats are rejected."""
        text = text.strip()
        if not text:
            raise ParseError("empty scalar")
        if any(ch in text for ch in ".eE"):
            raise ParseError(f"floating-point scalars are rejected: {text!r}")
        try:
            if "/" in text:
                num_s, den_s = text.split("/")
                num, den = int(num_s), int(den_s)
                if den == 0:
                    raise ParseError(f"zero denominator in {text!r}")
                if self.is_prime_field:
                    den_r = den % self.modulus
                    if den_r == 0:
                        raise ParseError(f"denominator vanishes mod {self.modulus}: {text!r}")
                    return self.scalar(num * pow(den_r, -1, self.modulus))
                return Scalar(self, Fraction(num, den))
            return self.scalar(int(text))
        except ValueError as exc:
            raise ParseError(f"bad scalar {text!r}: {exc}") from exc

    def elements(self) -> Iterable["Scalar"]:
        """All field elements; only available for prime fields."""
        if not self.is_prime_field:
            raise ValueError("the rationals are not enumerable")
        return (Scalar(self, r) for r in range(self.modulus))

    def __str__(self):
        return "Q" if self.kind == "rationals" else f"GF({self.modulus})"


RATIONALS = FieldSpec("rationals")


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


class Scalar:
    """An exact field element: a reduced Fraction, or a residue in [0, p)."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _check(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if self.field.is_prime_field:
            return Scalar(self.field, (self.value + other.value) % self.field.modulus)
        return Scalar(self.field, self.value + other.value)

    def __sub__(self, other):
        other = self._check(other)
        if self.field.is_prime_field:
            return Scalar(self.field, (self.value - other.value) % self.field.modulus)
        return Scalar(self.field, self.value - other.value)

    def __mul__(self, other):
        other = self._check(other)
        if self.field.is_prime_field:
            return Scalar(self.field, self.value * other.value % self.field.modulus)
        return Scalar(self.field, self.value * other.value)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __neg__(self):
        if self.field.is_prime_field:
            return Scalar(self.field, -self.value % self.field.modulus)
        return Scalar(self.field, -self.value)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.field.is_prime_field:
            return Scalar(self.field, pow(self.value, -1, self.field.modulus))
        return Scalar(self.field, 1 / self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.field.is_prime_field:
            return str(self.value)
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __repr__(self):
        return f"Scalar({self.field}, {self})"

    def sort_key(self):
        """Canonical ordering key: (numerator, denominator) over Q, residue over GF(p)."""
        if self.field.is_prime_field:
            return (self.value,)
        return (self.value.numerator, self.value.denominator)


class Poly:
    """A dense univariate polynomial, coefficients low degree first, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence[Scalar]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, field: FieldSpec, value) -> "Poly":
        return cls(field, [field.scalar(value)])

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, [field.zero(), field.one()])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero()

    def leading(self) -> Scalar:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading() == self.field.one()

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, Scalar):
            return Poly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def scale(self, s: Scalar) -> "Poly":
        return self * s

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, point: Scalar) -> Scalar:
        """Evaluate by Horner's rule."""
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Exact polynomial division with remainder."""
        if divisor.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dn = divisor.degree
        lead_inv = divisor.leading().inverse()
        quo = [self.field.zero()] * max(0, len(rem) - dn)
        for k in range(len(rem) - dn - 1, -1, -1):
            q = rem[k + dn] * lead_inv
            quo[k] = q
            if not q.is_zero():
                for j, dcoef in enumerate(divisor.coeffs):
                    rem[k + j] = rem[k + j] - q * dcoef
        return Poly(self.field, quo), Poly(self.field, rem[:dn])

    def deflate(self, root: Scalar) -> "Poly":
        """Divide out the factor (x - root); the root must be exact."""
        q, r = self.divmod(Poly(self.field, [-root, self.field.one()]))
        if not r.is_zero():
            raise ValueError(f"{root} is not a root")
        return q

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self.field}, {self})"


class Matrix:
    """A dense exact matrix, row-major storage."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries: Sequence[Scalar]):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ShapeMismatch("ragged rows")
            flat.extend(field.scalar(x) for x in row)
        return cls(field, nrows, ncols, flat)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        zero, one = field.zero(), field.one()
        return cls(field, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero()] * (rows * cols))

    @classmethod
    def diagonal(cls, field: FieldSpec, diag: Sequence[Scalar]) -> "Matrix":
        n = len(diag)
        zero = field.zero()
        return cls(field, n, n, [diag[i] if i == j else zero for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def __getitem__(self, ij) -> Scalar:
        return self.at(*ij)

    def row(self, i: int) -> list[Scalar]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Scalar]:
        return [self.at(i, j) for i in range(self.rows)]

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("addition shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("subtraction shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero()
        out = []
        ocols = other.cols
        for i in range(self.rows):
            arow = self.entries[i * self.cols:(i + 1) * self.cols]
            accs = [zero] * ocols
            for k, a in enumerate(arow):
                if a.is_zero():
                    continue
                brow = other.entries[k * ocols:(k + 1) * ocols]
                accs = [acc + a * b for acc, b in zip(accs, brow)]
            out.extend(accs)
        return Matrix(self.field, self.rows, ocols, out)

    def scale(self, s: Scalar) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [s * e for e in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [self.at(i, j) for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ShapeMismatch("trace of a non-square matrix")
        acc = self.field.zero()
        for i in range(self.rows):
            acc = acc + self.at(i, i)
        return acc

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.rows != other.rows:
            raise ShapeMismatch("hstack row mismatch")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return Matrix(self.field, self.rows, self.cols + other.cols, flat)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __str__(self):
        return "\n".join("  ".join(str(e) for e in self.row(i)) for i in range(self.rows))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def _echelon(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((k for k in range(r, nrows) if not rows[k][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(nrows):
            if k != r and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: Matrix) -> int:
    """Rank by exact Gauss-Jordan elimination."""
    _, pivots = _echelon([m.row(i) for i in range(m.rows)])
    return len(pivots)


def solve_affine(m: Matrix, b: Sequence[Scalar]):
    """Describe the full solution set of M x = b.

    Returns None when the system is inconsistent, otherwise a pair
    (particular solution, nullspace basis) where both are lists of Scalar
    column vectors.  An empty nullspace basis means the solution is unique.
    """
    b = list(b)
    if len(b) != m.rows:
        raise ShapeMismatch("right-hand side length mismatch")
    field = m.field
    n = m.cols
    aug = [m.row(i) + [b[i]] for i in range(m.rows)]
    if not aug:
        # no constraints: everything solves
        zero, one = field.zero(), field.one()
        basis = [[one if i == j else zero for i in range(n)] for j in range(n)]
        return [zero] * n, basis
    rows, pivots = _echelon(aug)
    if n in pivots:
        return None  # pivot in the augmented column: inconsistent
    zero = field.zero()
    particular = [zero] * n
    for r, c in enumerate(pivots):
        particular[c] = rows[r][n]
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [zero] * n
        vec[fc] = field.one()
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][fc]
        basis.append(vec)
    return particular, basis


def char_poly_oracle(m: Matrix) -> Poly:
    """Monic characteristic polynomial det(xI - M) by the Berkowitz method.

    Division-free, so it works over any ground field (including small prime
    fields), and it is entirely independent of any tridiagonal recursion.
    """
    if m.rows != m.cols:
        raise ShapeMismatch("characteristic polynomial of a non-square matrix")
    field = m.field
    one = field.one()
    rows = [m.row(i) for i in range(m.rows)]

    def berk(a: list[list[Scalar]]) -> list[Scalar]:
        # coefficients of det(xI - a), highest degree first
        n = len(a)
        if n == 0:
            return [one]
        pivot = a[0][0]
        r_row = a[0][1:]
        c_col = [a[i][0] for i in range(1, n)]
        sub = [row[1:] for row in a[1:]]
        p_sub = berk(sub)  # length n
        # Toeplitz column: 1, -pivot, -(R C), -(R B C), -(R B^2 C), ...
        col = [one, -pivot]
        vec = c_col
        for _ in range(n - 1):
            dot = field.zero()
            for x, y in zip(r_row, vec):
                dot = dot + x * y
            col.append(-dot)
            vec = [sum((row[j] * vec[j] for j in range(n - 1)), field.zero())
                   for row in sub]
        out = []
        for i in range(n + 1):
            acc = field.zero()
            for j in range(len(p_sub)):
                k = i - j
                if 0 <= k < len(col):
                    acc = acc + col[k] * p_sub[j]
            out.append(acc)
        return out

    coeffs_hi_first = berk(rows)
    return Poly(field, list(reversed(coeffs_hi_first)))


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def poly_roots_in_field(p: Poly, field: Optional[FieldSpec] = None) -> list[tuple[Scalar, int]]:
    """All roots of p lying in the ground field, with multiplicities.

    Over the rationals: rational-root search on the integer-scaled polynomial
    with exact verification.  Over GF(p): exhaustive evaluation.  Roots are
    returned in canonical order.
    """
    if field is None:
        field = p.field
    if p.field != field:
        raise FieldMismatch("polynomial field does not match requested field")
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined root set")
    roots: list[tuple[Scalar, int]] = []

    if field.is_prime_field:
        work = p
        for r in range(field.modulus):
            point = Scalar(field, r)
            mult = 0
            while not work.is_zero() and work.degree >= 1 and work(point).is_zero():
                work = work.deflate(point)
                mult += 1
            if mult:
                roots.append((point, mult))
            if work.degree < 1:
                break
        return roots

    # Rationals: factor out x^k, then candidate search p/q with p | a0, q | an.
    work = p
    zero_mult = 0
    while not work.coeff(0):
        work = Poly(field, work.coeffs[1:])
        zero_mult += 1
    if zero_mult:
        roots.append((field.zero(), zero_mult))
    if work.degree >= 1:
        from math import lcm

        denom_lcm = lcm(*(c.value.denominator for c in work.coeffs))
        ints = [c.value.numerator * (denom_lcm // c.value.denominator) for c in work.coeffs]
        a0, an = ints[0], ints[-1]
        candidates = set()
        for num in _int_divisors(a0):
            for den in _int_divisors(an):
                candidates.add(Fraction(num, den))
                candidates.add(Fraction(-num, den))
        for cand in sorted(candidates):
            point = field.scalar(cand)
            mult = 0
            while work.degree >= 1 and work(point).is_zero():
                work = work.deflate(point)
                mult += 1
            if mult:
                roots.append((point, mult))
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots
