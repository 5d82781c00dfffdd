"""Instance generators, affine closure, mutation, and the instance file format.

The file format is line-oriented structured text with named fields:

    # optional comments
    field rationals            (or: field prime 101)
    d 3
    label krawtchouk-3
    a 0 0 0 0
    b 3 2 1
    c 1 2 3
    theta_star 3 1 -1 -3
    theta 3 1 -1 -3            (optional eigenvalue hint)

Scalars are decimal integers or "num/den" strings; floats are rejected.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (CharacteristicTooSmall, GenerationFailed, IndexOutOfRange,
                     ParseError, ZeroScale)
from .exactmath import GF, RATIONALS, FieldSpec, Scalar, char_poly_oracle
from .system import TridiagonalSystem, make_system, realize_matrices, validate_system

__all__ = [
    "Instance",
    "gen_krawtchouk",
    "affine_transform",
    "mutate_theta_star",
    "gen_random",
    "parse_instance",
    "serialize_instance",
]


@dataclass(frozen=True)
class Instance:
    """A system plus an optional eigenvalue hint and a free-text label."""

    system: TridiagonalSystem
    theta: Optional[tuple[Scalar, ...]] = None
    label: str = ""


def gen_krawtchouk(d: int, field: FieldSpec = RATIONALS) -> tuple[TridiagonalSystem, tuple[Scalar, ...]]:
    """The standard positive control: a_i = 0, b_i = d-i, c_i = i, theta*_i = theta_i = d-2i.

    Requires characteristic 0 or p > 2d so the eigenvalues stay distinct and
    the off-diagonal entries stay nonzero.
    """
    if field.is_prime_field and field.modulus <= 2 * d:
        raise CharacteristicTooSmall(f"need p > {2 * d}, got p = {field.modulus}")
    a = [0] * (d + 1)
    b = [d - i for i in range(d)]
    c = [i for i in range(1, d + 1)]
    theta_star = [d - 2 * i for i in range(d + 1)]
    sys = make_system(field, a, b, c, theta_star)
    theta = tuple(field.scalar(d - 2 * i) for i in range(d + 1))
    return sys, theta


def affine_transform(sys: TridiagonalSystem, u, v, u_star, v_star) -> TridiagonalSystem:
    """Apply a_i -> u a_i + v, b_i -> u b_i, c_i -> u c_i, theta*_i -> u* theta*_i + v*.

    Eigenvalues transform as theta -> u theta + v; the adjacency graph and
    all leaf verdicts are unchanged.
    """
    field = sys.field
    u, v = field.scalar(u), field.scalar(v)
    u_star, v_star = field.scalar(u_star), field.scalar(v_star)
    if u.is_zero() or u_star.is_zero():
        raise ZeroScale("scale factors must be nonzero")
    return TridiagonalSystem(
        sys.d,
        tuple(u * x + v for x in sys.a),
        tuple(u * x for x in sys.b),
        tuple(u * x for x in sys.c),
        tuple(u_star * x + v_star for x in sys.theta_star),
        field,
    )


def mutate_theta_star(sys: TridiagonalSystem, k: int, value) -> TridiagonalSystem:
    """Replace theta*_k; used to break theorem conditions deliberately."""
    if not 0 <= k <= sys.d:
        raise IndexOutOfRange(f"index {k} out of 0..{sys.d}")
    ts = list(sys.theta_star)
    ts[k] = sys.field.scalar(value)
    return TridiagonalSystem(sys.d, sys.a, sys.b, sys.c, tuple(ts), sys.field)


def _multiplicity_free(sys: TridiagonalSystem) -> bool:
    """True when A splits into d+1 distinct in-field eigenvalues.

    Over GF(p) this is the condition x^p = x mod charpoly, which avoids an
    exhaustive root search on every generator retry.
    """
    a_mat, _ = realize_matrices(sys)
    cp = char_poly_oracle(a_mat)
    field = sys.field
    if not field.is_prime_field:
        from .exactmath import poly_roots_in_field
        return len(poly_roots_in_field(cp)) == sys.d + 1
    # compute x^p mod cp by square-and-multiply on coefficient vectors
    p = field.modulus
    from .exactmath import Poly
    x = Poly.x(field)
    result = Poly.constant(field, 1)
    base = x
    e = p
    while e:
        if e & 1:
            result = (result * base).divmod(cp)[1]
        base = (base * base).divmod(cp)[1]
        e >>= 1
    return result == x


def _distinct_residues(rng: random.Random, p: int, count: int) -> list[int]:
    out: list[int] = []
    while len(out) < count:
        t = rng.randrange(p)
        if t not in out:
            out.append(t)
    return out


def _tridiagonal_from_charpoly(field: FieldSpec, target, rng: random.Random, p: int):
    """Recover diagonal a_i and products w_i = b_{i-1} c_i with char poly = target.

    Runs the Euclidean three-term-recurrence algorithm downward from the
    target and a random monic companion of one degree less.  Returns
    (a, w) or None on breakdown (degenerate remainder), which is rare.
    """
    from .exactmath import Poly

    n = target.degree  # = d + 1
    lower = Poly(field, [field.scalar(rng.randrange(p)) for _ in range(n - 1)] + [field.one()])
    hi, lo = target, lower
    a_rev = []
    w_rev = []
    for _ in range(n - 1):
        q, r = hi.divmod(lo)
        a_rev.append(-q.coeff(0))
        if r.degree != lo.degree - 1:
            return None
        w = -r.leading()
        a = r.scale(r.leading().inverse())  # monic next polynomial
        w_rev.append(w)
        hi, lo = lo, a
    q, r = hi.divmod(lo)
    if not r.is_zero():
        return None
    a_rev.append(-q.coeff(0))
    return list(reversed(a_rev)), list(reversed(w_rev))


def gen_random(d: int, field: FieldSpec, seed: int, max_retries: int = 50) -> TridiagonalSystem:
    """A random valid system over GF(p) with distinct theta* and multiplicity-free A.

    Samples d+1 distinct eigenvalues first and then recovers matching
    tridiagonal data, so multiplicity-freeness holds by construction rather
    than by rejection.  Deterministic for a given seed; raises
    GenerationFailed when retries run out.
    """
    if not field.is_prime_field:
        raise ValueError("random generation targets prime fields")
    from .exactmath import Poly

    p = field.modulus
    if p <= 2 * (d + 1):
        raise GenerationFailed(f"p = {p} too small for {d + 1} distinct eigenvalues")
    rng = random.Random(seed)
    one = field.one()
    for _ in range(max_retries):
        theta = _distinct_residues(rng, p, d + 1)
        target = Poly.constant(field, 1)
        for t in theta:
            target = target * Poly(field, [field.scalar(-t), one])
        recovered = _tridiagonal_from_charpoly(field, target, rng, p)
        if recovered is None:
            continue
        a, w = recovered
        b = [field.scalar(rng.randrange(1, p)) for _ in range(d)]
        if any(x.is_zero() for x in w):
            continue
        c = [w[k] / b[k] for k in range(d)]
        theta_star = _distinct_residues(rng, p, d + 1)
        sys = TridiagonalSystem(d, tuple(a), tuple(b), tuple(c),
                                tuple(field.scalar(t) for t in theta_star), field)
        if validate_system(sys):
            continue
        assert _multiplicity_free(sys), "construction must yield a split spectrum"
        return sys
    raise GenerationFailed(f"no multiplicity-free instance in {max_retries} tries")


def serialize_instance(inst: Instance) -> str:
    """Render an instance in the line-oriented text format."""
    sys = inst.system
    lines = []
    if sys.field.is_prime_field:
        lines.append(f"field prime {sys.field.modulus}")
    else:
        lines.append("field rationals")
    lines.append(f"d {sys.d}")
    if inst.label:
        lines.append(f"label {inst.label}")
    lines.append("a " + " ".join(str(x) for x in sys.a))
    lines.append("b " + " ".join(str(x) for x in sys.b))
    lines.append("c " + " ".join(str(x) for x in sys.c))
    lines.append("theta_star " + " ".join(str(x) for x in sys.theta_star))
    if inst.theta is not None:
        lines.append("theta " + " ".join(str(x) for x in inst.theta))
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    """Parse the text format; raises ParseError with line diagnostics."""
    field: Optional[FieldSpec] = None
    d: Optional[int] = None
    label = ""
    vectors: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "field":
                parts = rest.split()
                if parts == ["rationals"]:
                    field = RATIONALS
                elif len(parts) == 2 and parts[0] == "prime":
                    try:
                        field = GF(int(parts[1]))
                    except ValueError as exc:
                        raise ParseError(f"line {lineno}: {exc}") from exc
                else:
                    raise ParseError(f"line {lineno}: bad field descriptor {rest!r}")
            elif key == "d":
                d = int(rest)
            elif key == "label":
                label = rest
            elif key in ("a", "b", "c", "theta_star", "theta"):
                vectors[key] = rest.split()
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}")
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if field is None:
        raise ParseError("missing 'field' line")
    if d is None:
        raise ParseError("missing 'd' line")
    for key, want in (("a", d + 1), ("b", d), ("c", d), ("theta_star", d + 1)):
        if key not in vectors:
            raise ParseError(f"missing '{key}' line")
        if len(vectors[key]) != want:
            raise ParseError(f"field '{key}' has {len(vectors[key])} entries, expected {want}")
    try:
        sys = TridiagonalSystem(
            d,
            tuple(field.parse_scalar(x) for x in vectors["a"]),
            tuple(field.parse_scalar(x) for x in vectors["b"]),
            tuple(field.parse_scalar(x) for x in vectors["c"]),
            tuple(field.parse_scalar(x) for x in vectors["theta_star"]),
            field,
        )
    except ParseError as exc:
        raise ParseError(f"bad scalar value: {exc}") from exc
    theta = None
    if "theta" in vectors:
        if len(vectors["theta"]) != d + 1:
            raise ParseError(f"field 'theta' has {len(vectors['theta'])} entries, expected {d + 1}")
        theta = tuple(field.parse_scalar(x) for x in vectors["theta"])
    violations = validate_system(sys)
    if violations:
        raise ParseError("invalid system: " + "; ".join(violations))
    return Instance(sys, theta, label)
