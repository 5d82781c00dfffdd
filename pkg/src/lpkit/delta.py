"""The adjacency graph on eigenspace indices induced by the diagonal operator.

Vertices are 0..d; vertices i != j are adjacent exactly when
E_i Astar E_j != 0.  The graph is symmetric (the antiautomorphism argument),
and its shape decides everything: the pair is Q-polynomial precisely when
the graph is a path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .exactmath import Matrix, rank
from .system import Spectrum, TridiagonalSystem, realize_matrices

__all__ = [
    "DeltaGraph",
    "build_delta",
    "is_connected",
    "path_order",
    "leaves",
    "astar_invariance",
]


@dataclass(frozen=True)
class DeltaGraph:
    """Symmetric loop-free adjacency on vertices 0..n-1."""

    n: int
    adj: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        for i in range(self.n):
            if self.adj[i][i]:
                raise ValueError("loops are not allowed")
            for j in range(self.n):
                if self.adj[i][j] != self.adj[j][i]:
                    raise ValueError("adjacency must be symmetric")

    def degree(self, i: int) -> int:
        return sum(self.adj[i])

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.adj[i][j]]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                if self.adj[i][j]]


def build_delta(sys: TridiagonalSystem, spec: Spectrum) -> DeltaGraph:
    """Adjacency from exact zero tests of the products E_i Astar E_j."""
    _, astar = realize_matrices(sys)
    n = sys.d + 1
    nonzero = [[False] * n for _ in range(n)]
    for i in range(n):
        left = spec.E[i] @ astar
        for j in range(n):
            if i != j:
                nonzero[i][j] = not (left @ spec.E[j]).is_zero()
    for i in range(n):
        for j in range(n):
            # symmetry is a theorem, not an input assumption; cross-check it
            assert nonzero[i][j] == nonzero[j][i], "asymmetric adjacency"
    return DeltaGraph(n, tuple(tuple(row) for row in nonzero))


def is_connected(g: DeltaGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def path_order(g: DeltaGraph) -> Optional[tuple[int, ...]]:
    """Vertex order along the graph when it is a path, else None.

    Of the two endpoint-starting orders, the one starting at the smaller
    vertex label is returned.  A single vertex is trivially a path.
    """
    if g.n == 1:
        return (0,)
    if not is_connected(g):
        return None
    if len(g.edges()) != g.n - 1:
        return None
    degrees = [g.degree(i) for i in range(g.n)]
    if any(deg > 2 for deg in degrees):
        return None
    endpoints = [i for i, deg in enumerate(degrees) if deg == 1]
    if len(endpoints) != 2:
        return None
    order = [min(endpoints)]
    prev = None
    while len(order) < g.n:
        nxt = [w for w in g.neighbors(order[-1]) if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order)


def leaves(g: DeltaGraph) -> set[int]:
    """Vertices adjacent to at most one vertex (isolated vertices included)."""
    return {i for i in range(g.n) if g.degree(i) <= 1}


def astar_invariance(sys: TridiagonalSystem, spec: Spectrum, s: Iterable[int]) -> bool:
    """Decide whether Astar maps the span of the E_h eigenspaces (h in s) into itself.

    Uses column-space rank tests only; idempotent columns are basis-dependent,
    so basis equality would be wrong here.
    """
    s = sorted(set(s))
    if not s:
        return True
    _, astar = realize_matrices(sys)
    basis = spec.E[s[0]]
    for h in s[1:]:
        basis = basis.hstack(spec.E[h])
    return rank(basis) == rank(basis.hstack(astar @ basis))
