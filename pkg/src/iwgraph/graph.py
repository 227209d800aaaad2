"""Simple graphs, Laplacians and Jacobians (critical / sandpile groups)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .snf import IntegerMatrix, determinant, smith_normal_form

BRUTE_FORCE_EDGE_LIMIT = 25


class DisconnectedGraphError(ValueError):
    """Raised when a computation needs a connected graph."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n.

    Edges are stored as ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} has a vertex outside 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, refusing duplicate edges (in either orientation)."""
        seen = set()
        for i, j in edges:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(1, n + 1), 2)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a simple cycle needs at least 3 vertices")
        return cls(n, frozenset((i, i + 1) for i in range(1, n)) | {(1, n)})

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg[1:]

    def relabel(self, perm: Mapping[int, int]) -> "Graph":
        """Apply the vertex bijection ``perm`` (old label -> new label)."""
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))


@dataclass(frozen=True)
class Divisor:
    """Finitely supported integer combination of vertices."""

    coefficients: Mapping[int, int]

    def degree(self) -> int:
        return sum(self.coefficients.values())

    def as_vector(self, n: int) -> list[int]:
        return [self.coefficients.get(v, 0) for v in range(1, n + 1)]


def principal_divisor(g: Graph, f: Mapping[int, int]) -> Divisor:
    """Divisor of the integer-valued function ``f``: the image of f under L."""
    L = laplacian(g)
    vec = [f.get(v, 0) for v in range(1, g.n + 1)]
    coeffs = {}
    for i in range(g.n):
        c = sum(L[i][j] * vec[j] for j in range(g.n))
        if c:
            coeffs[i + 1] = c
    return Divisor(coeffs)


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant factor decomposition Z/f1 + ... + Z/fk + Z^r of a Jacobian."""

    factors: tuple[int, ...]
    rank_of_free_part: int = 0

    def order(self) -> Optional[int]:
        if self.rank_of_free_part:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.factors]
        if self.rank_of_free_part:
            parts.append(f"Z^{self.rank_of_free_part}")
        return " + ".join(parts) if parts else "0"


def laplacian(g: Graph) -> IntegerMatrix:
    n = g.n
    L = [[0] * n for _ in range(n)]
    for i, j in g.edges:
        L[i - 1][j - 1] = -1
        L[j - 1][i - 1] = -1
        L[i - 1][i - 1] += 1
        L[j - 1][j - 1] += 1
    return tuple(tuple(r) for r in L)


def reduced_laplacian(g: Graph, removed: int = 1) -> IntegerMatrix:
    """Laplacian with the row and column of vertex ``removed`` deleted."""
    if not 1 <= removed <= g.n:
        raise ValueError(f"invalid vertex label {removed} (graph has vertices 1..{g.n})")
    k = removed - 1
    L = laplacian(g)
    return tuple(
        tuple(x for j, x in enumerate(row) if j != k) for i, row in enumerate(L) if i != k
    )


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj = g.neighbors()
    seen = {1}
    todo = deque([1])
    while todo:
        v = todo.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == g.n


def jacobian(g: Graph, removed: int = 1) -> InvariantFactors:
    """Jacobian of a connected graph as the cokernel of a reduced Laplacian."""
    if not is_connected(g):
        raise DisconnectedGraphError(
            "graph is disconnected; its Jacobian is not a finite group"
        )
    if g.n <= 1:
        return InvariantFactors(())
    snf = smith_normal_form(reduced_laplacian(g, removed))
    zeros = sum(1 for x in snf.d if x == 0)
    if zeros:  # cannot happen for a connected graph
        raise ArithmeticError("reduced Laplacian of a connected graph is singular")
    return InvariantFactors(tuple(x for x in snf.d if x > 1))


def spanning_tree_count(g: Graph) -> int:
    """Kirchhoff count: determinant of the reduced Laplacian (0 if disconnected)."""
    if g.n <= 1:
        return 1
    if not is_connected(g):
        return 0
    return determinant(reduced_laplacian(g, 1))


def brute_force_tree_count(g: Graph, max_edges: int = BRUTE_FORCE_EDGE_LIMIT) -> int:
    """Count spanning trees by enumerating all (n-1)-edge subsets."""
    m = len(g.edges)
    if m > max_edges:
        raise ValueError(f"{m} edges exceeds the brute-force limit of {max_edges}")
    if g.n <= 1:
        return 1
    edges = g.sorted_edges()
    count = 0
    for subset in combinations(edges, g.n - 1):
        parent = list(range(g.n + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i, j in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                break
            parent[ri] = rj
        else:
            # n-1 edges without a cycle span the graph
            count += 1
    return count


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def p_sylow(f: InvariantFactors, p: int) -> tuple[int, int, list[int]]:
    """(exponent, p-rank, p-primary factors) of the Sylow p-subgroup."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    parts = []
    for x in f.factors:
        v = valuation(x, p)
        if v:
            parts.append(p ** v)
    return sum(valuation(x, p) for x in parts), len(parts), parts
