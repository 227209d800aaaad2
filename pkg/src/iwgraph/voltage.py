"""Voltage assignments with cyclic p-power voltage groups and their derived covers.

Voltages are plain integers; at level m they are read modulo p**m.  An
integer is a p-adic integer with finitely many digits, so one assignment
describes a whole compatible tower of covers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Optional

from .graph import Graph, is_prime
from .laurent import GroupRingElement, ZERO

DEFAULT_MAX_VERTICES = 100_000


class SizeGuardError(ValueError):
    """A derived graph would exceed the configured vertex budget."""


def max_vertices_default() -> int:
    env = os.environ.get("IWG_MAX_VERTICES")
    return int(env) if env else DEFAULT_MAX_VERTICES


@dataclass(frozen=True)
class VoltageAssignment:
    """Integer voltage on each base edge in the standard orientation i -> j, i < j.

    The reversed edge carries the negated voltage.  Edges missing from
    ``volts`` get voltage 0.
    """

    base: Graph
    volts: Mapping[tuple[int, int], int]
    prime: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        full = {}
        for (i, j), a in self.volts.items():
            if i >= j:
                raise ValueError(f"voltage edge ({i}, {j}) is not in standard orientation i < j")
            if (i, j) not in self.base.edges:
                raise ValueError(f"voltage given on non-edge ({i}, {j})")
            full[(i, j)] = int(a)
        for e in self.base.edges:
            full.setdefault(e, 0)
        object.__setattr__(self, "volts", dict(sorted(full.items())))

    def voltage(self, i: int, j: int) -> int:
        """Voltage of the oriented edge i -> j."""
        if i < j:
            return self.volts[(i, j)]
        return -self.volts[(j, i)]

    def at_level(self, m: int) -> dict[tuple[int, int], int]:
        q = self.prime ** m
        return {e: a % q for e, a in self.volts.items()}


def single_voltage(base: Graph, p: int, edge: tuple[int, int] = (1, 2), value: int = 1) -> VoltageAssignment:
    """Voltage ``value`` on one edge and 0 elsewhere."""
    return VoltageAssignment(base, {edge: value}, p)


@dataclass(frozen=True)
class DerivedGraph:
    """Cover of the base on vertices (i, g), numbered g*n + i.

    ``graph`` uses the flat numbering; sheets occupy contiguous blocks.
    """

    graph: Graph
    base_n: int
    order: int  # p**m, the number of sheets

    def label(self, v: int) -> tuple[int, int]:
        g, i = divmod(v - 1, self.base_n)
        return i + 1, g

    def vertex(self, i: int, g: int) -> int:
        return (g % self.order) * self.base_n + i

    def project(self, v: int) -> int:
        return (v - 1) % self.base_n + 1

    def fiber(self, i: int) -> list[int]:
        return [self.vertex(i, g) for g in range(self.order)]


def derive(va: VoltageAssignment, m: int, max_vertices: Optional[int] = None) -> DerivedGraph:
    """Derived graph of ``va`` with voltages reduced mod p**m."""
    if m < 0:
        raise ValueError("level must be nonnegative")
    n = va.base.n
    limit = max_vertices_default() if max_vertices is None else max_vertices
    q = va.prime ** m
    if n * q > limit:
        raise SizeGuardError(f"level {m} has {n * q} vertices, over the limit of {limit}")
    edges = set()
    for (i, j), a in va.at_level(m).items():
        for g in range(q):
            u = g * n + i
            w = ((g + a) % q) * n + j
            edges.add((u, w) if u < w else (w, u))
    return DerivedGraph(Graph(n * q, frozenset(edges)), n, q)


def intermediate_cover(va: VoltageAssignment, m: int, k: int, max_vertices: Optional[int] = None) -> DerivedGraph:
    """Quotient of level m by the subgroup p**k Z/p**m Z, which is level k."""
    if not 0 <= k <= m:
        raise ValueError(f"sublevel {k} must satisfy 0 <= k <= m = {m}")
    q = va.prime ** k
    reduced = VoltageAssignment(
        va.base, {e: a % (va.prime ** m) % q for e, a in va.volts.items()}, va.prime
    )
    return derive(reduced, k, max_vertices)


def galois_action(d: DerivedGraph, g: int) -> dict[int, int]:
    """Deck transformation (i, h) -> (i, h + g) as a vertex permutation."""
    return {v: d.vertex(i, h + g) for v in range(1, d.graph.n + 1) for i, h in [d.label(v)]}


def is_automorphism(graph: Graph, perm: Mapping[int, int]) -> bool:
    return {tuple(sorted((perm[i], perm[j]))) for i, j in graph.edges} == set(graph.edges)


def voltage_laplacian(va: VoltageAssignment) -> list[list[GroupRingElement]]:
    """Voltage Laplacian D - A over Z[x, 1/x]; entry (i, j) is -x**voltage(i -> j)."""
    n = va.base.n
    deg = va.base.degrees()
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = GroupRingElement.const(deg[i])
    for (i, j), a in va.volts.items():
        out[i - 1][j - 1] = GroupRingElement.monomial(a, -1)
        out[j - 1][i - 1] = GroupRingElement.monomial(-a, -1)
    return out


def augment(m: list[list[GroupRingElement]]) -> tuple[tuple[int, ...], ...]:
    """Entrywise x -> 1."""
    return tuple(tuple(e.augmentation() for e in row) for row in m)
