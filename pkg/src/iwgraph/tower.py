"""Level-by-level Jacobian data along a cyclic voltage p-tower."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .graph import is_connected, is_prime, jacobian, p_sylow
from .voltage import DerivedGraph, VoltageAssignment, derive, max_vertices_default


class TowerConsistencyError(RuntimeError):
    """A connected tower (base and level 1 connected) produced a disconnected level."""


@dataclass(frozen=True)
class TowerSpec:
    va: VoltageAssignment
    p: int
    max_level: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.max_level < 0:
            raise ValueError("max_level must be nonnegative")
        if self.va.prime != self.p:
            raise ValueError("voltage assignment and tower use different primes")


@dataclass(frozen=True)
class LevelRecord:
    m: int
    vertices: int
    connected: bool
    e_m: Optional[int] = None
    p_rank: Optional[int] = None
    p_part_factors: Optional[tuple[int, ...]] = None
    total_order: Optional[int] = None
    factors: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "vertices": self.vertices,
            "connected": self.connected,
            "e_m": self.e_m,
            "p_rank": self.p_rank,
            "p_part_factors": None if self.p_part_factors is None else [str(x) for x in self.p_part_factors],
        }


@dataclass(frozen=True)
class TowerReport:
    spec: TowerSpec
    levels: tuple[LevelRecord, ...]
    first_disconnected_level: Optional[int] = None
    truncated_at: Optional[int] = None
    notes: tuple[str, ...] = field(default=())

    def exponents(self) -> list[int]:
        """e_m for the leading run of connected, computed levels."""
        out = []
        for rec in self.levels:
            if rec.e_m is None:
                break
            out.append(rec.e_m)
        return out

    def ranks(self) -> list[int]:
        out = []
        for rec in self.levels:
            if rec.p_rank is None:
                break
            out.append(rec.p_rank)
        return out

    def to_json(self) -> dict:
        doc = {
            "p": self.spec.p,
            "levels": [rec.to_json() for rec in self.levels],
            "first_disconnected_level": self.first_disconnected_level,
        }
        if self.truncated_at is not None:
            doc["truncated_at"] = self.truncated_at
        return doc

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "vertices", "connected", "e_m", "p_rank", "p_part_factors"])
        for rec in self.levels:
            parts = "" if rec.p_part_factors is None else " ".join(str(x) for x in rec.p_part_factors)
            w.writerow([
                rec.m,
                rec.vertices,
                str(rec.connected).lower(),
                "" if rec.e_m is None else rec.e_m,
                "" if rec.p_rank is None else rec.p_rank,
                parts,
            ])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def level_graph(spec: TowerSpec, m: int, max_vertices: Optional[int] = None) -> DerivedGraph:
    if not 0 <= m <= spec.max_level:
        raise ValueError(f"level {m} outside 0..{spec.max_level}")
    return derive(spec.va, m, max_vertices)


def _analyze_level(spec: TowerSpec, m: int, max_vertices, full: bool, poisoned: bool) -> LevelRecord:
    d = derive(spec.va, m, max_vertices)
    conn = is_connected(d.graph)
    if not conn or poisoned:
        return LevelRecord(m, d.graph.n, conn)
    J = jacobian(d.graph)
    e, r, parts = p_sylow(J, spec.p)
    if full:
        return LevelRecord(m, d.graph.n, True, e, r, tuple(parts), J.order(), J.factors)
    return LevelRecord(m, d.graph.n, True, e, r, tuple(parts))


def analyze_tower(
    spec: TowerSpec,
    max_vertices: Optional[int] = None,
    full: bool = False,
    workers: int = 1,
) -> TowerReport:
    """Derive every level 0..M and record the p-part of its Jacobian.

    Levels are re-derived from the integer voltages independently.  From
    the first disconnected level on, Jacobian fields are left empty.  A
    level over the vertex budget truncates the report there.
    """
    n = spec.va.base.n
    limit = max_vertices_default() if max_vertices is None else max_vertices
    levels = []
    for m in range(spec.max_level + 1):
        if n * spec.p ** m > limit:
            break
        levels.append(m)
    truncated = None if len(levels) == spec.max_level + 1 else len(levels)

    # connectivity is cheap; do it first so Jacobians are skipped after a break
    conn = {m: is_connected(derive(spec.va, m, limit).graph) for m in levels}
    first_bad = next((m for m in levels if not conn[m]), None)

    def work(m):
        poisoned = first_bad is not None and m >= first_bad
        return _analyze_level(spec, m, limit, full, poisoned)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            records = list(ex.map(work, levels))
    else:
        records = [work(m) for m in levels]

    if conn.get(0) and conn.get(1) and first_bad is not None:
        raise TowerConsistencyError(
            f"base and level 1 are connected but level {first_bad} is not"
        )
    notes = ()
    if truncated is not None:
        notes = (f"truncated: level {truncated} exceeds the vertex limit {limit}",)
    return TowerReport(spec, tuple(records), first_bad, truncated, notes)

