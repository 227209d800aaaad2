"""Exact integer linear algebra: Smith normal form and determinants.

Matrices are plain sequences of rows of Python ints.  Nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

IntegerMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntegerMatrix:
    """Freeze a nested sequence into an `IntegerMatrix`, checking shape and types."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    for row, src in zip(out, rows):
        for x, y in zip(row, src):
            if x != y:
                raise TypeError(f"non-integer matrix entry {y!r}")
    return out


def shape(a: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(a), (len(a[0]) if len(a) else 0)


def identity(n: int) -> IntegerMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntegerMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def diagonal_matrix(d: Sequence[int], rows: int, cols: int) -> IntegerMatrix:
    return tuple(
        tuple(d[i] if i == j and i < len(d) else 0 for j in range(cols)) for i in range(rows)
    )


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            ai = ri[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                ri[j] = (pk * ri[j] - ai * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form of an integer matrix.

    ``d`` has length ``min(rows, cols)``, is nonnegative, satisfies
    ``d[i] | d[i+1]`` and carries its zeros at the end.  When requested,
    ``u`` and ``v`` are unimodular with ``u @ a @ v == diag(d)``.
    """

    d: tuple[int, ...]
    u: Optional[IntegerMatrix] = None
    v: Optional[IntegerMatrix] = None

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


def _normalize_diagonal(values: list[int]) -> list[int]:
    # diag(a, b) ~ diag(gcd, lcm); pairwise sweep yields the divisibility chain
    vals = sorted(abs(v) for v in values if abs(v) != 1)
    k = len(vals)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = vals[i], vals[j]
            if b % a:
                g = gcd(a, b)
                vals[i], vals[j] = g, a // g * b
    return [1] * (len(values) - k) + vals


def smith_normal_form(a: Sequence[Sequence[int]], transforms: bool = False) -> SnfResult:
    """Smith normal form by exact elimination over the integers.

    Rows are held sparsely.  The pivot is the nonzero entry of least
    absolute value, ties broken by (row, col).  Division remainders move the
    pivot to a strictly smaller entry, so the loop terminates.

    Without ``transforms`` the matrix is only diagonalized and the diagonal
    is then brought into divisibility order by gcd/lcm exchanges.  With
    ``transforms`` divisibility is enforced during elimination (the classical
    row-addition fix) so that the unimodular witnesses can be recorded.
    """
    nrows, ncols = shape(a)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(a):
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        r = {j: int(x) for j, x in enumerate(row) if x}
        if r:
            rows[i] = r
            for j in r:
                cols.setdefault(j, set()).add(i)

    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if transforms else None
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if transforms else None

    def row_axpy(dst: int, src: int, q: int) -> None:
        # row[dst] -= q * row[src]
        rd = rows.setdefault(dst, {})
        for j, x in rows[src].items():
            y = rd.get(j, 0) - q * x
            if y:
                if j not in rd:
                    cols[j].add(dst)
                rd[j] = y
            elif j in rd:
                del rd[j]
                cols[j].discard(dst)
        if not rd:
            del rows[dst]
        if U is not None:
            ud, us = U[dst], U[src]
            for j in range(nrows):
                if us[j]:
                    ud[j] -= q * us[j]

    def global_pivot() -> tuple[int, int]:
        best = None
        for i in sorted(rows):
            for j in sorted(rows[i]):
                x = abs(rows[i][j])
                if best is None or x < best[0]:
                    best = (x, i, j)
                    if x == 1:
                        return i, j
        return best[1], best[2]

    pivots: list[tuple[int, int, int]] = []
    while rows:
        r, c = global_pivot()
        while True:
            v = rows[r][c]
            # clear column c below/above the pivot with row operations
            rem = []
            for i in sorted(cols[c] - {r}):
                q = rows[i][c] // v
                if q:
                    row_axpy(i, r, q)
                if i in rows and c in rows[i]:
                    rem.append((abs(rows[i][c]), i))
            if rem:
                r = min(rem)[1]
                continue
            # clear row r with column operations; column c is now zero off r
            rem = []
            for j in sorted(set(rows[r]) - {c}):
                q = rows[r][j] // v
                if q:
                    y = rows[r][j] - q * v
                    if y:
                        rows[r][j] = y
                        rem.append((abs(y), j))
                    else:
                        del rows[r][j]
                        cols[j].discard(r)
                    if V is not None:
                        for vr in V:
                            vr[j] -= q * vr[c]
                else:
                    rem.append((abs(rows[r][j]), j))
            if rem:
                c = min(rem)[1]
                continue
            if transforms:
                bad = _first_nondivisible(rows, r, v)
                if bad is not None:
                    row_axpy(r, bad, -1)
                    continue
            break
        pivots.append((r, c, v))
        del rows[r]
        cols[c].discard(r)

    if not transforms:
        d = _normalize_diagonal([v for _, _, v in pivots])
        d += [0] * (min(nrows, ncols) - len(d))
        return SnfResult(tuple(d))

    # permute pivots onto the diagonal and fix signs
    prow = [r for r, _, _ in pivots]
    pcol = [c for _, c, _ in pivots]
    prow += [i for i in range(nrows) if i not in set(prow)]
    pcol += [j for j in range(ncols) if j not in set(pcol)]
    Uo = []
    for k, i in enumerate(prow):
        sgn = -1 if k < len(pivots) and pivots[k][2] < 0 else 1
        Uo.append(tuple(sgn * x for x in U[i]))
    Vo = tuple(tuple(V[i][j] for j in pcol) for i in range(ncols))
    d = [abs(v) for _, _, v in pivots] + [0] * (min(nrows, ncols) - len(pivots))
    return SnfResult(tuple(d), tuple(Uo), Vo)


def _first_nondivisible(rows: dict[int, dict[int, int]], skip: int, v: int) -> Optional[int]:
    for i in sorted(rows):
        if i == skip:
            continue
        for x in rows[i].values():
            if x % v:
                return i
    return None
