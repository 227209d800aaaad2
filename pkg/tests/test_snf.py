from itertools import combinations, permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from iwgraph.snf import determinant, diagonal_matrix, matmul, smith_normal_form


def leibniz(a):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inv % 2 else 1
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total


def determinantal_snf(a):
    """Invariant factors as ratios of gcds of k x k minors (brute force)."""
    rows, cols = len(a), len(a[0]) if a else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, leibniz([[a[i][j] for j in cs] for i in rs]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - len(out)))
            break
        out.append(g // prev)
        prev = g
    return out


@pytest.mark.parametrize("a, d", [
    ([[2, -1], [-1, 2]], [1, 3]),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[2, 0], [0, 4]], [2, 4]),
])
def test_examples(a, d):
    assert determinantal_snf(a) == d  # oracle agrees with the hand values
    assert list(smith_normal_form(a).d) == d
    assert list(smith_normal_form(a, transforms=True).d) == d


def test_non_chain_diagonal():
    # diag(4, 6) ~ diag(2, 12)
    assert smith_normal_form([[4, 0], [0, 6]]).d == (2, 12)
    assert smith_normal_form([[4, 0], [0, 6]], transforms=True).d == (2, 12)


def test_rectangular_and_zero():
    assert smith_normal_form([[0, 0, 0], [0, 0, 0]]).d == (0, 0)
    assert smith_normal_form([[2, 4, 6]]).d == (2,)
    assert smith_normal_form([]).d == ()


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(a):
    assert list(smith_normal_form(a).d) == determinantal_snf(a)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_witnesses(a):
    res = smith_normal_form(a, transforms=True)
    d = list(res.d)
    nz = [x for x in d if x]
    assert all(y % x == 0 for x, y in zip(nz, nz[1:]))
    assert d[: len(nz)] == nz  # zeros trail
    rows, cols = len(a), len(a[0])
    assert matmul(matmul(res.u, a), res.v) == diagonal_matrix(d, rows, cols)
    assert abs(determinant(res.u)) == 1
    assert abs(determinant(res.v)) == 1
    assert res.d == smith_normal_form(a).d


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(a):
    assert determinant(a) == leibniz(a)


def test_large_entries_stay_exact():
    big = 10 ** 40
    a = [[big, 1], [1, big]]
    assert determinant(a) == big * big - 1
    assert smith_normal_form(a).d == (1, big * big - 1)
