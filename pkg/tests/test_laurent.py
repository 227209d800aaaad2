import pytest
from hypothesis import given, settings, strategies as st

from iwgraph.laurent import ONE, X, ZERO, GroupRingElement, det_bareiss, det_permutation_sum

elements = st.dictionaries(st.integers(-4, 4), st.integers(-6, 6), max_size=4).map(GroupRingElement)


def test_zero_coefficients_dropped():
    assert GroupRingElement({0: 0, 2: 3}).terms == {2: 3}
    assert GroupRingElement({1: 2}) + GroupRingElement({1: -2}) == ZERO


def test_basic_arithmetic():
    xinv = X ** -1
    assert X * xinv == ONE
    theta = 2 - X - xinv
    assert theta.terms == {-1: -1, 0: 2, 1: -1}
    assert theta == -(X - 1) ** 2 * xinv
    assert theta.augmentation() == 0
    assert str(theta) == "-x + 2 - x^(-1)"
    assert (-X) ** -3 == -(X ** -3)


def test_fold():
    f = GroupRingElement({-1: 5, 0: 1, 3: 2, 4: 7})
    # x^-1 -> x^3 and x^4 -> 1 modulo x^4 - 1
    assert f.fold(4).terms == {0: 8, 3: 7}
    assert f.fold(1) == GroupRingElement.const(15)


def test_content():
    assert GroupRingElement({-1: -8, 0: 16, 1: -8}).content() == 8
    assert ZERO.content() == 0


def test_exact_div():
    a = (X - 1) * (3 * X + 2) * X ** -2
    assert a.exact_div(X - 1) == (3 * X + 2) * X ** -2
    with pytest.raises(ArithmeticError):
        (X + 1).exact_div(2 * X + 1)
    with pytest.raises(ArithmeticError):
        (X * X + 1).exact_div(X - 1)
    with pytest.raises(ZeroDivisionError):
        X.exact_div(ZERO)


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()
    assert (a * b).fold(3) == (a.fold(3) * b.fold(3)).fold(3)


@settings(max_examples=100, deadline=None)
@given(elements, elements.filter(bool))
def test_exact_div_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_permutation_sum(m):
    assert det_bareiss(m) == det_permutation_sum(m)


def test_det_zero_pivot_swap():
    m = [[ZERO, X], [X ** -1, ZERO]]
    assert det_bareiss(m) == -ONE
