"""Laurent polynomials over the integers, standing in for the group ring Z[Z].

The formal variable ``x`` plays the part of a generator of the infinite
cyclic (or pro-p cyclic) voltage group; ``x**k`` is the group element of
voltage ``k``.
"""

from __future__ import annotations

from functools import reduce
from itertools import permutations
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, "GroupRingElement"]


class GroupRingElement:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                acc[int(k)] = acc.get(int(k), 0) + int(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k]}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "GroupRingElement":
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: int) -> "GroupRingElement":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero element has no exponents")
        return next(iter(self._terms))

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero element has no exponents")
        return next(reversed(self._terms))

    # ring operations

    @staticmethod
    def _coerce(other: Scalar) -> "GroupRingElement":
        if isinstance(other, GroupRingElement):
            return other
        if isinstance(other, int):
            return GroupRingElement.const(other)
        return NotImplemented

    def __add__(self, other: Scalar) -> "GroupRingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "GroupRingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "GroupRingElement":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "GroupRingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return GroupRingElement(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GroupRingElement":
        if e < 0:
            if len(self._terms) == 1:
                (k, c), = self._terms.items()
                if c in (1, -1):
                    return GroupRingElement({-k * -e: c ** -e})
            raise ValueError("only units (±monomials) have negative powers")
        out = GroupRingElement.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "GroupRingElement":
        """Multiply by the monomial x**k."""
        return GroupRingElement({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: "GroupRingElement") -> "GroupRingElement":
        """Quotient in Z[x, 1/x]; raises ArithmeticError if it does not exist."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero group-ring element")
        if self.is_zero():
            return GroupRingElement()
        a_lo, b_lo = self.min_exponent(), other.min_exponent()
        num = [0] * (self.max_exponent() - a_lo + 1)
        for e, c in self._terms.items():
            num[e - a_lo] = c
        den = [0] * (other.max_exponent() - b_lo + 1)
        for e, c in other._terms.items():
            den[e - b_lo] = c
        q = _poly_exact_div(num, den)
        return GroupRingElement({i + a_lo - b_lo: c for i, c in enumerate(q)})

    # comparisons

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = GroupRingElement.const(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # derived data

    def augmentation(self) -> int:
        """Image under x -> 1 (every group element sent to the identity)."""
        return sum(self._terms.values())

    def evaluate(self, x):
        return sum(c * x ** k for k, c in self._terms.items())

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero element)."""
        return reduce(gcd, self._terms.values(), 0)

    def fold(self, modulus: int) -> "GroupRingElement":
        """Image in Z[x]/(x**modulus - 1), exponents reduced into [0, modulus)."""
        if modulus < 1:
            raise ValueError("modulus must be positive")
        return GroupRingElement((k % modulus, c) for k, c in self._terms.items())

    def __repr__(self) -> str:
        return f"GroupRingElement({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}" if k > 0 else f"x^({k})"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, index = degree; den[-1] != 0
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        if any(num):
            raise ArithmeticError("not divisible")
        return []
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("not divisible over the integers")
        t = c // lead
        q[i - dn] = t
        for j, dc in enumerate(den):
            num[i - dn + j] -= t * dc
    if any(num):
        raise ArithmeticError("nonzero remainder")
    return q


X = GroupRingElement.monomial(1)
ZERO = GroupRingElement()
ONE = GroupRingElement.const(1)


def det_bareiss(m: Sequence[Sequence[GroupRingElement]]) -> GroupRingElement:
    """Fraction-free determinant over Z[x, 1/x], an integral domain.

    Each row is first scaled by a monomial so its entries become honest
    polynomials; elimination then runs in Z[x] with exact divisions and the
    scaling is undone at the end.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    a = []
    total_shift = 0
    for row in m:
        lows = [e.min_exponent() for e in row if not e.is_zero()]
        k = -min(lows) if lows and min(lows) < 0 else 0
        total_shift += k
        a.append([e.shift(k) for e in row])
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pk = a[k][k]
        for i in range(k + 1, n):
            ai = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - ai * a[k][j]).exact_div(prev)
            a[i][k] = ZERO
        prev = pk
    return (a[n - 1][n - 1] * sign).shift(-total_shift)


def det_permutation_sum(m: Sequence[Sequence[Scalar]]) -> Scalar:
    """Leibniz expansion over all permutations; an oracle for small matrices."""
    n = len(m)
    total: Scalar = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term: Scalar = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if term == 0:
                break
        total = total + term
    return total
