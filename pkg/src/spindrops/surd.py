"""Exact arithmetic with square roots of rationals.

Values of the form sum_d q_d * sqrt(d) with rational q_d and square-free
integers d.  This is enough to check Clebsch-Gordan orthogonality and the
row-orthonormality of fractional-parentage blocks without any floating
point, since every entry involved is of the form sign * sqrt(p/q).
"""

from __future__ import annotations

import math
from fractions import Fraction


def squarefree_split(n: int):
    """Write n = s^2 * d with d square-free; returns (s, d)."""
    if n == 0:
        return 0, 1
    s, d = 1, 1
    p = 2
    while p * p <= n:
        exp = 0
        while n % p == 0:
            n //= p
            exp += 1
        s *= p ** (exp // 2)
        if exp % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= n
    return s, d


class SurdSum:
    """Exact finite sum of rational multiples of square roots of integers."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: map square-free positive int -> Fraction coefficient
        self.terms = {d: q for d, q in (terms or {}).items() if q != 0}

    @classmethod
    def from_rational(cls, q):
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q, sign=1):
        """sign * sqrt(q) for a non-negative rational q."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls()
        # sqrt(p/r) = sqrt(p*r)/r
        s, d = squarefree_split(q.numerator * q.denominator)
        return cls({d: Fraction(sign * s, q.denominator)})

    def __add__(self, other):
        out = dict(self.terms)
        for d, q in other.terms.items():
            out[d] = out.get(d, Fraction(0)) + q
        return SurdSum(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for d, q in other.terms.items():
            out[d] = out.get(d, Fraction(0)) - q
        return SurdSum(out)

    def __neg__(self):
        return SurdSum({d: -q for d, q in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdSum({d: q * other for d, q in self.terms.items()})
        out = {}
        for d1, q1 in self.terms.items():
            for d2, q2 in other.terms.items():
                s, d = squarefree_split(d1 * d2)
                out[d] = out.get(d, Fraction(0)) + q1 * q2 * s
        return SurdSum(out)

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SurdSum.from_rational(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self):
        return float(sum(float(q) * math.sqrt(d) for d, q in self.terms.items()))

    def __repr__(self):
        if self.is_zero:
            return "SurdSum(0)"
        parts = [f"{q}*sqrt({d})" if d != 1 else f"{q}" for d, q in sorted(self.terms.items())]
        return "SurdSum(" + " + ".join(parts) + ")"
