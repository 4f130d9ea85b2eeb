"""Clebsch-Gordan coefficients, spherical harmonics, and single-spin tensors.

Clebsch-Gordan coefficients are evaluated exactly (a sign times the square
root of a rational) through Racah's closed-form sum in integer arithmetic,
and only lowered to floats at the point of use.  Spherical harmonics use
the Condon-Shortley phase convention and an upward associated-Legendre
recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .spincore import HalfInteger, Operator, SpinSystem
from .surd import SurdSum


@dataclass(frozen=True)
class CgCoefficient:
    """Exact Clebsch-Gordan coefficient: value = sign * sqrt(magnitude_squared)."""

    sign: int
    magnitude_squared: Fraction

    @property
    def value(self) -> float:
        return self.sign * math.sqrt(self.magnitude_squared)

    def to_surd(self) -> SurdSum:
        if self.sign == 0:
            return SurdSum()
        return SurdSum.sqrt(self.magnitude_squared, sign=self.sign)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


_CG_ZERO = CgCoefficient(0, Fraction(0))


def clebsch_gordan(j1, m1, j2, m2, j, m) -> CgCoefficient:
    """Condon-Shortley Clebsch-Gordan coefficient C^{jm}_{j1 m1 j2 m2}.

    All six arguments are half-integers.  Returns the exact coefficient;
    zero when the selection rule m = m1 + m2 or the triangle inequality
    fails.
    """
    j1, m1, j2, m2, j, m = (HalfInteger(x) for x in (j1, m1, j2, m2, j, m))
    for jj, mm in ((j1, m1), (j2, m2), (j, m)):
        if (jj.twice - mm.twice) % 2 or abs(mm.twice) > jj.twice:
            if (jj.twice - mm.twice) % 2:
                raise ValueError(f"m={mm} is not compatible with j={jj}")
            return _CG_ZERO
    if m1.twice + m2.twice != m.twice:
        return _CG_ZERO
    if not (abs(j1.twice - j2.twice) <= j.twice <= j1.twice + j2.twice):
        return _CG_ZERO
    if (j1.twice + j2.twice + j.twice) % 2:
        return _CG_ZERO

    # integer-valued factorial arguments (doubled quantum numbers are even sums)
    def iv(twice):
        assert twice % 2 == 0
        return twice // 2

    a = iv(j1.twice + j2.twice - j.twice)
    b = iv(j1.twice - j2.twice + j.twice)
    c = iv(-j1.twice + j2.twice + j.twice)
    if a < 0 or b < 0 or c < 0:
        return _CG_ZERO

    fact = math.factorial
    delta_sq = Fraction(
        fact(a) * fact(b) * fact(c), fact(iv(j1.twice + j2.twice + j.twice) + 1)
    )
    prefactor = (
        Fraction(j.twice + 1)
        * delta_sq
        * fact(iv(j1.twice + m1.twice))
        * fact(iv(j1.twice - m1.twice))
        * fact(iv(j2.twice + m2.twice))
        * fact(iv(j2.twice - m2.twice))
        * fact(iv(j.twice + m.twice))
        * fact(iv(j.twice - m.twice))
    )

    t2 = iv(j1.twice - m1.twice)
    t3 = iv(j2.twice + m2.twice)
    t4 = iv(j.twice - j2.twice + m1.twice)
    t5 = iv(j.twice - j1.twice - m2.twice)
    k_min = max(0, -t4, -t5)
    k_max = min(a, t2, t3)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            fact(k)
            * fact(a - k)
            * fact(t2 - k)
            * fact(t3 - k)
            * fact(t4 + k)
            * fact(t5 + k)
        )
        total += Fraction((-1) ** k, denom)
    if total == 0:
        return _CG_ZERO
    sign = 1 if total > 0 else -1
    return CgCoefficient(sign, prefactor * total * total)


def _legendre(l, m, x):
    """Associated Legendre P_l^m (m >= 0) with Condon-Shortley phase, by recurrence."""
    somx2 = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.ones_like(x)
    if m > 0:
        pmm = (-1) ** m * np.prod(np.arange(1, 2 * m, 2)) * somx2**m
    if l == m:
        return pmm
    pmmp1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pmmp1
    for ll in range(m + 2, l + 1):
        pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pmmp1

def spherical_harmonic(j, m, theta, phi):
    """Spherical harmonic Y_jm(theta, phi), Condon-Shortley phase.

    Accepts scalars or numpy arrays for the angles.
    """
    j, m = int(j), int(m)
    if abs(m) > j:
        raise ValueError(f"|m|={abs(m)} exceeds j={j}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    am = abs(m)
    norm = math.sqrt(
        (2 * j + 1) / (4 * math.pi) * math.factorial(j - am) / math.factorial(j + am)
    )
    val = norm * _legendre(j, am, np.cos(theta)) * np.exp(1j * am * phi)
    if m < 0:
        val = (-1) ** am * np.conj(val)
    if val.ndim == 0:
        return complex(val)
    return val


def single_spin_tensor(J, j, m) -> Operator:
    """Irreducible tensor operator component T_jm for a single spin J.

    Entries are (-1)^(J-m2) C^{jm}_{J m1, J -m2} at row m1, column m2,
    with the magnetic quantum numbers ordered J, J-1, ..., -J.
    """
    J = HalfInteger(J)
    j, m = int(j), int(m)
    if not (0 <= j <= J.twice):
        raise ValueError(f"rank j={j} outside 0..2J for J={J}")
    if abs(m) > j:
        raise ValueError(f"|m|={abs(m)} exceeds j={j}")
    d = J.twice + 1
    matrix = np.zeros((d, d), dtype=complex)
    for i1 in range(d):
        m1 = HalfInteger.from_twice(J.twice - 2 * i1)
        for i2 in range(d):
            m2 = HalfInteger.from_twice(J.twice - 2 * i2)
            coeff = clebsch_gordan(J, m1, J, -m2, j, m)
            if coeff.is_zero:
                continue
            phase = (-1) ** ((J.twice - m2.twice) // 2)
            matrix[i1, i2] = phase * coeff.value
    return Operator(SpinSystem([J]), matrix)


def spin_matrices(J):
    """Angular momentum matrices (Sx, Sy, Sz) for spin J, m ordered J..-J."""
    J = HalfInteger(J)
    d = J.twice + 1
    mvals = np.array([(J.twice - 2 * i) / 2.0 for i in range(d)])
    sz = np.diag(mvals).astype(complex)
    jf = float(J)
    # raising operator: <m+1|S+|m> = sqrt(J(J+1) - m(m+1))
    sp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        mlow = mvals[i]
        sp[i - 1, i] = math.sqrt(jf * (jf + 1) - mlow * (mlow + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / (2j)
    return sx, sy, sz
