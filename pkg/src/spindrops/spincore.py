"""Spin systems, exact half-integer quantum numbers, and dense operator algebra.

Operators are plain dense complex matrices over the joint Hilbert space of an
ordered list of spins.  The maximum dimension in scope is 64 (six spins-1/2,
or two spins with J up to 7/2), so no sparsity machinery is used.  Quantum
numbers are kept exact as doubled integers to avoid float equality tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import numpy as np


@total_ordering
class HalfInteger:
    """Exact half-integer, stored as twice its value.

    Supports arithmetic and ordering against other half-integers and
    plain ints.  Construction accepts ints, other HalfIntegers, strings
    like "3/2", and floats that are exact multiples of 1/2.
    """

    __slots__ = ("twice",)

    def __init__(self, value, *, twice=None):
        if twice is not None:
            self.twice = int(twice)
            return
        if isinstance(value, HalfInteger):
            self.twice = value.twice
        elif isinstance(value, (int, np.integer)):
            self.twice = 2 * int(value)
        elif isinstance(value, str):
            frac = Fraction(value)
            if frac.denominator not in (1, 2):
                raise ValueError(f"not a half-integer: {value!r}")
            self.twice = int(frac * 2)
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise ValueError(f"not a half-integer: {value!r}")
            self.twice = int(value * 2)
        elif isinstance(value, float):
            doubled = 2 * value
            if doubled != round(doubled):
                raise ValueError(f"not a half-integer: {value!r}")
            self.twice = int(round(doubled))
        else:
            raise TypeError(f"cannot build a half-integer from {type(value).__name__}")

    @classmethod
    def from_twice(cls, twice):
        return cls(None, twice=twice)

    def __add__(self, other):
        return HalfInteger.from_twice(self.twice + HalfInteger(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInteger.from_twice(self.twice - HalfInteger(other).twice)

    def __rsub__(self, other):
        return HalfInteger(other) - self

    def __neg__(self):
        return HalfInteger.from_twice(-self.twice)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return HalfInteger.from_twice(self.twice * int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.twice == HalfInteger(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInteger(other).twice

    def __hash__(self):
        return hash(Fraction(self.twice, 2))

    def __float__(self):
        return self.twice / 2.0

    def __int__(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    @property
    def is_integer(self):
        return self.twice % 2 == 0

    def as_fraction(self):
        return Fraction(self.twice, 2)

    def __repr__(self):
        return f"HalfInteger({str(self)!r})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def half(value) -> HalfInteger:
    """Shorthand constructor for :class:`HalfInteger`."""
    return HalfInteger(value)


class SpinSystem:
    """Ordered collection of spins with exact spin numbers.

    Parameters
    ----------
    spins : iterable
        Spin numbers J_n, each a non-negative half-integer (anything
        accepted by :class:`HalfInteger`).
    """

    __slots__ = ("spins",)

    def __init__(self, spins):
        spins = tuple(HalfInteger(J) for J in spins)
        if not spins:
            raise ValueError("a spin system needs at least one spin")
        for J in spins:
            if J.twice < 0:
                raise ValueError(f"negative spin number {J}")
        self.spins = spins

    @property
    def n_spins(self):
        return len(self.spins)

    @property
    def dims(self):
        """Per-site Hilbert-space dimensions 2J+1."""
        return tuple(J.twice + 1 for J in self.spins)

    @property
    def dim(self):
        d = 1
        for site_dim in self.dims:
            d *= site_dim
        return d

    def site_dim(self, k):
        """Dimension of site k (1-based)."""
        return self.dims[k - 1]

    def __eq__(self, other):
        return isinstance(other, SpinSystem) and self.spins == other.spins

    def __hash__(self):
        return hash(self.spins)

    def __repr__(self):
        return f"SpinSystem([{', '.join(str(J) for J in self.spins)}])"


class Operator:
    """Dense complex operator over the joint Hilbert space of a system."""

    __slots__ = ("system", "matrix")

    def __init__(self, system: SpinSystem, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (system.dim, system.dim):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match system dimension {system.dim}"
            )
        matrix = matrix.copy()
        matrix.flags.writeable = False
        self.system = system
        self.matrix = matrix

    @classmethod
    def zero(cls, system):
        return cls(system, np.zeros((system.dim, system.dim)))

    @classmethod
    def identity(cls, system):
        return cls(system, np.eye(system.dim))

    def dagger(self):
        return Operator(self.system, self.matrix.conj().T)

    def __add__(self, other):
        self._check_same_system(other)
        return Operator(self.system, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_same_system(other)
        return Operator(self.system, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return Operator(self.system, self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Operator(self.system, -self.matrix)

    def __matmul__(self, other):
        self._check_same_system(other)
        return Operator(self.system, self.matrix @ other.matrix)

    def _check_same_system(self, other):
        if self.system != other.system:
            raise ValueError("operators live on different spin systems")

    def norm(self):
        """Frobenius (Hilbert-Schmidt) norm."""
        return float(np.linalg.norm(self.matrix))

    def is_hermitian(self, tol=1e-12):
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def __repr__(self):
        return f"Operator(system={self.system!r}, dim={self.system.dim})"


def hs_inner(A: Operator, B: Operator) -> complex:
    """Hilbert-Schmidt inner product Tr(A† B)."""
    if A.system != B.system:
        raise ValueError("hs_inner requires operators on the same system")
    return complex(np.vdot(A.matrix, B.matrix))


def tensor_product(A: Operator, B: Operator) -> Operator:
    """Kronecker product on the concatenated spin system."""
    system = SpinSystem(A.system.spins + B.system.spins)
    return Operator(system, np.kron(A.matrix, B.matrix))


def dagger(A: Operator) -> Operator:
    return A.dagger()


def add(A: Operator, B: Operator) -> Operator:
    return A + B


def scale(alpha, A: Operator) -> Operator:
    return A * alpha


def multiply(A: Operator, B: Operator) -> Operator:
    """Matrix product AB."""
    return A @ B


def operator_to_dict(A: Operator) -> dict:
    """JSON-ready form of an operator; floats survive the round trip bit-exactly."""
    return {
        "dims": list(A.system.dims),
        "re": A.matrix.real.tolist(),
        "im": A.matrix.imag.tolist(),
    }


def operator_from_dict(data: dict) -> Operator:
    dims = data["dims"]
    spins = [HalfInteger.from_twice(d - 1) for d in dims]
    system = SpinSystem(spins)
    matrix = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
    return Operator(system, matrix)


def operator_to_json(A: Operator) -> str:
    return json.dumps(operator_to_dict(A))


def operator_from_json(text: str) -> Operator:
    return operator_from_dict(json.loads(text))
