"""Symmetric-group combinatorics and its action on tensor-operator space.

Provides permutations, partitions, standard Young tableaux in a frozen
enumeration order, exact group-ring arithmetic, Young symmetrizers, the
orthogonalized projector recursion (including detection of projectors
that admit no scalar normalization to idempotency), and the linear action
of the group ring on operators over systems of equal spins.

All group-ring arithmetic is exact (rational coefficients); nothing in
this module touches floating point except the operator action itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

import numpy as np

from .spincore import HalfInteger, Operator


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """Bijection on {1..g}; composition (s2 s1)(i) = s2[s1(i)]."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        # images: tuple of 0-based images, images[i] = sigma(i+1) - 1
        self.images = tuple(images)
        self._hash = hash(self.images)

    @classmethod
    def identity(cls, g):
        return cls(range(g))

    @classmethod
    def from_cycles(cls, g, *cycles):
        """Build from 1-based cycles, e.g. from_cycles(3, (1, 2))."""
        images = list(range(g))
        for cycle in cycles:
            for pos, entry in enumerate(cycle):
                images[entry - 1] = cycle[(pos + 1) % len(cycle)] - 1
        return cls(images)

    @classmethod
    def transposition(cls, g, a, b):
        images = list(range(g))
        images[a - 1], images[b - 1] = b - 1, a - 1
        return cls(images)

    def __call__(self, i):
        """Image of the 1-based point i."""
        return self.images[i - 1] + 1

    def __mul__(self, other):
        """Composition self∘other: apply other first."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self):
        """Disjoint cycle decomposition (1-based), fixed points included."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i + 1)
                i = self.images[i]
            out.append(tuple(cycle))
        return out

    def n_cycles(self):
        return len(self.cycles())

    def parity(self):
        """+1 for even, -1 for odd."""
        g = len(self.images)
        return -1 if (g - self.n_cycles()) % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "Permutation(identity)"
        return "Permutation(" + "".join(str(c).replace(" ", "") for c in nontrivial) + ")"


def _compose(s2, s1):
    """Raw tuple composition, apply s1 first."""
    return tuple(s2[j] for j in s1)


# ---------------------------------------------------------------------------
# partitions and tableaux


class Partition:
    """Non-increasing positive integers summing to g."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be non-increasing")
        self.parts = parts

    @property
    def size(self):
        return sum(self.parts)

    @property
    def n_rows(self):
        return len(self.parts)

    def n_standard_tableaux(self):
        """Number of standard fillings, via the hook length formula."""
        g = self.size
        prod = 1
        for r, row_len in enumerate(self.parts):
            for c in range(row_len):
                arm = row_len - c - 1
                leg = sum(1 for rr in self.parts[r + 1 :] if rr > c)
                prod *= arm + leg + 1
        return factorial(g) // prod

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return self.parts == tuple(other)

    def __hash__(self):
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"


def partitions(g):
    """All partitions of g in the frozen catalog order (see shape_order)."""
    return [Partition(p) for p in shape_order(g)]


def _raw_partitions(g, maxpart=None):
    if g == 0:
        yield ()
        return
    maxpart = maxpart or g
    for first in range(min(g, maxpart), 0, -1):
        for rest in _raw_partitions(g - first, first):
            yield (first,) + rest


# The catalog order of shapes per g is frozen; it matches the printed
# tableau index columns and is NOT plain reverse-lexicographic for g=6.
_SHAPE_ORDER = {
    1: [(1,)],
    2: [(2,), (1, 1)],
    3: [(3,), (2, 1), (1, 1, 1)],
    4: [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)],
    5: [(5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)],
    6: [
        (6,),
        (5, 1),
        (4, 2),
        (4, 1, 1),
        (3, 3),
        (3, 2, 1),
        (2, 2, 2),
        (3, 1, 1, 1),
        (2, 2, 1, 1),
        (2, 1, 1, 1, 1),
        (1, 1, 1, 1, 1, 1),
    ],
}


def shape_order(g):
    """Frozen shape enumeration for 1 <= g <= 6; reverse-lex beyond that."""
    if g in _SHAPE_ORDER:
        return list(_SHAPE_ORDER[g])
    return list(_raw_partitions(g))


class YoungTableau:
    """Filling of a partition shape with the integers 1..g."""

    __slots__ = ("rows", "_positions")

    def __init__(self, rows):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        entries = [e for row in rows for e in row]
        g = len(entries)
        if sorted(entries) != list(range(1, g + 1)):
            raise ValueError("tableau entries must be a permutation of 1..g")
        self.rows = rows
        self._positions = None

    @property
    def shape(self):
        return Partition(len(row) for row in self.rows)

    @property
    def size(self):
        return sum(len(row) for row in self.rows)

    def is_standard(self):
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                return False
        for r in range(len(self.rows) - 1):
            upper, lower = self.rows[r], self.rows[r + 1]
            if any(upper[c] >= lower[c] for c in range(len(lower))):
                return False
        return True

    def position(self, entry):
        """(row, col) of an entry, 0-based."""
        if self._positions is None:
            self._positions = {
                e: (r, c) for r, row in enumerate(self.rows) for c, e in enumerate(row)
            }
        return self._positions[entry]

    def columns(self):
        n_cols = len(self.rows[0])
        return [
            tuple(row[c] for row in self.rows if len(row) > c) for c in range(n_cols)
        ]

    def swap_entries(self, a, b):
        return YoungTableau(
            tuple(
                tuple(b if e == a else a if e == b else e for e in row)
                for row in self.rows
            )
        )

    def row_reading_word(self):
        return tuple(e for row in self.rows for e in row)

    def __eq__(self, other):
        return isinstance(other, YoungTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "YoungTableau(" + "|".join("".join(map(str, r)) for r in self.rows) + ")"


def standard_tableaux(shape):
    """All standard tableaux of a shape, sorted by row-reading word."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    g = shape.size
    results = []

    def fill(placed, remaining_rows):
        if len(placed) == g:
            results.append(YoungTableau(placed_to_rows(placed)))
            return
        entry = len(placed) + 1
        for r in range(len(shape.parts)):
            filled_in_row = remaining_rows[r]
            if filled_in_row >= shape.parts[r]:
                continue
            if r > 0 and remaining_rows[r - 1] <= filled_in_row:
                continue
            placed.append((r, filled_in_row, entry))
            remaining_rows[r] += 1
            fill(placed, remaining_rows)
            remaining_rows[r] -= 1
            placed.pop()

    def placed_to_rows(placed):
        rows = [[None] * n for n in shape.parts]
        for r, c, e in placed:
            rows[r][c] = e
        return tuple(tuple(row) for row in rows)

    fill([], [0] * len(shape.parts))
    results.sort(key=lambda t: t.row_reading_word())
    return results


def all_standard_tableaux(g):
    """Concatenated standard tableaux over shape_order(g); 1-based global index."""
    out = []
    for shape in shape_order(g):
        out.extend(standard_tableaux(shape))
    return out


def all_tableaux(shape):
    """All (standard or not) fillings of a shape."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    g = shape.size
    out = []
    for perm in itertools.permutations(range(1, g + 1)):
        rows = []
        pos = 0
        for n in shape.parts:
            rows.append(perm[pos : pos + n])
            pos += n
        out.append(YoungTableau(rows))
    return out


# ---------------------------------------------------------------------------
# group ring


class GroupRingElement:
    """Finitely supported map from S_g to the rationals, with exact arithmetic."""

    __slots__ = ("g", "coeffs")

    def __init__(self, g, coeffs=None):
        self.g = g
        clean = {}
        for key, val in (coeffs or {}).items():
            images = key.images if isinstance(key, Permutation) else tuple(key)
            val = Fraction(val)
            if val != 0:
                clean[images] = clean.get(images, Fraction(0)) + val
        self.coeffs = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def unit(cls, g):
        return cls(g, {tuple(range(g)): Fraction(1)})

    @classmethod
    def from_permutation(cls, perm):
        return cls(len(perm.images), {perm.images: Fraction(1)})

    @property
    def is_zero(self):
        return not self.coeffs

    def support(self):
        return [Permutation(k) for k in self.coeffs]

    def coefficient(self, perm):
        key = perm.images if isinstance(perm, Permutation) else tuple(perm)
        return self.coeffs.get(key, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return GroupRingElement(self.g, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - v
        return GroupRingElement(self.g, out)

    def __neg__(self):
        return GroupRingElement(self.g, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(
                self.g, {k: v * other for k, v in self.coeffs.items()}
            )
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                key = _compose(k1, k2)
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return GroupRingElement(self.g, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.g == other.g
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if self.is_zero:
            return "GroupRingElement(0)"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"{self.coeffs[k]}*{Permutation(k)!r}")
        return " + ".join(parts)


def _subset_permutations(g, groups, signed=False):
    """Group-ring sum over permutations preserving each index group.

    With signed=True each permutation is weighted by its parity
    (used for the column antisymmetrizer).
    """
    element = {}
    per_group = [list(itertools.permutations(grp)) for grp in groups]
    for choice in itertools.product(*per_group):
        images = list(range(g))
        for grp, perm in zip(groups, choice):
            for src, dst in zip(grp, perm):
                images[src - 1] = dst - 1
        perm_obj = Permutation(images)
        weight = perm_obj.parity() if signed else 1
        element[perm_obj.images] = Fraction(weight)
    return GroupRingElement(g, element)


def young_symmetrizer(tau: YoungTableau) -> GroupRingElement:
    """e_tau = f_lambda * H_tau * V_tau, idempotent for standard tableaux."""
    g = tau.size
    f_lambda = Fraction(tau.shape.n_standard_tableaux(), factorial(g))
    H = _subset_permutations(g, tau.rows)
    V = _subset_permutations(g, tau.columns(), signed=True)
    return f_lambda * (H * V)


def shape_class_symmetrizer(shape) -> GroupRingElement:
    """f_lambda * sum of e_tau over ALL fillings of the shape."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    g = shape.size
    f_lambda = Fraction(shape.n_standard_tableaux(), factorial(g))
    total = GroupRingElement(g)
    for tau in all_tableaux(shape):
        total = total + young_symmetrizer(tau)
    return f_lambda * total


def axial_distance(tau: YoungTableau, a: int) -> int:
    """Signed step count from box a to box a+1; down/left positive."""
    r1, c1 = tau.position(a)
    r2, c2 = tau.position(a + 1)
    return (r2 - r1) - (c2 - c1)


def row_column_conflict(tau_prime: YoungTableau, tau: YoungTableau) -> bool:
    """True when two integers share a row of tau and a column of tau_prime.

    In that case e_{tau_prime} * e_{tau} vanishes identically.
    """
    for row in tau.rows:
        row_set = set(row)
        for col in tau_prime.columns():
            if len(row_set.intersection(col)) >= 2:
                return True
    return False


# ---------------------------------------------------------------------------
# orthogonalized projectors


def _scaled_int_coeffs(element):
    """Common-denominator integer form of a group-ring element."""
    denom = 1
    for v in element.coeffs.values():
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    ints = {k: int(v * denom) for k, v in element.coeffs.items()}
    return ints, denom


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _int_square(ints):
    out = {}
    items = list(ints.items())
    for k1, v1 in items:
        for k2, v2 in items:
            key = _compose(k1, k2)
            out[key] = out.get(key, 0) + v1 * v2
    return out


def _idempotent_normalization(element):
    """Solve element^2 = c * element for a scalar c.

    Returns the exact rational c, or None when no scalar is consistent
    (the "corrupted" case) or the element vanishes.
    """
    if element.is_zero:
        return None
    ints, denom = _scaled_int_coeffs(element)
    square = _int_square(ints)
    key0, val0 = next(iter(ints.items()))
    mu = Fraction(square.get(key0, 0), val0)
    for key in set(ints) | set(square):
        if Fraction(square.get(key, 0)) != mu * ints.get(key, 0):
            return None
    if mu == 0:
        return None
    return mu / denom  # element^2 = (mu/denom) * element


def orthogonalized_projectors(shape):
    """Pairwise-orthogonalized projectors for the standard tableaux of a shape.

    Returns a list of (tableau, element, status) with status "ok" or
    "corrupted".  The first projector is the Young symmetrizer itself;
    each later one is built recursively from an earlier tableau that
    differs only by swapping some adjacent letters a, a+1, scaled to be
    idempotent when a consistent scalar exists.  When no scalar works the
    unnormalized element is returned with status "corrupted".
    """
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    g = shape.size
    taus = standard_tableaux(shape)
    results = []
    for p, tau in enumerate(taus):
        if p == 0:
            results.append((tau, young_symmetrizer(tau), "ok"))
            continue
        found = None
        for t in range(p):
            for a in range(1, g):
                if taus[t].swap_entries(a, a + 1) == tau:
                    found = (t, a)
                    break
            if found:
                break
        if found is None:
            raise RuntimeError(f"no recursion partner for tableau {tau!r}")
        t, a = found
        d = axial_distance(taus[t], a)
        swap = GroupRingElement.from_permutation(Permutation.transposition(g, a, a + 1))
        provisional = (d * swap + GroupRingElement.unit(g)) * results[t][1]
        c = _idempotent_normalization(provisional)
        if c is None:
            results.append((tau, provisional, "corrupted"))
        else:
            results.append((tau, Fraction(1, 1) / c * provisional, "ok"))
    return results


# ---------------------------------------------------------------------------
# the action on operator space


def upsilon_apply(x, A: Operator) -> Operator:
    """Action of a permutation or group-ring element on an operator.

    A permutation sigma maps A_1 x ... x A_g to a product with the factor
    sigma^{-1}(i) at position i; the action extends linearly.  Implemented
    by axis permutation of the operator viewed as a rank-2g array.
    """
    spins = A.system.spins
    if len(set(J.twice for J in spins)) != 1:
        raise ValueError("the permutation action requires equal spin numbers")
    g = len(spins)
    d = spins[0].twice + 1
    tensor = A.matrix.reshape((d,) * (2 * g))

    if isinstance(x, Permutation):
        terms = [(x, Fraction(1))]
    elif isinstance(x, GroupRingElement):
        terms = [(Permutation(k), v) for k, v in x.coeffs.items()]
    else:
        raise TypeError("expected a Permutation or GroupRingElement")

    out = np.zeros_like(tensor)
    for perm, weight in terms:
        inv = perm.inverse().images
        axes = list(inv) + [g + i for i in inv]
        out = out + float(weight) * np.transpose(tensor, axes)
    dim = A.system.dim
    return Operator(A.system, out.reshape(dim, dim))


def _rank_mod_p(matrix, p):
    """Rank of an integer matrix over GF(p), vectorized elimination."""
    m = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = m.shape
    rank = 0
    row = 0
    for col in range(n_cols):
        pivots = np.nonzero(m[row:, col])[0]
        if pivots.size == 0:
            continue
        pivot = pivots[0] + row
        if pivot != row:
            m[[row, pivot]] = m[[pivot, row]]
        inv = pow(int(m[row, col]), p - 2, p)
        m[row] = (m[row] * inv) % p
        mask = np.nonzero(m[:, col])[0]
        mask = mask[mask != row]
        if mask.size:
            m[mask] = (m[mask] - m[mask, col][:, None] * m[row]) % p
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def upsilon_gram_matrix(g, J):
    """Integer Gram matrix G[s, s'] = Tr Upsilon(s^{-1} s') = n^(2 cycles)."""
    J = HalfInteger(J)
    n = J.twice + 1
    perms = [Permutation(p) for p in itertools.permutations(range(g))]
    size = len(perms)
    gram = np.zeros((size, size), dtype=np.int64)
    cycle_count = {p.images: p.n_cycles() for p in perms}
    for i, pi in enumerate(perms):
        pinv = pi.inverse()
        for k, pk in enumerate(perms):
            prod = _compose(pinv.images, pk.images)
            gram[i, k] = n ** (2 * cycle_count[prod])
    return gram


def upsilon_kernel_dim(g, J) -> int:
    """Dimension of the kernel of the group-ring representation.

    Computed as g! minus the rank of the exact integer Gram matrix of
    the permutation operators; the rank is evaluated over two large
    prime fields (a modular rank can only underestimate, and two
    independent primes make a coincidental drop vanishingly unlikely).
    """
    gram = upsilon_gram_matrix(g, J)
    primes = (2147483647, 2147483629)
    rank = max(_rank_mod_p(gram % p, p) for p in primes)
    return factorial(g) - rank


def _unscaled_symmetrizer_ints(tau):
    """H_tau * V_tau as an integer coefficient dict (no f_lambda factor)."""
    g = tau.size
    H = _subset_permutations(g, tau.rows)
    V = _subset_permutations(g, tau.columns(), signed=True)
    out = {}
    for k1, v1 in H.coeffs.items():
        for k2, v2 in V.coeffs.items():
            key = _compose(k1, k2)
            out[key] = out.get(key, 0) + int(v1 * v2)
    return {k: v for k, v in out.items() if v}


def symmetrizer_orthogonality_pairs(g, max_rows=3):
    """Ordered pairs (i', i) of distinct standard tableaux with e_i' e_i != 0.

    Indices are 1-based positions in all_standard_tableaux(g).  The scan
    covers shapes with at most ``max_rows`` rows — by default the
    symmetry types that actually occur for tensor operators of coupled
    spins 1/2 (three rows, since linear tensors span a three-dimensional
    space per spin).  Pairs are pre-filtered by the row/column criterion;
    survivors are decided by an exact integer group-ring product.
    """
    taus = [
        t for t in all_standard_tableaux(g) if t.shape.n_rows <= max_rows
    ]
    ints = [_unscaled_symmetrizer_ints(t) for t in taus]
    pairs = []
    for ip, tau_prime in enumerate(taus):
        for i, tau in enumerate(taus):
            if i == ip:
                continue
            if row_column_conflict(tau_prime, tau):
                continue
            product = {}
            for k1, v1 in ints[ip].items():
                for k2, v2 in ints[i].items():
                    key = _compose(k1, k2)
                    product[key] = product.get(key, 0) + v1 * v2
            if any(v for v in product.values()):
                pairs.append((ip + 1, i + 1))
    return pairs


def diagnostic_report(g, J="1/2"):
    """Structured diagnostics: projector statuses, kernel dim, orthogonality pairs.

    The projector and orthogonality scans cover shapes with at most three
    rows — the symmetry types that occur in tensor-operator construction
    for spins 1/2.
    """
    if g > 6:
        raise ValueError("diagnostics are supported for g <= 6")
    taus = all_standard_tableaux(g)
    index_of = {t.rows: i + 1 for i, t in enumerate(taus)}
    shapes = []
    corrupted = []
    for shape in shape_order(g):
        if len(shape) > 3:
            continue
        entries = []
        for tau, _, status in orthogonalized_projectors(shape):
            idx = index_of[tau.rows]
            entries.append(
                {"index": idx, "rows": [list(r) for r in tau.rows], "status": status}
            )
            if status == "corrupted":
                corrupted.append(idx)
        shapes.append({"shape": list(shape), "tableaux": entries})
    return {
        "g": g,
        "spin": str(HalfInteger(J)),
        "shapes": shapes,
        "corrupted": sorted(corrupted),
        "kernel_dim": upsilon_kernel_dim(g, J),
        "nonorthogonal_pairs": symmetrizer_orthogonality_pairs(g),
    }
