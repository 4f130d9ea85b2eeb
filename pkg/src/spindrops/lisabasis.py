"""Construction of the symmetry-adapted tensor-operator basis.

Basis operators for N coupled spins are organized into droplets: the
identity droplet, one droplet per single spin, and droplets labeled by
the participating spin subset plus (for three or more involved spins 1/2)
a standard Young tableau describing the permutation symmetry, with roman
sublabels where one tableau carries two independent droplets.  For a pair
of arbitrary spin numbers the droplets are labeled by the ranks of the
single-spin parent tensors instead.

Two construction routes are provided for spins 1/2:

* ``cfp``: iterative rank coupling followed by the embedded
  fractional-parentage blocks (works for all supported sizes).
* ``projection``: iterative rank coupling followed by projection with
  orthogonalized Young-symmetrizer projectors (fails by design where a
  projector cannot be normalized or a tableau carries two droplets).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .angular import clebsch_gordan, single_spin_tensor
from .cfp_data import CFP_BLOCKS, block_matrix_floats, sign_factor
from .errors import ScopeError
from .spincore import HalfInteger, Operator, SpinSystem, half, hs_inner
from .symgroup import (
    Partition,
    Permutation,
    YoungTableau,
    all_standard_tableaux,
    orthogonalized_projectors,
    shape_order,
    upsilon_apply,
)
from .tolerances import BASIS

_ADHOC_ORDER = {None: 0, "I": 1, "II": 2}


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class TensorLabel:
    """Identity of one basis operator.

    ``sites`` lists the involved spins (1-based, ascending; empty for the
    identity operator).  ``tableau`` gives the rows of the standard Young
    tableau for spin-1/2 subsets, ``parents`` the single-spin parent ranks
    for the two-qudit construction; either may be absent.  ``adhoc`` is a
    roman sublabel ("I"/"II") where one tableau or parent pair carries two
    droplets.
    """

    sites: tuple
    j: int
    m: int
    tableau: tuple = None
    adhoc: str = None
    parents: tuple = None

    def droplet(self):
        return DropletLabel(
            sites=self.sites,
            tableau=self.tableau if len(self.sites) >= 3 else None,
            adhoc=self.adhoc,
            parents=self.parents,
        )

    @property
    def name(self):
        return f"{self.droplet().name};j={self.j},m={self.m}"

    def to_dict(self):
        return {
            "sites": list(self.sites),
            "j": self.j,
            "m": self.m,
            "tableau": [list(r) for r in self.tableau] if self.tableau else None,
            "adhoc": self.adhoc,
            "parents": list(self.parents) if self.parents else None,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            sites=tuple(d["sites"]),
            j=d["j"],
            m=d["m"],
            tableau=tuple(tuple(r) for r in d["tableau"]) if d.get("tableau") else None,
            adhoc=d.get("adhoc"),
            parents=tuple(d["parents"]) if d.get("parents") else None,
        )


@dataclass(frozen=True)
class DropletLabel:
    """Identity of one droplet (a tensor label without rank and order)."""

    sites: tuple
    tableau: tuple = None
    adhoc: str = None
    parents: tuple = None

    @property
    def name(self):
        if not self.sites:
            return "Id"
        body = "{" + ",".join(str(s) for s in self.sites) + "}"
        if self.parents is not None:
            body += "," + ",".join(str(q) for q in self.parents)
        if self.tableau is not None:
            g = len(self.sites)
            body += f",tau{_tableau_index(g, self.tableau)}"
        if self.adhoc is not None:
            body += f",{self.adhoc}"
        return body

    def to_dict(self):
        return {
            "sites": list(self.sites),
            "tableau": [list(r) for r in self.tableau] if self.tableau else None,
            "adhoc": self.adhoc,
            "parents": list(self.parents) if self.parents else None,
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            sites=tuple(d["sites"]),
            tableau=tuple(tuple(r) for r in d["tableau"]) if d.get("tableau") else None,
            adhoc=d.get("adhoc"),
            parents=tuple(d["parents"]) if d.get("parents") else None,
        )


_TABLEAU_INDEX_CACHE = {}


def _tableau_index(g, rows):
    """1-based position of a tableau in the frozen enumeration of size g."""
    if g not in _TABLEAU_INDEX_CACHE:
        _TABLEAU_INDEX_CACHE[g] = {
            t.rows: i + 1 for i, t in enumerate(all_standard_tableaux(g))
        }
    return _TABLEAU_INDEX_CACHE[g][tuple(tuple(r) for r in rows)]


# ---------------------------------------------------------------------------
# symmetrized tensor families for spins 1/2


@dataclass
class SymmetrizedTensor:
    """One irreducible tensor of linearity g with all its order components.

    ``components[m]`` is the 2**g x 2**g matrix of the order-m component.
    """

    j: int
    tableau: YoungTableau = None
    adhoc: str = None
    parents: tuple = None
    components: dict = field(default_factory=dict)

    def scaled(self, factor):
        return SymmetrizedTensor(
            j=self.j,
            tableau=self.tableau,
            adhoc=self.adhoc,
            parents=self.parents,
            components={m: factor * c for m, c in self.components.items()},
        )


@dataclass
class ProvisionalTensor:
    """Rank-coupled tensor before symmetrization at step g."""

    parent: SymmetrizedTensor
    j: int
    components: dict


def _single_spin_half_components(j):
    return {m: single_spin_tensor(half("1/2"), j, m).matrix for m in range(-j, j + 1)}


def chain_cg(parent: SymmetrizedTensor, g: int):
    """Couple a (g-1)-linear spin-1/2 tensor with one more spin.

    Returns the provisional tensors of all reachable ranks, built with
    exact vector-coupling coefficients.
    """
    j1 = parent.j
    spin_tensors = _single_spin_half_components(1)
    dim = 2 ** g
    out = []
    for j in range(abs(j1 - 1), j1 + 2):
        components = {}
        for m in range(-j, j + 1):
            acc = np.zeros((dim, dim), dtype=complex)
            for k in (-1, 0, 1):
                m1 = m - k
                if abs(m1) > j1:
                    continue
                cg = clebsch_gordan(j1, m1, 1, k, j, m).value
                if cg == 0:
                    continue
                acc += cg * np.kron(parent.components[m1], spin_tensors[k])
            components[m] = acc
        out.append(ProvisionalTensor(parent=parent, j=j, components=components))
    return out


def _add_box(tau: YoungTableau, out_shape, g):
    """Extend a standard tableau by the entry g to reach the given shape."""
    rows = [list(r) for r in tau.rows]
    parts = list(tau.shape.parts)
    out = list(out_shape)
    if len(out) == len(parts) + 1:
        rows.append([g])
        return YoungTableau(rows)
    for r in range(len(parts)):
        if out[r] == parts[r] + 1:
            rows[r].append(g)
            return YoungTableau(rows)
    raise ValueError(f"{out_shape} does not extend {tuple(parts)}")


def symmetrize_cfp(provisionals, g):
    """Symmetrize provisional tensors with the fractional-parentage blocks.

    The provisional tensors must all stem from step g and are grouped per
    parent tableau; each block maps the group with matching ranks onto
    fully symmetry-adapted g-linear tensors.
    """
    by_parent = {}
    for p in provisionals:
        by_parent.setdefault(p.parent.tableau.rows, {})[(p.parent.j, p.j)] = p
    out = []
    for (gg, j, parent_shape), block in sorted(
        CFP_BLOCKS.items(), key=lambda kv: (kv[0][1], kv[0][2])
    ):
        if gg != g:
            continue
        matrix = block_matrix_floats((gg, j, parent_shape))
        for parent_rows, ranked in by_parent.items():
            if YoungTableau(parent_rows).shape.parts != parent_shape:
                continue
            cols = [ranked[(q, j)] for q in block["inputs"]]
            for row, (out_shape, adhoc) in zip(matrix, block["rows"]):
                components = {}
                for m in range(-j, j + 1):
                    acc = np.zeros_like(cols[0].components[next(iter(cols[0].components))])
                    for coeff, col in zip(row, cols):
                        acc = acc + coeff * col.components[m]
                    components[m] = acc
                out.append(
                    SymmetrizedTensor(
                        j=j,
                        tableau=_add_box(YoungTableau(parent_rows), out_shape, g),
                        adhoc=adhoc,
                        components=components,
                    )
                )
    out.sort(key=lambda t: (_tableau_index(g, t.tableau.rows), _ADHOC_ORDER[t.adhoc], t.j))
    return out


def symmetrize_projection(provisionals, g):
    """Symmetrize provisional tensors with orthogonalized Young projectors.

    For each usable standard tableau and each rank, the projector image
    inside the span of the provisional tensors is extracted; it must be at
    most one-dimensional.  Raises :class:`ScopeError` when a required
    projector cannot be normalized or a tableau would carry two
    independent tensors of the same rank (use the ``cfp`` method there).
    """
    ranks = sorted({p.j for p in provisionals})
    by_rank = {j: [p for p in provisionals if p.j == j] for j in ranks}
    out = []
    for shape in shape_order(g):
        if Partition(shape).n_rows > 3:
            continue
        for tau, projector, status in orthogonalized_projectors(shape):
            for j in ranks:
                group = by_rank[j]
                top = [p.components[j].ravel() for p in group]
                basis = np.array(top)
                gram = basis.conj() @ basis.T
                images = []
                for p in group:
                    if status == "corrupted":
                        # only an error if this tableau actually supports rank j;
                        # detect via the non-orthogonalized class projector span
                        pass
                    img = upsilon_apply(projector, _as_operator(p.components[j], g))
                    images.append(img.matrix.ravel())
                coeffs = np.linalg.solve(gram, np.array(images).conj() @ basis.T).T
                u, s, _vh = np.linalg.svd(coeffs)
                rank = int(np.sum(s > 1e-8 * max(1.0, s[0] if len(s) else 0.0)))
                if rank == 0:
                    continue
                if status == "corrupted":
                    raise ScopeError(
                        f"projector for tableau {tau.rows} cannot be normalized; "
                        "use the cfp construction method"
                    )
                if rank > 1:
                    raise ScopeError(
                        f"tableau {tau.rows} carries {rank} independent rank-{j} "
                        "tensors; use the cfp construction method"
                    )
                vec = u[:, 0]
                # deterministic phase: largest-magnitude coefficient real positive
                k = int(np.argmax(np.abs(vec)))
                vec = vec * (abs(vec[k]) / vec[k])
                components = {}
                for m in range(-j, j + 1):
                    acc = np.zeros_like(group[0].components[m])
                    for c, p in zip(vec, group):
                        acc = acc + c * p.components[m]
                    components[m] = acc
                norm = np.sqrt(np.vdot(components[j], components[j]).real)
                components = {m: c / norm for m, c in components.items()}
                out.append(SymmetrizedTensor(j=j, tableau=tau, components=components))
    out.sort(key=lambda t: (_tableau_index(g, t.tableau.rows), t.j))
    return out


def _as_operator(matrix, g):
    return Operator(SpinSystem((half("1/2"),) * g), matrix)


def apply_sign_convention(family, g):
    """Multiply the frozen per-tensor phases onto a g-linear family."""
    out = []
    for t in family:
        idx = _tableau_index(g, t.tableau.rows)
        out.append(t.scaled(sign_factor(g, t.j, idx)))
    return out


def build_spin_half_families(n, method):
    """Signed symmetrized tensor families for every linearity up to n.

    ``method`` is "cfp" or "projection".  The chain always couples the
    unsigned tensors; the sign convention is applied to each returned
    family.  With the projection method each family is phase-anchored to
    the cfp construction so both routes produce identical operators.
    """
    unsigned = {}
    anchored = {}
    base = [SymmetrizedTensor(j=1, tableau=YoungTableau([[1]]),
                              components=_single_spin_half_components(1))]
    unsigned[1] = base
    anchored[1] = base
    for g in range(2, n + 1):
        provisionals = [
            p for parent in unsigned[g - 1] for p in chain_cg(parent, g)
        ]
        cfp_family = symmetrize_cfp(provisionals, g)
        unsigned[g] = cfp_family
        if method == "projection":
            proj_family = symmetrize_projection(provisionals, g)
            anchored[g] = [_anchor_phase(t, cfp_family) for t in proj_family]
        else:
            anchored[g] = cfp_family
    return {g: apply_sign_convention(anchored[g], g) for g in anchored}


def _anchor_phase(tensor, cfp_family):
    """Align a projection-built tensor's phase with its cfp counterpart."""
    for ref in cfp_family:
        if ref.tableau.rows == tensor.tableau.rows and ref.j == tensor.j:
            overlap = np.vdot(ref.components[tensor.j], tensor.components[tensor.j])
            if abs(overlap) < 1.0 - 1e-6:
                raise ScopeError(
                    f"projection and cfp tensors disagree for tableau "
                    f"{tensor.tableau.rows}, rank {tensor.j}"
                )
            return tensor.scaled(abs(overlap) / overlap)
    raise ScopeError(
        f"no cfp counterpart for tableau {tensor.tableau.rows}, rank {tensor.j}"
    )


# ---------------------------------------------------------------------------
# embedding into the full system


def embedding_permutation(sites, n):
    """Permutation placing chain slot k at site sites[k-1] (sites ascending)."""
    g = len(sites)
    perm = Permutation.transposition(n, 1, sites[0])
    for k in range(2, g + 1):
        perm = perm * Permutation.transposition(n, k, sites[k - 1])
    return perm


def embed_operator(matrix, sites, system: SpinSystem) -> Operator:
    """Embed an operator on the listed sites into the full system.

    The remaining sites carry normalized identities, so the result keeps
    the norm of ``matrix``.  Sites are 1-based and ascending.
    """
    n = len(system.spins)
    g = len(sites)
    if g == 0:
        dim = system.dim
        return Operator(system, np.eye(dim, dtype=complex) / np.sqrt(dim))
    zeta = embedding_permutation(sites, n)
    pre_dims = []
    full = np.asarray(matrix, dtype=complex)
    for slot in range(1, n + 1):
        site = sites[slot - 1] if slot <= g else zeta(slot)
        pre_dims.append(system.site_dim(site))
    for slot in range(g + 1, n + 1):
        d = pre_dims[slot - 1]
        full = np.kron(full, np.eye(d, dtype=complex) / np.sqrt(d))
    tensor = full.reshape(tuple(pre_dims) * 2)
    zinv = zeta.inverse().images  # zinv[i] = zeta^{-1}(i+1) - 1
    axes = list(zinv) + [n + z for z in zinv]
    tensor = np.transpose(tensor, axes)
    dim = system.dim
    return Operator(system, np.ascontiguousarray(tensor.reshape(dim, dim)))


# ---------------------------------------------------------------------------
# the assembled basis


class LisaBasis:
    """Complete orthonormal operator basis organized into droplets."""

    def __init__(self, system, method, entries, droplets):
        self.system = system
        self.method = method
        self.entries = entries  # list of (TensorLabel, Operator)
        self.droplets = droplets  # list of (DropletLabel, tuple of entry indices)
        self._index = {label: i for i, (label, _op) in enumerate(entries)}
        self._matrix = None

    @property
    def labels(self):
        return [label for label, _op in self.entries]

    @property
    def operators(self):
        return [op for _label, op in self.entries]

    def index_of(self, label):
        return self._index[label]

    def operator_for(self, label):
        return self.entries[self._index[label]][1]

    def matrix(self):
        """Stacked row-per-operator matrix, cached, for decompositions."""
        if self._matrix is None:
            self._matrix = np.array([op.matrix.ravel() for _l, op in self.entries])
        return self._matrix

    def droplet_labels(self):
        return [label for label, _members in self.droplets]

    def members(self, droplet_label):
        for label, members in self.droplets:
            if label == droplet_label:
                return [self.entries[i] for i in members]
        raise KeyError(droplet_label)


def _subsets(n):
    for g in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), g):
            yield combo


def build_basis(system, method="auto") -> LisaBasis:
    """Build the droplet-organized basis for a supported spin system.

    Supported: up to six spins 1/2, or exactly two spins with arbitrary
    spin numbers up to 7/2.  ``method`` selects the spin-1/2 construction
    route ("cfp", "projection", or "auto": projection up to four spins,
    cfp beyond).
    """
    if not isinstance(system, SpinSystem):
        system = SpinSystem(tuple(HalfInteger(s) for s in system))
    if method not in ("auto", "cfp", "projection"):
        raise ScopeError(f"unknown construction method: {method!r}")
    spins = system.spins
    if all(s == half("1/2") for s in spins):
        n = len(spins)
        if n > 6:
            raise ScopeError("at most six spins 1/2 are supported")
        if method == "auto":
            method = "projection" if n <= 4 else "cfp"
        if method == "projection" and n > 4:
            raise ScopeError(
                "the projection method is limited to four spins 1/2; use cfp"
            )
        return _build_spin_half_basis(system, method)
    if len(spins) == 2:
        if any(s > half("7/2") for s in spins):
            raise ScopeError("spin numbers above 7/2 are not supported")
        if method == "projection":
            raise ScopeError(
                "the projection method applies to spins 1/2 only; "
                "the pair construction is selected automatically"
            )
        return build_two_qudit_basis(spins[0], spins[1])
    raise ScopeError(
        "supported systems: up to six spins 1/2, or exactly two spins "
        "with spin numbers up to 7/2"
    )


def _build_spin_half_basis(system, method):
    n = len(system.spins)
    families = build_spin_half_families(n, method)
    entries = []
    droplets = []

    identity_label = TensorLabel(sites=(), j=0, m=0)
    entries.append((identity_label, embed_operator(None, (), system)))
    droplets.append((identity_label.droplet(), (0,)))

    for sites in _subsets(n):
        g = len(sites)
        droplet_members = {}
        droplet_order = []
        for tensor in families[g]:
            rows = tensor.tableau.rows
            for m in range(-tensor.j, tensor.j + 1):
                label = TensorLabel(
                    sites=sites,
                    j=tensor.j,
                    m=m,
                    tableau=rows,
                    adhoc=tensor.adhoc,
                )
                op = embed_operator(tensor.components[m], sites, system)
                entries.append((label, op))
                dl = label.droplet()
                if dl not in droplet_members:
                    droplet_members[dl] = []
                    droplet_order.append(dl)
                droplet_members[dl].append(len(entries) - 1)
        for dl in droplet_order:
            droplets.append((dl, tuple(droplet_members[dl])))
    return LisaBasis(system, method, entries, droplets)


# ---------------------------------------------------------------------------
# two arbitrary spins


def _coupled_pair_tensor(J1, J2, q1, q2, j):
    """Bilinear tensor from parents of ranks q1 (spin 1) and q2 (spin 2)."""
    t1 = {k: single_spin_tensor(J1, q1, k).matrix for k in range(-q1, q1 + 1)}
    t2 = {k: single_spin_tensor(J2, q2, k).matrix for k in range(-q2, q2 + 1)}
    dim = (J1.twice + 1) * (J2.twice + 1)
    components = {}
    for m in range(-j, j + 1):
        acc = np.zeros((dim, dim), dtype=complex)
        for k1 in range(-q1, q1 + 1):
            k2 = m - k1
            if abs(k2) > q2:
                continue
            cg = clebsch_gordan(q1, k1, q2, k2, j, m).value
            if cg == 0:
                continue
            acc += cg * np.kron(t1[k1], t2[k2])
        components[m] = acc
    return components


def _fix_pair_phase(components, j, parity_odd):
    """Restore the conjugation symmetry and freeze the residual sign.

    ``parity_odd`` marks tensors whose raw components satisfy the
    conjugation relation only up to a factor -1; those are multiplied by
    the imaginary unit.  The remaining overall sign is fixed by making the
    first nonzero entry of the order-zero component positive (real part
    first, imaginary part as tie-breaker).
    """
    factor = 1j if parity_odd else 1.0
    components = {m: factor * c for m, c in components.items()}
    ref = components[0].ravel()
    for v in ref:
        if abs(v) > 1e-12:
            key = v.real if abs(v.real) > 1e-12 else v.imag
            if key < 0:
                components = {m: -c for m, c in components.items()}
            break
    return components


def build_two_qudit_basis(J1, J2) -> LisaBasis:
    """Droplet basis for two spins with arbitrary spin numbers.

    Labels follow the rank pair (q1, q2) of the single-spin parents.  For
    equal spin numbers, equal-rank parents form a single droplet and each
    unequal pair yields a symmetric and an antisymmetric droplet (tableau
    sublabels); for unequal spin numbers, rank pairs realizable in both
    orientations yield two droplets with roman sublabels (I places the
    smaller rank on spin 1).
    """
    J1 = J1 if isinstance(J1, HalfInteger) else HalfInteger(J1)
    J2 = J2 if isinstance(J2, HalfInteger) else HalfInteger(J2)
    system = SpinSystem((J1, J2))
    if J1 > half("7/2") or J2 > half("7/2"):
        raise ScopeError("spin numbers above 7/2 are not supported")
    entries = []
    droplets = []

    identity_label = TensorLabel(sites=(), j=0, m=0)
    entries.append((identity_label, embed_operator(None, (), system)))
    droplets.append((identity_label.droplet(), (0,)))

    # linear droplets
    for site, J in ((1, J1), (2, J2)):
        members = []
        for q in range(1, J.twice + 1):
            for m in range(-q, q + 1):
                label = TensorLabel(sites=(site,), j=q, m=m, parents=(q,))
                mat = single_spin_tensor(J, q, m).matrix
                entries.append((label, embed_operator(mat, (site,), system)))
                members.append(len(entries) - 1)
        droplets.append((DropletLabel(sites=(site,)), tuple(members)))

    def add_droplet(dlabel, tensors):
        members = []
        for parents, adhoc, tableau, j, components in tensors:
            for m in range(-j, j + 1):
                label = TensorLabel(
                    sites=(1, 2), j=j, m=m,
                    tableau=tableau, adhoc=adhoc, parents=parents,
                )
                entries.append((label, Operator(system, components[m])))
                members.append(len(entries) - 1)
        droplets.append((dlabel, tuple(members)))

    q1max, q2max = J1.twice, J2.twice
    if J1 == J2:
        sym_rows = ((1, 2),)
        anti_rows = ((1,), (2,))
        for k in range(1, q1max + 1):
            for l in range(k, q2max + 1):
                if k == l:
                    tensors = []
                    for j in range(0, 2 * k + 1):
                        comps = _coupled_pair_tensor(J1, J2, k, k, j)
                        comps = _fix_pair_phase(comps, j, (2 * k - j) % 2 == 1)
                        rows = sym_rows if j % 2 == 0 else anti_rows
                        tensors.append(((k, k), None, rows, j, comps))
                    add_droplet(DropletLabel(sites=(1, 2), parents=(k, k)), tensors)
                else:
                    swap = Permutation.transposition(2, 1, 2)
                    for rows in (sym_rows, anti_rows):
                        tensors = []
                        sign = 1.0 if rows == sym_rows else -1.0
                        for j in range(l - k, k + l + 1):
                            comps = _coupled_pair_tensor(J1, J2, k, l, j)
                            combo = {}
                            for m, c in comps.items():
                                swapped = upsilon_apply(
                                    swap, Operator(system, c)
                                ).matrix
                                combo[m] = (c + sign * swapped) / np.sqrt(2.0)
                            combo = _fix_pair_phase(combo, j, (k + l - j) % 2 == 1)
                            tensors.append(((k, l), None, rows, j, combo))
                        add_droplet(
                            DropletLabel(sites=(1, 2), parents=(k, l), tableau=rows),
                            tensors,
                        )
    else:
        for k in range(1, min(q1max, q2max) + 1):
            comps_all = []
            for j in range(0, 2 * k + 1):
                comps = _coupled_pair_tensor(J1, J2, k, k, j)
                comps = _fix_pair_phase(comps, j, (2 * k - j) % 2 == 1)
                comps_all.append(((k, k), None, None, j, comps))
            add_droplet(DropletLabel(sites=(1, 2), parents=(k, k)), comps_all)
        for k in range(1, max(q1max, q2max) + 1):
            for l in range(k + 1, max(q1max, q2max) + 1):
                orientations = []
                if k <= q1max and l <= q2max:
                    orientations.append((k, l))
                if l <= q1max and k <= q2max:
                    orientations.append((l, k))
                if not orientations:
                    continue
                twofold = len(orientations) == 2
                for idx, (a, b) in enumerate(orientations):
                    adhoc = ("I", "II")[idx] if twofold else None
                    tensors = []
                    for j in range(l - k, k + l + 1):
                        comps = _coupled_pair_tensor(J1, J2, a, b, j)
                        comps = _fix_pair_phase(comps, j, (a + b - j) % 2 == 1)
                        tensors.append(((a, b), adhoc, None, j, comps))
                    add_droplet(
                        DropletLabel(sites=(1, 2), parents=(k, l), adhoc=adhoc),
                        tensors,
                    )
    return LisaBasis(system, "pair", entries, droplets)


# ---------------------------------------------------------------------------
# catalogs and serialization


def rank_catalog(g, method="cfp"):
    """Map (shape, adhoc) -> sorted ranks occurring at linearity g."""
    families = build_spin_half_families(g, method)
    catalog = {}
    for t in families[g]:
        key = (t.tableau.shape.parts, t.adhoc)
        catalog.setdefault(key, set()).add(t.j)
    return {k: tuple(sorted(v)) for k, v in catalog.items()}


def multiplicity_table(J1, J2):
    """Number of bilinear pair tensors per rank j, split by symmetry.

    For equal spin numbers returns {"sym": counts, "anti": counts}; for
    unequal ones {"total": counts}.  Counts are indexed by rank starting
    at zero.
    """
    J1 = J1 if isinstance(J1, HalfInteger) else HalfInteger(J1)
    J2 = J2 if isinstance(J2, HalfInteger) else HalfInteger(J2)
    jmax = J1.twice + J2.twice
    if J1 == J2:
        sym = [0] * (jmax + 1)
        anti = [0] * (jmax + 1)
        q = J1.twice
        for k in range(1, q + 1):
            for j in range(0, 2 * k + 1):
                (sym if j % 2 == 0 else anti)[j] += 1
            for l in range(k + 1, q + 1):
                for j in range(l - k, k + l + 1):
                    sym[j] += 1
                    anti[j] += 1
        return {"sym": tuple(sym), "anti": tuple(anti)}
    total = [0] * (jmax + 1)
    for q1 in range(1, J1.twice + 1):
        for q2 in range(1, J2.twice + 1):
            for j in range(abs(q1 - q2), q1 + q2 + 1):
                total[j] += 1
    return {"total": tuple(total)}


def basis_to_dict(basis: LisaBasis):
    return {
        "schema": "spindrops/basis/v1",
        "version": __version__,
        "system": {"spins": [str(s) for s in basis.system.spins]},
        "method": basis.method,
        "entries": [
            {
                "label": label.to_dict(),
                "re": op.matrix.real.tolist(),
                "im": op.matrix.imag.tolist(),
            }
            for label, op in basis.entries
        ],
        "droplets": [
            {"label": dl.to_dict(), "members": list(members)}
            for dl, members in basis.droplets
        ],
    }


def basis_from_dict(d) -> LisaBasis:
    if d.get("schema") != "spindrops/basis/v1":
        raise ValueError("not a basis document")
    system = SpinSystem(tuple(HalfInteger(s) for s in d["system"]["spins"]))
    entries = []
    for e in d["entries"]:
        mat = np.array(e["re"], dtype=float) + 1j * np.array(e["im"], dtype=float)
        entries.append((TensorLabel.from_dict(e["label"]), Operator(system, mat)))
    droplets = [
        (DropletLabel.from_dict(dd["label"]), tuple(dd["members"]))
        for dd in d["droplets"]
    ]
    return LisaBasis(system, d["method"], entries, droplets)
