"""Decomposition of operators into droplet functions and their sampling.

An operator A expands as A = sum over droplets and (j, m) of
c_jm * T_jm; each droplet's coefficients define a spherical function
f(theta, phi) = sum c_jm Y_jm(theta, phi) whose radius |f| and phase
arg f are what the 3D viewer displays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import spherical_harmonic
from .errors import FormatError, ScopeError
from .lisabasis import DropletLabel, LisaBasis
from .spincore import Operator
from .tolerances import ZERO_DROPLET

DROPLET_SCHEMA = "spindrops/droplets/v1"
MESH_SCHEMA = "spindrops/mesh/v1"


@dataclass
class DropletFunction:
    """Coefficients of one droplet: map (j, m) -> complex amplitude."""

    label: DropletLabel
    coeffs: dict

    @property
    def weight(self):
        return float(sum(abs(c) ** 2 for c in self.coeffs.values()))

    @property
    def is_zero(self):
        return self.weight < ZERO_DROPLET

    def sample(self, theta, phi):
        """Evaluate f = sum c_jm Y_jm at arrays of angles."""
        out = np.zeros(np.broadcast(theta, phi).shape, dtype=complex)
        for (j, m), c in self.coeffs.items():
            if c != 0:
                out = out + c * spherical_harmonic(j, m, theta, phi)
        return out


def density_scale(basis: LisaBasis) -> float:
    """Factor s in the display convention that expands s * rho.

    Chosen so the identity-droplet coefficient of a unit-trace density
    matrix equals one: the square root of the Hilbert-space dimension
    (2**(N/2) for N spins 1/2).
    """
    return float(np.sqrt(basis.system.dim))


def decompose(A: Operator, basis: LisaBasis, scaling="raw"):
    """Expand an operator over the basis, grouped per droplet.

    ``scaling`` is "raw" (coefficients of A itself) or "density"
    (coefficients of s*A with s = sqrt(dim), the display convention in
    which a unit-trace density matrix has identity coefficient 1).
    """
    if A.system != basis.system:
        raise ScopeError("operator and basis belong to different spin systems")
    if scaling not in ("raw", "density"):
        raise FormatError(f"unknown scaling {scaling!r}")
    s = density_scale(basis) if scaling == "density" else 1.0
    coeffs = basis.matrix().conj() @ (s * A.matrix.ravel())
    out = []
    for dlabel, members in basis.droplets:
        cmap = {}
        for i in members:
            label = basis.entries[i][0]
            cmap[(label.j, label.m)] = complex(coeffs[i])
        out.append(DropletFunction(label=dlabel, coeffs=cmap))
    return out


def reconstruct(droplets, basis: LisaBasis) -> Operator:
    """Sum c * T over all given droplets; exact inverse of raw decompose."""
    acc = np.zeros((basis.system.dim, basis.system.dim), dtype=complex)
    index = {dl: members for dl, members in basis.droplets}
    for f in droplets:
        if f.label not in index:
            raise ScopeError(f"droplet label {f.label.name!r} not in basis")
        members = index[f.label]
        by_jm = {}
        for i in members:
            label = basis.entries[i][0]
            by_jm[(label.j, label.m)] = i
        for jm, c in f.coeffs.items():
            if jm not in by_jm:
                raise ScopeError(
                    f"rank/order {jm} not available in droplet {f.label.name!r}"
                )
            if c != 0:
                acc += c * basis.entries[by_jm[jm]][1].matrix
    return Operator(basis.system, acc)


def coherence_order_spectrum(A: Operator, basis: LisaBasis):
    """Hilbert-Schmidt weight of A per coherence order p = m (raw scaling)."""
    coeffs = basis.matrix().conj() @ A.matrix.ravel()
    spectrum = {}
    for (label, _op), c in zip(basis.entries, coeffs):
        w = abs(c) ** 2
        if w:
            spectrum[label.m] = spectrum.get(label.m, 0.0) + float(w)
    return dict(sorted(spectrum.items()))


@dataclass
class DropletMesh:
    """Equiangular spherical sampling of one droplet function.

    ``r`` and ``eta`` are (n_theta, n_phi) arrays; theta spans [0, pi]
    inclusive, phi spans [0, 2 pi) exclusive.
    """

    label: DropletLabel
    n_theta: int
    n_phi: int
    r: np.ndarray
    eta: np.ndarray

    @property
    def r_max(self):
        return float(self.r.max()) if self.r.size else 0.0


def sample_droplet(f: DropletFunction, n_theta=64, n_phi=128) -> DropletMesh:
    """Sample radius and phase of a droplet function on the default grid."""
    if n_theta < 2 or n_phi < 1:
        raise FormatError("grid must be at least 2 x 1")
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    values = f.sample(tt, pp)
    return DropletMesh(
        label=f.label,
        n_theta=n_theta,
        n_phi=n_phi,
        r=np.abs(values),
        eta=np.angle(values),
    )


# ---------------------------------------------------------------------------
# serialization


def droplets_to_dict(droplets, scaling="raw"):
    return {
        "schema": DROPLET_SCHEMA,
        "scaling": scaling,
        "droplets": [
            {
                "label": f.label.to_dict(),
                "coeffs": [
                    {"j": j, "m": m, "re": c.real, "im": c.imag}
                    for (j, m), c in sorted(f.coeffs.items())
                ],
                "zero": f.is_zero,
            }
            for f in droplets
        ],
    }


def droplets_from_dict(d):
    if d.get("schema") != DROPLET_SCHEMA:
        raise FormatError("not a droplet document")
    out = []
    for item in d["droplets"]:
        label = DropletLabel.from_dict(item["label"])
        coeffs = {
            (c["j"], c["m"]): complex(c["re"], c["im"]) for c in item["coeffs"]
        }
        out.append(DropletFunction(label=label, coeffs=coeffs))
    return out


def mesh_to_dict(mesh: DropletMesh):
    return {
        "schema": MESH_SCHEMA,
        "label": mesh.label.to_dict(),
        "n_theta": mesh.n_theta,
        "n_phi": mesh.n_phi,
        "r": [float(x) for x in mesh.r.ravel()],
        "eta": [float(x) for x in mesh.eta.ravel()],
        "r_max": mesh.r_max,
    }


def mesh_from_dict(d) -> DropletMesh:
    if d.get("schema") != MESH_SCHEMA:
        raise FormatError("not a mesh document")
    nt, np_ = d["n_theta"], d["n_phi"]
    return DropletMesh(
        label=DropletLabel.from_dict(d["label"]),
        n_theta=nt,
        n_phi=np_,
        r=np.array(d["r"], dtype=float).reshape(nt, np_),
        eta=np.array(d["eta"], dtype=float).reshape(nt, np_),
    )
