"""Hamiltonians, pulses, time evolution, and built-in experiment scenarios.

Hamiltonians are plain Hermitian operators in rad/s.  A pulse sequence
is a list of events (pulses, delays, Hamiltonian switches) applied to a
state; the trajectory records the state at every event boundary.
"""

from __future__ import annotations

import math

import numpy as np

from .angular import spin_matrices
from .errors import FormatError, NumericalError, ScopeError
from .opexpr import parse
from .spincore import HalfInteger, Operator, SpinSystem, half

SEQUENCE_SCHEMA = "spindrops/sequence/v1"

_AXIS_SIGNS = {"x": ("x", 1.0), "y": ("y", 1.0), "z": ("z", 1.0),
               "-x": ("x", -1.0), "-y": ("y", -1.0), "-z": ("z", -1.0)}


def _site_operator(system, site, which):
    """Spin matrix (x/y/z) of one site embedded into the full system."""
    sx, sy, sz = spin_matrices(system.spins[site - 1])
    mat = {"x": sx, "y": sy, "z": sz}[which]
    full = np.eye(1, dtype=complex)
    for k in range(1, system.n_spins + 1):
        factor = mat if k == site else np.eye(system.site_dim(k))
        full = np.kron(full, factor)
    return full


def _normalize_couplings(system, couplings):
    n = system.n_spins
    items = []
    if hasattr(couplings, "items"):
        pairs = couplings.items()
    else:
        pairs = [((c["sites"][0], c["sites"][1]), c["J"]) for c in couplings]
    for (k, l), J in pairs:
        if not (1 <= k <= n and 1 <= l <= n) or k == l:
            raise FormatError(f"invalid coupling pair ({k},{l}) for {n} spins")
        items.append((min(k, l), max(k, l), float(J)))
    return items


def ising_hamiltonian(system: SpinSystem, couplings) -> Operator:
    """Weak-coupling Hamiltonian H = 2 pi sum J_kl I_kz I_lz (rad/s).

    ``couplings`` maps site pairs to constants in Hz, either as a dict
    {(k, l): J} or a list of {"sites": [k, l], "J": J} entries.
    """
    if any(s != half("1/2") for s in system.spins):
        raise ScopeError("the Ising form is defined for spins 1/2")
    acc = np.zeros((system.dim, system.dim), dtype=complex)
    for k, l, J in _normalize_couplings(system, couplings):
        acc += (2.0 * math.pi * J) * (
            _site_operator(system, k, "z") @ _site_operator(system, l, "z")
        )
    return Operator(system, acc)


def isotropic_hamiltonian(system: SpinSystem, couplings) -> Operator:
    """Heisenberg Hamiltonian H = 2 pi sum J_kl (SxSx + SySy + SzSz)."""
    acc = np.zeros((system.dim, system.dim), dtype=complex)
    for k, l, J in _normalize_couplings(system, couplings):
        for which in ("x", "y", "z"):
            acc += (2.0 * math.pi * J) * (
                _site_operator(system, k, which) @ _site_operator(system, l, which)
            )
    return Operator(system, acc)


def pulse_propagator(system: SpinSystem, sites, axis, angle) -> Operator:
    """Unitary exp(-i * angle * sum_k F_k,axis) for a hard pulse."""
    if axis not in _AXIS_SIGNS:
        raise FormatError(f"unknown pulse axis {axis!r}")
    which, sign = _AXIS_SIGNS[axis]
    n = system.n_spins
    gen = np.zeros((system.dim, system.dim), dtype=complex)
    for k in sites:
        if not 1 <= k <= n:
            raise FormatError(f"pulse site {k} out of range 1..{n}")
        gen += sign * _site_operator(system, k, which)
    return Operator(system, _expm_hermitian(gen, float(angle)))


def _expm_hermitian(h_matrix, t):
    """exp(-i t H) for Hermitian H via eigendecomposition."""
    if np.abs(h_matrix - h_matrix.conj().T).max() > 1e-10:
        raise NumericalError("generator is not Hermitian")
    w, v = np.linalg.eigh(h_matrix)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def evolve(rho: Operator, H: Operator, t) -> Operator:
    """Free evolution U rho U^dagger with U = exp(-i H t)."""
    if rho.system != H.system:
        raise ScopeError("state and Hamiltonian belong to different systems")
    U = _expm_hermitian(H.matrix, float(t))
    return Operator(rho.system, U @ rho.matrix @ U.conj().T)


def apply_pulse(rho: Operator, sites, axis, angle) -> Operator:
    U = pulse_propagator(rho.system, sites, axis, angle).matrix
    return Operator(rho.system, U @ rho.matrix @ U.conj().T)


def expectation(rho: Operator, observable: Operator) -> complex:
    """Tr(rho O)."""
    if rho.system != observable.system:
        raise ScopeError("state and observable belong to different systems")
    return complex(np.trace(rho.matrix @ observable.matrix))


def run_sequence(rho0: Operator, events, h_default: Operator):
    """Apply events in order; the trajectory holds the state at every
    boundary (initial state first, then after each event)."""
    rho = rho0
    H = h_default
    trajectory = [rho]
    for index, event in enumerate(events):
        try:
            etype = event["type"]
            if etype == "pulse":
                rho = apply_pulse(rho, event["sites"], event["axis"], event["angle"])
            elif etype == "delay":
                seconds = float(event["seconds"])
                if seconds < 0:
                    raise FormatError("delay duration must be non-negative")
                rho = evolve(rho, H, seconds)
            elif etype == "set_hamiltonian":
                H = _hamiltonian_from_dict(rho.system, event["hamiltonian"])
            else:
                raise FormatError(f"unknown event type {etype!r}")
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed event {index}: {exc}") from exc
        except (FormatError, ScopeError, NumericalError) as exc:
            raise type(exc)(f"event {index}: {exc}") from exc
        trajectory.append(rho)
    return trajectory


# ---------------------------------------------------------------------------
# sequence documents


def _hamiltonian_from_dict(system, d):
    htype = d.get("type")
    couplings = d.get("couplings", [])
    if htype == "ising":
        return ising_hamiltonian(system, couplings)
    if htype == "isotropic":
        return isotropic_hamiltonian(system, couplings)
    raise FormatError(f"unknown hamiltonian type {htype!r}")


def sequence_from_dict(d):
    """Validate a sequence document; returns (system, H, rho0, events)."""
    if d.get("schema") != SEQUENCE_SCHEMA:
        raise FormatError("not a sequence document (missing or wrong schema id)")
    try:
        system = SpinSystem(tuple(HalfInteger(s) for s in d["system"]["spins"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed system description: {exc}") from exc
    H = _hamiltonian_from_dict(system, d.get("hamiltonian", {"type": "ising"}))
    rho0 = parse(d["rho0"], system)
    events = d.get("events", [])
    if not isinstance(events, list):
        raise FormatError("events must be a list")
    return system, H, rho0, events


def run_sequence_document(d):
    """Run a sequence document; returns (system, trajectory)."""
    system, H, rho0, events = sequence_from_dict(d)
    return system, run_sequence(rho0, events, H)


# ---------------------------------------------------------------------------
# built-in scenarios


def _chain_couplings(n, J):
    return [{"sites": [k, k + 1], "J": J} for k in range(1, n)]


def _maxq_scenario(n, J):
    half_period = 1.0 / (2.0 * J)
    events = [{"type": "pulse", "sites": list(range(1, n + 1)),
               "axis": "y", "angle": math.pi / 2}]
    for _ in range(n - 1):
        events.append({"type": "delay", "seconds": half_period})
        events.append({"type": "pulse", "sites": list(range(1, n + 1)),
                       "axis": "y", "angle": math.pi / 2})
    return {
        "schema": SEQUENCE_SCHEMA,
        "system": {"spins": ["1/2"] * n},
        "hamiltonian": {"type": "ising", "couplings": _chain_couplings(n, J)},
        "rho0": " + ".join(f"I{k}z" for k in range(1, n + 1)),
        "events": events,
        "record": "boundaries",
    }


def _soliton_scenario(J):
    tau = 1.0 / (2.0 * J)
    quarter = math.pi / 2
    events = [
        {"type": "pulse", "sites": [1], "axis": "-x", "angle": quarter},
        {"type": "pulse", "sites": [1], "axis": "y", "angle": quarter},
        {"type": "delay", "seconds": tau},
        {"type": "pulse", "sites": [1], "axis": "x", "angle": quarter},
        {"type": "pulse", "sites": [2], "axis": "y", "angle": quarter},
        {"type": "delay", "seconds": tau},
    ]
    for _ in range(4):  # three propagation blocks plus the first decode block
        events.append({"type": "pulse", "sites": [1, 2, 3, 4, 5, 6],
                       "axis": "y", "angle": quarter})
        events.append({"type": "delay", "seconds": tau})
    events.extend([
        # decode: the source description lists phase -y here, but only +y
        # reaches the stated target state (see the sequence notes in README)
        {"type": "pulse", "sites": [5], "axis": "y", "angle": quarter},
        {"type": "pulse", "sites": [6], "axis": "x", "angle": quarter},
        {"type": "delay", "seconds": tau},
        {"type": "pulse", "sites": [6], "axis": "x", "angle": quarter},
    ])
    return {
        "schema": SEQUENCE_SCHEMA,
        "system": {"spins": ["1/2"] * 6},
        "hamiltonian": {"type": "ising", "couplings": _chain_couplings(6, J)},
        "rho0": "I1x + i*I1y",
        "events": events,
        "record": "boundaries",
    }


def _iso_12_1_scenario(J, t_max=0.1, step=0.001):
    n_steps = int(round(t_max / step))
    return {
        "schema": SEQUENCE_SCHEMA,
        "system": {"spins": ["1/2", "1"]},
        "hamiltonian": {"type": "isotropic",
                        "couplings": [{"sites": [1, 2], "J": J}]},
        "rho0": "S1x",
        "events": [{"type": "delay", "seconds": step}] * n_steps,
        "record": "boundaries",
    }


def _iso_4_scenario():
    couplings = [
        {"sites": [1, 2], "J": 4.1}, {"sites": [1, 3], "J": 9.4},
        {"sites": [1, 4], "J": 6.8}, {"sites": [2, 3], "J": 5.3},
        {"sites": [2, 4], "J": 8.2}, {"sites": [3, 4], "J": -4.6},
    ]
    return {
        "schema": SEQUENCE_SCHEMA,
        "system": {"spins": ["1/2"] * 4},
        "hamiltonian": {"type": "isotropic", "couplings": couplings},
        "rho0": "I1z",
        "events": [
            {"type": "delay", "seconds": 0.020},
            {"type": "delay", "seconds": 0.020},
            {"type": "delay", "seconds": 0.093},
        ],
        "record": "boundaries",
    }


def builtin_scenario(name, J=1.0):
    """Named ready-to-run sequence documents.

    maxq-4, maxq-5: maximum-quantum generation on equal-J Ising chains;
    soliton-6: encoded transfer I1x+iI1y -> I6x+iI6y in 7/(2J);
    iso-12-1: spin-1/2 + spin-1 isotropic evolution (J = 11 Hz);
    iso-4: four-spin isotropic mixing with the fixed coupling network.
    """
    if name == "maxq-4":
        return _maxq_scenario(4, J)
    if name == "maxq-5":
        return _maxq_scenario(5, J)
    if name == "soliton-6":
        return _soliton_scenario(J)
    if name == "iso-12-1":
        return _iso_12_1_scenario(11.0)
    if name == "iso-4":
        return _iso_4_scenario()
    raise ScopeError(f"unknown scenario {name!r}")


SCENARIO_NAMES = ("maxq-4", "maxq-5", "soliton-6", "iso-12-1", "iso-4")
