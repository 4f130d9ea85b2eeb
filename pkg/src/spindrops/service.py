"""Session-oriented HTTP facade over the simulation library.

Each session owns a spin system, a lazily built basis, a default
Hamiltonian, the current state, and an append-only event log.  Mutations
(pulse, delay, reset) are serialized per session; droplet reads are
side-effect free and served from a small LRU mesh cache keyed by the
state hash and grid.
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from collections import OrderedDict
from typing import List, Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from .drops import (
    coherence_order_spectrum,
    decompose,
    mesh_to_dict,
    sample_droplet,
)
from .dynamics import (
    SCENARIO_NAMES,
    _hamiltonian_from_dict,
    apply_pulse,
    builtin_scenario,
    evolve,
    expectation,
)
from .errors import FormatError, ScopeError, SpinDropsError
from .jsonio import dumps
from .lisabasis import build_basis
from .opexpr import parse as parse_expr
from .spincore import HalfInteger, Operator, SpinSystem, hs_inner, operator_to_dict


class CouplingModel(BaseModel):
    sites: List[int] = Field(min_length=2, max_length=2)
    J: float


class HamiltonianModel(BaseModel):
    type: str
    couplings: List[CouplingModel] = []


class CreateSessionModel(BaseModel):
    spins: List[str]
    hamiltonian: HamiltonianModel
    rho0: str


class PulseModel(BaseModel):
    sites: List[int]
    axis: str
    angle: float


class DelayModel(BaseModel):
    seconds: float = Field(ge=0.0)


class ResetModel(BaseModel):
    rho0: str


class Session:
    def __init__(self, system, hamiltonian_doc, rho0_text):
        self.id = uuid.uuid4().hex
        self.system = system
        self.hamiltonian_doc = hamiltonian_doc
        self.hamiltonian = _hamiltonian_from_dict(system, hamiltonian_doc)
        self.rho = parse_expr(rho0_text, system)
        self.basis = None
        self.log = [{"type": "create",
                     "spins": [str(s) for s in system.spins],
                     "hamiltonian": hamiltonian_doc,
                     "rho0": rho0_text}]
        self.lock = threading.Lock()

    def get_basis(self):
        if self.basis is None:
            self.basis = build_basis(self.system)
        return self.basis

    def state_hash(self):
        return hashlib.sha256(
            dumps(operator_to_dict(self.rho)).encode()
        ).hexdigest()

    def summary(self):
        tr = complex(np.trace(self.rho.matrix))
        return {
            "session_id": self.id,
            "events": len(self.log) - 1,
            "state_hash": self.state_hash(),
            "trace": {"re": tr.real, "im": tr.imag},
            "hs_norm": float(np.sqrt(hs_inner(self.rho, self.rho).real)),
            "coherence_orders": {
                str(p): w
                for p, w in coherence_order_spectrum(self.rho, self.get_basis()).items()
            },
        }


class MeshCache:
    def __init__(self, capacity=32):
        self.capacity = capacity
        self.data = OrderedDict()
        self.lock = threading.Lock()

    def get(self, key):
        with self.lock:
            if key in self.data:
                self.data.move_to_end(key)
                return self.data[key]
            return None

    def put(self, key, value):
        with self.lock:
            self.data[key] = value
            self.data.move_to_end(key)
            while len(self.data) > self.capacity:
                self.data.popitem(last=False)


def create_app() -> FastAPI:
    app = FastAPI(title="spindrops service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = {}
    mesh_cache = MeshCache()

    def get_session(session_id) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    def mutate(session, apply_fn, log_entry):
        if not session.lock.acquire(blocking=False):
            raise HTTPException(status_code=409,
                                detail="concurrent mutation in progress")
        try:
            session.rho = apply_fn(session.rho)
            session.log.append(log_entry)
            return session.summary()
        except SpinDropsError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        finally:
            session.lock.release()

    @app.get("/")
    def root():
        return {"service": "spindrops", "version": __version__,
                "scenarios": list(SCENARIO_NAMES)}

    @app.post("/sessions", status_code=201)
    def create_session(payload: CreateSessionModel):
        try:
            system = SpinSystem(tuple(HalfInteger(s) for s in payload.spins))
            session = Session(system, payload.hamiltonian.model_dump(),
                              payload.rho0)
            inventory = [
                {"label": dl.to_dict(), "members": len(members)}
                for dl, members in session.get_basis().droplets
            ]
        except (SpinDropsError, ValueError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        sessions[session.id] = session
        return {"session_id": session.id,
                "droplets": inventory,
                "summary": session.summary()}

    @app.post("/sessions/{session_id}/pulse")
    def pulse(session_id: str, payload: PulseModel):
        session = get_session(session_id)
        return mutate(
            session,
            lambda rho: apply_pulse(rho, payload.sites, payload.axis, payload.angle),
            {"type": "pulse", "sites": payload.sites,
             "axis": payload.axis, "angle": payload.angle},
        )

    @app.post("/sessions/{session_id}/delay")
    def delay(session_id: str, payload: DelayModel):
        session = get_session(session_id)
        return mutate(
            session,
            lambda rho: evolve(rho, session.hamiltonian, payload.seconds),
            {"type": "delay", "seconds": payload.seconds},
        )

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str, payload: ResetModel):
        session = get_session(session_id)
        return mutate(
            session,
            lambda rho: parse_expr(payload.rho0, session.system),
            {"type": "reset", "rho0": payload.rho0},
        )

    @app.get("/sessions/{session_id}/droplets")
    def droplets(session_id: str,
                 grid: str = Query("64x128"),
                 scaling: str = Query("density")):
        session = get_session(session_id)
        try:
            n_theta, n_phi = (int(x) for x in grid.lower().split("x"))
            if n_theta < 2 or n_phi < 1:
                raise ValueError("grid too small")
        except ValueError as exc:
            raise HTTPException(status_code=422,
                                detail=f"invalid grid {grid!r}") from exc
        if scaling not in ("raw", "density"):
            raise HTTPException(status_code=422,
                                detail=f"invalid scaling {scaling!r}")
        key = (session.state_hash(), grid, scaling)
        cached = mesh_cache.get(key)
        if cached is not None:
            return cached
        try:
            funcs = decompose(session.rho, session.get_basis(), scaling=scaling)
        except SpinDropsError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        payload = {
            "state_hash": key[0],
            "grid": grid,
            "scaling": scaling,
            "droplets": [
                {
                    "label": f.label.to_dict(),
                    "coeffs": [
                        {"j": j, "m": m, "re": c.real, "im": c.imag}
                        for (j, m), c in sorted(f.coeffs.items())
                    ],
                    "zero": f.is_zero,
                    "weight": f.weight,
                    "mesh": mesh_to_dict(sample_droplet(f, n_theta, n_phi)),
                }
                for f in funcs
            ],
        }
        mesh_cache.put(key, payload)
        return payload

    @app.get("/sessions/{session_id}/expectation")
    def expectation_value(session_id: str, op: str = Query(...)):
        session = get_session(session_id)
        try:
            observable = parse_expr(op, session.system)
        except SpinDropsError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        value = expectation(session.rho, observable)
        return {"op": op, "re": value.real, "im": value.imag}

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        session = get_session(session_id)
        return {"session_id": session.id, "events": session.log}

    @app.get("/scenarios/{name}")
    def scenario(name: str, J: float = Query(1.0)):
        try:
            return builtin_scenario(name, J=J)
        except ScopeError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    return app
