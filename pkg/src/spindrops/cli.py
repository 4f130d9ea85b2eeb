"""Command-line interface.

Subcommands: basis, decompose, simulate, diagnose, render, serve.
Exit codes: 0 success, 2 usage or input-format error, 3 request outside
the supported scope, 4 diagnostic mismatch under --strict (or a failed
numerical accuracy contract).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .drops import (
    decompose,
    droplets_from_dict,
    droplets_to_dict,
    mesh_to_dict,
    sample_droplet,
)
from .dynamics import (
    SCENARIO_NAMES,
    builtin_scenario,
    run_sequence_document,
    sequence_from_dict,
)
from .errors import FormatError, NumericalError, ScopeError, SpinDropsError
from .jsonio import dump_path, dumps, load_path
from .lisabasis import basis_from_dict, basis_to_dict, build_basis
from .opexpr import parse as parse_expr
from .spincore import Operator, SpinSystem, operator_from_dict, operator_to_dict
from .symgroup import diagnostic_report

EXPECTED_DIAGNOSTICS = {
    3: {"corrupted": [], "kernel_dim": 0, "nonorthogonal_pairs": []},
    4: {"corrupted": [], "kernel_dim": 0, "nonorthogonal_pairs": []},
    5: {"corrupted": [16], "kernel_dim": 1,
        "nonorthogonal_pairs": [[6, 10], [17, 21]]},
    6: {"corrupted": [15, 21, 24, 25], "kernel_dim": 26,
        "nonorthogonal_pairs": [[7, 14], [8, 15], [9, 15], [26, 30], [31, 41],
                                 [31, 42], [32, 43], [32, 44], [33, 45],
                                 [34, 46], [35, 45], [37, 46], [47, 51]]},
}


def _parse_spins(text):
    try:
        return SpinSystem(tuple(s.strip() for s in text.split(",")))
    except (ValueError, TypeError) as exc:
        raise FormatError(f"invalid spin list {text!r}: {exc}") from exc


def cmd_basis(args):
    system = _parse_spins(args.spins)
    basis = build_basis(system, method=args.method)
    counts = {}
    for dl, _members in basis.droplets:
        counts[len(dl.sites)] = counts.get(len(dl.sites), 0) + 1
    print(f"system: {','.join(str(s) for s in system.spins)}")
    print(f"method: {basis.method}")
    print(f"{len(basis.droplets)} droplets, {len(basis.entries)} operators")
    for g in sorted(counts):
        kind = "identity" if g == 0 else f"g={g}"
        print(f"  {kind}: {counts[g]} droplet(s)")
    if args.out:
        dump_path(basis_to_dict(basis), args.out)
        print(f"wrote {args.out}")
    return 0


def _load_operator(text, system):
    if os.path.exists(text):
        doc = load_path(text)
        op = operator_from_dict(doc)
        if op.system != system:
            raise ScopeError("operator file does not match the basis system")
        return op
    return parse_expr(text, system)


def cmd_decompose(args):
    basis = basis_from_dict(load_path(args.basis))
    op = _load_operator(args.op, basis.system)
    droplets = decompose(op, basis, scaling=args.scaling)
    print(f"{'droplet':<28}{'weight':>16}")
    for f in droplets:
        print(f"{f.label.name:<28}{f.weight:>16.9g}" + ("  (zero)" if f.is_zero else ""))
    if args.out:
        dump_path(droplets_to_dict(droplets, scaling=args.scaling), args.out)
        print(f"wrote {args.out}")
    return 0


def _load_sequence(args):
    if args.scenario:
        return builtin_scenario(args.scenario, J=args.coupling)
    if not args.sequence:
        raise FormatError("either --sequence FILE or --scenario NAME is required")
    if args.sequence.endswith((".yaml", ".yml")):
        import yaml

        with open(args.sequence, encoding="utf-8") as fh:
            return yaml.safe_load(fh)
    return load_path(args.sequence)


def cmd_simulate(args):
    doc = _load_sequence(args)
    system, trajectory = run_sequence_document(doc)
    os.makedirs(args.out, exist_ok=True)
    basis = build_basis(system) if args.droplets else None
    for i, rho in enumerate(trajectory):
        dump_path(operator_to_dict(rho), os.path.join(args.out, f"state_{i:04d}.json"))
        if basis is not None:
            dump_path(
                droplets_to_dict(decompose(rho, basis, scaling=args.scaling),
                                 scaling=args.scaling),
                os.path.join(args.out, f"droplets_{i:04d}.json"),
            )
    print(f"wrote {len(trajectory)} states to {args.out}")
    return 0


def cmd_diagnose(args):
    if not 1 <= args.g <= 6:
        raise ScopeError("diagnostics support group sizes 1..6")
    report = diagnostic_report(args.g)
    print(dumps(report))
    if args.strict and args.g in EXPECTED_DIAGNOSTICS:
        expected = EXPECTED_DIAGNOSTICS[args.g]
        got = {
            "corrupted": report["corrupted"],
            "kernel_dim": report["kernel_dim"],
            "nonorthogonal_pairs": [list(p) for p in report["nonorthogonal_pairs"]],
        }
        if got != expected:
            print(f"diagnostic mismatch: expected {expected}, got {got}",
                  file=sys.stderr)
            return 4
    return 0


def _parse_grid(text):
    try:
        nt, np_ = text.lower().split("x")
        return int(nt), int(np_)
    except ValueError as exc:
        raise FormatError(f"invalid grid {text!r}; expected e.g. 64x128") from exc


def cmd_render(args):
    doc = load_path(args.droplets)
    droplets = droplets_from_dict(doc)
    n_theta, n_phi = _parse_grid(args.grid)
    meshes = [mesh_to_dict(sample_droplet(f, n_theta, n_phi)) for f in droplets]
    dump_path({"schema": "spindrops/mesh-set/v1", "meshes": meshes}, args.out)
    print(f"wrote {len(meshes)} meshes to {args.out}")
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spindrops",
        description="Symmetry-adapted tensor bases, droplet decompositions, "
                    "and spin-dynamics simulation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="build and export an operator basis")
    p.add_argument("--spins", required=True, help='e.g. "1/2,1/2,1/2" or "1/2,1"')
    p.add_argument("--method", default="auto", choices=["auto", "cfp", "projection"])
    p.add_argument("--out", help="write basis JSON here")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("decompose", help="expand an operator into droplets")
    p.add_argument("--basis", required=True, help="basis JSON file")
    p.add_argument("--op", required=True, help="operator expression or JSON file")
    p.add_argument("--scaling", default="raw", choices=["raw", "density"])
    p.add_argument("--out", help="write droplet JSON here")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("simulate", help="run a pulse sequence")
    p.add_argument("--sequence", help="sequence document (JSON or YAML)")
    p.add_argument("--scenario", choices=SCENARIO_NAMES,
                   help="built-in scenario name instead of a file")
    p.add_argument("--coupling", type=float, default=1.0,
                   help="J in Hz for scenarios with a free coupling constant")
    p.add_argument("--out", required=True, help="output directory for snapshots")
    p.add_argument("--droplets", action="store_true",
                   help="also decompose every snapshot")
    p.add_argument("--scaling", default="raw", choices=["raw", "density"])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagnose", help="projector diagnostics for group size g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--strict", action="store_true",
                   help="exit 4 when results differ from the pinned findings")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("render", help="sample droplet functions on a sphere grid")
    p.add_argument("--droplets", required=True, help="droplet JSON file")
    p.add_argument("--grid", default="64x128")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpinDropsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
