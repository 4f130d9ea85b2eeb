import json

import numpy as np
import pytest

from spindrops.cli import main
from spindrops.jsonio import load_path


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasisCommand:
    def test_inventory_output(self, capsys, tmp_path):
        out = tmp_path / "basis.json"
        code, stdout, _ = run(
            ["basis", "--spins", "1/2,1/2", "--out", str(out)], capsys
        )
        assert code == 0
        assert "4 droplets, 16 operators" in stdout
        doc = load_path(str(out))
        assert doc["schema"] == "spindrops/basis/v1"

    def test_deterministic_export(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["basis", "--spins", "1/2,1/2,1/2", "--out", str(a)], capsys)
        run(["basis", "--spins", "1/2,1/2,1/2", "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()

    def test_scope_error_exit_code(self, capsys):
        code, _, err = run(["basis", "--spins", "1,1,1"], capsys)
        assert code == 3
        assert "error" in err

    def test_format_error_exit_code(self, capsys):
        code, _, _ = run(["basis", "--spins", "1/3"], capsys)
        assert code == 2


class TestDecomposeCommand:
    @pytest.fixture()
    def basis_file(self, capsys, tmp_path):
        path = tmp_path / "basis.json"
        run(["basis", "--spins", "1/2,1/2", "--out", str(path)], capsys)
        return str(path)

    def test_expression_decomposition(self, capsys, basis_file, tmp_path):
        out = tmp_path / "droplets.json"
        code, stdout, _ = run(
            ["decompose", "--basis", basis_file, "--op", "I1z", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert "{1}" in stdout
        doc = load_path(str(out))
        assert doc["schema"] == "spindrops/droplets/v1"
        weights = {
            d["label"]["name"]: sum(
                c["re"] ** 2 + c["im"] ** 2 for c in d["coeffs"]
            )
            for d in doc["droplets"]
        }
        assert weights["{1}"] == pytest.approx(1.0)
        assert weights["{2}"] == pytest.approx(0.0, abs=1e-20)

    def test_bad_expression_exit_code(self, capsys, basis_file):
        code, _, _ = run(
            ["decompose", "--basis", basis_file, "--op", "I1x*I1y"], capsys
        )
        assert code == 2

    def test_missing_basis_file(self, capsys, tmp_path):
        code, _, _ = run(
            ["decompose", "--basis", str(tmp_path / "none.json"), "--op", "I1z"],
            capsys,
        )
        assert code == 2


class TestSimulateCommand:
    def test_scenario_snapshots(self, capsys, tmp_path):
        out = tmp_path / "run"
        code, stdout, _ = run(
            [
                "simulate", "--scenario", "maxq-4", "--coupling", "10",
                "--out", str(out), "--droplets", "--scaling", "density",
            ],
            capsys,
        )
        assert code == 0
        states = sorted(out.glob("state_*.json"))
        droplets = sorted(out.glob("droplets_*.json"))
        assert len(states) == len(droplets) > 1
        first = load_path(str(states[0]))
        assert first["dims"] == [2, 2, 2, 2]

    def test_sequence_file_roundtrip(self, capsys, tmp_path):
        doc = {
            "schema": "spindrops/sequence/v1",
            "system": {"spins": ["1/2", "1/2"]},
            "hamiltonian": {
                "type": "ising",
                "couplings": [{"sites": [1, 2], "J": 3.0}],
            },
            "rho0": "I1z",
            "events": [
                {"type": "pulse", "sites": [1], "axis": "y", "angle": 1.5707963267948966},
                {"type": "delay", "seconds": 0.01},
            ],
        }
        seq = tmp_path / "seq.json"
        seq.write_text(json.dumps(doc))
        out = tmp_path / "run"
        code, _, _ = run(["simulate", "--sequence", str(seq), "--out", str(out)], capsys)
        assert code == 0
        assert len(list(out.glob("state_*.json"))) == 3

    def test_missing_sequence_and_scenario(self, capsys, tmp_path):
        code, _, _ = run(["simulate", "--out", str(tmp_path / "x")], capsys)
        assert code == 2

    def test_malformed_sequence_exit_code(self, capsys, tmp_path):
        seq = tmp_path / "seq.json"
        seq.write_text(json.dumps({"schema": "wrong"}))
        code, _, _ = run(
            ["simulate", "--sequence", str(seq), "--out", str(tmp_path / "x")],
            capsys,
        )
        assert code == 2


class TestDiagnoseCommand:
    def test_strict_match_g4(self, capsys):
        code, stdout, _ = run(["diagnose", "--g", "4", "--strict"], capsys)
        assert code == 0
        report = json.loads(stdout)
        assert report["kernel_dim"] == 0
        assert report["corrupted"] == []

    def test_g5_findings(self, capsys):
        code, stdout, _ = run(["diagnose", "--g", "5", "--strict"], capsys)
        assert code == 0
        report = json.loads(stdout)
        assert report["corrupted"] == [16]
        assert report["kernel_dim"] == 1
        assert report["nonorthogonal_pairs"] == [[6, 10], [17, 21]]

    def test_out_of_range(self, capsys):
        code, _, _ = run(["diagnose", "--g", "9"], capsys)
        assert code == 3


class TestRenderCommand:
    def test_mesh_set_output(self, capsys, tmp_path):
        basis = tmp_path / "basis.json"
        run(["basis", "--spins", "1/2", "--out", str(basis)], capsys)
        droplets = tmp_path / "droplets.json"
        run(
            ["decompose", "--basis", str(basis), "--op", "I1z",
             "--out", str(droplets)],
            capsys,
        )
        out = tmp_path / "meshes.json"
        code, _, _ = run(
            ["render", "--droplets", str(droplets), "--grid", "8x16",
             "--out", str(out)],
            capsys,
        )
        assert code == 0
        doc = load_path(str(out))
        assert doc["schema"] == "spindrops/mesh-set/v1"
        assert len(doc["meshes"]) == 2
        mesh = doc["meshes"][1]
        assert mesh["n_theta"] == 8 and mesh["n_phi"] == 16
        assert len(mesh["r"]) == 8 * 16

    def test_bad_grid(self, capsys, tmp_path):
        basis = tmp_path / "basis.json"
        run(["basis", "--spins", "1/2", "--out", str(basis)], capsys)
        droplets = tmp_path / "droplets.json"
        run(
            ["decompose", "--basis", str(basis), "--op", "I1z",
             "--out", str(droplets)],
            capsys,
        )
        code, _, _ = run(
            ["render", "--droplets", str(droplets), "--grid", "big",
             "--out", str(tmp_path / "m.json")],
            capsys,
        )
        assert code == 2
