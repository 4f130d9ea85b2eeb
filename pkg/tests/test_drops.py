import numpy as np
import pytest

from spindrops.drops import (
    decompose,
    density_scale,
    droplets_from_dict,
    droplets_to_dict,
    mesh_from_dict,
    mesh_to_dict,
    reconstruct,
    coherence_order_spectrum,
    sample_droplet,
)
from spindrops.dynamics import pulse_propagator
from spindrops.errors import FormatError, ScopeError
from spindrops.spincore import Operator, SpinSystem, half


def _random_operator(system, seed, hermitian=False):
    rng = np.random.default_rng(seed)
    d = system.dim
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    if hermitian:
        m = (m + m.conj().T) / 2
    return Operator(system, m)


class TestDecompose:
    def test_parseval(self, basis_cache):
        basis = basis_cache(3)
        A = _random_operator(basis.system, 1)
        total = sum(f.weight for f in decompose(A, basis))
        assert total == pytest.approx(np.vdot(A.matrix, A.matrix).real, rel=1e-12)

    def test_linearity(self, basis_cache):
        basis = basis_cache(2)
        A = _random_operator(basis.system, 2)
        B = _random_operator(basis.system, 3)
        combo = Operator(basis.system, 2.0 * A.matrix - 0.5j * B.matrix)
        fa = decompose(A, basis)
        fb = decompose(B, basis)
        fc = decompose(combo, basis)
        for a, b, c in zip(fa, fb, fc):
            for key in c.coeffs:
                assert c.coeffs[key] == pytest.approx(
                    2.0 * a.coeffs[key] - 0.5j * b.coeffs[key], abs=1e-12
                )

    def test_hermitian_gives_real_valued_droplets(self, basis_cache):
        basis = basis_cache(3)
        A = _random_operator(basis.system, 4, hermitian=True)
        theta = np.array([0.3, 1.1, 2.4])
        phi = np.array([0.0, 2.0, 5.0])
        for f in decompose(A, basis):
            values = f.sample(theta, phi)
            assert np.abs(values.imag).max() < 1e-10

    def test_reconstruct_roundtrip(self, basis_cache):
        basis = basis_cache(3)
        A = _random_operator(basis.system, 5)
        back = reconstruct(decompose(A, basis), basis)
        assert np.abs(back.matrix - A.matrix).max() < 1e-12

    def test_density_scaling_identity_coefficient(self, basis_cache):
        basis = basis_cache(2)
        rho = _random_operator(basis.system, 6, hermitian=True)
        rho = Operator(basis.system, rho.matrix / np.trace(rho.matrix))
        fid = decompose(rho, basis, scaling="density")[0]
        assert fid.coeffs[(0, 0)] == pytest.approx(1.0, abs=1e-12)
        assert density_scale(basis) == pytest.approx(2.0)

    def test_weight_invariant_under_collective_rotation(self, basis_cache):
        basis = basis_cache(3)
        A = _random_operator(basis.system, 7, hermitian=True)
        before = [f.weight for f in decompose(A, basis)]
        u = pulse_propagator(basis.system, (1, 2, 3), "y", 1.1).matrix
        rotated = Operator(basis.system, u @ A.matrix @ u.conj().T)
        after = [f.weight for f in decompose(rotated, basis)]
        assert np.allclose(before, after, atol=1e-12)

    def test_system_mismatch_rejected(self, basis_cache):
        basis = basis_cache(2)
        other = Operator(SpinSystem((half("1/2"),)), np.eye(2))
        with pytest.raises(ScopeError):
            decompose(other, basis)

    def test_bad_scaling_rejected(self, basis_cache):
        basis = basis_cache(1)
        with pytest.raises(FormatError):
            decompose(Operator(basis.system, np.eye(2)), basis, scaling="huge")


class TestSingleSpinShapes:
    def test_iz_droplet_points_along_z(self, basis_cache):
        basis = basis_cache(1)
        iz = Operator(basis.system, np.diag([0.5, -0.5]))
        droplets = decompose(iz, basis)
        f = droplets[1]  # the {1} droplet
        nonzero = {k: v for k, v in f.coeffs.items() if abs(v) > 1e-12}
        assert set(nonzero) == {(1, 0)}
        north = f.sample(np.array(0.0), np.array(0.0))
        south = f.sample(np.array(np.pi), np.array(0.0))
        assert north.real > 0 and abs(north.imag) < 1e-12
        assert south.real < 0

    def test_raising_operator_winds_positively(self, basis_cache):
        basis = basis_cache(1)
        ip = Operator(basis.system, np.array([[0, 1], [0, 0]], dtype=complex))
        f = decompose(ip, basis)[1]
        nonzero = {k for k, v in f.coeffs.items() if abs(v) > 1e-12}
        assert nonzero == {(1, 1)}
        phis = np.array([0.1, 0.6, 1.4])
        values = f.sample(np.full(3, np.pi / 2), phis)
        phases = np.unwrap(np.angle(values))
        assert np.allclose(np.diff(phases), np.diff(phis), atol=1e-12)

    def test_coherence_order_spectrum(self, basis_cache):
        basis = basis_cache(1)
        iz = Operator(basis.system, np.diag([0.5, -0.5]))
        ip = Operator(basis.system, np.array([[0, 1], [0, 0]], dtype=complex))
        sz = coherence_order_spectrum(iz, basis)
        sp = coherence_order_spectrum(ip, basis)
        assert sz[0] == pytest.approx(0.5)
        assert sum(v for k, v in sz.items() if k != 0) < 1e-12
        assert sp[1] == pytest.approx(1.0)
        assert sum(v for k, v in sp.items() if k != 1) < 1e-12


class TestMesh:
    def test_mesh_shape_and_values(self, basis_cache):
        basis = basis_cache(1)
        iz = Operator(basis.system, np.diag([0.5, -0.5]))
        f = decompose(iz, basis)[1]
        mesh = sample_droplet(f, 8, 16)
        assert mesh.r.shape == (8, 16)
        assert mesh.eta.shape == (8, 16)
        assert mesh.r_max == pytest.approx(mesh.r.max())
        # radius of a zonal function does not depend on phi
        assert np.abs(mesh.r - mesh.r[:, :1]).max() < 1e-12

    def test_bad_grid_rejected(self, basis_cache):
        basis = basis_cache(1)
        f = decompose(Operator(basis.system, np.eye(2)), basis)[0]
        with pytest.raises(FormatError):
            sample_droplet(f, 1, 4)

    def test_mesh_roundtrip(self, basis_cache):
        basis = basis_cache(1)
        f = decompose(Operator(basis.system, np.diag([0.5, -0.5])), basis)[1]
        mesh = sample_droplet(f, 6, 12)
        back = mesh_from_dict(mesh_to_dict(mesh))
        assert back.label == mesh.label
        assert np.array_equal(back.r, mesh.r)
        assert np.array_equal(back.eta, mesh.eta)


class TestSerialization:
    def test_droplet_roundtrip(self, basis_cache):
        basis = basis_cache(2)
        A = _random_operator(basis.system, 8)
        droplets = decompose(A, basis)
        back = droplets_from_dict(droplets_to_dict(droplets))
        assert [f.label for f in back] == [f.label for f in droplets]
        for f1, f2 in zip(back, droplets):
            assert f1.coeffs == f2.coeffs

    def test_zero_flag_serialized(self, basis_cache):
        basis = basis_cache(2)
        iz1 = Operator(
            basis.system, np.kron(np.diag([0.5, -0.5]), np.eye(2))
        )
        doc = droplets_to_dict(decompose(iz1, basis))
        flags = {
            item["label"]["name"]: item["zero"] for item in doc["droplets"]
        }
        assert flags["{1}"] is False
        assert flags["{2}"] is True
        assert flags["{1,2}"] is True
