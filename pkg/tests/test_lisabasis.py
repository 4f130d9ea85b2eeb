import numpy as np
import pytest

from spindrops.errors import ScopeError
from spindrops.lisabasis import (
    basis_from_dict,
    basis_to_dict,
    build_basis,
    embed_operator,
    multiplicity_table,
    rank_catalog,
)
from spindrops.spincore import Operator, SpinSystem, half
from spindrops.symgroup import Permutation, upsilon_apply


def _gram_error(basis):
    m = basis.matrix()
    gram = m.conj() @ m.T
    return np.abs(gram - np.eye(len(basis.entries))).max()


class TestSpinHalfBases:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("method", ["projection", "cfp"])
    def test_orthonormal_and_complete(self, basis_cache, n, method):
        basis = basis_cache(n, method)
        assert len(basis.entries) == 4**n
        assert _gram_error(basis) < 1e-12

    def test_identity_entry_first(self, basis_cache):
        basis = basis_cache(3)
        label, op = basis.entries[0]
        assert label.sites == ()
        assert np.allclose(op.matrix, np.eye(8) / np.sqrt(8))

    def test_droplet_count_four_spins(self, basis_cache):
        basis = basis_cache(4)
        assert len(basis.droplets) == 36

    def test_droplets_partition_the_entries(self, basis_cache):
        basis = basis_cache(4)
        seen = []
        for _label, members in basis.droplets:
            seen.extend(members)
        assert sorted(seen) == list(range(len(basis.entries)))

    def test_conjugation_symmetry(self, basis_cache):
        # adjoint of T_jm equals (-1)^m T_j,-m within every droplet
        basis = basis_cache(3, "cfp")
        by_key = {
            (label.droplet(), label.j, label.m): op for label, op in basis.entries
        }
        for (dlabel, j, m), op in by_key.items():
            partner = by_key[(dlabel, j, -m)]
            err = np.abs(op.matrix.conj().T - (-1) ** m * partner.matrix).max()
            assert err < 1e-12

    def test_method_equivalence_three_spins(self, basis_cache):
        b1 = basis_cache(3, "projection")
        b2 = basis_cache(3, "cfp")
        assert [l.name for l, _ in b1.entries] == [l.name for l, _ in b2.entries]
        for (_, op1), (_, op2) in zip(b1.entries, b2.entries):
            assert np.abs(op1.matrix - op2.matrix).max() < 1e-9


class TestRankCatalogs:
    def test_three_spins(self):
        catalog = rank_catalog(3)
        assert catalog[((3,), None)] == (1, 3)
        assert catalog[((2, 1), None)] == (1, 2)
        assert catalog[((1, 1, 1), None)] == (0,)

    def test_four_spins(self):
        catalog = rank_catalog(4)
        assert catalog[((4,), None)] == (0, 2, 4)
        assert catalog[((3, 1), None)] == (1, 2, 3)
        assert catalog[((2, 2), None)] == (0, 2)
        assert catalog[((2, 1, 1), None)] == (1,)
        assert ((1, 1, 1, 1), None) not in catalog


class TestEmbedding:
    def test_single_site_embedding_matches_kron(self):
        system = SpinSystem((half("1/2"),) * 3)
        sz = np.diag([0.5, -0.5])
        ident = np.eye(2) / np.sqrt(2)
        op = embed_operator(sz, (2,), system)
        expected = np.kron(ident, np.kron(sz, ident))
        assert np.allclose(op.matrix, expected)

    def test_embedding_commutes_with_site_relabeling(self):
        system = SpinSystem((half("1/2"),) * 3)
        rng = np.random.default_rng(2)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        on_12 = embed_operator(a, (1, 2), system)
        on_13 = embed_operator(a, (1, 3), system)
        swapped = upsilon_apply(Permutation.transposition(3, 2, 3), on_12)
        assert np.allclose(swapped.matrix, on_13.matrix)


class TestTwoQuditBases:
    @pytest.mark.parametrize("j1,j2", [("1/2", "1"), ("1", "1"), ("1", "3/2")])
    def test_orthonormal_and_complete(self, pair_basis_cache, j1, j2):
        basis = pair_basis_cache(j1, j2)
        dim = basis.system.dim
        assert len(basis.entries) == dim * dim
        assert _gram_error(basis) < 1e-12

    def test_equal_pair_droplet_count(self, pair_basis_cache):
        # (2J)^2 + 3 droplets for equal spin numbers
        basis = pair_basis_cache("1", "1")
        assert len(basis.droplets) == 4 + 3

    def test_unequal_pair_droplet_count(self, pair_basis_cache):
        # 4 J1 J2 + 3 droplets for unequal spin numbers
        basis = pair_basis_cache("1/2", "1")
        assert len(basis.droplets) == 2 + 3


class TestMultiplicityTable:
    def test_equal_spin_half(self):
        t = multiplicity_table("1/2", "1/2")
        assert t["sym"] == (1, 0, 1)
        assert t["anti"][:2] == (0, 1)

    def test_equal_spin_one(self):
        t = multiplicity_table(1, 1)
        assert t["sym"] == (2, 1, 3, 1, 1)
        assert t["anti"] == (0, 3, 1, 2, 0)

    def test_unequal_half_one(self):
        assert multiplicity_table("1/2", 1)["total"] == (1, 2, 2, 1)

    def test_unequal_two_fivehalves(self):
        t = multiplicity_table(2, "5/2")
        assert t["total"] == (4, 11, 16, 18, 17, 14, 10, 6, 3, 1)


class TestScope:
    def test_too_many_spins(self):
        with pytest.raises(ScopeError):
            build_basis(SpinSystem((half("1/2"),) * 7))

    def test_projection_beyond_four_spins(self):
        with pytest.raises(ScopeError):
            build_basis(SpinSystem((half("1/2"),) * 5), "projection")

    def test_three_higher_spins_rejected(self):
        with pytest.raises(ScopeError):
            build_basis(SpinSystem((half(1), half(1), half(1))))

    def test_spin_number_cap(self):
        with pytest.raises(ScopeError):
            build_basis(SpinSystem((half(4), half("1/2"))))

    def test_unknown_method(self):
        with pytest.raises(ScopeError):
            build_basis(SpinSystem((half("1/2"),)), "magic")


class TestSerialization:
    def test_roundtrip_bit_exact(self, basis_cache):
        basis = basis_cache(2)
        back = basis_from_dict(basis_to_dict(basis))
        assert back.system == basis.system
        assert [l for l, _ in back.entries] == [l for l, _ in basis.entries]
        for (_, op1), (_, op2) in zip(back.entries, basis.entries):
            assert np.array_equal(op1.matrix, op2.matrix)
        assert back.droplets == basis.droplets

    def test_pair_roundtrip(self, pair_basis_cache):
        basis = pair_basis_cache("1/2", "1")
        back = basis_from_dict(basis_to_dict(basis))
        assert [l for l, _ in back.entries] == [l for l, _ in basis.entries]
