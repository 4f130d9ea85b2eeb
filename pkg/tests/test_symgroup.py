import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spindrops.spincore import Operator, SpinSystem, half
from spindrops.symgroup import (
    GroupRingElement,
    Partition,
    Permutation,
    YoungTableau,
    all_standard_tableaux,
    axial_distance,
    diagnostic_report,
    orthogonalized_projectors,
    row_column_conflict,
    shape_order,
    standard_tableaux,
    symmetrizer_orthogonality_pairs,
    upsilon_apply,
    upsilon_kernel_dim,
    young_symmetrizer,
)


class TestPermutation:
    def test_composition_applies_right_factor_first(self):
        # (1 2) * (2 3) maps 3 -> 2 -> 1
        a = Permutation.transposition(3, 1, 2)
        b = Permutation.transposition(3, 2, 3)
        assert (a * b)(3) == 1
        assert (a * b)(1) == 2

    def test_inverse(self):
        p = Permutation.from_cycles(4, (1, 2, 3))
        assert p * p.inverse() == Permutation.identity(4)

    def test_parity(self):
        assert Permutation.transposition(3, 1, 3).parity() == -1
        assert Permutation.from_cycles(3, (1, 2, 3)).parity() == 1

    @settings(max_examples=30)
    @given(st.permutations(list(range(4))), st.permutations(list(range(4))))
    def test_composition_matches_function_composition(self, im1, im2):
        p, q = Permutation(im1), Permutation(im2)
        for i in range(1, 5):
            assert (p * q)(i) == p(q(i))


class TestTableaux:
    def test_standard_tableau_counts(self):
        # hook length formula oracles
        assert len(standard_tableaux(Partition((2, 1)))) == 2
        assert len(standard_tableaux(Partition((3, 2)))) == 5
        assert len(standard_tableaux(Partition((2, 2, 1)))) == 5
        assert len(standard_tableaux(Partition((4, 2)))) == 9

    def test_total_standard_tableaux(self):
        # sum of squares of f_lambda equals g!
        for g in range(1, 7):
            total = sum(
                len(standard_tableaux(shape)) ** 2 for shape in shape_order(g)
            )
            assert total == math.factorial(g)

    def test_all_standard_tableaux_ordered_by_shape(self):
        taus = all_standard_tableaux(4)
        shapes = [tuple(t.shape) for t in taus]
        order = [tuple(s) for s in shape_order(4)]
        assert shapes == sorted(shapes, key=order.index)

    def test_axial_distance(self):
        tau = YoungTableau(((1, 2), (3,)))
        # 2 at (0,1), 3 at (1,0): down one, left one -> distance 2
        assert axial_distance(tau, 2) == 2
        tau2 = YoungTableau(((1, 3), (2,)))
        # 2 at (1,0), 3 at (0,1): up one, right one -> distance -2
        assert axial_distance(tau2, 2) == -2


class TestYoungSymmetrizer:
    def test_row_symmetrizer_two_boxes(self):
        # e for the single-row shape (2) is (id + (12)) / 2
        tau = YoungTableau(((1, 2),))
        e = young_symmetrizer(tau)
        assert e.coefficient(Permutation.identity(2)) == Fraction(1, 2)
        assert e.coefficient(Permutation.transposition(2, 1, 2)) == Fraction(1, 2)

    def test_column_symmetrizer_two_boxes(self):
        tau = YoungTableau(((1,), (2,)))
        e = young_symmetrizer(tau)
        assert e.coefficient(Permutation.identity(2)) == Fraction(1, 2)
        assert e.coefficient(Permutation.transposition(2, 1, 2)) == Fraction(-1, 2)

    @pytest.mark.parametrize("rows", [((1, 2),), ((1, 2), (3,)), ((1, 3), (2,)), ((1, 2, 3),)])
    def test_idempotent(self, rows):
        e = young_symmetrizer(YoungTableau(rows))
        assert e * e == e

    def test_row_column_conflict(self):
        tau = YoungTableau(((1, 2), (3,)))
        tau_prime = YoungTableau(((1, 3), (2,)))
        # 1 and 2 share a row of tau and a column of tau_prime
        assert row_column_conflict(tau_prime, tau)
        assert not row_column_conflict(tau, tau)


class TestOrthogonalizedProjectors:
    @pytest.mark.parametrize("shape", [(2, 1), (3, 1), (2, 2), (3, 2)])
    def test_all_ok_and_idempotent(self, shape):
        results = orthogonalized_projectors(shape)
        assert len(results) == len(standard_tableaux(Partition(shape)))
        for _, e, status in results:
            assert status == "ok"
            assert e * e == e

    @pytest.mark.parametrize("shape", [(2, 1), (2, 2), (3, 2)])
    def test_images_pairwise_orthogonal(self, shape):
        # the projector images on operator space are Hilbert-Schmidt
        # orthogonal, which is the property the basis construction uses
        g = sum(shape)
        system = SpinSystem((half("1/2"),) * g)
        rng = np.random.default_rng(11)
        dim = system.dim
        A = Operator(system, rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
        images = [upsilon_apply(e, A).matrix for _, e, _ in orthogonalized_projectors(shape)]
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                norm = np.linalg.norm(images[i]) * np.linalg.norm(images[j])
                assert abs(np.vdot(images[i], images[j])) < 1e-10 * max(norm, 1.0)

    def test_corrupted_projector_appears_at_g5(self):
        report = diagnostic_report(5)
        assert report["corrupted"] == [16]

    def test_plain_symmetrizers_not_orthogonal_pairs_g5(self):
        assert symmetrizer_orthogonality_pairs(5) == [(6, 10), (17, 21)]


class TestKernel:
    @pytest.mark.parametrize("g,expected", [(2, 0), (3, 0), (4, 0), (5, 1)])
    def test_kernel_dims(self, g, expected):
        assert upsilon_kernel_dim(g, "1/2") == expected


class TestUpsilonAction:
    def _two_spin_operator(self):
        system = SpinSystem((half("1/2"), half("1/2")))
        rng = np.random.default_rng(5)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        return system, a, b

    def test_transposition_swaps_factors(self):
        system, a, b = self._two_spin_operator()
        ab = Operator(system, np.kron(a, b))
        swapped = upsilon_apply(Permutation.transposition(2, 1, 2), ab)
        assert np.allclose(swapped.matrix, np.kron(b, a))

    def test_group_ring_action_is_linear(self):
        system, a, b = self._two_spin_operator()
        ab = Operator(system, np.kron(a, b))
        e = young_symmetrizer(YoungTableau(((1, 2),)))
        sym = upsilon_apply(e, ab)
        expected = (np.kron(a, b) + np.kron(b, a)) / 2
        assert np.allclose(sym.matrix, expected)

    def test_action_is_a_homomorphism(self):
        system = SpinSystem((half("1/2"),) * 3)
        rng = np.random.default_rng(9)
        mat = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        A = Operator(system, mat)
        p = Permutation.from_cycles(3, (1, 2, 3))
        q = Permutation.transposition(3, 2, 3)
        lhs = upsilon_apply(p * q, A)
        rhs = upsilon_apply(p, upsilon_apply(q, A))
        assert np.allclose(lhs.matrix, rhs.matrix)
