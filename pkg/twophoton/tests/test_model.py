"""Tests for parameters, operators, the Hamiltonian and Z4 parity."""

import math

import numpy as np
import pytest
import scipy.sparse as sparse
from pydantic import ValidationError

from twophoton.errors import DimensionError
from twophoton.model.hamiltonian import assemble_hamiltonian
from twophoton.model.operators import (
    SpinPhotonOperator,
    build_photon_operators,
    build_spin_operators,
    embed,
    hilbert_dim,
)
from twophoton.model.params import ModelParams, TruncationSpec
from twophoton.model.parity import (
    parity_labels,
    parity_operator,
    parity_sectors,
    photon_block_indices,
    z4_sectors,
)


class TestModelParams:
    """Tests for ModelParams and TruncationSpec."""

    def test_derived_couplings(self):
        """Should derive g_c, g_collapse, delta and j from the stored fields."""
        params = ModelParams(omega=1.0, omega1=0.5, g=0.2, n_atoms=100)

        assert params.g_c == pytest.approx(math.sqrt(0.5) / 2)
        assert params.g_c == pytest.approx(0.35355339059327373)
        assert params.g_collapse == 0.5
        assert params.delta == pytest.approx(0.005)
        assert params.j == 50
        assert params.g_prime == pytest.approx(0.2 / params.g_c)

    def test_from_delta_scales_omega1(self):
        """Should store omega1 = N * delta."""
        params = ModelParams.from_delta(0.1, 4, g=0.0)

        assert params.omega1 == pytest.approx(0.4)
        assert params.delta == pytest.approx(0.1)

    def test_g_prime_without_atoms_frequency(self):
        """Should report an infinite g' when g_c vanishes and g > 0."""
        assert ModelParams(omega1=0.0, g=0.1, n_atoms=2).g_prime == math.inf
        assert ModelParams(omega1=0.0, g=0.0, n_atoms=2).g_prime == 0.0

    def test_rejects_invalid_fields(self):
        """Should reject non-positive omega and atom counts below one."""
        with pytest.raises(ValidationError):
            ModelParams(omega=0.0, omega1=0.5, n_atoms=10)
        with pytest.raises(ValidationError):
            ModelParams(omega1=0.5, n_atoms=0)
        with pytest.raises(ValidationError):
            ModelParams(omega1=0.5, g=-0.1, n_atoms=10)

    def test_params_are_frozen(self):
        """Should refuse mutation and copy on with_g."""
        params = ModelParams(omega1=0.5, n_atoms=10)

        with pytest.raises(ValidationError):
            params.g = 0.3
        assert params.with_g(0.3).g == 0.3
        assert params.g == 0.0

    def test_truncation_ceiling(self):
        """Should reject a starting cutoff above the ceiling."""
        with pytest.raises(ValidationError):
            TruncationSpec(n_max=64, n_max_ceiling=32)

    def test_fixed_pins_the_cutoff(self):
        """Should pin both the start and the ceiling."""
        spec = TruncationSpec().fixed(40)

        assert spec.n_max == 40
        assert spec.n_max_ceiling == 40


class TestOperators:
    """Tests for spin and photon factor matrices."""

    @pytest.mark.parametrize("n_atoms", [1, 2, 5, 12])
    def test_spin_algebra(self, n_atoms):
        """Should satisfy [Jx, Jy] = i Jz and the Casimir j(j+1)."""
        spin = build_spin_operators(n_atoms)
        jx, jy, jz = (op.toarray() for op in (spin.jx, spin.jy, spin.jz))
        j = n_atoms / 2

        np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
        casimir = jx @ jx + jy @ jy + jz @ jz
        np.testing.assert_allclose(casimir, j * (j + 1) * np.eye(n_atoms + 1), atol=1e-12)

    def test_jy2_is_real_square(self):
        """Should store Jy^2 as a real matrix equal to Jy @ Jy."""
        spin = build_spin_operators(6)

        assert spin.jy2.is_real
        assert not spin.jy.is_real
        np.testing.assert_allclose(spin.jy2.toarray(), (spin.jy.toarray() @ spin.jy.toarray()).real, atol=1e-12)

    def test_photon_pair_entries(self):
        """Should put sqrt((n+1)(n+2)) on the second off-diagonals."""
        photon = build_photon_operators(5)
        pair = photon.two_photon.toarray()

        assert pair.shape == (6, 6)
        assert pair[2, 0] == pytest.approx(math.sqrt(2))
        assert pair[5, 3] == pytest.approx(math.sqrt(20))
        np.testing.assert_array_equal(pair, pair.T)
        np.testing.assert_array_equal(np.diag(photon.number.toarray()), np.arange(6))

    def test_rejects_small_spaces(self):
        """Should reject N < 1 and n_max < 2 with DimensionError."""
        with pytest.raises(DimensionError, match="n_atoms"):
            build_spin_operators(0)
        with pytest.raises(DimensionError, match="n_max"):
            build_photon_operators(1)

    def test_hermitian_flag_is_checked(self):
        """Should refuse a non-hermitian matrix flagged hermitian."""
        with pytest.raises(ValueError, match="flagged hermitian"):
            SpinPhotonOperator(sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]])), label="bad")
        with pytest.raises(DimensionError):
            SpinPhotonOperator(sparse.csr_matrix(np.zeros((2, 3))))

    def test_embed_dimensions(self):
        """Should build spin-major products and reject mismatched factors."""
        spin = build_spin_operators(3)
        photon = build_photon_operators(4)

        op = embed(spin.jz, photon.number, 3, 4)
        assert op.dim == hilbert_dim(3, 4) == 20
        # index = k * (n_max + 1) + n
        assert op.toarray()[2 * 5 + 3, 2 * 5 + 3] == pytest.approx((2 - 1.5) * 3)

        with pytest.raises(DimensionError):
            embed(spin.jz, None, 4, 4)


class TestHamiltonian:
    """Tests for assemble_hamiltonian."""

    def test_decoupled_is_diagonal(self):
        """Should reduce to delta*Jz + omega*n at g = 0."""
        params = ModelParams.from_delta(0.1, 4, g=0.0)
        h = assemble_hamiltonian(params, TruncationSpec(n_max=4)).toarray()

        np.testing.assert_array_equal(h, np.diag(np.diag(h)))
        assert h[0, 0] == pytest.approx(-0.2)
        assert h.min() == pytest.approx(-0.2)

    def test_symmetric_and_real(self):
        """Should assemble a real symmetric matrix with the two-photon coupling."""
        params = ModelParams(omega1=0.5, g=0.3, n_atoms=5)
        h = assemble_hamiltonian(params, TruncationSpec(n_max=8))

        assert h.is_real
        dense = h.toarray()
        np.testing.assert_array_equal(dense, dense.T)
        # <k=1, n=2| H |k=0, n=0> = (2g/N) <1|Jx|0> sqrt(2)
        expected = 2 * 0.3 / 5 * math.sqrt(5) / 2 * math.sqrt(2)
        assert dense[1 * 9 + 2, 0] == pytest.approx(expected)

    def test_matches_dense_kronecker_sum(self):
        """Should equal the 15x15 matrix built from dense Kronecker products at N = 2, n_max = 4."""
        params = ModelParams(omega=1.3, omega1=0.6, g=0.35, n_atoms=2)
        jz = np.diag([-1.0, 0.0, 1.0])
        jx = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]) / math.sqrt(2)
        a = np.diag(np.sqrt(np.arange(1.0, 5.0)), 1)
        pair = a @ a + (a @ a).T
        number = a.T @ a

        expected = (
            0.3 * np.kron(jz, np.eye(5))
            + 1.3 * np.kron(np.eye(3), number)
            + (2 * 0.35 / 2) * np.kron(jx, pair)
        )
        h = assemble_hamiltonian(params, TruncationSpec().fixed(4)).toarray()

        assert h.shape == (15, 15)
        np.testing.assert_allclose(h, expected, atol=1e-14)

    def test_builds_beyond_the_collapse_coupling(self):
        """Should assemble the finite truncated matrix for g >= omega/2."""
        params = ModelParams(omega=1.0, omega1=0.5, g=0.7, n_atoms=3)

        h = assemble_hamiltonian(params, TruncationSpec().fixed(6)).toarray()

        assert np.isfinite(h).all()
        np.testing.assert_array_equal(h, h.T)

    def test_dimension_limit(self):
        """Should refuse spaces above dim_limit."""
        params = ModelParams(omega1=0.5, g=0.1, n_atoms=100)

        with pytest.raises(DimensionError, match="dim_limit"):
            assemble_hamiltonian(params, TruncationSpec(n_max=100), dim_limit=1000)


class TestParity:
    """Tests for the Z4 parity operator and its sectors."""

    @pytest.mark.parametrize("n_atoms,n_max", [(1, 4), (2, 64), (5, 4), (20, 64)])
    def test_commutes_and_has_order_four(self, n_atoms, n_max):
        """Should commute exactly with H and satisfy Pi^4 = I."""
        pi = parity_operator(n_atoms, n_max).matrix
        h = assemble_hamiltonian(
            ModelParams(omega1=0.5, g=0.3, n_atoms=n_atoms), TruncationSpec().fixed(n_max)
        ).matrix

        commutator = (h @ pi - pi @ h).toarray()
        assert np.abs(commutator).max() <= 1e-12
        np.testing.assert_array_equal((pi @ pi @ pi @ pi).toarray(), np.eye(pi.shape[0]))

    def test_phase_convention(self):
        """Should equal (-1)^N (-1)^(j-m) i^n on every basis state."""
        n_atoms, n_max = 3, 5
        phases = parity_operator(n_atoms, n_max).matrix.diagonal()
        for k in range(n_atoms + 1):
            for n in range(n_max + 1):
                expected = (-1) ** n_atoms * (-1) ** (n_atoms - k) * 1j**n
                assert phases[k * (n_max + 1) + n] == pytest.approx(expected)

    def test_sectors_partition_the_basis(self):
        """Should split the basis into four disjoint sectors with no H coupling between them."""
        n_atoms, n_max = 4, 10
        sectors = z4_sectors(n_atoms, n_max)
        h = assemble_hamiltonian(ModelParams(omega1=0.5, g=0.4, n_atoms=n_atoms), TruncationSpec(n_max=n_max))
        dense = h.toarray()

        combined = np.sort(np.concatenate(list(sectors.values())))
        np.testing.assert_array_equal(combined, np.arange(hilbert_dim(n_atoms, n_max)))
        for q, rows in sectors.items():
            for p, cols in sectors.items():
                if p != q:
                    assert not dense[np.ix_(rows, cols)].any()

    def test_photon_blocks_split_into_sector_pairs(self):
        """Should make the even block q in {0, 2} and the odd block q in {1, 3}."""
        n_atoms, n_max = 3, 7
        sectors = z4_sectors(n_atoms, n_max)
        even = photon_block_indices(n_atoms, n_max, "even")
        odd = photon_block_indices(n_atoms, n_max, "odd")

        np.testing.assert_array_equal(even, np.sort(np.concatenate([sectors[0], sectors[2]])))
        np.testing.assert_array_equal(odd, np.sort(np.concatenate([sectors[1], sectors[3]])))
        with pytest.raises(ValueError):
            photon_block_indices(n_atoms, n_max, "both")

    def test_fock_parity_split(self):
        """Should split Fock indices by photon-number parity."""
        even, odd = parity_sectors(5)

        np.testing.assert_array_equal(even, [0, 2, 4])
        np.testing.assert_array_equal(odd, [1, 3, 5])
        assert set(parity_labels(2, 5)) == {0, 1, 2, 3}
