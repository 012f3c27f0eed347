# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Tests for momentum_spectral module."""

from __future__ import annotations

import numpy as np
import pytest

from qwalk_si.exceptions import (
    BranchAmbiguityError,
    ChiralAxisError,
    ConfigurationError,
    DimensionMismatchError,
)
from qwalk_si.models import MomentumGrid, WalkKind, WalkSpec
from qwalk_si.momentum_spectral import (
    analytic_chiral_axis,
    block_diagonal_residual,
    bloch_decompose,
    chiral_axis_from_hamiltonian,
    chiral_axis_search,
    dispersion,
    effective_hamiltonian,
    reconstruction_residual,
    scramble_hamiltonian,
    spectrum_consistency,
    symmetry_report,
    verify_chiral,
    verify_particle_hole,
    verify_time_reversal,
)


@pytest.fixture
def small_split() -> WalkSpec:
    """Gapped split-step walk small enough for dense comparisons."""
    return WalkSpec(WalkKind.SPLIT_STEP, 16, theta1=0.4, theta2=1.1)


@pytest.fixture
def gapless() -> WalkSpec:
    """Split-step walk with both angles zero; the gap closes."""
    return WalkSpec(WalkKind.SPLIT_STEP, 32, theta1=0.0, theta2=0.0)


class TestMomentumGrid:
    """Tests for the momentum grid."""

    def test_points_cover_brillouin_zone(self) -> None:
        """k_j starts at -pi and steps by 2 pi / N."""
        points = MomentumGrid(4).points
        np.testing.assert_allclose(
            points, [-np.pi, -np.pi / 2, 0.0, np.pi / 2]
        )

    def test_mirror_indices(self) -> None:
        """-k_j lands on the grid; -pi maps to itself."""
        assert MomentumGrid(4).mirror_indices().tolist() == [0, 3, 2, 1]

    @pytest.mark.parametrize("size", [0, 1, 7])
    def test_rejects_odd_or_tiny(self, size: int) -> None:
        """The grid needs an even size of at least 2."""
        with pytest.raises(ConfigurationError):
            MomentumGrid(size)


class TestBlochDecomposition:
    """Tests for bloch_decompose and its consistency with position space."""

    def test_block_diagonalizes_walk(self, small_split: WalkSpec) -> None:
        """F U F^dagger is block diagonal with blocks W(k_j)."""
        assert block_diagonal_residual(small_split, MomentumGrid(16)) <= 1e-9

    def test_standard_walk_blocks(self, hadamard_spec: WalkSpec) -> None:
        """The Hadamard walk also block-diagonalizes."""
        assert block_diagonal_residual(hadamard_spec, MomentumGrid(16)) <= 1e-9

    def test_spectra_agree(self, small_split: WalkSpec) -> None:
        """spec(U) is the union of the block spectra."""
        assert spectrum_consistency(small_split) <= 1e-9

    def test_blocks_are_unitary(self, split_spec: WalkSpec) -> None:
        """Every W(k) is unitary."""
        blocks = bloch_decompose(split_spec, MomentumGrid(64)).blocks
        products = blocks.conj().transpose(0, 2, 1) @ blocks
        np.testing.assert_allclose(
            products, np.broadcast_to(np.eye(2), products.shape), atol=1e-12
        )

    def test_grid_mismatch(self, split_spec: WalkSpec) -> None:
        """Grid and lattice must have the same size."""
        with pytest.raises(DimensionMismatchError):
            bloch_decompose(split_spec, MomentumGrid(32))


class TestEffectiveHamiltonian:
    """Tests for the principal logarithm."""

    def test_reconstructs_blocks(self, split_spec: WalkSpec) -> None:
        """exp(-i H(k)) gives back W(k)."""
        family = bloch_decompose(split_spec, MomentumGrid(64))
        heff = effective_hamiltonian(family)
        assert reconstruction_residual(family, heff) <= 1e-10

    def test_hamiltonians_hermitian(self, split_spec: WalkSpec) -> None:
        """H(k) is Hermitian."""
        heff = effective_hamiltonian(
            bloch_decompose(split_spec, MomentumGrid(64))
        )
        h = heff.hamiltonians
        np.testing.assert_allclose(h, h.conj().transpose(0, 2, 1), atol=1e-14)

    def test_split_step_is_traceless(self, split_spec: WalkSpec) -> None:
        """det W(k) = 1, so the offset vanishes."""
        heff = effective_hamiltonian(
            bloch_decompose(split_spec, MomentumGrid(64))
        )
        np.testing.assert_allclose(heff.offsets, 0.0, atol=1e-12)
        assert heff.gap > 0.1

    def test_gapless_walk_is_flagged(self, gapless: WalkSpec) -> None:
        """W(-pi) = -I is flagged, not silently resolved."""
        heff = effective_hamiltonian(
            bloch_decompose(gapless, MomentumGrid(32))
        )
        assert heff.branch_flags[0]
        assert heff.flagged_momenta[0] == pytest.approx(-np.pi)


class TestDispersion:
    """Tests for band construction."""

    def test_bands_are_symmetric(self, split_spec: WalkSpec) -> None:
        """Traceless H(k) gives E_-(k) = -E_+(k)."""
        bands = dispersion(split_spec, MomentumGrid(64))
        np.testing.assert_allclose(bands.e_minus, -bands.e_plus, atol=1e-12)
        assert not bands.branch_flags.any()

    def test_strict_raises_on_flags(self, gapless: WalkSpec) -> None:
        """strict=True refuses flagged momenta."""
        with pytest.raises(BranchAmbiguityError) as excinfo:
            dispersion(gapless, MomentumGrid(32), strict=True)
        assert excinfo.value.momenta

    def test_lenient_keeps_flags(self, gapless: WalkSpec) -> None:
        """Without strict the flags are reported in the result."""
        bands = dispersion(gapless, MomentumGrid(32))
        assert bands.branch_flags[0]


class TestChiralAxis:
    """Tests for the chiral axis search and symmetry residuals."""

    @pytest.mark.parametrize(
        ("theta1", "theta2"), [(0.4, 1.1), (-0.9, 0.3), (1.3, -2.0)]
    )
    def test_matches_closed_form(self, theta1: float, theta2: float) -> None:
        """The numerical axis is (cos theta1, 0, sin theta1) up to sign."""
        found = chiral_axis_search(theta1, theta2)
        np.testing.assert_allclose(
            found.axis, analytic_chiral_axis(theta1), atol=1e-8
        )
        assert found.residual <= 1e-8
        assert not found.degenerate

    def test_symmetry_residuals(self, split_spec: WalkSpec) -> None:
        """Chiral, particle-hole and time-reversal symmetries all hold."""
        heff = effective_hamiltonian(
            bloch_decompose(split_spec, MomentumGrid(64))
        )
        axis = chiral_axis_from_hamiltonian(heff).axis
        assert verify_chiral(axis, heff) <= 1e-8
        assert verify_particle_hole(heff) <= 1e-8
        assert verify_time_reversal(axis, heff) <= 1e-7

    def test_wrong_axis_fails(self, split_spec: WalkSpec) -> None:
        """An axis orthogonal to the chiral one breaks the symmetry."""
        heff = effective_hamiltonian(
            bloch_decompose(split_spec, MomentumGrid(64))
        )
        assert verify_chiral((0.0, 1.0, 0.0), heff) > 1e-2

    def test_closed_gap_raises(self, gapless: WalkSpec) -> None:
        """n(k) is undefined when the gap closes."""
        heff = effective_hamiltonian(
            bloch_decompose(gapless, MomentumGrid(32))
        )
        with pytest.raises(ChiralAxisError, match="closed"):
            chiral_axis_from_hamiltonian(heff)


class TestSymmetryReport:
    """Tests for symmetry_report."""

    def test_gapped_report(self, split_spec: WalkSpec) -> None:
        """A gapped walk reports an axis and small residuals."""
        report = symmetry_report(split_spec)
        assert report.chiral_axis is not None
        assert report.residual_chiral is not None
        assert report.residual_chiral <= 1e-8
        assert report.residual_ph <= 1e-8
        assert report.diagnostics == []
        assert set(report.to_dict()) == {
            "chiral_axis",
            "residual_chiral",
            "residual_ph",
            "residual_tr",
            "gap",
            "singular_value",
            "diagnostics",
        }

    def test_gapless_report(self, gapless: WalkSpec) -> None:
        """A closed gap leaves the axis empty and explains why."""
        report = symmetry_report(gapless)
        assert report.chiral_axis is None
        assert report.residual_chiral is None
        assert report.residual_tr is None
        assert any("closed" in d for d in report.diagnostics)

    def test_scrambled_control(
        self, split_spec: WalkSpec, rng: np.random.Generator
    ) -> None:
        """Random perturbations of H(k) break all three symmetries."""
        report = symmetry_report(split_spec, scramble=True, rng=rng)
        assert report.residual_chiral is not None
        assert report.residual_tr is not None
        assert report.residual_chiral > 1e-2
        assert report.residual_ph > 1e-2
        assert report.residual_tr > 1e-2
        assert "scrambled negative control" in report.diagnostics

    def test_scrambled_hamiltonian_stays_hermitian(
        self, split_spec: WalkSpec, rng: np.random.Generator
    ) -> None:
        """The perturbed H(k) is Hermitian with consistent band energies."""
        heff = effective_hamiltonian(
            bloch_decompose(split_spec, MomentumGrid(64))
        )
        scrambled = scramble_hamiltonian(heff, rng)
        hams = scrambled.hamiltonians
        np.testing.assert_allclose(
            hams, hams.conj().transpose(0, 2, 1), atol=1e-14
        )
        eigenvalues = np.linalg.eigvalsh(hams)
        np.testing.assert_allclose(
            0.5 * (eigenvalues[:, 1] - eigenvalues[:, 0]),
            scrambled.energies,
            atol=1e-12,
        )
        assert not np.allclose(hams, heff.hamiltonians)
