# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Bloch decomposition, effective Hamiltonians and symmetry residuals.

Fourier convention: psi_hat(k) = N^{-1/2} sum_x e^{ikx} psi(x), so the
right translation L+ becomes multiplication by e^{ik}.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import linalg
from scipy.optimize import linear_sum_assignment

from .exceptions import (
    BranchAmbiguityError,
    ChiralAxisError,
    DimensionMismatchError,
)
from .models import (
    BlochFamily,
    ChiralAxis,
    ComplexArray,
    Dispersion,
    EffectiveHamiltonian,
    FloatArray,
    MomentumGrid,
    SymmetryReport,
    WalkKind,
    WalkSpec,
)
from .walk_engine import coin_rotation, one_step_operator, standard_coin

logger = logging.getLogger(__name__)

BRANCH_TOL = 1e-10
GAP_TOL = 1e-8
AXIS_FAILURE_TOL = 1e-6

PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=np.complex128,
)


def bloch_decompose(spec: WalkSpec, grid: MomentumGrid) -> BlochFamily:
    """Momentum blocks W(k_j) of a walk.

    Raises:
        DimensionMismatchError: If the grid and lattice sizes differ
    """
    if spec.lattice_size != grid.size:
        msg = (
            f"Grid has {grid.size} momenta, walk has "
            f"{spec.lattice_size} sites"
        )
        raise DimensionMismatchError(msg)

    phases = np.exp(1j * grid.points)
    ones = np.ones_like(phases)
    if spec.kind == WalkKind.STANDARD:
        shift_k = _diagonal(phases, phases.conj())
        blocks = shift_k @ standard_coin(spec).entries
    else:
        half_up = _diagonal(phases, ones)
        half_down = _diagonal(ones, phases.conj())
        blocks = (
            half_down
            @ coin_rotation(spec.theta2).entries
            @ half_up
            @ coin_rotation(spec.theta1).entries
        )
    return BlochFamily(grid=grid, blocks=blocks)


def _diagonal(upper: ComplexArray, lower: ComplexArray) -> ComplexArray:
    out = np.zeros((upper.shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = upper
    out[:, 1, 1] = lower
    return out


def fourier_matrix(grid: MomentumGrid) -> ComplexArray:
    """Unitary F (x) I_2 mapping site-blocked states to momentum-blocked ones."""
    sites = np.arange(grid.size)
    scalar = np.exp(1j * np.outer(grid.points, sites)) / np.sqrt(grid.size)
    matrix: ComplexArray = np.kron(scalar, np.eye(2))
    return matrix


def block_diagonal_residual(spec: WalkSpec, grid: MomentumGrid) -> float:
    """max |F U F^dagger - diag(W(k_j))| against the position-space operator."""
    family = bloch_decompose(spec, grid)
    transform = fourier_matrix(grid)
    conjugated = transform @ one_step_operator(spec) @ transform.conj().T
    expected = linalg.block_diag(*family.blocks)
    return float(np.max(np.abs(conjugated - expected)))


def effective_hamiltonian(family: BlochFamily) -> EffectiveHamiltonian:
    """H(k) = i log W(k) on the principal branch.

    Eigenphases are taken in (-pi, pi]. Momenta where W(k) has an eigenvalue
    within BRANCH_TOL of -1 are flagged, never silently resolved.
    """
    size = family.grid.size
    hamiltonians = np.zeros((size, 2, 2), dtype=np.complex128)
    flags = np.zeros(size, dtype=bool)

    for j, block in enumerate(family.blocks):
        # W is normal, so its complex Schur form is diagonal.
        triangular, vectors = linalg.schur(block, output="complex")
        eigenvalues = np.diag(triangular)
        flags[j] = bool(np.any(np.abs(eigenvalues + 1.0) <= BRANCH_TOL))
        phases = np.angle(eigenvalues)
        phases = np.where(phases <= -np.pi + BRANCH_TOL, np.pi, phases)
        h = vectors @ np.diag(-phases) @ vectors.conj().T
        hamiltonians[j] = 0.5 * (h + h.conj().T)

    if flags.any():
        logger.warning(
            f"Branch ambiguity (eigenvalue -1) at {int(flags.sum())} momenta"
        )

    offsets = 0.5 * np.real(np.trace(hamiltonians, axis1=1, axis2=2))
    vectors3 = np.real(np.einsum("kab,iba->ki", hamiltonians, PAULI)) / 2.0
    energies = np.linalg.norm(vectors3, axis=1)
    axes = np.zeros_like(vectors3)
    nonzero = energies > 0
    axes[nonzero] = vectors3[nonzero] / energies[nonzero, None]

    return EffectiveHamiltonian(
        grid=family.grid,
        hamiltonians=hamiltonians,
        offsets=offsets,
        energies=energies,
        axes=axes,
        branch_flags=flags,
    )


def reconstruction_residual(
    family: BlochFamily, heff: EffectiveHamiltonian
) -> float:
    """max over unflagged k of |exp(-i H(k)) - W(k)|."""
    residual = 0.0
    for j in np.flatnonzero(~heff.branch_flags):
        rebuilt = linalg.expm(-1j * heff.hamiltonians[j])
        residual = max(
            residual, float(np.max(np.abs(rebuilt - family.blocks[j])))
        )
    return residual


def dispersion(
    spec: WalkSpec, grid: MomentumGrid, *, strict: bool = False
) -> Dispersion:
    """Two quasi-energy bands ordered by eigenvector continuity.

    At the first momentum the upper eigenvalue starts ``e_plus``; afterwards
    each band follows the eigenvector with maximal overlap with its
    predecessor.

    Raises:
        BranchAmbiguityError: If ``strict`` and any momentum is flagged
    """
    heff = effective_hamiltonian(bloch_decompose(spec, grid))
    if strict and heff.branch_flags.any():
        msg = "Branch ambiguity in dispersion"
        raise BranchAmbiguityError(msg, momenta=heff.flagged_momenta)

    e_plus = np.zeros(grid.size)
    e_minus = np.zeros(grid.size)
    previous: ComplexArray | None = None
    for j, h in enumerate(heff.hamiltonians):
        values, vectors = np.linalg.eigh(h)
        values, vectors = values[::-1], vectors[:, ::-1]
        if previous is not None:
            overlap = np.abs(previous.conj().T @ vectors)
            if overlap[0, 1] + overlap[1, 0] > overlap[0, 0] + overlap[1, 1]:
                values, vectors = values[::-1], vectors[:, ::-1]
        e_plus[j], e_minus[j] = values
        previous = vectors

    return Dispersion(
        momenta=grid.points,
        e_plus=e_plus,
        e_minus=e_minus,
        branch_flags=heff.branch_flags,
    )


def _sign_convention(axis: FloatArray) -> FloatArray:
    """Make the first component with |a_i| > 1e-12 positive."""
    for component in axis:
        if abs(component) > 1e-12:
            return axis if component > 0 else -axis
    return axis


def chiral_axis_search(
    theta1: float, theta2: float, lattice_size: int = 256
) -> ChiralAxis:
    """Unit axis A minimizing max_k |n(k).A| for the split-step walk.

    A is the null vector of the Gram matrix of the sampled n(k_j).

    Raises:
        ChiralAxisError: If the gap is closed or no axis exists
    """
    spec = WalkSpec(
        kind=WalkKind.SPLIT_STEP,
        lattice_size=lattice_size,
        theta1=theta1,
        theta2=theta2,
    )
    heff = effective_hamiltonian(
        bloch_decompose(spec, MomentumGrid(lattice_size))
    )
    return chiral_axis_from_hamiltonian(heff)


def chiral_axis_from_hamiltonian(heff: EffectiveHamiltonian) -> ChiralAxis:
    """Chiral axis search on an existing effective Hamiltonian.

    A degenerate family (all n(k) on one line) admits a whole plane of axes;
    the returned one is the first in that plane, flagged ``degenerate``.
    """
    if heff.gap <= GAP_TOL:
        msg = f"Spectral gap {heff.gap:.3e} is closed; n(k) is undefined"
        raise ChiralAxisError(msg)

    samples = heff.axes
    gram = samples.T @ samples
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    axis = _sign_convention(eigenvectors[:, 0])
    singular_value = float(np.sqrt(max(eigenvalues[0], 0.0)))
    if singular_value > AXIS_FAILURE_TOL:
        msg = (
            f"No chiral axis: smallest singular value {singular_value:.3e} "
            f"exceeds {AXIS_FAILURE_TOL}"
        )
        raise ChiralAxisError(msg)

    degenerate = bool(eigenvalues[1] <= AXIS_FAILURE_TOL**2)
    if degenerate:
        logger.warning("Degenerate chiral axis: any axis in a plane works")
    residual = float(np.max(np.abs(samples @ axis)))
    return ChiralAxis(
        axis=(float(axis[0]), float(axis[1]), float(axis[2])),
        residual=residual,
        singular_value=singular_value,
        degenerate=degenerate,
    )


def analytic_chiral_axis(theta1: float) -> tuple[float, float, float]:
    """Closed-form chiral axis of S- T(theta2) S+ T(theta1).

    Conjugating by T(theta1/2) makes the walk palindromic with chiral
    operator sigma_x; rotating back gives A = (cos theta1, 0, sin theta1).
    """
    axis = _sign_convention(
        np.array([np.cos(theta1), 0.0, np.sin(theta1)])
    )
    return (float(axis[0]), float(axis[1]), float(axis[2]))


def _gamma(axis: tuple[float, float, float]) -> ComplexArray:
    """Gamma = exp(i pi A.sigma / 2) = i A.sigma for unit A."""
    generator = np.einsum("i,iab->ab", np.asarray(axis), PAULI)
    gamma: ComplexArray = linalg.expm(0.5j * np.pi * generator)
    return gamma


def verify_chiral(
    axis: tuple[float, float, float], heff: EffectiveHamiltonian
) -> float:
    """max_k |Gamma^-1 H(k) Gamma + H(k)|."""
    gamma = _gamma(axis)
    inverse = gamma.conj().T
    conjugated = inverse @ heff.hamiltonians @ gamma
    return float(np.max(np.abs(conjugated + heff.hamiltonians)))


def verify_particle_hole(heff: EffectiveHamiltonian) -> float:
    """max_k |conj(H(-k)) + H(k)|; complex conjugation maps k to -k."""
    mirrored = heff.hamiltonians[heff.grid.mirror_indices()].conj()
    return float(np.max(np.abs(mirrored + heff.hamiltonians)))


def verify_time_reversal(
    axis: tuple[float, float, float], heff: EffectiveHamiltonian
) -> float:
    """max_k |Gamma conj(H(-k)) Gamma^-1 - H(k)|."""
    gamma = _gamma(axis)
    mirrored = heff.hamiltonians[heff.grid.mirror_indices()].conj()
    conjugated = gamma @ mirrored @ gamma.conj().T
    return float(np.max(np.abs(conjugated - heff.hamiltonians)))


def scramble_hamiltonian(
    heff: EffectiveHamiltonian, rng: np.random.Generator, strength: float = 0.5
) -> EffectiveHamiltonian:
    """Add a random Hermitian perturbation at every momentum (negative control)."""
    size = heff.grid.size
    noise = rng.normal(size=(size, 2, 2)) + 1j * rng.normal(size=(size, 2, 2))
    noise = strength * 0.5 * (noise + noise.conj().transpose(0, 2, 1))
    hamiltonians = heff.hamiltonians + noise
    offsets = 0.5 * np.real(np.trace(hamiltonians, axis1=1, axis2=2))
    vectors3 = np.real(np.einsum("kab,iba->ki", hamiltonians, PAULI)) / 2.0
    energies = np.linalg.norm(vectors3, axis=1)
    axes = vectors3 / np.where(energies > 0, energies, 1.0)[:, None]
    return EffectiveHamiltonian(
        grid=heff.grid,
        hamiltonians=hamiltonians,
        offsets=offsets,
        energies=energies,
        axes=axes,
        branch_flags=heff.branch_flags,
    )


def symmetry_report(
    spec: WalkSpec,
    *,
    scramble: bool = False,
    rng: np.random.Generator | None = None,
) -> SymmetryReport:
    """Chiral axis and the three symmetry residuals of a walk.

    With a closed gap the axis is reported as None with a diagnostic
    instead of raising.
    """
    grid = MomentumGrid(spec.lattice_size)
    heff = effective_hamiltonian(bloch_decompose(spec, grid))
    diagnostics: list[str] = []
    if heff.branch_flags.any():
        diagnostics.append(
            f"branch ambiguity at k = {heff.flagged_momenta}"
        )

    axis_result: ChiralAxis | None = None
    try:
        axis_result = chiral_axis_from_hamiltonian(heff)
        if axis_result.degenerate:
            diagnostics.append("degenerate chiral axis (n(k) on a line)")
    except ChiralAxisError as e:
        diagnostics.append(str(e))

    gap = heff.gap
    if scramble:
        heff = scramble_hamiltonian(heff, rng or np.random.default_rng(0))
        diagnostics.append("scrambled negative control")

    if axis_result is None:
        return SymmetryReport(
            chiral_axis=None,
            residual_chiral=None,
            residual_ph=verify_particle_hole(heff),
            residual_tr=None,
            gap=gap,
            diagnostics=diagnostics,
        )
    return SymmetryReport(
        chiral_axis=axis_result.axis,
        residual_chiral=verify_chiral(axis_result.axis, heff),
        residual_ph=verify_particle_hole(heff),
        residual_tr=verify_time_reversal(axis_result.axis, heff),
        gap=gap,
        singular_value=axis_result.singular_value,
        diagnostics=diagnostics,
    )


def spectrum_consistency(spec: WalkSpec) -> float:
    """Distance between spec(U) and the union of spec(W(k_j)).

    Eigenvalues are matched by an optimal assignment, so multiplicities
    count.
    """
    grid = MomentumGrid(spec.lattice_size)
    full = np.linalg.eigvals(one_step_operator(spec))
    blocks = np.linalg.eigvals(bloch_decompose(spec, grid).blocks).reshape(-1)
    cost = np.abs(full[:, None] - blocks[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))
