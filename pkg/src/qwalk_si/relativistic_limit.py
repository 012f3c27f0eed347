# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Mass shells, boosts, spinor trivialization and the Dirac continuum limit.

Natural units (c = hbar = 1). Shell points are parametrized by rapidity,
(p0, p1) = (m cosh u, m sinh u), so the invariant measure dp1 / p0 is du.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from enum import Enum
import logging
import math

import numpy as np
from scipy import integrate

from .config import ShellQuadratureConfig
from .exceptions import (
    ConfigurationError,
    ContinuumLimitError,
    OffShellError,
    SpinorRepresentationError,
)
from .models import (
    Boost,
    ComplexArray,
    ContinuumReport,
    DeSitterKernel,
    FloatArray,
    MeasureCheck,
    MomentumGrid,
    MomentumPoint,
    OrbitKind,
    OrbitLabel,
    Refinement,
    ShellSection,
    SpinorRepresentation,
    SpinorSolution,
    WalkKind,
    WalkSpec,
)
from .momentum_spectral import PAULI, bloch_decompose, effective_hamiltonian

logger = logging.getLogger(__name__)

SHELL_TOL = 1e-10
KERNEL_TOL = 1e-12
SPINOR_FIT_TOL = 1e-8
SPINOR_FAILURE_TOL = 1e-6
MEASURE_TOL = 1e-8
DEVIATION_FLOOR = 1e-12

_IDENTITY = np.eye(2, dtype=np.complex128)
_SX, _SY, _SZ = PAULI

ShellFunction = Callable[[FloatArray, FloatArray], FloatArray]


class TrivializingForm(str, Enum):
    """Readings of the spinor condition on the mass shell."""

    LORENTZIAN = "lorentzian"  # (p0 sz + p1 sx sz) v = m v
    BODY = "body"  # (p0 sz + p1 sx) v = m v
    CAPTION = "caption"  # (p0 + p1 sz) v = m sx v


class MeasureKind(str, Enum):
    """Shell measure used by ``invariant_measure_check``."""

    INVARIANT = "invariant"  # dp1 / p0 = du
    FLAT = "flat"  # dp1 = m cosh u du, negative control


# --------------------------------------------------------------------------
# Orbits and boosts
# --------------------------------------------------------------------------


def classify_orbit(
    p: MomentumPoint, m: float, tol: float = SHELL_TOL
) -> OrbitLabel:
    """Lorentz orbit of ``p`` relative to the mass shell of mass ``m``.

    Points that are neither on the shell, at the origin nor spacelike are
    labelled OFF_SHELL rather than rejected.
    """
    if tol <= 0:
        msg = f"Tolerance must be positive, got {tol}"
        raise ConfigurationError(msg)
    if abs(p.p0) <= tol and abs(p.p1) <= tol:
        return OrbitLabel(OrbitKind.ORIGIN)
    invariant = p.invariant
    if abs(invariant - m * m) <= tol:
        kind = OrbitKind.FORWARD_MASS if p.p0 > 0 else OrbitKind.BACKWARD_MASS
        return OrbitLabel(kind, abs(m))
    if invariant < -tol:
        return OrbitLabel(OrbitKind.SPACELIKE, math.sqrt(-invariant))
    return OrbitLabel(OrbitKind.OFF_SHELL)


def boost_point(phi: float, p: MomentumPoint) -> MomentumPoint:
    """Lambda_phi p."""
    p0, p1 = Boost(phi).matrix @ p.as_array()
    return MomentumPoint(float(p0), float(p1))


def shell_point(u: float, m: float) -> MomentumPoint:
    """Forward shell point of rapidity u."""
    return MomentumPoint(m * math.cosh(u), m * math.sinh(u))


# --------------------------------------------------------------------------
# Spinor trivialization
# --------------------------------------------------------------------------


def trivializing_operator(
    p: MomentumPoint,
    m: float,
    form: TrivializingForm | str = TrivializingForm.LORENTZIAN,
) -> ComplexArray:
    """K(p) with the spinor fibre over p equal to ker K(p).

    LORENTZIAN and CAPTION have det K = m^2 - p0^2 + p1^2; BODY has
    det K = m^2 - p0^2 - p1^2 and only vanishes at the rest point.
    """
    form = TrivializingForm(form)
    if form == TrivializingForm.LORENTZIAN:
        operator = p.p0 * _SZ + p.p1 * (_SX @ _SZ) - m * _IDENTITY
    elif form == TrivializingForm.BODY:
        operator = p.p0 * _SZ + p.p1 * _SX - m * _IDENTITY
    else:
        operator = _SX @ (p.p0 * _IDENTITY + p.p1 * _SZ) - m * _IDENTITY
    result: ComplexArray = operator.astype(np.complex128)
    return result


def _fix_phase(vector: ComplexArray) -> ComplexArray:
    """Make the first component with modulus > 1e-12 real positive."""
    for component in vector:
        if abs(component) > 1e-12:
            fixed: ComplexArray = vector * (abs(component) / component)
            return fixed
    return vector


def trivialize(
    p: MomentumPoint,
    m: float,
    form: TrivializingForm | str = TrivializingForm.LORENTZIAN,
    tol: float = SHELL_TOL,
) -> SpinorSolution:
    """Unit kernel vector of K(p).

    The shell test is relative: |det K| <= tol * max(1, p0^2 + p1^2 + m^2).

    Raises:
        ConfigurationError: If m <= 0
        OffShellError: If K(p) has no kernel
    """
    if m <= 0:
        msg = f"Trivialization needs m > 0, got {m}"
        raise ConfigurationError(msg)
    operator = trivializing_operator(p, m, form)
    determinant = float(np.linalg.det(operator).real)
    scale = max(1.0, p.p0 * p.p0 + p.p1 * p.p1 + m * m)
    if abs(determinant) > tol * scale:
        msg = (
            f"p = ({p.p0}, {p.p1}) is off the m = {m} shell: "
            f"det = {determinant:.6g}"
        )
        raise OffShellError(msg, determinant=determinant)

    _, _, vh = np.linalg.svd(operator)
    spinor = _fix_phase(vh[-1].conj())
    residual = float(np.linalg.norm(operator @ spinor))
    return SpinorSolution(point=p, mass=m, spinor=spinor, residual=residual)


def projective_distance(a: ComplexArray, b: ComplexArray) -> float:
    """min over complex c of |a - c b| / |a|."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return float(np.linalg.norm(b))
    denominator = np.vdot(b, b)
    if denominator == 0:
        return 1.0
    scale = np.vdot(b, a) / denominator
    return float(np.linalg.norm(a - scale * b)) / norm_a


def boost_spinor_rep(
    phi: float,
    m: float,
    rapidities: Sequence[float] | None = None,
    form: TrivializingForm | str = TrivializingForm.LORENTZIAN,
) -> SpinorRepresentation:
    """Fit S(phi) with S v(p) proportional to v(Lambda_phi p) on sampled p.

    Each sample gives w^dagger S v = 0 for w orthogonal to v(Lambda p); the
    stacked constraints are solved by SVD, S is scaled to det S = 1 and its
    sign chosen so that Re tr S > 0. The residual is projective since boosts
    are not unitary on the fibre.

    Raises:
        SpinorRepresentationError: If the residual exceeds 1e-6
    """
    if m <= 0:
        msg = f"Spinor representation needs m > 0, got {m}"
        raise ConfigurationError(msg)
    samples = (
        np.linspace(-2.0, 2.0, 9)
        if rapidities is None
        else np.asarray(rapidities, dtype=np.float64)
    )
    if samples.size < 3:
        raise ConfigurationError("Need at least 3 sample rapidities")

    sources, targets = [], []
    rows = []
    for u in samples:
        p = shell_point(float(u), m)
        v = trivialize(p, m, form).spinor
        v_boosted = trivialize(boost_point(phi, p), m, form).spinor
        w = np.array([np.conj(v_boosted[1]), -np.conj(v_boosted[0])])
        rows.append(np.kron(np.conj(w), v))
        sources.append(v)
        targets.append(v_boosted)

    _, _, vh = np.linalg.svd(np.array(rows))
    matrix = vh[-1].conj().reshape(2, 2)
    matrix = matrix / np.sqrt(np.linalg.det(matrix) + 0j)
    if np.trace(matrix).real < 0:
        matrix = -matrix

    residual = max(
        projective_distance(matrix @ v, target)
        for v, target in zip(sources, targets, strict=True)
    )
    logger.debug(f"Spinor boost phi={phi}: residual {residual:.3e}")
    if residual > SPINOR_FAILURE_TOL:
        msg = (
            f"No spinor representation of the boost phi={phi}: "
            f"residual {residual:.3e}"
        )
        raise SpinorRepresentationError(msg)
    return SpinorRepresentation(
        rapidity=phi, matrix=matrix, residual=residual
    )


def spinor_group_law_residual(phi1: float, phi2: float, m: float) -> float:
    """Projective distance between S(phi1) S(phi2) and S(phi1 + phi2)."""
    product = (
        boost_spinor_rep(phi1, m).matrix @ boost_spinor_rep(phi2, m).matrix
    )
    combined = boost_spinor_rep(phi1 + phi2, m).matrix
    return projective_distance(product, combined)


# --------------------------------------------------------------------------
# Invariant measure and the Hilbert norm
# --------------------------------------------------------------------------


def rapidity_of(p1: FloatArray, m: float) -> FloatArray:
    """u with (p0, p1) = (m cosh u, m sinh u) on the forward shell."""
    rapidity: FloatArray = np.arcsinh(np.asarray(p1) / m)
    return rapidity


def gaussian_in_rapidity(
    m: float, center: float = 0.0, width: float = 1.0
) -> ShellFunction:
    """f(p) = exp(-(u(p) - center)^2 / (2 width^2))."""

    def _f(p0: FloatArray, p1: FloatArray) -> FloatArray:
        del p0
        u = rapidity_of(p1, m)
        values: FloatArray = np.exp(-((u - center) ** 2) / (2.0 * width**2))
        return values

    return _f


def _shell_integral(
    f: ShellFunction,
    m: float,
    nodes: FloatArray,
    phi: float,
    measure: MeasureKind,
) -> tuple[float, float]:
    """Trapezoid integral of f(Lambda_phi p(u)) and its half-grid estimate."""
    p0 = m * np.cosh(nodes + phi)
    p1 = m * np.sinh(nodes + phi)
    values = np.asarray(f(p0, p1), dtype=np.float64)
    if measure == MeasureKind.FLAT:
        values = values * m * np.cosh(nodes)
    fine = float(integrate.trapezoid(values, nodes))
    coarse = float(integrate.trapezoid(values[::2], nodes[::2]))
    tail = float(abs(values[0]) + abs(values[-1])) * float(
        nodes[1] - nodes[0]
    )
    return fine, abs(fine - coarse) / 3.0 + tail


def invariant_measure_check(
    f: ShellFunction | None = None,
    m: float = 1.0,
    phi: float = 0.7,
    quadrature: ShellQuadratureConfig | None = None,
    measure: MeasureKind | str = MeasureKind.INVARIANT,
) -> MeasureCheck:
    """|int f(Lambda_phi p) dmu - int f(p) dmu| over the forward shell.

    The error bound is the Richardson estimate of both integrals plus the
    endpoint tail, floored at 1e-8.
    """
    measure = MeasureKind(measure)
    config = quadrature or ShellQuadratureConfig(m=m)
    m = config.m
    f = f or gaussian_in_rapidity(m)
    nodes = config.rapidities
    integral, err0 = _shell_integral(f, m, nodes, 0.0, measure)
    boosted, err1 = _shell_integral(f, m, nodes, phi, measure)
    residual = abs(boosted - integral)
    bound = max(err0 + err1, MEASURE_TOL)
    logger.debug(
        f"Measure check ({measure.value}, phi={phi}): residual "
        f"{residual:.3e}, bound {bound:.3e}"
    )
    return MeasureCheck(
        integral=integral,
        boosted_integral=boosted,
        residual=residual,
        error_bound=bound,
    )


def section_from_profile(
    profile: Callable[[FloatArray], FloatArray],
    rapidities: FloatArray,
    m: float,
) -> ShellSection:
    """Covariant section f(u) sqrt(p0 / m) v(p) over the sampled rapidities.

    With this weighting the Hilbert norm is int |f(u)|^2 du / m and the
    spinor boost preserves it.
    """
    rapidities = np.asarray(rapidities, dtype=np.float64)
    amplitudes = np.asarray(profile(rapidities), dtype=np.complex128)
    spinors = np.array(
        [
            a
            * math.sqrt(math.cosh(u))
            * trivialize(shell_point(u, m), m).spinor
            for u, a in zip(rapidities.tolist(), amplitudes, strict=True)
        ]
    )
    return ShellSection(rapidities=rapidities, spinors=spinors)


def boost_section(
    section: ShellSection, phi: float, m: float
) -> ShellSection:
    """Samples move to u + phi and spinors become S(phi) psi(u)."""
    matrix = boost_spinor_rep(phi, m).matrix
    return ShellSection(
        rapidities=section.rapidities + phi,
        spinors=section.spinors @ matrix.T,
    )


def hilbert_norm(section: ShellSection, m: float) -> float:
    """sqrt of int |psi(p)|^2 / p0 dmu(p), dmu = du on the forward shell."""
    if section.rapidities.size < 2:
        return 0.0
    density = np.sum(np.abs(section.spinors) ** 2, axis=1) / (
        m * np.cosh(section.rapidities)
    )
    return math.sqrt(
        max(float(integrate.trapezoid(density, section.rapidities)), 0.0)
    )


# --------------------------------------------------------------------------
# de Sitter operator
# --------------------------------------------------------------------------


def desitter_dirac_kernel(
    p1: float, p2: float, m: float, tol: float = KERNEL_TOL
) -> DeSitterKernel:
    """D = p2 + sigma_y p1 - m sigma_y sigma_z and its kernel.

    det D = p2^2 - p1^2 + m^2; the kernel test is relative to
    max(1, p1^2 + p2^2 + m^2).
    """
    operator = (
        p2 * _IDENTITY + p1 * _SY - m * (_SY @ _SZ)
    ).astype(np.complex128)
    determinant = complex(np.linalg.det(operator))
    scale = max(1.0, p1 * p1 + p2 * p2 + m * m)
    exists = abs(determinant) <= tol * scale
    vector = None
    if exists:
        _, _, vh = np.linalg.svd(operator)
        vector = _fix_phase(vh[-1].conj())
    return DeSitterKernel(
        operator=operator,
        determinant=determinant,
        kernel_exists=exists,
        kernel_vector=vector,
    )


# --------------------------------------------------------------------------
# Continuum limit
# --------------------------------------------------------------------------


def _grid_size(n_samples: int, window: float, spacing: float) -> int:
    """Smallest power of two giving n_samples momenta in |k| <= window*a."""
    needed = math.ceil(n_samples * math.pi / (window * spacing))
    return max(8, 1 << max(needed - 1, 1).bit_length())


def dirac_continuum_check(
    mass: float = 1.0,
    spacings: Sequence[float] = (0.1, 0.05, 0.025, 0.0125),
    window: float = 1.0,
    n_samples: int = 64,
) -> ContinuumReport:
    """Split-step dispersion against sqrt(m^2 + p^2) under refinement.

    At spacing a both coin angles are m a / 2, so E(0) = m a exactly. The
    walk is compared on momenta |k| <= window * a, i.e. physical momenta
    |p| <= window. The convergence order is the slope of log max_dev
    against log a.

    Raises:
        ConfigurationError: On fewer than 3 refinements or bad parameters
        ContinuumLimitError: If a massive walk is gapless or a window
            momentum is branch-flagged
    """
    if len(spacings) < 3:
        msg = f"Need at least 3 refinements, got {len(spacings)}"
        raise ConfigurationError(msg)
    if mass < 0 or window <= 0 or any(a <= 0 for a in spacings):
        raise ConfigurationError("Mass, window and spacings must be positive")

    refinements = []
    for a in sorted(spacings, reverse=True):
        theta = mass * a / 2.0
        size = _grid_size(n_samples, window, a)
        grid = MomentumGrid(size)
        spec = WalkSpec(
            kind=WalkKind.SPLIT_STEP,
            lattice_size=size,
            theta1=theta,
            theta2=theta,
        )
        heff = effective_hamiltonian(bloch_decompose(spec, grid))
        k = grid.points
        in_window = np.abs(k) <= window * a + 1e-15
        if heff.branch_flags[in_window].any():
            msg = f"Branch ambiguity inside the momentum window at a = {a}"
            raise ContinuumLimitError(msg)
        energies = heff.energies[in_window]
        if mass > 0 and float(np.min(energies)) <= 1e-12:
            msg = f"Gap closed at a = {a} although m = {mass}"
            raise ContinuumLimitError(msg)

        momenta = k[in_window] / a
        exact = np.sqrt(mass * mass + momenta * momenta)
        max_dev = float(np.max(np.abs(energies / a - exact)))
        rest = int(np.argmin(np.abs(k)))
        refinements.append(
            Refinement(
                spacing=a,
                theta=theta,
                lattice_size=size,
                max_dev=max_dev,
                fitted_m=float(heff.energies[rest] / a),
            )
        )
        logger.debug(f"a={a}: N={size}, max_dev={max_dev:.3e}")

    devs = np.array([r.max_dev for r in refinements])
    monotone = all(
        later < earlier or later <= DEVIATION_FLOOR
        for earlier, later in zip(devs[:-1], devs[1:], strict=True)
    )
    order: float | None = None
    if np.all(devs > DEVIATION_FLOOR):
        slope = np.polyfit(
            np.log([r.spacing for r in refinements]), np.log(devs), 1
        )[0]
        order = float(slope)
    return ContinuumReport(
        mass=mass,
        refinements=refinements,
        order_estimate=order,
        monotone=monotone,
    )

