# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Property and oracle checks behind ``qwalk-si verify-all``.

Every check draws its random samples from one seeded generator, so a run is
reproducible from the seed alone.
"""

from __future__ import annotations

from collections.abc import Callable
import logging
import math
import time
from typing import Any

import numpy as np

from .automorphisms import (
    TABLE_MAX_ORDER,
    find_automorphisms,
    group_from_permutations,
)
from .corpus import corpus_graph, corpus_names
from .exceptions import ConfigurationError, OffShellError, QWalkSIError
from .graph_stratification import (
    count_walks_exhaustive,
    edge_locality_violations,
    is_distance_regular,
    jacobi_sequence,
    quantum_decompose,
    strata_gram,
    stratify,
    vacuum_moment,
    verify_bose_mesner,
)
from .imprimitivity import (
    affine_action,
    character,
    conjugacy_classes,
    conjugation_action,
    cyclic_group,
    dihedral_group,
    graph_si_check,
    group_from_spec,
    left_multiplication_action,
    orbit,
    permutation_representation,
    power_action,
    pvm_from_partition,
    regular_representation,
    scramble_action,
    stabilizer,
    verify_si,
)
from .models import (
    AcceptanceReport,
    CheckResult,
    GroupAction,
    MomentumGrid,
    MomentumPoint,
    SpinorField,
    WalkKind,
    WalkSpec,
)
from .momentum_spectral import (
    block_diagonal_residual,
    spectrum_consistency,
    symmetry_report,
)
from .relativistic_limit import (
    SHELL_TOL,
    SPINOR_FAILURE_TOL,
    SPINOR_FIT_TOL,
    MeasureKind,
    boost_spinor_rep,
    desitter_dirac_kernel,
    dirac_continuum_check,
    gaussian_in_rapidity,
    invariant_measure_check,
    shell_point,
    spinor_group_law_residual,
    trivialize,
    trivializing_operator,
)
from .walk_engine import evolve, one_step_operator, unitarity_residual

logger = logging.getLogger(__name__)

UNITARITY_TOL = 1e-12
NORM_TOL = 1e-10
NORM_STEPS = 10_000
REDUCTION_TOL = 1e-14
CHIRAL_TOL = 1e-8
PARTICLE_HOLE_TOL = 1e-8
TIME_REVERSAL_TOL = 1e-7
CONTROL_FLOOR = 1e-2
BLOCH_TOL = 1e-9
DET_TOL = 1e-12
MEASURE_TOL = 1e-8
MASSLESS_TOL = 1e-3
BOOST_RAPIDITIES = (0.3, 0.7, 1.5)

CheckFunction = Callable[[np.random.Generator], tuple[bool, dict[str, Any]]]


def _random_spec(rng: np.random.Generator, low: int, high: int) -> WalkSpec:
    """Random walk on an even ring with 2 * low <= N <= 2 * high."""
    kind = WalkKind.SPLIT_STEP if rng.random() < 0.5 else WalkKind.STANDARD
    theta1, theta2 = rng.uniform(-math.pi, math.pi, size=2)
    return WalkSpec(
        kind=kind,
        lattice_size=2 * int(rng.integers(low, high + 1)),
        theta1=float(theta1),
        theta2=float(theta2),
    )


def _random_state(rng: np.random.Generator, lattice_size: int) -> SpinorField:
    amplitudes = rng.normal(size=(lattice_size, 2)) + 1j * rng.normal(
        size=(lattice_size, 2)
    )
    return SpinorField(amplitudes / np.linalg.norm(amplitudes))


# --------------------------------------------------------------------------
# Walks
# --------------------------------------------------------------------------


def check_unitarity(rng: np.random.Generator) -> tuple[bool, dict[str, Any]]:
    """Dense one-step unitarity and norm conservation over many steps."""
    worst_unitary = 0.0
    worst_norm = 0.0
    for _ in range(50):
        spec = _random_spec(rng, 4, 128)
        worst_unitary = max(
            worst_unitary, unitarity_residual(one_step_operator(spec))
        )
        psi = evolve(_random_state(rng, spec.lattice_size), spec, NORM_STEPS)
        worst_norm = max(worst_norm, abs(psi.norm_squared() - 1.0))
    metrics = {"max_unitarity": worst_unitary, "max_norm_drift": worst_norm}
    return worst_unitary <= UNITARITY_TOL and worst_norm <= NORM_TOL, metrics


def check_split_step_reduction(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """W(theta1, 0) equals the standard walk S T(theta1)."""
    worst = 0.0
    for _ in range(20):
        size = 2 * int(rng.integers(1, 17))
        theta1 = float(rng.uniform(-math.pi, math.pi))
        split = WalkSpec(WalkKind.SPLIT_STEP, size, theta1, 0.0)
        standard = WalkSpec(WalkKind.STANDARD, size, theta1)
        difference = one_step_operator(split) - one_step_operator(standard)
        worst = max(worst, float(np.max(np.abs(difference))))
    return worst <= REDUCTION_TOL, {"max_difference": worst}


def _gapped_angles(rng: np.random.Generator) -> tuple[float, float]:
    while True:
        theta1, theta2 = rng.uniform(0.2, 1.3, size=2)
        if abs(theta1 - theta2) >= 0.1:
            return float(theta1), float(theta2)


def check_symmetry_triple(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Chiral, particle-hole and time-reversal residuals plus controls."""
    worst = {"chiral": 0.0, "particle_hole": 0.0, "time_reversal": 0.0}
    weakest_control = math.inf
    missing_axis = 0
    for _ in range(20):
        theta1, theta2 = _gapped_angles(rng)
        spec = WalkSpec(WalkKind.SPLIT_STEP, 256, theta1, theta2)
        report = symmetry_report(spec)
        if report.residual_chiral is None or report.residual_tr is None:
            missing_axis += 1
            continue
        worst["chiral"] = max(worst["chiral"], report.residual_chiral)
        worst["particle_hole"] = max(worst["particle_hole"], report.residual_ph)
        worst["time_reversal"] = max(worst["time_reversal"], report.residual_tr)

        control = symmetry_report(spec, scramble=True, rng=rng)
        residuals = [
            r
            for r in (
                control.residual_chiral,
                control.residual_ph,
                control.residual_tr,
            )
            if r is not None
        ]
        weakest_control = min(weakest_control, *residuals)

    passed = (
        missing_axis == 0
        and worst["chiral"] <= CHIRAL_TOL
        and worst["particle_hole"] <= PARTICLE_HOLE_TOL
        and worst["time_reversal"] <= TIME_REVERSAL_TOL
        and weakest_control > CONTROL_FLOOR
    )
    metrics: dict[str, Any] = {f"max_{k}": v for k, v in worst.items()}
    metrics["min_scrambled_residual"] = weakest_control
    metrics["missing_axis"] = missing_axis
    return passed, metrics


def check_bloch_consistency(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Position-space spectrum equals the union of Bloch spectra."""
    worst_spectrum = 0.0
    worst_block = 0.0
    for _ in range(10):
        spec = _random_spec(rng, 4, 32)
        worst_spectrum = max(worst_spectrum, spectrum_consistency(spec))
        worst_block = max(
            worst_block,
            block_diagonal_residual(spec, MomentumGrid(spec.lattice_size)),
        )
    metrics = {
        "max_spectrum_distance": worst_spectrum,
        "max_off_block": worst_block,
    }
    return worst_spectrum <= BLOCH_TOL and worst_block <= BLOCH_TOL, metrics


# --------------------------------------------------------------------------
# Graphs and groups
# --------------------------------------------------------------------------


def _identity_corpus() -> list[str]:
    return [name for name in corpus_names() if name != "k33-minus-edge"]


def check_graph_identities(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Exact quantum decomposition identities and vacuum moments."""
    del rng
    failures: list[str] = []
    for name in _identity_corpus():
        graph = corpus_graph(name)
        adjacency = graph.adjacency_matrix()
        for origin in range(graph.n):
            strat = stratify(graph, origin)
            parts = quantum_decompose(graph, strat)
            if not np.array_equal(
                parts.a_plus + parts.a_minus + parts.a_zero, adjacency
            ):
                failures.append(f"{name}@{origin}: A+ + A- + A0 != A")
            if not np.array_equal(parts.a_plus.T, parts.a_minus):
                failures.append(f"{name}@{origin}: (A+)^T != A-")
            gram = strata_gram(graph, strat)
            i, j = np.indices(gram.shape)
            if np.any(gram[np.abs(i - j) > 1]) or edge_locality_violations(
                graph, strat
            ):
                failures.append(f"{name}@{origin}: strata not tridiagonal")
        for m in range(7):
            if vacuum_moment(graph, 0, m) != count_walks_exhaustive(
                graph, 0, 0, m
            ):
                failures.append(f"{name}: vacuum moment m={m}")
    metrics = {"graphs": len(_identity_corpus()), "failures": failures}
    return not failures, metrics


def check_distance_regularity(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Distance-regular classification and the Bose-Mesner identity."""
    del rng
    positives = ["petersen"] + [
        name
        for name in corpus_names()
        if name[0] in "ckq" and name[1:].isdigit()
    ]
    negatives = ["p3", "k33-minus-edge"]
    failures: list[str] = []
    for name in positives:
        graph = corpus_graph(name)
        result = is_distance_regular(graph)
        numbers = result.intersection_numbers
        if not result.is_distance_regular or numbers is None:
            failures.append(f"{name}: not classified distance-regular")
            continue
        if verify_bose_mesner(graph, numbers) != 0:
            failures.append(f"{name}: Bose-Mesner residual nonzero")
        jacobi_sequence(graph, 0)
    for name in negatives:
        result = is_distance_regular(corpus_graph(name))
        if result.is_distance_regular or not result.witness:
            failures.append(f"{name}: accepted or missing witness")
    metrics = {
        "positives": len(positives),
        "negatives": len(negatives),
        "failures": failures,
    }
    return not failures, metrics


def _si_residual_and_control(
    action: GroupAction, rng: np.random.Generator
) -> tuple[float, float]:
    """Singleton PVM on the points of ``action``: residual and control."""
    rep = permutation_representation(action)
    size = action.set_size
    pvm = pvm_from_partition([[x] for x in range(size)], size)
    residual = verify_si(rep, pvm, action)
    control = verify_si(rep, pvm, scramble_action(action, rng))
    return residual, control


def check_imprimitivity(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Systems of imprimitivity for groups and for graph strata."""
    residuals: dict[str, float] = {}
    controls: dict[str, float] = {}

    for n in range(3, 25):
        key = f"Z{n}"
        residuals[key], controls[key] = _si_residual_and_control(
            left_multiplication_action(cyclic_group(n)), rng
        )

    d4 = dihedral_group(4)
    residuals["D4"], controls["D4"] = _si_residual_and_control(
        affine_action(d4, cyclic_group(4), power_action(4, 2, 3)), rng
    )
    s3 = group_from_spec("semidirect:3,2,2")
    residuals["S3"], controls["S3"] = _si_residual_and_control(
        affine_action(s3, cyclic_group(3), power_action(3, 2, 2)), rng
    )

    # conjugacy classes are fixed blocks of the conjugation action
    conjugation = conjugation_action(d4)
    classes = conjugacy_classes(d4)
    residuals["D4-classes"] = verify_si(
        permutation_representation(conjugation),
        pvm_from_partition(classes, d4.order),
        conjugation,
    )

    for name in ("c6", "q3", "petersen"):
        graph = corpus_graph(name)
        report = graph_si_check(graph, 0)
        residuals[name] = max(report.residual, report.rank_one_residual or 0.0)
        controls[name] = graph_si_check(graph, 0, rng=rng).residual

    passed = all(r == 0.0 for r in residuals.values()) and all(
        c > 0.0 for c in controls.values()
    )
    metrics = {
        "max_residual": max(residuals.values()),
        "min_control": min(controls.values()),
        "cases": len(residuals),
    }
    return passed, metrics


def _corpus_actions() -> list[tuple[str, GroupAction]]:
    actions: list[tuple[str, GroupAction]] = []
    for name in corpus_names():
        graph = corpus_graph(name)
        perms = find_automorphisms(graph)
        if len(perms) > TABLE_MAX_ORDER:
            logger.debug(f"Skipping Aut({name}) in orbit-stabilizer check")
            continue
        actions.append((f"Aut({name})", group_from_permutations(perms)))
    for spec in ("cyclic:12", "dihedral:4", "dihedral:6", "semidirect:7,3,2"):
        group = group_from_spec(spec)
        actions.append((f"{spec} left", left_multiplication_action(group)))
        actions.append((f"{spec} conj", conjugation_action(group)))
    square = affine_action(
        dihedral_group(4), cyclic_group(4), power_action(4, 2, 3)
    )
    actions.append(("D4 on square", square))
    return actions


def check_orbit_stabilizer(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """|orbit| * |stabilizer| = |G| for every point of every action."""
    del rng
    failures: list[str] = []
    actions = _corpus_actions()
    for label, action in actions:
        for x in range(action.set_size):
            size = len(orbit(action, x)) * stabilizer(action, x).order
            if size != action.group.order:
                failures.append(f"{label} at {x}: {size}")
    return not failures, {"actions": len(actions), "failures": failures}


def check_regular_representation(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Regular representation character is |G| at e and 0 elsewhere."""
    del rng
    failures: list[str] = []
    for spec in ("cyclic:7", "dihedral:5", "semidirect:7,3,2"):
        group = group_from_spec(spec)
        traces = character(regular_representation(group))
        expected = np.zeros(group.order, dtype=np.int64)
        expected[group.identity] = group.order
        if not np.array_equal(traces, expected):
            failures.append(spec)
    return not failures, {"failures": failures}


# --------------------------------------------------------------------------
# Relativistic layer
# --------------------------------------------------------------------------


def _random_momenta(
    rng: np.random.Generator, count: int, m: float
) -> list[tuple[MomentumPoint, bool]]:
    """Half on either mass shell branch, half uniformly off it."""
    points = []
    for i in range(count):
        if i % 2 == 0:
            p = shell_point(float(rng.uniform(-3.0, 3.0)), m)
            if rng.random() < 0.5:
                p = MomentumPoint(-p.p0, p.p1)
            points.append((p, True))
        else:
            p0, p1 = rng.uniform(-5.0, 5.0, size=2)
            points.append((MomentumPoint(float(p0), float(p1)), False))
    return points


def _trivialization_mismatches(
    rng: np.random.Generator, m: float
) -> tuple[int, float]:
    mismatches = 0
    worst_det = 0.0
    for p, _ in _random_momenta(rng, 1000, m):
        scale = max(1.0, p.p0**2 + p.p1**2 + m * m)
        formula = m * m - p.p0**2 + p.p1**2
        det = float(np.linalg.det(trivializing_operator(p, m)).real)
        worst_det = max(worst_det, abs(det - formula) / scale)
        on_shell = abs(formula) <= SHELL_TOL * scale
        try:
            trivialize(p, m)
            succeeded = True
        except OffShellError:
            succeeded = False
        mismatches += succeeded != on_shell
    return mismatches, worst_det


def _desitter_mismatches(
    rng: np.random.Generator, m: float
) -> tuple[int, float]:
    mismatches = 0
    worst_det = 0.0
    for i in range(1000):
        p2 = float(rng.uniform(-3.0, 3.0))
        if i % 2 == 0:
            sign = 1.0 if rng.random() < 0.5 else -1.0
            p1 = sign * math.sqrt(p2 * p2 + m * m)
        else:
            p1 = float(rng.uniform(-5.0, 5.0))
        scale = max(1.0, p1 * p1 + p2 * p2 + m * m)
        formula = p2 * p2 - p1 * p1 + m * m
        kernel = desitter_dirac_kernel(p1, p2, m)
        worst_det = max(worst_det, abs(kernel.determinant - formula) / scale)
        mismatches += kernel.kernel_exists != (abs(formula) <= DET_TOL * scale)
    return mismatches, worst_det


def check_relativistic_layer(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Kernel criteria, invariant measure and the spinor boost action."""
    m = float(rng.uniform(0.5, 2.0))
    shell_mismatches, shell_det = _trivialization_mismatches(rng, m)
    desitter_mismatches, desitter_det = _desitter_mismatches(rng, m)

    measure_residual = 0.0
    flat_residual = math.inf
    spinor_residual = 0.0
    for phi in BOOST_RAPIDITIES:
        center, width = rng.uniform(-1.0, 1.0), rng.uniform(0.5, 1.0)
        f = gaussian_in_rapidity(m, center=float(center), width=float(width))
        measure_residual = max(
            measure_residual, invariant_measure_check(f, m=m, phi=phi).residual
        )
        flat_residual = min(
            flat_residual,
            invariant_measure_check(
                f, m=m, phi=phi, measure=MeasureKind.FLAT
            ).residual,
        )
        spinor_residual = max(
            spinor_residual, boost_spinor_rep(phi, m).residual
        )
    group_law = spinor_group_law_residual(0.3, 0.7, m)

    passed = (
        shell_mismatches == 0
        and desitter_mismatches == 0
        and shell_det <= DET_TOL
        and desitter_det <= DET_TOL
        and measure_residual <= MEASURE_TOL
        and flat_residual > MEASURE_TOL
        and spinor_residual <= SPINOR_FIT_TOL
        and group_law <= SPINOR_FAILURE_TOL
    )
    metrics = {
        "m": m,
        "shell_mismatches": shell_mismatches,
        "shell_det_error": shell_det,
        "desitter_mismatches": desitter_mismatches,
        "desitter_det_error": desitter_det,
        "max_measure_residual": measure_residual,
        "min_flat_measure_residual": flat_residual,
        "max_spinor_residual": spinor_residual,
        "group_law_residual": group_law,
    }
    return passed, metrics


def check_continuum_limit(
    rng: np.random.Generator,
) -> tuple[bool, dict[str, Any]]:
    """Monotone convergence to sqrt(m^2 + p^2) and the massless cone."""
    del rng
    massive = dirac_continuum_check(mass=1.0)
    massless = dirac_continuum_check(mass=0.0)
    finest = massless.refinements[-1].max_dev
    order = massive.order_estimate
    passed = (
        massive.monotone
        and order is not None
        and order >= 1.0
        and finest <= MASSLESS_TOL
    )
    metrics = {
        "order": order,
        "monotone": massive.monotone,
        "max_devs": [r.max_dev for r in massive.refinements],
        "massless_max_dev": finest,
    }
    return passed, metrics


# name -> (check, runtime budget in seconds)
CHECKS: dict[str, tuple[CheckFunction, float]] = {
    "unitarity": (check_unitarity, 30.0),
    "split-step-reduction": (check_split_step_reduction, 5.0),
    "symmetry-triple": (check_symmetry_triple, 60.0),
    "bloch-consistency": (check_bloch_consistency, 10.0),
    "graph-identities": (check_graph_identities, 60.0),
    "distance-regularity": (check_distance_regularity, 30.0),
    "imprimitivity": (check_imprimitivity, 60.0),
    "orbit-stabilizer": (check_orbit_stabilizer, 5.0),
    "regular-character": (check_regular_representation, 5.0),
    "relativistic": (check_relativistic_layer, 30.0),
    "continuum-limit": (check_continuum_limit, 120.0),
}


def run_check(name: str, rng: np.random.Generator) -> CheckResult:
    """Run one named check; library errors count as failures."""
    check, budget = CHECKS[name]
    started = time.perf_counter()
    try:
        passed, metrics = check(rng)
        detail = "ok" if passed else "property violated"
    except QWalkSIError as e:
        passed, metrics, detail = False, {}, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - started
    if elapsed > budget:
        passed = False
        over = f"over budget: {elapsed:.2f}s > {budget:.1f}s"
        detail = over if detail == "ok" else f"{detail}; {over}"
    logger.debug(f"{name}: passed={passed} in {elapsed:.2f}s")
    return CheckResult(
        name=name,
        passed=passed,
        detail=detail,
        budget=budget,
        elapsed=elapsed,
        metrics=metrics,
    )


def run_acceptance(
    seed: int = 0, only: list[str] | None = None
) -> AcceptanceReport:
    """Run the selected checks (all by default) with one seeded generator."""
    names = list(CHECKS) if not only else only
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        msg = f"Unknown checks {unknown}; known: {', '.join(CHECKS)}"
        raise ConfigurationError(msg)
    rng = np.random.default_rng(seed)
    report = AcceptanceReport(seed=seed)
    for name in names:
        report.results.append(run_check(name, rng))
    return report
