# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Command-line interface for qwalk-si."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
import logging
from pathlib import Path
from typing import Any

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table
import typer

from . import __version__
from .acceptance import CHECKS, run_acceptance
from .config import (
    load_cayley_table,
    load_shell_quadrature,
    load_walk_spec,
    shell_quadrature_from_dict,
)
from .corpus import corpus_graph, corpus_names, load_graph
from .exceptions import (
    ConfigurationError,
    NotDistanceRegularError,
    QWalkSIError,
    ToleranceError,
)
from .graph_stratification import (
    is_distance_regular,
    jacobi_sequence,
    quantum_decompose,
    stratify,
    verify_bose_mesner,
)
from .imprimitivity import (
    conjugacy_classes,
    conjugation_action,
    graph_si_check,
    group_from_spec,
    group_from_table,
    left_multiplication_action,
    order_census,
    permutation_representation,
    pvm_from_partition,
    representation_residual,
    right_regular_representation,
    si_report,
)
from .io_formats import (
    dispersion_csv,
    distribution_csv,
    dumps_json,
    read_state_csv,
    state_csv,
    write_output,
)
from .models import (
    AcceptanceReport,
    FiniteGroup,
    Graph,
    GroupAction,
    MomentumGrid,
    MomentumPoint,
    OutputFormat,
    RunConfig,
    SpinorField,
)
from .momentum_spectral import dispersion, symmetry_report
from .relativistic_limit import (
    KERNEL_TOL,
    SHELL_TOL,
    MeasureKind,
    TrivializingForm,
    boost_spinor_rep,
    classify_orbit,
    desitter_dirac_kernel,
    dirac_continuum_check,
    invariant_measure_check,
    trivialize,
)
from .walk_engine import evolve, position_distribution

console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger("qwalk_si")


def get_version_string() -> str:
    """Get the formatted version string."""
    return f"🏷️  qwalk-si version {__version__}"


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(get_version_string())
        console.print()
        raise typer.Exit()


def setup_logging(
    log_level: str = "INFO", quiet: bool = False, verbose: bool = False
) -> None:
    """Configure logging with Rich handler on stderr."""
    if quiet:
        log_level = "ERROR"
    elif verbose:
        log_level = "DEBUG"

    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        handlers=[
            RichHandler(console=err_console, show_time=False, show_path=False)
        ],
        force=True,
    )


class CustomTyper(typer.Typer):  # type: ignore[misc]
    """Custom Typer class to add version to help output."""

    def __call__(self, *args: object, **kwargs: object) -> object:
        """Override to inject version string in help output."""
        import sys

        if "--help" in sys.argv or "-h" in sys.argv:
            console.print(get_version_string())
        return super().__call__(*args, **kwargs)


app = CustomTyper(
    name="qwalk-si",
    help="Quantum walks, graph stratification and systems of imprimitivity",
    add_completion=False,
    rich_markup_mode="rich",
)
graph_app = typer.Typer(
    help="Stratification, distance-regularity and graph imprimitivity",
    no_args_is_help=True,
)
relativity_app = typer.Typer(
    help="Mass shells, spinor trivialization and the Dirac limit",
    no_args_is_help=True,
)
app.add_typer(graph_app, name="graph")
app.add_typer(relativity_app, name="relativity")


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        "-q",
        help="Suppress log output except errors",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output with DEBUG logging",
    ),
) -> None:
    """Split-step quantum walks, rooted graphs and covariant localization."""
    setup_logging(quiet=quiet, verbose=verbose)


# --------------------------------------------------------------------------
# Shared plumbing
# --------------------------------------------------------------------------


@contextmanager
def _cli_errors() -> Iterator[None]:
    """Map library exceptions to exit codes with a one-line message."""
    try:
        yield
    except typer.Exit:
        raise
    except QWalkSIError as e:
        err_console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(e.exit_code) from e
    except Exception as e:
        err_console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(1) from e


def _emit(text: str, out: Path | None) -> None:
    """Single output point: the file given by --out, else stdout."""
    if out is not None:
        write_output(text, out)
    else:
        console.out(text, end="", highlight=False)


def _emit_json(payload: Any, out: Path | None) -> None:
    _emit(dumps_json(payload), out)


def _start_run(run: RunConfig) -> RunConfig:
    """Log the resolved options; commands read seed and tolerance from it."""
    logger.debug(f"Run config: {run.to_dict()}")
    return run


def _check_residuals(
    run: RunConfig, residuals: dict[str, float | None]
) -> None:
    """Fail with exit 5 when --tol was given and a residual exceeds it.

    Residuals that are None (undefined for the input) are skipped.
    """
    if run.tolerance is None:
        return
    over = {
        name: value
        for name, value in residuals.items()
        if value is not None and value > run.tolerance
    }
    if over:
        listed = ", ".join(f"{k}={v:.3e}" for k, v in over.items())
        msg = f"Residuals above --tol {run.tolerance:g}: {listed}"
        raise ToleranceError(msg)


def _parse_floats(
    text: str, name: str, count: int | None = None
) -> list[float]:
    """Parse ``"a,b"`` style option values."""
    expected = f"{count} " if count else ""
    msg = f"{name} must be {expected}comma-separated numbers, got '{text}'"
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigurationError(msg) from e
    if not values or (count is not None and len(values) != count):
        raise ConfigurationError(msg)
    return values


SpecOption = typer.Option(
    ..., "--spec", help="Walk spec file (JSON or YAML)"
)
OutOption = typer.Option(
    None, "--out", help="Write output to this file instead of stdout"
)
SeedOption = typer.Option(
    0, "--seed", min=0, help="Seed for every randomized step"
)
TolOption = typer.Option(
    SHELL_TOL, "--tol", min=0.0, help="Numerical tolerance"
)
CheckTolOption = typer.Option(
    None,
    "--tol",
    min=0.0,
    help="Exit with 5 when a reported residual exceeds this value",
)


# --------------------------------------------------------------------------
# Walks
# --------------------------------------------------------------------------


@app.command(help="Evolve a walk and write the distribution or the state")
def walk(
    spec: Path = SpecOption,
    steps: int = typer.Option(0, "--steps", min=0, help="Number of steps"),
    state: Path | None = typer.Option(
        None,
        "--state",
        help="Initial state CSV (default: delta_0 (x) |0>)",
    ),
    output: str = typer.Option(
        "distribution",
        "--output",
        help="What to write: 'distribution' or 'state'",
        case_sensitive=False,
    ),
    out: Path | None = OutOption,
) -> None:
    """Evolve a walk for a number of steps.

    Examples:
      qwalk-si walk --spec hadamard.json --steps 2
      qwalk-si walk --spec split.yaml --steps 100 --output state --out s.csv
    """
    _start_run(
        RunConfig(
            subcommand="walk",
            input_paths=[p for p in (spec, state) if p is not None],
            output_path=out,
        )
    )
    with _cli_errors():
        kind = output.lower()
        if kind not in ("distribution", "state"):
            msg = f"--output must be 'distribution' or 'state', got '{output}'"
            raise ConfigurationError(msg)
        walk_spec = load_walk_spec(spec)
        n = walk_spec.lattice_size
        psi0 = (
            read_state_csv(state, n)
            if state is not None
            else SpinorField.localized(n)
        )
        psi = evolve(psi0, walk_spec, steps)
        if kind == "state":
            _emit(state_csv(psi), out)
        else:
            _emit(distribution_csv(position_distribution(psi)), out)


@app.command(
    "dispersion", help="Write the two quasi-energy bands of a walk as CSV"
)
def dispersion_bands(
    spec: Path = SpecOption,
    strict: bool = typer.Option(
        False,
        "--strict",
        help="Fail on branch-ambiguous momenta instead of flagging them",
    ),
    out: Path | None = OutOption,
) -> None:
    """Quasi-energy bands on the momentum grid of the ring."""
    _start_run(RunConfig("dispersion", input_paths=[spec], output_path=out))
    with _cli_errors():
        walk_spec = load_walk_spec(spec)
        bands = dispersion(
            walk_spec, MomentumGrid(walk_spec.lattice_size), strict=strict
        )
        _emit(dispersion_csv(bands), out)


@app.command(help="Chiral axis and symmetry residuals of a walk as JSON")
def symmetry(
    spec: Path = SpecOption,
    scramble: bool = typer.Option(
        False,
        "--scramble",
        help="Perturb H(k) randomly first (negative control)",
    ),
    seed: int = SeedOption,
    tol: float | None = CheckTolOption,
    out: Path | None = OutOption,
) -> None:
    """Chiral, particle-hole and time-reversal residuals.

    A gapless walk reports a null axis with diagnostics.
    """
    run = _start_run(
        RunConfig(
            "symmetry",
            input_paths=[spec],
            output_path=out,
            tolerance=tol,
            seed=seed,
        )
    )
    with _cli_errors():
        report = symmetry_report(
            load_walk_spec(spec),
            scramble=scramble,
            rng=np.random.default_rng(run.seed),
        )
        _emit_json(report.to_dict(), out)
        _check_residuals(
            run,
            {
                "chiral": report.residual_chiral,
                "particle_hole": report.residual_ph,
                "time_reversal": report.residual_tr,
            },
        )


# --------------------------------------------------------------------------
# Graphs
# --------------------------------------------------------------------------

CorpusOption = typer.Option(
    None, "--corpus", help="Named corpus graph (c6, k4, q3, petersen, ...)"
)
GraphOption = typer.Option(
    None, "--graph", help="Edge-list file: 'n m' then m lines 'u v'"
)
OriginOption = typer.Option(0, "--origin", min=0, help="Root vertex")


def _load_graph_input(corpus: str | None, graph_file: Path | None) -> Graph:
    if (corpus is None) == (graph_file is None):
        msg = "Give exactly one of --corpus and --graph"
        raise ConfigurationError(msg)
    if corpus is not None:
        return corpus_graph(corpus)
    assert graph_file is not None
    return load_graph(graph_file)


def _graph_run(
    name: str,
    graph_file: Path | None,
    out: Path | None,
    seed: int = 0,
    tol: float | None = None,
) -> RunConfig:
    return _start_run(
        RunConfig(
            subcommand=f"graph {name}",
            input_paths=[graph_file] if graph_file else [],
            output_path=out,
            tolerance=tol,
            seed=seed,
        )
    )


@graph_app.command("stratify", help="Distance strata from the origin")
def graph_stratify(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    origin: int = OriginOption,
    out: Path | None = OutOption,
) -> None:
    """Distance strata V_n of the rooted graph."""
    _graph_run("stratify", graph_file, out)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        _emit_json(stratify(graph, origin).to_dict(), out)


@graph_app.command("decompose", help="Quantum decomposition A = A+ + A- + A0")
def graph_decompose(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    origin: int = OriginOption,
    out: Path | None = OutOption,
) -> None:
    """Climbing, descending and in-stratum parts of the adjacency matrix."""
    _graph_run("decompose", graph_file, out)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        strat = stratify(graph, origin)
        payload = quantum_decompose(graph, strat).to_dict()
        payload["origin"] = origin
        _emit_json(payload, out)


@graph_app.command("drg", help="Distance-regularity test with witness")
def graph_drg(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    out: Path | None = OutOption,
) -> None:
    """Intersection numbers, or the first disagreeing pair."""
    _graph_run("drg", graph_file, out)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        _emit_json(is_distance_regular(graph).to_dict(), out)


@graph_app.command("bose-mesner", help="Exact A_i A_j identity residual")
def graph_bose_mesner(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    out: Path | None = OutOption,
) -> None:
    """Bose-Mesner product identity over all distance matrices."""
    _graph_run("bose-mesner", graph_file, out)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        result = is_distance_regular(graph)
        numbers = result.intersection_numbers
        if numbers is None:
            msg = "Graph is not distance-regular; no intersection numbers"
            raise NotDistanceRegularError(msg, result.witness)
        _emit_json(
            {
                "residual": verify_bose_mesner(graph, numbers),
                "intersection_numbers": numbers.to_dict(),
            },
            out,
        )


@graph_app.command("jacobi", help="Interacting Fock space coefficients")
def graph_jacobi(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    origin: int = OriginOption,
    out: Path | None = OutOption,
) -> None:
    """Jacobi sequence (omega_n, alpha_n) seen from the origin."""
    _graph_run("jacobi", graph_file, out)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        _emit_json(jacobi_sequence(graph, origin).to_dict(), out)


@graph_app.command("si", help="Strata covariance under automorphisms")
def graph_si(
    corpus: str | None = CorpusOption,
    graph_file: Path | None = GraphOption,
    origin: int = OriginOption,
    scramble: bool = typer.Option(
        False,
        "--scramble",
        help="Relabel the representation randomly (negative control)",
    ),
    seed: int = SeedOption,
    tol: float | None = CheckTolOption,
    out: Path | None = OutOption,
) -> None:
    """System of imprimitivity formed by the automorphism group."""
    run = _graph_run("si", graph_file, out, seed, tol)
    with _cli_errors():
        graph = _load_graph_input(corpus, graph_file)
        rng = np.random.default_rng(run.seed) if scramble else None
        report = graph_si_check(graph, origin, rng=rng)
        _emit_json(report.to_dict(), out)
        _check_residuals(run, {"covariance": report.residual})


@graph_app.command("corpus", help="List the named corpus graphs")
def graph_corpus(out: Path | None = OutOption) -> None:
    """Names accepted by --corpus."""
    _emit("".join(f"{name}\n" for name in corpus_names()), out)


# --------------------------------------------------------------------------
# Finite groups
# --------------------------------------------------------------------------


def _load_group(spec: str | None, table: Path | None) -> FiniteGroup:
    if (spec is None) == (table is None):
        raise ConfigurationError("Give exactly one of --group and --table")
    if spec is not None:
        return group_from_spec(spec)
    assert table is not None
    return group_from_table(load_cayley_table(table))


@app.command(help="System of imprimitivity of a finite group action")
def group(
    spec: str | None = typer.Option(
        None,
        "--group",
        help="cyclic:n, dihedral:n or semidirect:a,h,r",
    ),
    table: Path | None = typer.Option(
        None, "--table", help="Cayley table file (JSON or YAML)"
    ),
    action: str = typer.Option(
        "left",
        "--action",
        help="'left', 'right' or 'conjugation'",
        case_sensitive=False,
    ),
    tol: float | None = CheckTolOption,
    out: Path | None = OutOption,
) -> None:
    """Regular or conjugation representation with its natural PVM.

    left and right act on singletons, conjugation on conjugacy classes.
    """
    run = _start_run(
        RunConfig(
            "group",
            input_paths=[table] if table else [],
            output_path=out,
            tolerance=tol,
        )
    )
    with _cli_errors():
        finite_group = _load_group(spec, table)
        kind = action.lower()
        singletons = [[g] for g in range(finite_group.order)]
        if kind == "left":
            point_action = left_multiplication_action(finite_group)
            rep = permutation_representation(point_action)
            blocks: list[Any] = singletons
        elif kind == "right":
            rep = right_regular_representation(finite_group)
            point_action = GroupAction(
                group=finite_group,
                table=finite_group.mult[:, finite_group.inverse].T,
            )
            blocks = singletons
        elif kind == "conjugation":
            point_action = conjugation_action(finite_group)
            rep = permutation_representation(point_action)
            blocks = conjugacy_classes(finite_group)
        else:
            msg = f"Unknown action '{action}'; use left, right or conjugation"
            raise ConfigurationError(msg)
        pvm = pvm_from_partition(blocks, finite_group.order)
        report = si_report(rep, pvm, point_action)
        rep_residual = representation_residual(rep)
        payload = report.to_dict()
        payload["representation_residual"] = rep_residual
        payload["order_census"] = order_census(finite_group)
        payload["conjugacy_classes"] = len(conjugacy_classes(finite_group))
        _emit_json(payload, out)
        _check_residuals(
            run,
            {"covariance": report.residual, "representation": rep_residual},
        )


# --------------------------------------------------------------------------
# Relativistic layer
# --------------------------------------------------------------------------

MassOption = typer.Option(1.0, "--m", help="Mass")
PointOption = typer.Option(..., "--p", help="Two-momentum as 'p0,p1'")
FormOption = typer.Option(
    TrivializingForm.LORENTZIAN,
    "--form",
    help="Trivializing operator: lorentzian, body or caption",
    case_sensitive=False,
)


def _relativity_run(
    name: str,
    tol: float | None,
    out: Path | None,
    paths: list[Path] | None = None,
) -> RunConfig:
    return _start_run(
        RunConfig(
            f"relativity {name}",
            input_paths=paths or [],
            output_path=out,
            tolerance=tol,
        )
    )


@relativity_app.command("orbit", help="Lorentz orbit of a two-momentum")
def relativity_orbit(
    p: str = PointOption,
    m: float = MassOption,
    tol: float = TolOption,
    out: Path | None = OutOption,
) -> None:
    """Forward or backward mass shell, origin, spacelike or off-shell."""
    _relativity_run("orbit", tol, out)
    with _cli_errors():
        p0, p1 = _parse_floats(p, "--p", 2)
        label = classify_orbit(MomentumPoint(p0, p1), m, tol)
        _emit_json(label.to_dict(), out)


@relativity_app.command("trivialize", help="Spinor fibre over a shell point")
def relativity_trivialize(
    p: str = PointOption,
    m: float = MassOption,
    form: TrivializingForm = FormOption,
    tol: float = TolOption,
    out: Path | None = OutOption,
) -> None:
    """Unit kernel vector of the trivializing operator; exit 4 off shell."""
    _relativity_run("trivialize", tol, out)
    with _cli_errors():
        p0, p1 = _parse_floats(p, "--p", 2)
        solution = trivialize(MomentumPoint(p0, p1), m, form, tol)
        _emit_json(solution.to_dict(), out)


@relativity_app.command("measure", help="Boost invariance of the shell measure")
def relativity_measure(
    m: float = MassOption,
    phi: float = typer.Option(0.7, "--phi", help="Boost rapidity"),
    config: Path | None = typer.Option(
        None, "--config", help="Quadrature config {m, u_min, u_max, n_points}"
    ),
    measure: MeasureKind = typer.Option(
        MeasureKind.INVARIANT,
        "--measure",
        help="invariant (dp1/p0) or flat (dp1, negative control)",
        case_sensitive=False,
    ),
    out: Path | None = OutOption,
) -> None:
    """Shell integral of a Gaussian before and after a boost."""
    _relativity_run("measure", None, out, [config] if config else None)
    with _cli_errors():
        quadrature = (
            load_shell_quadrature(config)
            if config is not None
            else shell_quadrature_from_dict({"m": m})
        )
        check = invariant_measure_check(
            phi=phi, quadrature=quadrature, measure=measure
        )
        _emit_json(check.to_dict(), out)
        if measure == MeasureKind.INVARIANT and not check.within_bound:
            msg = (
                f"Invariant measure residual {check.residual:.3e} exceeds "
                f"the quadrature bound {check.error_bound:.3e}"
            )
            raise ToleranceError(msg)


@relativity_app.command("dirac-limit", help="Walk dispersion vs Dirac")
def relativity_dirac_limit(
    mass: float = typer.Option(1.0, "--m", help="Dirac mass"),
    spacings: str = typer.Option(
        "0.1,0.05,0.025,0.0125",
        "--spacings",
        help="Comma-separated lattice spacings",
    ),
    window: float = typer.Option(
        1.0, "--window", help="Physical momentum window |p| <= window"
    ),
    n_samples: int = typer.Option(
        64, "--samples", min=1, help="Momenta per window"
    ),
    out: Path | None = OutOption,
) -> None:
    """Convergence of the split-step dispersion under refinement.

    Exits with 5 when the deviation does not decrease monotonically.
    """
    _relativity_run("dirac-limit", None, out)
    with _cli_errors():
        values = _parse_floats(spacings, "--spacings")
        report = dirac_continuum_check(mass, values, window, n_samples)
        _emit_json(report.to_dict(), out)
        if not report.monotone:
            msg = "Deviation from the Dirac dispersion is not monotone"
            raise ToleranceError(msg)


@relativity_app.command("desitter", help="Kernel of the de Sitter operator")
def relativity_desitter(
    p1: float = typer.Option(..., "--p1", help="First momentum component"),
    p2: float = typer.Option(..., "--p2", help="Second momentum component"),
    m: float = MassOption,
    tol: float = typer.Option(
        KERNEL_TOL,
        "--tol",
        min=0.0,
        help="Relative determinant threshold for a kernel",
    ),
    out: Path | None = OutOption,
) -> None:
    """Determinant and kernel of p2 + sigma_y p1 - m sigma_y sigma_z."""
    _relativity_run("desitter", tol, out)
    with _cli_errors():
        _emit_json(desitter_dirac_kernel(p1, p2, m, tol).to_dict(), out)


@relativity_app.command("spinor-rep", help="Boost action on spinor fibres")
def relativity_spinor_rep(
    phi: float = typer.Option(..., "--phi", help="Boost rapidity"),
    m: float = MassOption,
    form: TrivializingForm = FormOption,
    tol: float | None = CheckTolOption,
    out: Path | None = OutOption,
) -> None:
    """Fitted S(phi) with S v(p) proportional to v(boosted p)."""
    run = _relativity_run("spinor-rep", tol, out)
    with _cli_errors():
        rep = boost_spinor_rep(phi, m, form=form)
        _emit_json(rep.to_dict(), out)
        _check_residuals(run, {"spinor": rep.residual})


# --------------------------------------------------------------------------
# Acceptance
# --------------------------------------------------------------------------


def _output_json_results(report: AcceptanceReport, out: Path | None) -> None:
    """Output results in JSON format."""
    _emit_json(report.to_dict(), out)


def _output_text_results(report: AcceptanceReport) -> None:
    """Output results as a pass/fail table."""
    table = Table(title=f"qwalk-si acceptance (seed {report.seed})")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Time", justify="right")
    table.add_column("Budget", justify="right")
    table.add_column("Detail")
    for result in report.results:
        verdict = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(
            result.name,
            verdict,
            f"{result.elapsed:.1f}s",
            f"{result.budget:.0f}s",
            escape(result.detail),
        )
    console.print(table)
    if report.passed:
        console.print("[green]✅ All checks passed[/green]")
    else:
        failed = sum(not r.passed for r in report.results)
        console.print(f"[red]❌ {failed} check(s) failed[/red]")


@app.command("verify-all", help="Run the acceptance suite")
def verify_all(
    seed: int = SeedOption,
    only: list[str] | None = typer.Option(
        None,
        "--only",
        help=f"Run only these checks: {', '.join(CHECKS)}",
    ),
    output_format: OutputFormat = typer.Option(
        OutputFormat.TEXT,
        "--format",
        help="Output format: text, json",
        case_sensitive=False,
    ),
    json_output: bool = typer.Option(
        False, "--json", help="Shorthand for --format json"
    ),
    out: Path | None = OutOption,
) -> None:
    """Every acceptance check with one seeded generator.

    Exits with 5 if any check fails. With --out the JSON report is also
    written to that file.
    """
    run = _start_run(RunConfig("verify-all", output_path=out, seed=seed))
    with _cli_errors():
        report = run_acceptance(run.seed, only)
        if json_output or output_format == OutputFormat.JSON:
            _output_json_results(report, out)
        else:
            _output_text_results(report)
            if out is not None:
                write_output(dumps_json(report.to_dict()), out)
        if not report.passed:
            raise typer.Exit(ToleranceError.exit_code)


if __name__ == "__main__":
    app()
