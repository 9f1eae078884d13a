"""CLI interface for the two-photon Dicke toolkit."""

import asyncio
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
import typer
from dotenv import dotenv_values
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .checks import UnknownCheckError, VerifyContext, build_registry
from .config import get_settings
from .errors import CollapseError, DimensionError, DomainError, SolverError
from .exact.cutoff import GroundStateSolution, converge_cutoff
from .exact.sweep import SweepRow, coupling_grid, sweep
from .logging_config import get_logger, setup_logging
from .model.params import ModelParams, TruncationSpec
from .reporting import RunManifest, RunWriter
from .scaling.collapse import build_collapse_set_async
from .scaling.finite_size import Quantity, RegularPart
from .scaling.universal import QuarticWellSpec, universal_functions
from .theory.asymptotics import excitation_energy, ground_energy, jz_thermo

logger = get_logger("twophoton.cli")

# =============================================================================
# CONSTANTS
# =============================================================================

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SWEEP_COLUMNS = [
    "g",
    "g_over_omega",
    "eg_ed",
    "eg_analytic",
    "jz_ed",
    "jz_analytic",
    "jy2_ed",
    "gap_ed",
    "epsilon_analytic",
    "status",
]
GROUND_STATE_COLUMNS = ["quantity", "ed", "analytic", "difference"]
COLLAPSE_CURVE_COLUMNS = ["eta", "rescaled"]
COLLAPSE_SPREAD_COLUMNS = ["quantity", "spread", "eta_low", "eta_high"]
UNIVERSAL_COLUMNS = ["eta", "e0", "x2", "p2", "resolved", "tail_mass", "box_half_width"]

# per-file column layout version, recorded in manifest.json
HEADER_VERSIONS = {
    "ground_state": 1,
    "sweep": 1,
    "collapse_curve": 1,
    "collapse_spread": 2,
    "universal": 2,
}

app = typer.Typer(
    name="twophoton",
    help="Exact diagonalization and finite-size scaling for the two-photon Dicke model",
    no_args_is_help=True,
)
console = Console()


class Units(str, Enum):
    OMEGA = "omega"
    RAW = "raw"


class Source(str, Enum):
    ED = "ed"
    ANALYTIC = "analytic"


# =============================================================================
# OPTION RESOLUTION
# =============================================================================

def _load_config(path: Path | None) -> dict[str, str]:
    """Flat key=value run file; keys are case-insensitive."""
    if path is None:
        return {}
    if not path.is_file():
        raise typer.BadParameter(f"config file not found: {path}", param_hint="--config")
    return {k.lower(): v for k, v in dotenv_values(path).items() if v is not None}


def _pick(flag: Any, config: dict[str, str], key: str, cast: type, default: Any) -> Any:
    """Precedence: explicit flag > config file > settings default."""
    if flag is not None:
        return flag
    if key in config:
        try:
            return cast(config[key])
        except ValueError:
            raise typer.BadParameter(f"config key {key}={config[key]!r} is not a {cast.__name__}")
    return default


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _build_params(
    config: dict[str, str],
    omega: float | None,
    omega1: float | None,
    delta: float | None,
    n_atoms: int | None,
    g: float | None,
) -> ModelParams:
    settings = get_settings()
    omega = _pick(omega, config, "omega", float, settings.omega)
    n_atoms = _pick(n_atoms, config, "n", int, 100)
    g = _pick(g, config, "g", float, 0.0)
    delta = _pick(delta, config, "delta", float, None)
    omega1 = _pick(omega1, config, "omega1", float, None)
    if delta is not None and omega1 is not None:
        raise typer.BadParameter("pass either --delta or --omega1, not both")
    if delta is not None:
        return ModelParams.from_delta(delta, n_atoms, g=g, omega=omega)
    omega1 = omega1 if omega1 is not None else settings.omega1
    return ModelParams(omega=omega, omega1=omega1, g=g, n_atoms=n_atoms)


def _build_trunc(config: dict[str, str], n_max: int | None) -> TruncationSpec:
    settings = get_settings()
    return TruncationSpec(
        n_max=_pick(n_max, config, "n_max", int, settings.n_max_start),
        rel_tol=settings.rel_tol,
        n_max_ceiling=settings.n_max_ceiling,
    )


def _out_dir(config: dict[str, str], out: Path | None, command: str) -> Path:
    chosen = _pick(out, config, "out", Path, None)
    return chosen if chosen is not None else Path(get_settings().output_dir) / command


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map toolkit errors onto exit codes: 2 usage/domain, 1 numerical."""
    try:
        yield
    except SolverError as e:
        console.print(f"[red]Solver failed:[/red] {e}")
        raise typer.Exit(EXIT_FAILURE)
    except DomainError as e:
        console.print(f"[red]Domain error ({e.condition}):[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except (CollapseError, DimensionError, ValidationError, UnknownCheckError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except typer.BadParameter as e:
        console.print(f"[red]Invalid option:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)


# =============================================================================
# ROW BUILDERS
# =============================================================================

def _scale(value: float | None, unit: float) -> float | None:
    return None if value is None else value / unit


def _analytic(fn, *args, **kwargs) -> float | None:
    """Closed form, or None where the effective theory is not defined."""
    try:
        return fn(*args, **kwargs)
    except DomainError as e:
        logger.warning(f"Analytic value unavailable: {e}")
        return None


def _excitation_ed(solution: GroundStateSolution) -> float | None:
    """Lowest excitation above the ground manifold; the doublet counts as one level above g_c."""
    levels = solution.energy_levels
    index = 2 if solution.params.g > solution.params.g_c else 1
    if len(levels) <= index:
        return None
    return levels[index] - levels[0]


def ground_state_rows(solution: GroundStateSolution, units: Units) -> list[list[Any]]:
    """(quantity, ed, analytic, difference) rows for one solution."""
    params = solution.params
    unit = params.omega if units is Units.OMEGA else 1.0
    eg_analytic = _analytic(ground_energy, params)
    epsilon = _analytic(excitation_energy, params)

    def per_omega1(value: float | None) -> float | None:
        return None if value is None or params.omega1 == 0 else value / params.omega1

    pairs = [
        ("eg", _scale(solution.ground_energy, unit), _scale(eg_analytic, unit)),
        ("eg_over_omega1", per_omega1(solution.ground_energy), per_omega1(eg_analytic)),
        ("jz_per_atom", solution.jz_per_atom, _analytic(jz_thermo, params)),
        ("jy2_per_atom2", solution.jy2_per_atom2, None),
        ("gap", _scale(solution.gap, unit), None),
        ("epsilon", _scale(_excitation_ed(solution), unit), _scale(epsilon, unit)),
        ("photon_number", solution.photon_number, None),
    ]
    rows = []
    for name, ed, analytic in pairs:
        difference = None if ed is None or analytic is None else ed - analytic
        rows.append([name, ed, analytic, difference])
    return rows


def sweep_rows(rows: Sequence[SweepRow], units: Units) -> list[list[Any]]:
    """One CSV row per coupling, failed rows keep their status."""
    table = []
    for row in rows:
        params = row.params
        unit = params.omega if units is Units.OMEGA else 1.0
        solution = row.solution
        table.append([
            params.g,
            params.g / params.omega,
            _scale(solution.ground_energy, unit) if solution else None,
            _scale(_analytic(ground_energy, params), unit),
            solution.jz_per_atom if solution else None,
            _analytic(jz_thermo, params),
            solution.jy2_per_atom2 if solution else None,
            _scale(solution.gap, unit) if solution else None,
            _scale(_analytic(excitation_energy, params), unit),
            row.status,
        ])
    return table


def _print_pairs(title: str, rows: list[list[Any]]) -> None:
    table = Table(title=title)
    for column in GROUND_STATE_COLUMNS:
        table.add_column(column, justify="left" if column == "quantity" else "right")
    for name, *values in rows:
        table.add_row(name, *("-" if v is None else f"{v:.8g}" for v in values))
    console.print(table)


# =============================================================================
# COMMANDS
# =============================================================================

@app.callback()
def _configure(
    debug: bool = typer.Option(False, "--debug", help="Verbose logging to data/logs"),
):
    """Configure logging before any command runs."""
    settings = get_settings()
    debug = debug or settings.debug
    setup_logging(
        level="DEBUG" if debug else "INFO",
        log_to_file=debug or settings.log_to_file,
        log_dir=Path(settings.log_dir),
    )


@app.command("ground-state")
def ground_state(
    omega: float | None = typer.Option(None, "--omega", help="Field frequency"),
    omega1: float | None = typer.Option(None, "--omega1", help="Scaled atom frequency N*delta"),
    delta: float | None = typer.Option(None, "--delta", help="Atomic frequency (instead of --omega1)"),
    n_atoms: int | None = typer.Option(None, "--N", "-N", help="Number of atoms"),
    g: float | None = typer.Option(None, "--g", help="Two-photon coupling"),
    n_max: int | None = typer.Option(None, "--n-max", help="Starting photon cutoff"),
    config: Path | None = typer.Option(None, "--config", help="key=value run file"),
    out: Path | None = typer.Option(None, "--out", help="Output directory"),
    units: Units = typer.Option(Units.OMEGA, "--units", help="Report energies in units of omega or raw"),
):
    """Ground state by ED next to the effective-theory prediction."""
    with _exit_codes():
        run_config = _load_config(config)
        params = _build_params(run_config, omega, omega1, delta, n_atoms, g)
        trunc = _build_trunc(run_config, n_max)
        out_dir = _out_dir(run_config, out, "ground-state")

        solution = converge_cutoff(params, trunc)
        rows = ground_state_rows(solution, units)

        writer = RunWriter(out_dir)
        writer.write_csv(
            "ground_state.csv", GROUND_STATE_COLUMNS, rows, HEADER_VERSIONS["ground_state"]
        )
        writer.write_manifest(RunManifest(
            command="ground-state",
            params=params,
            trunc=trunc,
            options={
                "units": units.value,
                "n_max_used": solution.n_max_used,
                "converged": solution.converged,
                "ground_sector": solution.ground_sector,
            },
        ))

    _print_pairs(f"N={params.n_atoms}, g={params.g:g} (n_max={solution.n_max_used})", rows)
    console.print(f"[dim]Wrote {out_dir}[/dim]")
    if not solution.converged:
        console.print("[yellow]Cutoff did not converge; values are from the last cutoff tried.[/yellow]")
        raise typer.Exit(EXIT_FAILURE)


@app.command("sweep")
def sweep_command(
    omega: float | None = typer.Option(None, "--omega"),
    omega1: float | None = typer.Option(None, "--omega1"),
    delta: float | None = typer.Option(None, "--delta"),
    n_atoms: int | None = typer.Option(None, "--N", "-N"),
    g_values: str | None = typer.Option(None, "--g-values", help="Comma-separated couplings"),
    points: int = typer.Option(50, "--points", help="Evenly spaced couplings in (0, omega/2)"),
    n_max: int | None = typer.Option(None, "--n-max"),
    workers: int | None = typer.Option(None, "--workers"),
    config: Path | None = typer.Option(None, "--config"),
    out: Path | None = typer.Option(None, "--out"),
    units: Units = typer.Option(Units.OMEGA, "--units"),
):
    """ED and theory along a coupling grid, one CSV row per g."""
    with _exit_codes():
        run_config = _load_config(config)
        base = _build_params(run_config, omega, omega1, delta, n_atoms, None)
        trunc = _build_trunc(run_config, n_max)
        workers = _pick(workers, run_config, "workers", int, get_settings().workers)
        out_dir = _out_dir(run_config, out, "sweep")

        if g_values is not None:
            couplings = _parse_floats(g_values)
        else:
            couplings = np.linspace(0.0, base.g_collapse, points + 2)[1:-1].tolist() if points > 0 else []
        if not couplings:
            raise typer.BadParameter("empty coupling grid")

        rows = sweep(coupling_grid(base, couplings), trunc, workers=workers)

        writer = RunWriter(out_dir)
        writer.write_csv("sweep.csv", SWEEP_COLUMNS, sweep_rows(rows, units), HEADER_VERSIONS["sweep"])
        writer.write_manifest(RunManifest(
            command="sweep",
            params=base,
            trunc=trunc,
            options={"units": units.value, "couplings": couplings, "workers": workers},
        ))

    counts = {status: sum(1 for r in rows if r.status == status) for status in ("ok", "unconverged", "failed")}
    console.print(
        f"[bold]{len(rows)} rows[/bold]: {counts['ok']} ok, "
        f"{counts['unconverged']} unconverged, {counts['failed']} failed"
    )
    console.print(f"[dim]Wrote {out_dir}[/dim]")
    if counts["ok"] != len(rows):
        raise typer.Exit(EXIT_FAILURE)


@app.command("collapse")
def collapse_command(
    omega: float | None = typer.Option(None, "--omega"),
    omega1: float | None = typer.Option(None, "--omega1"),
    sizes: str = typer.Option("5,10,30,50,100", "--sizes", help="Comma-separated N values"),
    quantity: list[Quantity] | None = typer.Option(None, "--quantity", help="energy, jz or jy2 (repeatable)"),
    eta_min: float = typer.Option(-2.0, "--eta-min"),
    eta_max: float = typer.Option(2.0, "--eta-max"),
    eta_points: int = typer.Option(21, "--eta-points"),
    source: Source = typer.Option(Source.ED, "--source", help="ed or analytic rescaled values"),
    regular: RegularPart = typer.Option(RegularPart.CONSTANT, "--regular", help="Energy background variant"),
    max_spread: float | None = typer.Option(None, "--max-spread", help="Fail if any spread exceeds this"),
    ceiling_fraction: float | None = typer.Option(
        None, "--ceiling-fraction", help="Cells stop at g_c + fraction*(omega/2 - g_c)"
    ),
    n_max: int | None = typer.Option(None, "--n-max"),
    workers: int | None = typer.Option(None, "--workers"),
    config: Path | None = typer.Option(None, "--config"),
    out: Path | None = typer.Option(None, "--out"),
):
    """Rescaled curves against eta for several N and their collapse spread."""
    quantities = list(quantity) if quantity else list(Quantity)
    with _exit_codes():
        run_config = _load_config(config)
        n_list = sorted(set(_parse_ints(sizes)))
        if len(n_list) < 2:
            raise CollapseError(f"collapse needs at least 2 sizes, got {n_list}")
        if eta_points < 2 or eta_min >= eta_max:
            raise typer.BadParameter("eta grid needs eta-min < eta-max and at least 2 points")
        if ceiling_fraction is not None and not 0 < ceiling_fraction < 1:
            raise typer.BadParameter("--ceiling-fraction must lie in (0, 1)")
        base = _build_params(run_config, omega, omega1, None, n_list[0], None)
        trunc = _build_trunc(run_config, n_max)
        workers = _pick(workers, run_config, "workers", int, get_settings().workers)
        out_dir = _out_dir(run_config, out, "collapse")
        eta_grid = np.linspace(eta_min, eta_max, eta_points)

        results = asyncio.run(build_collapse_set_async(
            n_list,
            base,
            quantities=quantities,
            eta_grid=eta_grid,
            source=source.value,
            window=(eta_min, eta_max),
            regular=regular,
            trunc=trunc,
            workers=workers,
            ceiling_fraction=ceiling_fraction,
        ))
        universal = universal_functions(QuarticWellSpec.from_params(base), eta_grid)

        writer = RunWriter(out_dir)
        for q, result in results.items():
            for curve in result.curves:
                writer.write_csv(
                    f"collapse_{q.value}_N{curve.n_atoms}.csv",
                    COLLAPSE_CURVE_COLUMNS,
                    curve.points,
                    HEADER_VERSIONS["collapse_curve"],
                )
        writer.write_csv(
            "collapse_spread.csv",
            COLLAPSE_SPREAD_COLUMNS,
            [[q.value, r.spread, r.covered[0], r.covered[1]] for q, r in results.items()],
            HEADER_VERSIONS["collapse_spread"],
        )
        writer.write_csv(
            "universal.csv",
            UNIVERSAL_COLUMNS,
            [[p.eta, p.e0, p.x2, p.p2, p.resolved, p.tail_mass, p.box_half_width] for p in universal],
            HEADER_VERSIONS["universal"],
        )
        writer.write_manifest(RunManifest(
            command="collapse",
            params=base,
            trunc=trunc,
            options={
                "sizes": n_list,
                "quantities": [q.value for q in quantities],
                "eta_grid": eta_grid.tolist(),
                "source": source.value,
                "regular": regular.value,
                "ceiling_fraction": ceiling_fraction
                if ceiling_fraction is not None
                else get_settings().collapse_ceiling_fraction,
            },
        ))

    table = Table(title=f"Collapse over N={n_list}")
    table.add_column("quantity")
    table.add_column("curves", justify="right")
    table.add_column("spread", justify="right")
    table.add_column("eta covered", justify="right")
    for q, result in results.items():
        low, high = result.covered
        table.add_row(q.value, str(len(result.curves)), f"{result.spread:.4g}", f"[{low:.3g}, {high:.3g}]")
    console.print(table)
    if any(result.narrowed for result in results.values()):
        console.print(
            f"[yellow]Spread measured on a narrower eta range than [{eta_min:g}, {eta_max:g}]; "
            "the smallest sizes cannot reach the rest below the coupling ceiling.[/yellow]"
        )
    console.print(f"[dim]Wrote {out_dir}[/dim]")

    if max_spread is not None:
        worst = max(result.spread for result in results.values())
        if worst > max_spread:
            console.print(f"[red]Spread {worst:.4g} exceeds --max-spread {max_spread:g}[/red]")
            raise typer.Exit(EXIT_FAILURE)


@app.command("verify")
def verify(
    only: list[str] | None = typer.Option(None, "--only", help="Run only these checks (repeatable)"),
    skip_slow: bool = typer.Option(False, "--skip-slow", help="Skip checks marked slow"),
    omega: float | None = typer.Option(None, "--omega"),
    omega1: float | None = typer.Option(None, "--omega1"),
    workers: int | None = typer.Option(None, "--workers"),
):
    """Run the acceptance checks and print a pass/fail table."""
    requested = [name.strip() for item in (only or []) for name in item.split(",") if name.strip()]
    registry = build_registry(VerifyContext(omega=omega, omega1=omega1, workers=workers))
    with _exit_codes():
        names = registry.resolve(requested or None, skip_slow=skip_slow)

    results = asyncio.run(registry.run_all(names))

    table = Table(title="Acceptance checks")
    table.add_column("check")
    table.add_column("result")
    table.add_column("time", justify="right")
    table.add_column("details")
    for result in results:
        status = "[green]PASS[/green]" if result.success else "[red]FAIL[/red]"
        table.add_row(result.check_name, status, f"{result.duration_ms / 1000:.1f}s", result.summary())
    console.print(table)

    if not all(result.success for result in results):
        raise typer.Exit(EXIT_FAILURE)
    console.print("[bold green]All checks passed![/bold green]")


def main():
    """Entry point."""
    app()


if __name__ == "__main__":
    main()
