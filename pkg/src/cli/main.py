"""Main CLI interface using Typer."""

from pathlib import Path
from typing import Callable, Optional

import typer
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..core import SuiteReporter, SuiteRunner, load_report
from ..model.config import SuiteConfig, load_suite_config
from ..model.report import ReportFormat, SuiteReport
from ..utils.errors import ConfigError, DiffSpaceError, ExpressionParseError
from ..utils.logger import get_logger, set_log_level

app = typer.Typer(
    name="diffspace",
    help="Verify exterior calculus identities on subcartesian differential spaces",
    add_completion=True,
)

console = Console()
logger = get_logger(__name__)

EXIT_FAILURE = 1
EXIT_CONFIG = 2

ConfigOption = typer.Option(None, "--config", "-c", help="Suite configuration (YAML or JSON)")
SeedOption = typer.Option(None, "--seed", "-s", help="Random seed for all sampling")
QuadOption = typer.Option(None, "--quad-order", help="Gauss-Legendre nodes per axis")
TolOption = typer.Option(None, "--tol", help="Replace every suite tolerance")
OutOption = typer.Option(None, "--out", "-o", help="Output directory for reports and CSVs")
WorkersOption = typer.Option(None, "--workers", "-w", help="Suites run concurrently")
FormatOption = typer.Option(ReportFormat.TEXT, "--format", "-f", help="Console report format")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr")


def _build_config(
    config: Optional[Path],
    seed: Optional[int],
    quad_order: Optional[int],
    tol: Optional[float],
    out: Optional[Path],
    workers: Optional[int],
) -> SuiteConfig:
    base = load_suite_config(config)
    return base.with_overrides(
        seed=seed, quad_order=quad_order, tol=tol, out=out, workers=workers
    )


def _print_summary(report: SuiteReport) -> None:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Suite", style="cyan")
    table.add_column("Status")
    table.add_column("Max residual", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Samples", justify="right")
    for result in report.results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        residual = "n/a" if result.max_residual is None else f"{result.max_residual:.3e}"
        table.add_row(
            result.suite.value, status, residual, f"{result.tolerance:.1e}", str(result.samples)
        )
    console.print(table)


def _emit(report: SuiteReport, format: ReportFormat) -> None:
    rendered = SuiteReporter().render(report, format)
    if format == ReportFormat.TEXT:
        _print_summary(report)
    console.print(rendered, markup=False, highlight=False)


def _run(
    label: str,
    action: Callable[[SuiteRunner], SuiteReport],
    config: Optional[Path],
    seed: Optional[int],
    quad_order: Optional[int],
    tol: Optional[float],
    out: Optional[Path],
    workers: Optional[int],
    format: ReportFormat,
    verbose: bool,
) -> None:
    if verbose:
        set_log_level("DEBUG")
    code = 0
    try:
        suite_config = _build_config(config, seed, quad_order, tol, out, workers)
        runner = SuiteRunner(suite_config)
        with console.status(f"[bold green]Running {label}..."):
            report = action(runner)
        _emit(report, format)
        console.print(f"Results saved under: [cyan]{runner.output_dir}[/cyan]")
        if not report.passed:
            code = EXIT_FAILURE
    except (ConfigError, ExpressionParseError) as e:
        console.print(f"[red]Error:[/red] {str(e)}")
        code = EXIT_CONFIG
    except DiffSpaceError as e:
        console.print(f"[red]Error:[/red] {str(e)}")
        code = EXIT_FAILURE
    if code:
        raise typer.Exit(code)


@app.command()
def verify(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    quad_order: Optional[int] = QuadOption,
    tol: Optional[float] = TolOption,
    out: Optional[Path] = OutOption,
    workers: Optional[int] = WorkersOption,
    format: ReportFormat = FormatOption,
    verbose: bool = VerboseOption,
):
    """Run the configured verification suites; exit 1 if any residual exceeds its tolerance."""
    _run(
        "verification suites",
        SuiteRunner.verify,
        config,
        seed,
        quad_order,
        tol,
        out,
        workers,
        format,
        verbose,
    )


@app.command("orbit-demo")
def orbit_demo(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    quad_order: Optional[int] = QuadOption,
    tol: Optional[float] = TolOption,
    out: Optional[Path] = OutOption,
    workers: Optional[int] = WorkersOption,
    format: ReportFormat = FormatOption,
    verbose: bool = VerboseOption,
):
    """Scale the invariant angular form against generated forms on circles of radius R."""
    _run(
        "orbit scaling experiment",
        SuiteRunner.orbit_demo,
        config,
        seed,
        quad_order,
        tol,
        out,
        workers,
        format,
        verbose,
    )


@app.command()
def flow(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    quad_order: Optional[int] = QuadOption,
    tol: Optional[float] = TolOption,
    out: Optional[Path] = OutOption,
    workers: Optional[int] = WorkersOption,
    format: ReportFormat = FormatOption,
    verbose: bool = VerboseOption,
):
    """Integrate the configured flow experiments and write trajectory CSVs."""
    _run(
        "flow experiments",
        SuiteRunner.flow,
        config,
        seed,
        quad_order,
        tol,
        out,
        workers,
        format,
        verbose,
    )


@app.command()
def cohomology(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    quad_order: Optional[int] = QuadOption,
    tol: Optional[float] = TolOption,
    out: Optional[Path] = OutOption,
    workers: Optional[int] = WorkersOption,
    format: ReportFormat = FormatOption,
    verbose: bool = VerboseOption,
):
    """Compute Cech cohomology dimensions of the configured covers."""
    _run(
        "Cech cohomology",
        SuiteRunner.cohomology,
        config,
        seed,
        quad_order,
        tol,
        out,
        workers,
        format,
        verbose,
    )


@app.command()
def report(
    path: Path = typer.Argument(help="Saved report (JSON or YAML)"),
    format: ReportFormat = FormatOption,
):
    """Re-render a saved report."""
    code = 0
    try:
        saved = load_report(path)
        console.print(SuiteReporter().render(saved, format), markup=False, highlight=False)
        if not saved.passed:
            code = EXIT_FAILURE
    except ConfigError as e:
        console.print(f"[red]Error:[/red] {str(e)}")
        code = EXIT_CONFIG
    if code:
        raise typer.Exit(code)


@app.command()
def version():
    """Show version information."""
    console.print(f"[bold]diffspace[/bold] version {__version__}")
    console.print("Exterior calculus on subcartesian differential spaces")


if __name__ == "__main__":
    app()
