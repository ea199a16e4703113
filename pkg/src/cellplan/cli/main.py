"""Cellplan CLI: the main entry point."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, NoReturn

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from cellplan import __version__
from cellplan.caex import CaexDocument, parse_caex, validate_caex
from cellplan.caex.validate import has_errors
from cellplan.cell import Mode, SnapshotRecorder, run_simulation, write_snapshots
from cellplan.config.geometry import CellGeometry, load_geometry
from cellplan.config.settings import Settings, get_settings
from cellplan.errors import CellplanError, GeometryManifestError, PlanningError
from cellplan.items import extract_items, write_items
from cellplan.items.models import ItemStream
from cellplan.outputs import write_text
from cellplan.twin import DigitalTwin, build_twin

app = typer.Typer(
    name="cellplan",
    help="Digital-twin assembly planning from AutomationML product descriptions.",
    rich_markup_mode="rich",
)
console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger("cellplan.cli.main")

GEOMETRY_SECTIONS = ("speeds", "arm_envelope")


@app.callback(invoke_without_command=True)
def main_callback(
    ctx: typer.Context,
    version: bool = typer.Option(False, "--version", help="Show version"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress"),
    debug: bool = typer.Option(False, "--debug", help="Log everything"),
) -> None:
    if version:
        console.print(f"cellplan [dim]v{__version__}[/dim]")
        raise typer.Exit()

    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)-8s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        force=True,
    )

    if ctx.invoked_subcommand is None:
        console.print(ctx.get_help())
        raise typer.Exit()


# -- Helpers -------------------------------------------------------------------


def _usage_error(message: str) -> NoReturn:
    err_console.print(f"[red]{escape(message)}[/red]")
    raise typer.Exit(2)


def _fail(exc: Exception) -> NoReturn:
    err_console.print(f"[red]{escape(str(exc))}[/red]")
    raise typer.Exit(1)


def _parse_overrides(pairs: list[str] | None) -> tuple[dict[str, Any], dict[str, Any]]:
    """Split ``key=value`` pairs into settings overrides and geometry overrides."""
    settings_overrides: dict[str, Any] = {}
    geometry_overrides: dict[str, Any] = {}
    for pair in pairs or []:
        key, sep, raw = pair.partition("=")
        if not sep or "." not in key:
            _usage_error(f"Expected section.field=value, got '{pair}'")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        if key.split(".")[0] in GEOMETRY_SECTIONS:
            geometry_overrides[key] = value
        else:
            settings_overrides[key] = value
    return settings_overrides, geometry_overrides


def _settings(overrides: dict[str, Any]) -> Settings:
    try:
        return get_settings().with_overrides(overrides) if overrides else get_settings()
    except KeyError as exc:
        _usage_error(f"Unknown setting {exc}")
    except ValueError as exc:
        _usage_error(f"Invalid setting: {exc}")


def _geometry(path: Path, overrides: dict[str, Any]) -> CellGeometry:
    try:
        geometry = load_geometry(path)
        return geometry.with_overrides(overrides) if overrides else geometry
    except (OSError, GeometryManifestError) as exc:
        _usage_error(f"Cannot load geometry: {exc}")
    except KeyError as exc:
        _usage_error(f"Unknown geometry setting {exc}")
    except ValueError as exc:
        _usage_error(f"Invalid geometry setting: {exc}")


def _read_document(path: Path) -> CaexDocument:
    try:
        data = path.read_bytes()
    except OSError as exc:
        _usage_error(f"Cannot read {path}: {exc}")
    return parse_caex(data)


def _checked_items(path: Path) -> ItemStream:
    """Parse, refuse documents with error diagnostics, extract items."""
    doc = _read_document(path)
    diagnostics = validate_caex(doc)
    for d in diagnostics:
        err_console.print(str(d), markup=False, highlight=False)
    if has_errors(diagnostics):
        err_console.print(f"[red]{path} has validation errors[/red]")
        raise typer.Exit(1)
    return extract_items(doc)


def _load_twin(
    path: Path, geometry_path: Path, overrides: list[str] | None
) -> tuple[DigitalTwin, CellGeometry, Settings]:
    settings_overrides, geometry_overrides = _parse_overrides(overrides)
    settings = _settings(settings_overrides)
    geometry = _geometry(geometry_path, geometry_overrides)
    twin = build_twin(_checked_items(path), geometry)
    return twin, geometry, settings


# -- Commands ------------------------------------------------------------------


@app.command()
def validate(
    path: Path = typer.Argument(help="AutomationML (.aml) file"),
):
    """Check a product description and list diagnostics."""
    try:
        doc = _read_document(path)
    except CellplanError as exc:
        _fail(exc)
    diagnostics = validate_caex(doc)
    for d in diagnostics:
        console.print(str(d), markup=False, highlight=False)
    if has_errors(diagnostics):
        raise typer.Exit(1)
    if not diagnostics:
        console.print(f"[green]✓[/green] {path.name} is valid")


@app.command("export-items")
def export_items(
    path: Path = typer.Argument(help="AutomationML (.aml) file"),
    output: Path = typer.Option(..., "--output", "-o", help="Items file to write"),
):
    """Extract the parameter/create/connection items to a text file."""
    try:
        stream = _checked_items(path)
    except CellplanError as exc:
        _fail(exc)
    write_text(output, write_items(stream))
    console.print(f"[green]✓[/green] Wrote {len(stream)} items to {output}")


@app.command()
def plan(
    path: Path = typer.Argument(help="AutomationML (.aml) file"),
    geometry: Path = typer.Option(..., "--geometry", "-g", help="Cell geometry manifest (JSON)"),
    output: Path = typer.Option(..., "--output", "-o", help="Plan document to write"),
    overrides: list[str] | None = typer.Option(
        None, "--set", help="Override a setting, e.g. collision.sweep_step=0.01 (repeatable)"
    ),
):
    """Resolve, sequence and plan the assembly without simulating it."""
    from cellplan.cli.plan import build_plan

    try:
        twin, cell, settings = _load_twin(path, geometry, overrides)
        document = build_plan(twin, cell, settings)
    except PlanningError as exc:
        err_console.print(f"[red]{escape(str(exc))}[/red]")
        for r in exc.reports:
            err_console.print(
                f"  {r.strategy}: segment {r.segment_index} hits {r.obstacle_id} ({r.body})",
                markup=False,
            )
        raise typer.Exit(1) from None
    except CellplanError as exc:
        _fail(exc)

    write_text(output, document.model_dump_json(indent=2) + "\n")

    table = Table(title="Assembly plan", show_lines=False)
    table.add_column("#", justify="right", style="dim")
    table.add_column("Part", style="bold")
    table.add_column("Type")
    table.add_column("Strategy")
    table.add_column("Segments", justify="right")
    for i, part in enumerate(document.parts, 1):
        table.add_row(
            str(i), part.instance, part.type_name, part.strategy, str(len(part.segments))
        )
    console.print(table)
    console.print(f"\n  [dim]Plan written to {output}[/dim]\n")


@app.command()
def simulate(
    path: Path = typer.Argument(help="AutomationML (.aml) file"),
    geometry: Path = typer.Option(..., "--geometry", "-g", help="Cell geometry manifest (JSON)"),
    mode: Mode = typer.Option(Mode.BOTH, "--mode", "-m", help="virtual, physical or both"),
    trace_out: Path = typer.Option(..., "--trace", "-t", help="Trace file to write (JSON lines)"),
    snapshots: Path | None = typer.Option(None, "--snapshots", help="Directory for snapshots"),
    every: int | None = typer.Option(None, "--every", min=0, help="Snapshot interval in ticks"),
    overrides: list[str] | None = typer.Option(
        None, "--set", help="Override a setting, e.g. collision.sweep_step=0.01 (repeatable)"
    ),
):
    """Run the cell tick by tick and write the event trace."""
    try:
        twin, cell, settings = _load_twin(path, geometry, overrides)
        recorder = None
        if snapshots is not None:
            interval = every if every is not None else settings.simulation.snapshot_every
            recorder = SnapshotRecorder(interval)
        trace = run_simulation(twin, cell, mode, settings, observer=recorder)
    except CellplanError as exc:
        _fail(exc)

    write_text(trace_out, trace.to_jsonl())
    if recorder is not None and snapshots is not None:
        write_snapshots(recorder.snapshots, snapshots)

    if trace.failed:
        reason = trace.events[-1].detail if trace.events else "unknown"
        err_console.print(f"[red]Simulation failed: {reason}[/red]")
        raise typer.Exit(1)
    ticks = (trace.events[-1].tick if trace.events else 0) + 1
    seconds = ticks / settings.simulation.ticks_per_second
    console.print(
        f"[green]✓[/green] {len(trace.events)} events over {ticks} ticks "
        f"({seconds:.1f} s simulated) written to {trace_out}"
    )


@app.command()
def config(
    overrides: list[str] | None = typer.Option(
        None, "--set", help="Change and save a setting, e.g. planner.clearance=3 (repeatable)"
    ),
):
    """Show the tuning settings, or change them in ~/.cellplan/config.json."""
    settings_overrides, geometry_overrides = _parse_overrides(overrides)
    if geometry_overrides:
        keys = ", ".join(geometry_overrides)
        _usage_error(f"{keys} belong in the geometry manifest, not config.json")
    settings = _settings(settings_overrides)

    if settings_overrides:
        path = settings.save()
        get_settings.cache_clear()
        console.print(f"[green]✓[/green] Saved {len(settings_overrides)} setting(s) to {path}")
    elif not Settings.config_exists():
        console.print("[dim]No config file yet, showing defaults.[/dim]")

    table = Table(title="Settings", show_lines=False)
    table.add_column("Key", style="bold")
    table.add_column("Value")
    for section, values in settings.model_dump(mode="json").items():
        for name, value in values.items():
            table.add_row(f"{section}.{name}", str(value))
    console.print(table)


@app.command()
def samples(
    name: str | None = typer.Argument(None, help="Sample to copy (omit to list)"),
    dest: Path = typer.Option(Path("."), "--dest", "-d", help="Directory to copy into"),
):
    """List the bundled sample products, or copy one to a directory."""
    from cellplan.samples import SAMPLES, copy_sample

    if name is None:
        table = Table(title="Samples", show_lines=False)
        table.add_column("Name", style="bold")
        table.add_column("Product")
        table.add_column("Geometry", style="dim")
        for sample, (aml, geometry_file) in SAMPLES.items():
            table.add_row(sample, aml, geometry_file)
        console.print(table)
        return

    try:
        copied = copy_sample(name, dest)
    except KeyError as exc:
        _usage_error(str(exc.args[0]))
    except OSError as exc:
        _usage_error(f"Cannot copy sample: {exc}")
    for path in copied:
        console.print(f"[green]✓[/green] {path}")
    if not copied:
        console.print(f"[dim]{name} already present in {dest}[/dim]")
