"""Command-line entry point.

Exit codes: 0 success, 1 failed verdict, 2 usage error, 3 I/O error.
Every verdict printed here is computed by library code.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import checks as checks_mod
from .config import AppConfig, ConfigError, load_config
from .engine import Indicator, OutOfOrderError
from .simulate import (
    checkpoint_verdicts,
    default_scenarios,
    export_fdes_csv,
    export_scenario_csv,
    run_fdes_simulation,
    run_psi_scenarios,
    scenario_verdicts,
)
from .store import EvalStore, ReplayError, StudentRoster

_CONFIG_OPT = click.option(
    "--config", "config_path", envvar="FDES_CONFIG", default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Configuration file (defaults to the packaged one).",
)
_LOG_OPT = click.option(
    "--log", "log_path", envvar="FDES_LOG", default="fdes_records.jsonl",
    show_default=True, help="Append-only record log.",
)


def _load(config_path: str | None) -> AppConfig:
    try:
        return load_config(config_path)
    except ConfigError as exc:
        raise click.ClickException(f"bad configuration: {exc}")
    except OSError as exc:
        click.echo(f"cannot read configuration: {exc}", err=True)
        sys.exit(3)


def _open_store(log_path: str, cfg: AppConfig) -> EvalStore:
    try:
        return EvalStore(log_path, cfg.engine())
    except ReplayError as exc:
        raise click.ClickException(f"log {log_path} is unreadable: {exc}")
    except OSError as exc:
        click.echo(f"cannot open log {log_path}: {exc}", err=True)
        sys.exit(3)


def _print_verdicts(verdicts: list[tuple[str, bool, str]]) -> None:
    failed = False
    for name, ok, detail in verdicts:
        click.echo(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        failed |= not ok
    if failed:
        sys.exit(1)


@click.group()
def main() -> None:
    """Fuzzy descriptive evaluation: simulate, record, report, serve."""


@main.group()
def simulate() -> None:
    """Run the standard experiments and export their CSV data."""


@simulate.command("psi")
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.option("--out", "out_dir", default=".", show_default=True, help="Output directory.")
@_CONFIG_OPT
def simulate_psi(seed: int | None, out_dir: str, config_path: str | None) -> None:
    """30-day study of the two-input system under four input regimes."""
    cfg = _load(config_path)
    psi = cfg.engine().recent_psi
    scenarios = cfg.scenarios()
    if not scenarios:
        scenarios = default_scenarios(psi, jitter=cfg.scenario_jitter,
                                      days=cfg.scenario_days, seed=cfg.scenario_seed)
    if seed is not None:
        scenarios = [
            type(sc)(sc.name, sc.x_m_mean, sc.x_m1_mean, jitter=sc.jitter,
                     days=sc.days, seed=seed)
            for sc in scenarios
        ]
    try:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        for run in run_psi_scenarios(psi, scenarios):
            path = Path(out_dir) / f"psi_{run.name}.csv"
            export_scenario_csv(run, path)
            click.echo(f"wrote {path}")
    except OSError as exc:
        click.echo(f"cannot write output: {exc}", err=True)
        sys.exit(3)
    _print_verdicts(scenario_verdicts(psi, days=cfg.scenario_days, seed=cfg.scenario_seed))


@simulate.command("fdes")
@click.option("--out", "out_dir", default=".", show_default=True, help="Output directory.")
@click.option("--interval", type=int, default=1, show_default=True,
              help="Days between evaluations of each indicator.")
@_CONFIG_OPT
def simulate_fdes(out_dir: str, interval: int, config_path: str | None) -> None:
    """150-day full-cascade run over the five synthetic indicator curves."""
    cfg = _load(config_path)
    engine = cfg.engine()
    if not cfg.trajectories:
        raise click.ClickException("configuration defines no trajectories")
    run = run_fdes_simulation(engine, cfg.trajectories, sampling_interval_days=interval)
    try:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        path = Path(out_dir) / "fdes_run.csv"
        export_fdes_csv(run, path)
        click.echo(f"wrote {path}")
    except OSError as exc:
        click.echo(f"cannot write output: {exc}", err=True)
        sys.exit(3)
    _print_verdicts(checkpoint_verdicts(run, engine))


@main.command()
@click.option("--student", required=True, help="Student identifier.")
@click.option("--indicator", required=True, type=click.Choice([i.value for i in Indicator],
              case_sensitive=False))
@click.option("--day", type=int, default=None, help="School-year day, 1..150.")
@click.option("--month", default=None, help="Month name (MEHR..BAHMAN).")
@click.option("--day-of-month", type=int, default=None, help="Day within the month, 1..30.")
@click.option("--value", required=True, help="Crisp score or term label (NME/AE/G/VG).")
@click.option("--note", default="", help="Free-text note.")
@_LOG_OPT
@_CONFIG_OPT
def record(student: str, indicator: str, day: int | None, month: str | None,
           day_of_month: int | None, value: str, note: str,
           log_path: str, config_path: str | None) -> None:
    """Append one evaluation and print the updated standing."""
    cfg = _load(config_path)
    from .engine import day_of  # local import keeps the click surface tidy

    if day is None:
        if month is None or day_of_month is None:
            raise click.UsageError("give --day or both --month and --day-of-month")
        try:
            day = day_of(month, day_of_month)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    elif month is not None or day_of_month is not None:
        raise click.UsageError("give either --day or (--month, --day-of-month), not both")

    with _open_store(log_path, cfg) as store:
        engine = store.engine
        try:
            crisp = float(value)
        except ValueError:
            crisp = value  # term label; make_record parses it
        try:
            rec = engine.make_record(student, indicator, day, crisp, note)
            seq, state = store.append(rec)
        except OutOfOrderError as exc:
            raise click.ClickException(f"rejected: {exc}")
        except ValueError as exc:
            raise click.UsageError(str(exc))
        status = engine.indicator_status(state, rec.indicator)
        final, term = engine.final_out(state)
        clamp_note = " (clamped)" if rec.clamped else ""
        click.echo(f"recorded seq {seq}: {rec.indicator.value} day {rec.day} "
                   f"value {rec.value:.3f}{clamp_note}")
        click.echo(f"{rec.indicator.value} status = {status:.3f}; "
                   f"final = {final:.3f} ({term.name})")


def _emit_table(headers: list[str], rows: list[list[str]], fmt: str) -> None:
    if fmt == "csv":
        click.echo(",".join(headers))
        for row in rows:
            click.echo(",".join(row))
        return
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    click.echo("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        click.echo("  ".join(c.ljust(w) for c, w in zip(row, widths)))


@main.command()
@click.option("--student", required=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv"]), default="table",
              show_default=True)
@_LOG_OPT
@_CONFIG_OPT
def status(student: str, fmt: str, log_path: str, config_path: str | None) -> None:
    """Per-indicator standings and the combined value for one student."""
    cfg = _load(config_path)
    with _open_store(log_path, cfg) as store:
        state = store.state(student)
        if state is None:
            raise click.ClickException(f"unknown student {student!r}")
        engine = store.engine
        rows = []
        for ind in Indicator:
            v = engine.indicator_status(state, ind)
            rows.append([ind.value,
                         "-" if v is None else f"{v:.3f}",
                         "-" if v is None else engine.var.round_to_term(v).name])
        final, term = engine.final_out(state)
        _emit_table(["indicator", "value", "term"], rows, fmt)
        click.echo(f"final,{final:.3f},{term.name}" if fmt == "csv"
                   else f"final = {final:.3f} ({term.name})")


@main.command()
@click.option("--student", required=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv"]), default="table",
              show_default=True)
@click.option("--roster", "roster_path", default=None,
              type=click.Path(exists=True, dir_okay=False), help="Roster YAML.")
@_LOG_OPT
@_CONFIG_OPT
def report(student: str, fmt: str, roster_path: str | None,
           log_path: str, config_path: str | None) -> None:
    """End-of-term report: evaluations, standings, chain and final phrase."""
    cfg = _load(config_path)
    with _open_store(log_path, cfg) as store:
        state = store.state(student)
        if state is None:
            raise click.ClickException(f"unknown student {student!r}")
        doc = store.engine.report(state, student)
        if roster_path:
            roster = StudentRoster.from_yaml(roster_path)
            click.echo(f"student: {roster.display_name(student)} ({student})")
        else:
            click.echo(f"student: {student}")
        rows = [
            [ind, entry["label"], str(entry["evaluations"]),
             "-" if entry["value"] is None else f"{entry['value']:.3f}",
             entry["term"] or "-"]
            for ind, entry in doc["indicators"].items()
        ]
        _emit_table(["indicator", "skill", "n", "value", "term"], rows, fmt)
        chain = ", ".join(f"{k}={'-' if v is None else f'{v:.3f}'}"
                          for k, v in doc["chain"].items())
        click.echo(f"chain: {chain}")
        if doc["final"] is not None:
            click.echo(f"final: {doc['final']['value']:.3f} -> {doc['final']['term']}")
        click.echo(f"records: {doc['record_count']}, last day: {doc['last_update_day']}")


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True,
              envvar="FDES_ADDR", help="HOST:PORT to listen on.")
@click.option("--roster", "roster_path", default=None,
              type=click.Path(exists=True, dir_okay=False), help="Roster YAML.")
@_LOG_OPT
@_CONFIG_OPT
def serve(addr: str, roster_path: str | None, log_path: str,
          config_path: str | None) -> None:
    """Run the HTTP/JSON evaluation service."""
    import uvicorn

    from .service import create_app

    cfg = _load(config_path)
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise click.UsageError(f"--addr must look like HOST:PORT, got {addr!r}")
    store = _open_store(log_path, cfg)
    roster = StudentRoster.from_yaml(roster_path) if roster_path else None
    uvicorn.run(create_app(store, roster), host=host, port=int(port))


@main.command()
@_CONFIG_OPT
def check(config_path: str | None) -> None:
    """Audit the numeric invariants and print measured bounds."""
    cfg = _load(config_path)
    results = checks_mod.run_all(cfg.engine().recent_psi)
    for res in results:
        click.echo(res.line())
    if not all(r.passed for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
