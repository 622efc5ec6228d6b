"""Command-line interface.

Subcommands mirror the HTTP endpoints and share their handlers, so
`--json` output is byte-identical to the corresponding HTTP response body.
"""

from __future__ import annotations

import json
import sys

import click

from . import config as config_mod
from .api import build_state, create_app, envelope_ok, replay_executor
from .datasource import fetch_dataset
from .errors import EpidssError
from .handlers import AppState, handle_allocate, handle_forecast, handle_lockdown
from .snapshots import SnapshotStore, canonical_json, replay


def _state_from_options(config_path, data_path, need_data=True) -> AppState:
    config = config_mod.load(config_path)
    if data_path:
        from dataclasses import replace
        config = replace(config, data_source=data_path)
    state = AppState(config=config)
    if config.data_source:
        state.dataset = fetch_dataset(config.data_source, config.schema)
    elif need_data:
        raise EpidssError("no data source: pass --data or set data_source in config")
    return state


def _fail(error: EpidssError):
    click.echo(f"error[{error.code}]: {error.message}", err=True)
    sys.exit(1)


def _emit(data: dict, as_json: bool, render):
    if as_json:
        click.echo(canonical_json(envelope_ok(data)))
    else:
        render(data)


@click.group()
def main():
    """Epidemic decision support: forecast, allocate, lockdown."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None,
              help="Write the normalized (repaired, ISO-dated) CSV here.")
def ingest(file, config_path, out):
    """Parse, validate and repair a case CSV; report per-region coverage."""
    from .casedata import serialize_csv

    try:
        config = config_mod.load(config_path)
        dataset = fetch_dataset(file, config.schema)
    except EpidssError as exc:
        _fail(exc)
    click.echo(f"{'region':<12} {'days':>6} {'first':>12} {'last':>12}")
    for code in dataset.regions():
        series = dataset.series[code]
        click.echo(f"{code:<12} {len(series):>6} "
                   f"{series.records[0].date.isoformat():>12} "
                   f"{series.records[-1].date.isoformat():>12}")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(serialize_csv(dataset.series, config.schema))
        click.echo(f"normalized CSV written to {out}")


@main.command()
@click.argument("region")
@click.option("--kind", default="active",
              type=click.Choice(["confirmed", "recovered", "deceased", "active"]))
@click.option("--horizon", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--data", "data_path", type=click.Path(exists=True), default=None)
@click.option("--json", "as_json", is_flag=True, help="Machine output.")
def forecast(region, kind, horizon, config_path, data_path, as_json):
    """Predict a region's case series over the horizon."""
    request = {"region": region, "kind": kind}
    if horizon is not None:
        request["horizon"] = horizon
    try:
        state = _state_from_options(config_path, data_path)
        data = handle_forecast(state, request)
    except EpidssError as exc:
        _fail(exc)

    def render(data):
        click.echo(f"forecast {data['kind']} for {data['region']['name']} "
                   f"({data['region']['code']}), next {data['horizon']} days")
        click.echo(f"{'date':>12} {'predicted':>14}")
        for point in data["points"]:
            click.echo(f"{point['date']:>12} {point['value']:>14.1f}")

    _emit(data, as_json, render)


@main.command()
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--data", "data_path", type=click.Path(exists=True), default=None)
@click.option("--json", "as_json", is_flag=True, help="Machine output.")
def allocate(problem, config_path, data_path, as_json):
    """Allocate an item per a problem JSON file (item, supply, claims)."""
    with open(problem, encoding="utf-8") as fh:
        request = json.load(fh)
    try:
        state = _state_from_options(config_path, data_path, need_data=False)
        data = handle_allocate(state, request)
    except EpidssError as exc:
        _fail(exc)

    def render(data):
        item = data["item"]
        click.echo(f"allocation of {item['name']} ({item['unit']}), "
                   f"supply {data['supply']:.1f}, blend {data['blend']}")
        click.echo(f"{'unit':<12} {'demand':>12} {'peak_active':>12} {'award':>12}")
        for row in data["awards"]:
            click.echo(f"{row['unit']:<12} {row['demand']:>12.1f} "
                       f"{row['peak_active']:>12.1f} {row['award']:>12.1f}")
        click.echo(f"{'total':<12} {'':>12} {'':>12} {data['total_awarded']:>12.1f}")

    _emit(data, as_json, render)


@main.command()
@click.argument("availabilities", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--data", "data_path", type=click.Path(exists=True), default=None)
@click.option("--json", "as_json", is_flag=True, help="Machine output.")
def lockdown(availabilities, config_path, data_path, as_json):
    """Check 14-day item demand against availabilities (JSON file)."""
    with open(availabilities, encoding="utf-8") as fh:
        request = json.load(fh)
    try:
        state = _state_from_options(config_path, data_path)
        data = handle_lockdown(state, request)
    except EpidssError as exc:
        _fail(exc)

    def render(data):
        banner = "LOCKDOWN" if data["recommendation"] == "lockdown" else "NO LOCKDOWN"
        click.echo(banner)
        for entry in data["items"]:
            item = entry["item"]
            if entry["breaches"]:
                first = entry["breaches"][0]
                click.echo(f"  {item['name']}: {len(entry['breaches'])} breach day(s), "
                           f"first on {first['date']} (day {first['day']})")
            else:
                click.echo(f"  {item['name']}: ok")

    _emit(data, as_json, render)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    try:
        config = config_mod.load(config_path)
        state = build_state(config)
    except EpidssError as exc:
        _fail(exc)
    app = create_app(state)
    uvicorn.run(app, host=host or state.config.host,
                port=port or state.config.port)


@main.command(name="replay")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--data", "data_path", type=click.Path(exists=True), default=None)
@click.option("--snapshots", "snapshot_path", type=click.Path(exists=True),
              required=True)
def replay_cmd(config_path, data_path, snapshot_path):
    """Re-execute recorded decisions and report divergences."""
    try:
        state = _state_from_options(config_path, data_path, need_data=False)
        store = SnapshotStore(snapshot_path)
        snapshots = store.list()
    except EpidssError as exc:
        _fail(exc)
    execute = replay_executor(state)
    current_config = state.config.to_dict()
    divergent = 0
    for i, snapshot in enumerate(snapshots):
        try:
            result = replay(snapshot, execute, current_config)
        except EpidssError as exc:
            click.echo(f"[{i}] {snapshot.kind} @ {snapshot.timestamp}: "
                       f"replay failed ({exc.code}: {exc.message})")
            divergent += 1
            continue
        if result.match:
            click.echo(f"[{i}] {snapshot.kind} @ {snapshot.timestamp}: match")
        else:
            divergent += 1
            click.echo(f"[{i}] {snapshot.kind} @ {snapshot.timestamp}: DIVERGED")
            for path in result.response_diff:
                click.echo(f"      response: {path}")
            for path in result.config_diff:
                click.echo(f"      config changed: {path}")
    sys.exit(1 if divergent else 0)


if __name__ == "__main__":
    main()
