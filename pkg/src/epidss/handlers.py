"""Engine-facing request handlers shared by the HTTP API and the CLI.

Each handler takes the application state plus a plain-dict request and
returns a plain-dict payload (or raises an EpidssError). Keeping a single
handler path is what makes CLI --json output and HTTP response bodies
byte-identical.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace

from . import forecaster, lockdown as lockdown_mod
from .allocator import (
    AllocationProblem,
    ResourceItem,
    UnitClaim,
    allocate,
)
from .casedata import ActiveSeries, RegionId, derive_active
from .config import AppConfig
from .datasource import Dataset, build_dataset
from .errors import InvalidRequestError, UnknownRegionError
from .forecaster import ForecastConfig
from .lockdown import AvailabilityEntry, assess
from .snapshots import SnapshotStore

PEAK_ACTIVE_DAYS = 7


@dataclass
class AppState:
    config: AppConfig
    dataset: Dataset | None = None
    store: SnapshotStore | None = None

    def require_dataset(self) -> Dataset:
        if self.dataset is None:
            raise InvalidRequestError(
                "no dataset loaded; ingest a CSV or configure data_source")
        return self.dataset

    def swap_dataset(self, dataset: Dataset) -> None:
        # atomic reference swap; readers keep whatever snapshot they grabbed
        self.dataset = dataset


def _require(body: dict, key: str, kind=None, path: str | None = None):
    path = path or key
    if key not in body or body[key] is None:
        raise InvalidRequestError(f"missing field {path}", detail={"field": path})
    value = body[key]
    if kind is not None and not isinstance(value, kind):
        raise InvalidRequestError(
            f"field {path} has wrong type", detail={"field": path})
    return value


def _number(body: dict, key: str, path: str | None = None,
            default=None, minimum=None):
    path = path or key
    if key not in body or body[key] is None:
        if default is not None:
            return default
        raise InvalidRequestError(f"missing field {path}", detail={"field": path})
    value = body[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidRequestError(
            f"field {path} must be a number", detail={"field": path})
    if minimum is not None and value < minimum:
        raise InvalidRequestError(
            f"field {path} must be >= {minimum}", detail={"field": path})
    return float(value)


def handle_regions(state: AppState) -> dict:
    dataset = state.require_dataset()
    regions = []
    for code in dataset.regions():
        series = dataset.series[code]
        regions.append({
            "code": code,
            "name": series.region.name,
            "days": len(series),
            "first_date": series.records[0].date.isoformat(),
            "last_date": series.records[-1].date.isoformat(),
        })
    return {"regions": regions, "retrieved_at": dataset.retrieved_at.isoformat()}


def _forecast_config(state: AppState, horizon: int | None) -> ForecastConfig:
    config = state.config.forecast
    if horizon is not None:
        config = replace(config, horizon=horizon)
    return config


def handle_forecast(state: AppState, request: dict) -> dict:
    dataset = state.require_dataset()
    region = _require(request, "region", str)
    kind = request.get("kind", "active")
    if kind not in forecaster.KINDS:
        raise InvalidRequestError(
            f"kind must be one of {', '.join(forecaster.KINDS)}",
            detail={"field": "kind"},
        )
    horizon = request.get("horizon")
    if horizon is not None:
        if not isinstance(horizon, int) or isinstance(horizon, bool):
            raise InvalidRequestError("horizon must be an integer",
                                      detail={"field": "horizon"})

    series = dataset.get(region.upper())
    if series is None:
        raise UnknownRegionError(f"unknown region {region!r}",
                                 detail={"region": region})

    config = _forecast_config(state, horizon)
    fc = forecaster.forecast(series, kind, config)

    observed_values = (
        [r.confirmed - r.recovered - r.deceased for r in series.records]
        if kind == "active" else series.values(kind)
    )
    tail = series.records[-config.window:]
    observed = [
        {"date": r.date.isoformat(), "value": v}
        for r, v in zip(tail, observed_values[-config.window:])
    ]
    return {
        "region": {"code": series.region.code, "name": series.region.name},
        "kind": kind,
        "horizon": config.horizon,
        "observed": observed,
        "points": [
            {"date": d.isoformat(), "value": v} for d, v in fc.points
        ],
        "model": {
            "coefficients": list(fc.model.coefficients),
            "transform": fc.model.transform,
            "fit_window_end": fc.model.fit_window_end.isoformat(),
            "residual_norm": fc.model.residual_norm,
        },
    }


def _parse_item(state: AppState, raw, path: str) -> ResourceItem:
    if isinstance(raw, str):
        item = state.config.item_by_name(raw)
        if item is None:
            raise InvalidRequestError(
                f"unknown item {raw!r}; not in the configured catalog",
                detail={"field": path},
            )
        return item
    if isinstance(raw, dict):
        name = _require(raw, "name", str, f"{path}.name")
        catalog = state.config.item_by_name(name)
        unit = raw.get("unit") or (catalog.unit if catalog else "unit")
        kappa = raw.get("kappa")
        if kappa is None:
            kappa = catalog.kappa if catalog else 0.0
        if not isinstance(kappa, (int, float)) or kappa < 0:
            raise InvalidRequestError("kappa must be a non-negative number",
                                      detail={"field": f"{path}.kappa"})
        return ResourceItem(name=name, unit=unit, kappa=float(kappa))
    raise InvalidRequestError(f"field {path} must be an item name or object",
                              detail={"field": path})


def _peak_active_for(state: AppState, code: str) -> float | None:
    dataset = state.dataset
    if dataset is None:
        return None
    series = dataset.get(code)
    if series is None:
        return None
    config = state.config.forecast
    if len(series) < config.window:
        return None
    fc = forecaster.forecast(series, "active", config)
    return forecaster.peak_active(fc, min(PEAK_ACTIVE_DAYS, config.horizon))


def handle_allocate(state: AppState, request: dict) -> dict:
    item = _parse_item(state, _require(request, "item"), "item")
    supply = _number(request, "supply", minimum=0.0)
    blend = _number(request, "blend", default=state.config.blend)
    if not (0 <= blend <= 1):
        raise InvalidRequestError("blend must be in [0, 1]",
                                  detail={"field": "blend"})
    raw_claims = _require(request, "claims", list)
    if not raw_claims:
        raise InvalidRequestError("claims must be non-empty",
                                  detail={"field": "claims"})

    claims = []
    sources = []
    for i, raw in enumerate(raw_claims):
        path = f"claims[{i}]"
        if not isinstance(raw, dict):
            raise InvalidRequestError(f"field {path} must be an object",
                                      detail={"field": path})
        unit = _require(raw, "unit", str, f"{path}.unit").upper()
        demand = _number(raw, "demand", f"{path}.demand", minimum=0.0)
        if "peak_active" in raw and raw["peak_active"] is not None:
            peak = _number(raw, "peak_active", f"{path}.peak_active", minimum=0.0)
            source = "declared"
        else:
            peak = _peak_active_for(state, unit)
            source = "forecast" if peak is not None else "none"
            peak = peak if peak is not None else 0.0
        name = unit
        if state.dataset is not None and state.dataset.get(unit) is not None:
            name = state.dataset.get(unit).region.name
        claims.append(UnitClaim(unit=RegionId(code=unit, name=name),
                                demand=demand, peak_active=peak))
        sources.append(source)

    problem = AllocationProblem(item=item, supply=supply,
                                claims=tuple(claims), blend=blend)
    result = allocate(problem)

    awards = []
    for claim, eff, award, source in zip(claims, result.effective_demands,
                                         result.awards, sources):
        awards.append({
            "unit": claim.unit.code,
            "name": claim.unit.name,
            "demand": claim.demand,
            "peak_active": claim.peak_active,
            "peak_active_source": source,
            "effective_demand": eff,
            "award": award,
        })
    return {
        "item": {"name": item.name, "unit": item.unit, "kappa": item.kappa},
        "supply": supply,
        "blend": blend,
        "awards": awards,
        "total_awarded": sum(result.awards),
        "exhausted": result.exhausted,
    }


def _aggregate_active(dataset: Dataset) -> ActiveSeries:
    """Sum active cases across all regions on their common date range."""
    actives = [derive_active(s) for s in dataset.series.values()]
    start = max(a.dates()[0] for a in actives)
    end = min(a.dates()[-1] for a in actives)
    if start > end:
        raise InvalidRequestError("regions share no common date range")
    totals: dict[dt.date, int] = {}
    for active in actives:
        for date, value in active.points:
            if start <= date <= end:
                totals[date] = totals.get(date, 0) + value
    points = tuple(sorted(totals.items()))
    return ActiveSeries(region=RegionId(code="ALL", name="All regions"),
                        points=points)


def handle_lockdown(state: AppState, request: dict) -> dict:
    dataset = state.require_dataset()
    raw_avail = _require(request, "availabilities", list)
    if not raw_avail:
        raise InvalidRequestError("availabilities must be non-empty",
                                  detail={"field": "availabilities"})
    entries = []
    for i, raw in enumerate(raw_avail):
        path = f"availabilities[{i}]"
        if not isinstance(raw, dict):
            raise InvalidRequestError(f"field {path} must be an object",
                                      detail={"field": path})
        item = _parse_item(state, _require(raw, "item", path=f"{path}.item"),
                           f"{path}.item")
        available = _number(raw, "available_per_day", f"{path}.available_per_day",
                            minimum=0.0)
        entries.append(AvailabilityEntry(item=item, available_per_day=available))

    horizon = request.get("horizon", lockdown_mod.DEFAULT_HORIZON)
    if not isinstance(horizon, int) or isinstance(horizon, bool):
        raise InvalidRequestError("horizon must be an integer",
                                  detail={"field": "horizon"})

    region = request.get("region")
    fc_config = state.config.forecast
    if fc_config.horizon < horizon:
        fc_config = replace(fc_config, horizon=horizon)
    if region is None:
        series = _aggregate_active(dataset)
        region_out = {"code": "ALL", "name": "All regions"}
    else:
        series = dataset.get(str(region).upper())
        if series is None:
            raise UnknownRegionError(f"unknown region {region!r}",
                                     detail={"region": region})
        region_out = {"code": series.region.code, "name": series.region.name}
    fc = forecaster.forecast(series, "active", fc_config)

    assessment = assess(entries, fc, horizon=horizon,
                        mode=state.config.lockdown_mode)

    items = []
    for entry, item_breaches in zip(entries, assessment.items):
        demand = lockdown_mod.item_demand_curve(fc, entry.item, horizon)
        items.append({
            "item": {"name": entry.item.name, "unit": entry.item.unit,
                     "kappa": entry.item.kappa},
            "available_per_day": entry.available_per_day,
            "demand_curve": demand,
            "breaches": [
                {"date": b.date.isoformat(), "day": b.day,
                 "forecast_demand": b.forecast_demand,
                 "availability": b.availability}
                for b in item_breaches.breaches
            ],
        })
    return {
        "recommendation": assessment.recommendation,
        "horizon": horizon,
        "mode": state.config.lockdown_mode,
        "region": region_out,
        "items": items,
    }


def handle_ingest(state: AppState, raw: bytes) -> dict:
    dataset = build_dataset(raw, state.config.schema)
    state.swap_dataset(dataset)
    return {
        "regions": dataset.regions(),
        "region_count": len(dataset.series),
        "retrieved_at": dataset.retrieved_at.isoformat(),
    }


def execute(state: AppState, kind: str, request: dict) -> dict:
    """Dispatch a recorded decision kind to its handler (used by replay)."""
    if kind == "forecast":
        return handle_forecast(state, request)
    if kind == "allocation":
        return handle_allocate(state, request)
    if kind == "lockdown":
        return handle_lockdown(state, request)
    raise ValueError(f"unknown decision kind {kind!r}")
