"""Lockdown recommendation: breach analysis of forecast item demand vs availability.

Demand for each critical item over the next 14 days is kappa times the
predicted active cases; lockdown is recommended iff any item's demand
exceeds its availability on any day of the horizon. Availability is read as
per-day deliverable capacity by default; a stock-depletion mode treats it
as an initial stock drawn down by cumulative demand.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from itertools import accumulate

from .allocator import ResourceItem
from .errors import InsufficientHorizonError, InvalidRequestError
from .forecaster import Forecast

DEFAULT_HORIZON = 14

MODES = ("daily_capacity", "stock_depletion")


@dataclass(frozen=True)
class AvailabilityEntry:
    item: ResourceItem
    available_per_day: float

    def __post_init__(self):
        if self.available_per_day < 0:
            raise ValueError("availability must be non-negative")


@dataclass(frozen=True)
class Breach:
    date: dt.date
    day: int  # 1-based day within the horizon
    forecast_demand: float
    availability: float


@dataclass(frozen=True)
class ItemBreaches:
    item: ResourceItem
    breaches: tuple[Breach, ...]


@dataclass(frozen=True)
class LockdownAssessment:
    recommendation: str  # "lockdown" | "no-lockdown"
    items: tuple[ItemBreaches, ...]
    horizon: int

    def __post_init__(self):
        has_breach = any(it.breaches for it in self.items)
        assert self.recommendation == ("lockdown" if has_breach else "no-lockdown")


def item_demand_curve(active_forecast: Forecast, item: ResourceItem,
                      horizon: int = DEFAULT_HORIZON) -> list[float]:
    """Per-day item demand over the horizon: kappa * predicted active cases."""
    if active_forecast.kind != "active":
        raise InvalidRequestError(
            f"demand curve needs an active forecast, got {active_forecast.kind!r}")
    if len(active_forecast.points) < horizon:
        raise InsufficientHorizonError(
            f"forecast horizon {len(active_forecast.points)} is shorter than "
            f"required {horizon} days",
            detail={"required": horizon, "got": len(active_forecast.points)},
        )
    return [item.kappa * value for _, value in active_forecast.points[:horizon]]


def assess(availabilities, active_forecast: Forecast,
           horizon: int = DEFAULT_HORIZON,
           mode: str = "daily_capacity") -> LockdownAssessment:
    """Compare each item's demand curve to its availability day by day."""
    availabilities = list(availabilities)
    if not availabilities:
        raise InvalidRequestError("at least one availability entry required")
    if mode not in MODES:
        raise InvalidRequestError(f"unknown lockdown mode {mode!r}")
    if horizon < 1 or horizon > DEFAULT_HORIZON:
        raise InvalidRequestError(
            f"horizon must be in 1..{DEFAULT_HORIZON}, got {horizon}")

    dates = [d for d, _ in active_forecast.points[:horizon]]
    items = []
    for entry in availabilities:
        demand = item_demand_curve(active_forecast, entry.item, horizon)
        if mode == "stock_depletion":
            # breach when the running stock cannot cover cumulative demand
            stock_left = (entry.available_per_day - c for c in accumulate(demand))
            flags = [left < 0 for left in stock_left]
        else:
            flags = [d > entry.available_per_day for d in demand]
        breaches = tuple(
            Breach(date=dates[i], day=i + 1, forecast_demand=demand[i],
                   availability=entry.available_per_day)
            for i, hit in enumerate(flags) if hit
        )
        items.append(ItemBreaches(item=entry.item, breaches=breaches))

    any_breach = any(it.breaches for it in items)
    return LockdownAssessment(
        recommendation="lockdown" if any_breach else "no-lockdown",
        items=tuple(items),
        horizon=horizon,
    )
