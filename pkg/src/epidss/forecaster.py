"""Adaptive short-term case predictor.

A polynomial trend is refit on a trailing window with exponentially
discounted weighted least squares (an observation aged k days carries
weight rho^k), then extrapolated over the horizon. Cumulative series are
fit on a log1p scale by default; clamping to valid outputs (monotone,
non-negative) happens only after the inverse transform so the fit itself
stays linear.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace

import numpy as np

from .casedata import CUMULATIVE_KINDS, ActiveSeries, CaseSeries, RegionId
from .errors import FitError, InsufficientDataError, RangeError

KINDS = ("confirmed", "recovered", "deceased", "active")

#: condition number above which the normal equations get a ridge term
_COND_LIMIT = 1e12
_RIDGE = 1e-9


@dataclass(frozen=True)
class ForecastConfig:
    window: int = 21
    horizon: int = 14
    discount: float = 0.9
    model_order: int = 2
    #: "identity", "log1p", or None = pick by kind (log1p for cumulative)
    transform: str | None = None

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("window must be at least 2 days")
        if not (1 <= self.horizon <= 21):
            raise ValueError("horizon must be in 1..21 days")
        if not (0 < self.discount <= 1):
            raise ValueError("discount must be in (0, 1]")
        if self.model_order < 0 or self.model_order >= self.window:
            raise ValueError("model_order must be non-negative and below window")
        if self.transform not in (None, "identity", "log1p"):
            raise ValueError(f"unknown transform {self.transform!r}")

    def resolve_transform(self, kind: str) -> str:
        if self.transform is not None:
            return self.transform
        return "log1p" if kind in CUMULATIVE_KINDS else "identity"


@dataclass(frozen=True)
class FittedModel:
    #: polynomial coefficients, ascending powers of t; t = 0 at window end
    coefficients: tuple[float, ...]
    transform: str
    fit_window_end: dt.date | None
    residual_norm: float

    def predict_transformed(self, t):
        return np.polyval(self.coefficients[::-1], np.asarray(t, dtype=float))

    def predict(self, t):
        z = self.predict_transformed(t)
        if self.transform == "log1p":
            return np.expm1(z)
        return z


@dataclass(frozen=True)
class Forecast:
    region: RegionId
    kind: str
    points: tuple[tuple[dt.date, float], ...]
    model: FittedModel

    def dates(self):
        return [d for d, _ in self.points]

    def values(self):
        return [v for _, v in self.points]


def _apply_transform(values, transform):
    y = np.asarray(values, dtype=float)
    if transform == "log1p":
        return np.log1p(y)
    return y


def fit(values, config: ForecastConfig, transform: str = "identity") -> FittedModel:
    """Fit the discounted-WLS polynomial on the trailing `window` values.

    Time is indexed so that t = 0 is the last observation; ages run
    0..window-1 into the past with weight discount**age.
    """
    values = np.asarray(values, dtype=float)
    if len(values) < config.window:
        raise InsufficientDataError(
            f"need at least {config.window} values, got {len(values)}",
            detail={"required": config.window, "got": len(values)},
        )
    if not np.all(np.isfinite(values)):
        raise FitError("window contains non-finite values")

    y = _apply_transform(values[-config.window:], transform)
    w = len(y)
    t = np.arange(-(w - 1), 1, dtype=float)
    ages = -t
    weights = config.discount ** ages

    design = np.vander(t, config.model_order + 1, increasing=True)
    sw = np.sqrt(weights)
    a = design * sw[:, None]
    b = y * sw

    ata = a.T @ a
    atb = a.T @ b
    cond = np.linalg.cond(ata)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        ata = ata + _RIDGE * np.trace(ata) / len(ata) * np.eye(len(ata))
    try:
        coeffs = np.linalg.solve(ata, atb)
    except np.linalg.LinAlgError as exc:
        raise FitError(
            "normal equations are singular", detail={"condition": float(cond)}
        ) from exc

    residual = np.sqrt(float(np.sum(weights * (y - design @ coeffs) ** 2)))
    return FittedModel(
        coefficients=tuple(float(c) for c in coeffs),
        transform=transform,
        fit_window_end=None,
        residual_norm=residual,
    )


def forecast(series, kind: str, config: ForecastConfig = ForecastConfig()) -> Forecast:
    """Fit on the trailing window and extrapolate `horizon` days ahead.

    Cumulative kinds are clamped non-decreasing and >= the last observation;
    active forecasts are clamped >= 0.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if isinstance(series, ActiveSeries):
        if kind != "active":
            raise ValueError("an ActiveSeries only provides kind 'active'")
        values = series.values()
    elif isinstance(series, CaseSeries):
        if kind == "active":
            values = [r.confirmed - r.recovered - r.deceased for r in series.records]
        else:
            values = series.values(kind)
    else:
        raise TypeError(f"unsupported series type {type(series).__name__}")

    if len(values) < config.window:
        raise InsufficientDataError(
            f"series {series.region.code} has {len(values)} days; "
            f"window of {config.window} required",
            detail={"required": config.window, "got": len(values)},
        )

    transform = config.resolve_transform(kind)
    model = fit(values, config, transform=transform)
    last_date = series.last_date()
    model = replace(model, fit_window_end=last_date)

    t_future = np.arange(1, config.horizon + 1, dtype=float)
    predicted = model.predict(t_future)

    if kind in CUMULATIVE_KINDS:
        floor = float(values[-1])
        predicted = np.maximum.accumulate(np.maximum(predicted, floor))
    else:
        predicted = np.maximum(predicted, 0.0)

    points = tuple(
        (last_date + dt.timedelta(days=i + 1), float(v))
        for i, v in enumerate(predicted)
    )
    return Forecast(region=series.region, kind=kind, points=points, model=model)


def peak_active(fc: Forecast, days: int) -> float:
    """Maximum predicted active cases over the first `days` forecast days."""
    if fc.kind != "active":
        raise ValueError(f"peak_active requires an active forecast, got {fc.kind!r}")
    if days < 1 or days > len(fc.points):
        raise RangeError(
            f"days={days} outside forecast horizon of {len(fc.points)}",
            detail={"days": days, "horizon": len(fc.points)},
        )
    return max(v for _, v in fc.points[:days])


@dataclass(frozen=True)
class BacktestReport:
    region: RegionId
    kind: str
    #: (date, actual, predicted, absolute error, percentage error)
    rows: tuple[tuple[dt.date, float, float, float, float], ...]

    def mape(self) -> float:
        return float(np.mean([r[4] for r in self.rows]))

    def mae(self) -> float:
        return float(np.mean([r[3] for r in self.rows]))


def backtest(series, kind: str, config: ForecastConfig, holdout: int) -> BacktestReport:
    """Hold out the last `holdout` days, forecast them, report per-day errors."""
    if holdout < 1 or holdout > config.horizon:
        raise RangeError(f"holdout must be in 1..{config.horizon}, got {holdout}")

    if isinstance(series, ActiveSeries):
        n = len(series)
        if n < config.window + holdout:
            raise InsufficientDataError(
                f"need {config.window + holdout} days, got {n}")
        truncated = ActiveSeries(region=series.region, points=series.points[:-holdout])
        actuals = [float(v) for _, v in series.points[-holdout:]]
    else:
        n = len(series)
        if n < config.window + holdout:
            raise InsufficientDataError(
                f"need {config.window + holdout} days, got {n}")
        truncated = CaseSeries(region=series.region, records=series.records[:-holdout])
        if kind == "active":
            actuals = [
                float(r.confirmed - r.recovered - r.deceased)
                for r in series.records[-holdout:]
            ]
        else:
            actuals = [float(r.get(kind)) for r in series.records[-holdout:]]

    fc = forecast(truncated, kind, config)
    rows = []
    for (date, predicted), actual in zip(fc.points[:holdout], actuals):
        abs_err = abs(predicted - actual)
        pct_err = abs_err / abs(actual) * 100.0 if actual != 0 else float("inf") if abs_err else 0.0
        rows.append((date, actual, predicted, abs_err, pct_err))
    return BacktestReport(region=series.region, kind=kind, rows=tuple(rows))
