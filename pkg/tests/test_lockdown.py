import datetime as dt

import numpy as np
import pytest

from epidss.allocator import ResourceItem
from epidss.casedata import RegionId
from epidss.errors import InsufficientHorizonError, InvalidRequestError
from epidss.forecaster import Forecast, FittedModel
from epidss.lockdown import (
    AvailabilityEntry,
    LockdownAssessment,
    assess,
    item_demand_curve,
)

from oracles import scan_breach_days

OXYGEN = ResourceItem(name="oxygen", unit="MT", kappa=0.005)


def fake_forecast(values, kind="active", start=dt.date(2021, 6, 1)):
    points = tuple(
        (start + dt.timedelta(days=i), float(v)) for i, v in enumerate(values)
    )
    model = FittedModel(coefficients=(0.0,), transform="identity",
                       fit_window_end=start - dt.timedelta(days=1),
                       residual_norm=0.0)
    return Forecast(region=RegionId(code="KA", name="KA"), kind=kind,
                    points=points, model=model)


class TestDemandCurve:
    def test_zero_kappa(self):
        fc = fake_forecast([500] * 14)
        item = ResourceItem(name="beds", unit="count", kappa=0.0)
        assert item_demand_curve(fc, item) == [0.0] * 14

    def test_constant_active(self):
        fc = fake_forecast([1000] * 14)
        item = ResourceItem(name="oxygen", unit="MT", kappa=0.01)
        assert item_demand_curve(fc, item) == pytest.approx([10.0] * 14)

    def test_randomized_elementwise(self):
        rng = np.random.default_rng(17)
        values = rng.uniform(0, 2000, size=14)
        fc = fake_forecast(values)
        item = ResourceItem(name="x", unit="u", kappa=0.7)
        curve = item_demand_curve(fc, item)
        # independent per-element recomputation
        for got, active in zip(curve, values):
            assert got == pytest.approx(0.7 * float(active), rel=1e-12)

    def test_short_horizon_rejected(self):
        fc = fake_forecast([100] * 7)
        with pytest.raises(InsufficientHorizonError) as exc_info:
            item_demand_curve(fc, OXYGEN)
        assert exc_info.value.detail == {"required": 14, "got": 7}

    def test_requires_active_kind(self):
        fc = fake_forecast([100] * 14, kind="confirmed")
        with pytest.raises(InvalidRequestError):
            item_demand_curve(fc, OXYGEN)


class TestAssess:
    def test_slack_availability_no_lockdown(self):
        fc = fake_forecast([1000] * 14)
        entries = [AvailabilityEntry(item=OXYGEN, available_per_day=1e9)]
        result = assess(entries, fc)
        assert result.recommendation == "no-lockdown"
        assert all(not it.breaches for it in result.items)

    def test_zero_availability_breaches_day_one(self):
        fc = fake_forecast([1000] * 14)
        entries = [AvailabilityEntry(item=OXYGEN, available_per_day=0.0)]
        result = assess(entries, fc)
        assert result.recommendation == "lockdown"
        assert result.items[0].breaches[0].day == 1

    def test_rising_active_crossing_at_oracle_day(self):
        values = [100 * (i + 1) for i in range(14)]  # 100, 200, ... 1400
        fc = fake_forecast(values)
        item = ResourceItem(name="oxygen", unit="MT", kappa=0.01)
        availability = 6.5  # demand crosses between day 6 (6.0) and 7 (7.0)
        expected_days = scan_breach_days(values, 0.01, availability, 14)
        result = assess([AvailabilityEntry(item=item, available_per_day=availability)], fc)
        got_days = [b.day for b in result.items[0].breaches]
        assert got_days == expected_days
        assert got_days[0] == 7

    def test_randomized_breach_sets_match_scan_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            values = list(rng.uniform(0, 5000, size=14))
            kappa = float(rng.uniform(0, 1))
            availability = float(rng.uniform(0, 2500))
            item = ResourceItem(name="x", unit="u", kappa=kappa)
            fc = fake_forecast(values)
            result = assess(
                [AvailabilityEntry(item=item, available_per_day=availability)], fc)
            got = [b.day for b in result.items[0].breaches]
            assert got == scan_breach_days(values, kappa, availability, 14)

    def test_availability_monotonicity(self):
        rng = np.random.default_rng(29)
        values = list(rng.uniform(100, 3000, size=14))
        fc = fake_forecast(values)
        item = ResourceItem(name="x", unit="u", kappa=0.5)
        prev_breaches = None
        for availability in np.linspace(0, 1600, 9):
            result = assess(
                [AvailabilityEntry(item=item, available_per_day=float(availability))],
                fc)
            days = set(b.day for b in result.items[0].breaches)
            if prev_breaches is not None:
                assert days <= prev_breaches
            prev_breaches = days

    def test_kappa_monotonicity(self):
        rng = np.random.default_rng(41)
        values = list(rng.uniform(100, 3000, size=14))
        fc = fake_forecast(values)
        prev = set()
        for kappa in np.linspace(0, 1, 8)[::-1][::-1]:
            item = ResourceItem(name="x", unit="u", kappa=float(kappa))
            result = assess(
                [AvailabilityEntry(item=item, available_per_day=700.0)], fc)
            days = set(b.day for b in result.items[0].breaches)
            assert days >= prev
            prev = days

    def test_all_zero_kappa_never_lockdown(self):
        rng = np.random.default_rng(5)
        fc = fake_forecast(rng.uniform(0, 1e6, size=14))
        entries = [
            AvailabilityEntry(item=ResourceItem(name=f"i{k}", unit="u", kappa=0.0),
                              available_per_day=0.0)
            for k in range(3)
        ]
        result = assess(entries, fc)
        assert result.recommendation == "no-lockdown"

    def test_recommendation_equivalence_enforced(self):
        with pytest.raises(AssertionError):
            LockdownAssessment(recommendation="lockdown", items=(), horizon=14)

    def test_requires_entries(self):
        fc = fake_forecast([100] * 14)
        with pytest.raises(InvalidRequestError):
            assess([], fc)

    def test_stock_depletion_mode(self):
        # constant demand 10/day against a stock of 35: depleted during day 4
        fc = fake_forecast([1000] * 14)
        item = ResourceItem(name="oxygen", unit="MT", kappa=0.01)
        result = assess([AvailabilityEntry(item=item, available_per_day=35.0)],
                        fc, mode="stock_depletion")
        days = [b.day for b in result.items[0].breaches]
        assert days == list(range(4, 15))

    def test_reduced_horizon(self):
        values = [0.0] * 10 + [1e6] * 4
        fc = fake_forecast(values)
        full = assess([AvailabilityEntry(item=OXYGEN, available_per_day=100.0)], fc)
        short = assess([AvailabilityEntry(item=OXYGEN, available_per_day=100.0)],
                       fc, horizon=10)
        assert full.recommendation == "lockdown"
        assert short.recommendation == "no-lockdown"
