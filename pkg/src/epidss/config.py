"""Application configuration: YAML file with strict keys and env overrides.

Every field has a usable default so the service can start bare; unknown keys
are rejected to catch typos. EPIDSS_LISTEN and EPIDSS_DATA override the
listen address and data source from the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import yaml

from .allocator import ResourceItem
from .casedata import CsvSchema
from .forecaster import ForecastConfig
from .errors import ConfigError

DEFAULT_ITEMS = (
    ResourceItem(name="oxygen", unit="MT", kappa=0.005),
    ResourceItem(name="ventilator", unit="count", kappa=0.002),
    ResourceItem(name="remdesivir", unit="vial", kappa=0.05),
)


@dataclass(frozen=True)
class AppConfig:
    data_source: str | None = None
    schema: CsvSchema = field(default_factory=CsvSchema)
    forecast: ForecastConfig = field(default_factory=ForecastConfig)
    items: tuple[ResourceItem, ...] = DEFAULT_ITEMS
    blend: float = 0.5
    lockdown_mode: str = "daily_capacity"
    host: str = "127.0.0.1"
    port: int = 8000
    snapshot_path: str = "snapshots.jsonl"

    def item_by_name(self, name: str) -> ResourceItem | None:
        for item in self.items:
            if item.name == name:
                return item
        return None

    def to_dict(self) -> dict:
        return {
            "data_source": self.data_source,
            "schema": self.schema.columns(),
            "forecast": {
                "window": self.forecast.window,
                "horizon": self.forecast.horizon,
                "discount": self.forecast.discount,
                "model_order": self.forecast.model_order,
                "transform": self.forecast.transform,
            },
            "items": [
                {"name": i.name, "unit": i.unit, "kappa": i.kappa}
                for i in self.items
            ],
            "blend": self.blend,
            "lockdown_mode": self.lockdown_mode,
            "host": self.host,
            "port": self.port,
            "snapshot_path": self.snapshot_path,
        }


def _take(mapping: dict, allowed: set[str], context: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) in {context}: {', '.join(sorted(unknown))}")


def from_dict(data: dict) -> AppConfig:
    _take(data, {"data_source", "schema", "forecast", "items", "blend",
                 "lockdown_mode", "host", "port", "snapshot_path"}, "config")

    kwargs = {}
    if "schema" in data:
        schema = data["schema"] or {}
        _take(schema, {"date", "region", "confirmed", "recovered", "deceased"},
              "config.schema")
        kwargs["schema"] = CsvSchema(**schema)
    if "forecast" in data:
        fc = data["forecast"] or {}
        _take(fc, {"window", "horizon", "discount", "model_order", "transform"},
              "config.forecast")
        try:
            kwargs["forecast"] = ForecastConfig(**fc)
        except ValueError as exc:
            raise ConfigError(f"config.forecast: {exc}") from exc
    if "items" in data:
        items = []
        for i, entry in enumerate(data["items"] or []):
            _take(entry, {"name", "unit", "kappa"}, f"config.items[{i}]")
            try:
                items.append(ResourceItem(**entry))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"config.items[{i}]: {exc}") from exc
        kwargs["items"] = tuple(items)
    for key in ("data_source", "blend", "lockdown_mode", "host", "port",
                "snapshot_path"):
        if key in data:
            kwargs[key] = data[key]

    config = AppConfig(**kwargs)
    if not (0 <= config.blend <= 1):
        raise ConfigError("config.blend must be in [0, 1]")
    if config.lockdown_mode not in ("daily_capacity", "stock_depletion"):
        raise ConfigError(f"unknown lockdown_mode {config.lockdown_mode!r}")
    return config


def apply_env(config: AppConfig, env=os.environ) -> AppConfig:
    from dataclasses import replace

    if "EPIDSS_DATA" in env:
        config = replace(config, data_source=env["EPIDSS_DATA"])
    if "EPIDSS_LISTEN" in env:
        listen = env["EPIDSS_LISTEN"]
        host, _, port = listen.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"EPIDSS_LISTEN must be host:port, got {listen!r}")
        config = replace(config, host=host, port=int(port))
    return config


def load(path: str | None = None, env=os.environ) -> AppConfig:
    """Load config from a YAML file (or defaults), then apply env overrides."""
    if path is None:
        config = AppConfig()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                data = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
        config = from_dict(data)
    return apply_env(config, env)
