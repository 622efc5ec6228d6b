"""Dataset retrieval: local file or remote URL, parsed and repaired on ingest."""

from __future__ import annotations

import datetime as dt
import urllib.error
import urllib.request
from dataclasses import dataclass

from .casedata import (
    CaseSeries,
    CsvSchema,
    DEFAULT_SCHEMA,
    RepairPolicy,
    parse_csv,
    validate_and_repair,
)
from .errors import SourceError


@dataclass(frozen=True)
class Dataset:
    series: dict[str, CaseSeries]
    retrieved_at: dt.datetime

    def regions(self) -> list[str]:
        return sorted(self.series)

    def get(self, code: str) -> CaseSeries | None:
        return self.series.get(code)


def build_dataset(raw, schema: CsvSchema = DEFAULT_SCHEMA,
                  policy: RepairPolicy = RepairPolicy()) -> Dataset:
    parsed = parse_csv(raw, schema)
    repaired = {code: validate_and_repair(s, policy) for code, s in parsed.items()}
    return Dataset(series=repaired, retrieved_at=dt.datetime.now(dt.timezone.utc))


def fetch_dataset(source: str, schema: CsvSchema = DEFAULT_SCHEMA,
                  policy: RepairPolicy = RepairPolicy()) -> Dataset:
    """Read CSV bytes from a path or http(s) URL, then parse and repair.

    Retrieval failures raise a retryable SourceError; parse failures raise
    the (non-retryable) ingestion errors unchanged.
    """
    if source.startswith(("http://", "https://")):
        try:
            with urllib.request.urlopen(source, timeout=30) as resp:
                raw = resp.read()
        except (urllib.error.URLError, OSError, TimeoutError) as exc:
            raise SourceError(f"cannot fetch {source}: {exc}", retryable=True) from exc
    else:
        try:
            with open(source, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise SourceError(f"cannot read {source}: {exc}", retryable=True) from exc
    return build_dataset(raw, schema, policy)
