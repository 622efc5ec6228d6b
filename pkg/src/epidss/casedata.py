"""Case time-series data model: CSV ingestion, validation/repair, active-case derivation.

The canonical record is per-region daily *cumulative* confirmed / recovered /
deceased counts. Active cases are derived pointwise as
confirmed - recovered - deceased.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
from dataclasses import dataclass, replace

from .errors import (
    EmptyInputError,
    RowParseError,
    SchemaError,
    SeriesValidationError,
)

log = logging.getLogger(__name__)

CUMULATIVE_KINDS = ("confirmed", "recovered", "deceased")


@dataclass(frozen=True)
class RegionId:
    code: str
    name: str

    def __post_init__(self):
        if not self.code:
            raise ValueError("region code must be non-empty")


@dataclass(frozen=True)
class CaseRecord:
    date: dt.date
    confirmed: int
    recovered: int
    deceased: int

    def get(self, kind: str) -> int:
        return getattr(self, kind)


@dataclass(frozen=True)
class CaseSeries:
    region: RegionId
    records: tuple[CaseRecord, ...]

    def __len__(self):
        return len(self.records)

    def dates(self) -> list[dt.date]:
        return [r.date for r in self.records]

    def values(self, kind: str) -> list[int]:
        return [r.get(kind) for r in self.records]

    def last_date(self) -> dt.date:
        return self.records[-1].date


@dataclass(frozen=True)
class ActiveSeries:
    region: RegionId
    points: tuple[tuple[dt.date, int], ...]

    def __len__(self):
        return len(self.points)

    def dates(self) -> list[dt.date]:
        return [d for d, _ in self.points]

    def values(self) -> list[int]:
        return [v for _, v in self.points]

    def last_date(self) -> dt.date:
        return self.points[-1][0]


@dataclass(frozen=True)
class CsvSchema:
    """Maps the logical fields onto column names of a concrete CSV layout."""

    date: str = "Date"
    region: str = "State"
    confirmed: str = "Confirmed"
    recovered: str = "Recovered"
    deceased: str = "Deceased"

    def columns(self) -> dict[str, str]:
        return {
            "date": self.date,
            "region": self.region,
            "confirmed": self.confirmed,
            "recovered": self.recovered,
            "deceased": self.deceased,
        }


#: Default layout matching the covid19india daily state file.
DEFAULT_SCHEMA = CsvSchema()


@dataclass(frozen=True)
class RepairPolicy:
    """How validate_and_repair treats cumulative dips: "clamp" or "reject"."""

    dips: str = "clamp"

    def __post_init__(self):
        if self.dips not in ("clamp", "reject"):
            raise ValueError(f"unknown dip policy {self.dips!r}")


_DATE_FORMATS = ("%Y-%m-%d", "%d-%b-%y", "%d-%b-%Y")


def parse_date(text: str) -> dt.date:
    """Parse ISO-8601 or the covid19india DD-Mon-YY style."""
    text = text.strip()
    for fmt in _DATE_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise ValueError(f"unparseable date {text!r}")


def _region_id(cell: str) -> RegionId:
    name = cell.strip()
    code = name.upper().replace(" ", "_")
    return RegionId(code=code, name=name)


def parse_csv(raw, schema: CsvSchema = DEFAULT_SCHEMA) -> dict[str, CaseSeries]:
    """Parse a cumulative-case CSV into one CaseSeries per region.

    `raw` may be bytes, text, or a text file object. Rows are grouped by
    region and sorted by date; no validation beyond field parsing happens
    here (see validate_and_repair).
    """
    if isinstance(raw, bytes):
        stream = io.StringIO(raw.decode("utf-8"))
    elif isinstance(raw, str):
        stream = io.StringIO(raw)
    else:
        stream = raw

    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise EmptyInputError("CSV input is empty")
    missing = [c for c in schema.columns().values() if c not in reader.fieldnames]
    if missing:
        raise SchemaError(
            f"CSV is missing mapped column(s): {', '.join(missing)}",
            detail={"missing_columns": missing},
        )

    grouped: dict[str, tuple[RegionId, list[CaseRecord]]] = {}
    n_rows = 0
    for line_no, row in enumerate(reader, start=2):
        n_rows += 1
        try:
            region = _region_id(row[schema.region])
            record = CaseRecord(
                date=parse_date(row[schema.date]),
                confirmed=_parse_count(row[schema.confirmed]),
                recovered=_parse_count(row[schema.recovered]),
                deceased=_parse_count(row[schema.deceased]),
            )
        except (ValueError, KeyError) as exc:
            raise RowParseError(
                f"line {line_no}: {exc}", detail={"line": line_no}
            ) from exc
        grouped.setdefault(region.code, (region, []))[1].append(record)

    if n_rows == 0:
        raise EmptyInputError("CSV input has a header but no data rows")

    dataset = {}
    for code, (region, records) in grouped.items():
        records.sort(key=lambda r: r.date)
        dataset[code] = CaseSeries(region=region, records=tuple(records))
    return dataset


def _parse_count(cell: str) -> int:
    text = cell.strip().replace(",", "")
    if text == "":
        raise ValueError("empty count cell")
    value = int(text)
    if value < 0:
        raise ValueError(f"negative count {value}")
    return value


def serialize_csv(dataset: dict[str, CaseSeries], schema: CsvSchema = DEFAULT_SCHEMA) -> str:
    """Write a dataset back to the normalized CSV form (ISO dates, sorted rows)."""
    out = io.StringIO()
    cols = schema.columns()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([cols["date"], cols["region"], cols["confirmed"],
                     cols["recovered"], cols["deceased"]])
    for code in sorted(dataset):
        series = dataset[code]
        for r in series.records:
            writer.writerow([r.date.isoformat(), series.region.name,
                             r.confirmed, r.recovered, r.deceased])
    return out.getvalue()


def validate_and_repair(series: CaseSeries, policy: RepairPolicy = RepairPolicy()) -> CaseSeries:
    """Fill date gaps by carry-forward and resolve cumulative dips per policy.

    The output satisfies every CaseSeries invariant: consecutive dates,
    non-decreasing cumulatives, confirmed >= recovered + deceased.
    """
    if not series.records:
        raise SeriesValidationError(f"series {series.region.code} is empty")

    repaired: list[CaseRecord] = []
    prev: CaseRecord | None = None
    for record in series.records:
        if prev is not None:
            if record.date <= prev.date:
                raise SeriesValidationError(
                    f"{series.region.code}: duplicate or out-of-order date {record.date}"
                )
            # carry the previous record forward across any gap
            day = prev.date + dt.timedelta(days=1)
            while day < record.date:
                repaired.append(replace(prev, date=day))
                day += dt.timedelta(days=1)
        record = _resolve_dips(series.region, record, prev, policy)
        record = _resolve_consistency(series.region, record, policy)
        repaired.append(record)
        prev = record
    return CaseSeries(region=series.region, records=tuple(repaired))


def _resolve_dips(region: RegionId, record: CaseRecord, prev: CaseRecord | None,
                  policy: RepairPolicy) -> CaseRecord:
    if prev is None:
        return record
    fixes = {}
    for kind in CUMULATIVE_KINDS:
        if record.get(kind) < prev.get(kind):
            if policy.dips == "reject":
                raise SeriesValidationError(
                    f"{region.code}: cumulative {kind} decreases on {record.date}",
                    detail={"date": record.date.isoformat(), "field": kind},
                )
            fixes[kind] = prev.get(kind)
    if fixes:
        log.warning("%s: clamped dip(s) on %s: %s", region.code, record.date,
                    ", ".join(sorted(fixes)))
        record = replace(record, **fixes)
    return record


def _resolve_consistency(region: RegionId, record: CaseRecord,
                         policy: RepairPolicy) -> CaseRecord:
    if record.recovered + record.deceased <= record.confirmed:
        return record
    if policy.dips == "reject":
        raise SeriesValidationError(
            f"{region.code}: recovered + deceased exceeds confirmed on {record.date}",
            detail={"date": record.date.isoformat(), "field": "confirmed"},
        )
    deceased = min(record.deceased, record.confirmed)
    recovered = min(record.recovered, record.confirmed - deceased)
    log.warning("%s: clamped recovered/deceased on %s to fit confirmed",
                region.code, record.date)
    return replace(record, recovered=recovered, deceased=deceased)


def derive_active(series: CaseSeries) -> ActiveSeries:
    """Active cases = confirmed - recovered - deceased, pointwise."""
    points = tuple(
        (r.date, r.confirmed - r.recovered - r.deceased) for r in series.records
    )
    return ActiveSeries(region=series.region, points=points)


def daily_new(series: CaseSeries, kind: str = "confirmed") -> list[tuple[dt.date, int]]:
    """Day-over-day increments of a cumulative field (first day relative to 0)."""
    out = []
    prev = 0
    for r in series.records:
        value = r.get(kind)
        out.append((r.date, value - prev))
        prev = value
    return out
