import datetime as dt
from pathlib import Path

import pytest

from epidss.casedata import CaseRecord, CaseSeries, RegionId

SAMPLE_CSV = Path(__file__).resolve().parent.parent / "src" / "epidss" / "data" / "sample_states.csv"


def make_series(code, confirmed, recovered=None, deceased=None,
                start=dt.date(2021, 3, 1)):
    """Build a CaseSeries from per-day cumulative lists."""
    n = len(confirmed)
    recovered = recovered or [0] * n
    deceased = deceased or [0] * n
    records = tuple(
        CaseRecord(date=start + dt.timedelta(days=i), confirmed=confirmed[i],
                   recovered=recovered[i], deceased=deceased[i])
        for i in range(n)
    )
    return CaseSeries(region=RegionId(code=code, name=code), records=records)


@pytest.fixture
def sample_csv_path():
    return SAMPLE_CSV


@pytest.fixture
def sample_csv_text():
    return SAMPLE_CSV.read_text()
