import datetime as dt

import pytest

from epidss.casedata import (
    CsvSchema,
    RepairPolicy,
    daily_new,
    derive_active,
    parse_csv,
    parse_date,
    serialize_csv,
    validate_and_repair,
)
from epidss.errors import (
    EmptyInputError,
    RowParseError,
    SchemaError,
    SeriesValidationError,
)

from conftest import make_series


def test_parse_three_rows_single_region():
    csv = (
        "Date,State,Confirmed,Recovered,Deceased\n"
        "2021-03-01,KA,10,1,0\n"
        "2021-03-02,KA,12,2,0\n"
        "2021-03-03,KA,15,3,1\n"
    )
    dataset = parse_csv(csv)
    assert list(dataset) == ["KA"]
    series = dataset["KA"]
    assert len(series) == 3
    assert series.values("confirmed") == [10, 12, 15]
    assert series.records[0].date == dt.date(2021, 3, 1)


def test_parse_interleaved_regions_sorted_by_date():
    csv = (
        "Date,State,Confirmed,Recovered,Deceased\n"
        "2021-03-02,KA,12,0,0\n"
        "2021-03-01,MH,5,0,0\n"
        "2021-03-01,KA,10,0,0\n"
        "2021-03-02,MH,8,0,0\n"
    )
    dataset = parse_csv(csv)
    assert sorted(dataset) == ["KA", "MH"]
    assert dataset["KA"].values("confirmed") == [10, 12]
    assert dataset["MH"].values("confirmed") == [5, 8]


def test_parse_bad_number_cites_line():
    rows = ["Date,State,Confirmed,Recovered,Deceased"]
    for i in range(1, 9):
        rows.append(f"2021-03-{i:02d},KA,{10 + i},0,0")
    rows[6] = "2021-03-06,KA,oops,0,0"  # file line 7
    with pytest.raises(RowParseError) as exc_info:
        parse_csv("\n".join(rows) + "\n")
    assert exc_info.value.detail["line"] == 7
    assert "line 7" in exc_info.value.message


def test_parse_missing_column_named():
    csv = "Date,State,Confirmed,Recovered\n2021-03-01,KA,10,0\n"
    with pytest.raises(SchemaError) as exc_info:
        parse_csv(csv)
    assert exc_info.value.detail["missing_columns"] == ["Deceased"]


def test_parse_empty_inputs():
    with pytest.raises(EmptyInputError):
        parse_csv("")
    with pytest.raises(EmptyInputError):
        parse_csv("Date,State,Confirmed,Recovered,Deceased\n")


def test_parse_custom_schema():
    csv = "dt,where,c,r,d\n2021-03-01,KA,10,1,0\n"
    schema = CsvSchema(date="dt", region="where", confirmed="c",
                       recovered="r", deceased="d")
    dataset = parse_csv(csv, schema)
    assert dataset["KA"].records[0].confirmed == 10


def test_parse_date_formats():
    assert parse_date("2021-05-10") == dt.date(2021, 5, 10)
    assert parse_date("10-May-21") == dt.date(2021, 5, 10)
    with pytest.raises(ValueError):
        parse_date("05/10/2021")


def test_repair_fills_gap_with_carry_forward():
    series = make_series("KA", [100, 120])
    # introduce a gap: second record two days later
    from dataclasses import replace
    records = (series.records[0],
               replace(series.records[1],
                       date=series.records[0].date + dt.timedelta(days=2)))
    gappy = replace(series, records=records)
    repaired = validate_and_repair(gappy)
    assert len(repaired) == 3
    inserted = repaired.records[1]
    assert inserted.confirmed == 100
    assert inserted.date == series.records[0].date + dt.timedelta(days=1)


def test_repair_clamps_dip():
    series = make_series("KA", [100, 98])
    repaired = validate_and_repair(series, RepairPolicy(dips="clamp"))
    assert repaired.values("confirmed") == [100, 100]


def test_repair_rejects_dip():
    series = make_series("KA", [100, 98])
    with pytest.raises(SeriesValidationError) as exc_info:
        validate_and_repair(series, RepairPolicy(dips="reject"))
    assert exc_info.value.detail["field"] == "confirmed"
    assert exc_info.value.detail["date"] == "2021-03-02"


def test_repair_enforces_consistency():
    series = make_series("KA", [100, 110], recovered=[50, 120], deceased=[10, 10])
    repaired = validate_and_repair(series)
    for r in repaired.records:
        assert r.recovered + r.deceased <= r.confirmed
    with pytest.raises(SeriesValidationError):
        validate_and_repair(series, RepairPolicy(dips="reject"))


def test_repair_rejects_duplicate_date():
    series = make_series("KA", [100, 110])
    from dataclasses import replace
    dup = replace(series, records=(series.records[0], series.records[0]))
    with pytest.raises(SeriesValidationError):
        validate_and_repair(dup)


def test_derive_active_simple():
    series = make_series("KA", [100], recovered=[60], deceased=[10])
    active = derive_active(series)
    assert active.values() == [30]


def test_derive_active_all_zero_boundary():
    series = make_series("KA", [100, 120], recovered=[90, 105], deceased=[10, 15])
    active = derive_active(series)
    assert active.values() == [0, 0]


def test_derive_active_21_days_against_independent_pass():
    import random

    rng = random.Random(7)
    confirmed, recovered, deceased = [], [], []
    c = r = d = 0
    for _ in range(21):
        c += rng.randint(10, 50)
        r += rng.randint(0, 20)
        d += rng.randint(0, 2)
        r = min(r, c - d)
        confirmed.append(c)
        recovered.append(r)
        deceased.append(d)
    series = make_series("KA", confirmed, recovered, deceased)
    active = derive_active(series)
    # second, independent spreadsheet-style pass over the raw rows
    expected = [confirmed[i] - recovered[i] - deceased[i] for i in range(21)]
    assert active.values() == expected
    assert active.dates() == series.dates()
    assert all(v >= 0 for v in active.values())


def test_round_trip_identity_on_normalized_form(sample_csv_text):
    dataset = {code: validate_and_repair(s)
               for code, s in parse_csv(sample_csv_text).items()}
    text = serialize_csv(dataset)
    dataset2 = {code: validate_and_repair(s)
                for code, s in parse_csv(text).items()}
    assert dataset == dataset2
    assert serialize_csv(dataset2) == text


def test_sample_fixture_invariants(sample_csv_text):
    dataset = {code: validate_and_repair(s)
               for code, s in parse_csv(sample_csv_text).items()}
    for series in dataset.values():
        dates = series.dates()
        for a, b in zip(dates, dates[1:]):
            assert (b - a).days == 1
        for kind in ("confirmed", "recovered", "deceased"):
            values = series.values(kind)
            assert all(x <= y for x, y in zip(values, values[1:]))
        for r in series.records:
            assert r.recovered + r.deceased <= r.confirmed


def test_daily_new_view():
    series = make_series("KA", [10, 15, 15, 22])
    increments = [v for _, v in daily_new(series)]
    assert increments == [10, 5, 0, 7]
