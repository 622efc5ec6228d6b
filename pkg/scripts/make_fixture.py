"""Generate the bundled sample case CSV (covid19india daily-state layout).

Four states, 120 days of noisy logistic-wave cumulative counts, with one
deliberate date gap and one cumulative dip so ingestion repair is exercised
on the shipped data. Deterministic via a fixed seed.
"""

import datetime as dt
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "src" / "epidss" / "data" / "sample_states.csv"

STATES = {
    "KA": ("Karnataka", 900_000, 0.085, 55),
    "MH": ("Maharashtra", 1_600_000, 0.075, 50),
    "TN": ("Tamil Nadu", 700_000, 0.080, 60),
    "DL": ("Delhi", 450_000, 0.095, 48),
}

START = dt.date(2021, 2, 1)
DAYS = 120


def main():
    rng = np.random.default_rng(20210210)
    rows = []
    t = np.arange(DAYS)
    for code, (_full_name, scale, rate, midpoint) in STATES.items():
        name = code
        confirmed = scale / (1.0 + np.exp(-rate * (t - midpoint)))
        confirmed = confirmed * (1.0 + rng.normal(0, 0.004, DAYS))
        confirmed = np.maximum.accumulate(np.round(confirmed)).astype(int)
        lag = 14
        recovered = np.concatenate([np.zeros(lag), confirmed[:-lag] * 0.96]).astype(int)
        recovered = np.maximum.accumulate(recovered)
        deceased = (confirmed * 0.013).astype(int)
        for i in range(DAYS):
            date = START + dt.timedelta(days=int(i))
            rows.append((date, name, int(confirmed[i]), int(recovered[i]),
                         int(deceased[i])))

    # one gap: drop Karnataka day 40; one dip: Delhi confirmed corrected down on day 70
    rows = [r for r in rows
            if not (r[1] == "KA" and r[0] == START + dt.timedelta(days=40))]
    fixed = []
    for r in rows:
        if r[1] == "DL" and r[0] == START + dt.timedelta(days=70):
            r = (r[0], r[1], r[2] - 8000, r[3], r[4])
        fixed.append(r)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        fh.write("Date,State,Confirmed,Recovered,Deceased\n")
        for date, name, c, rcv, d in fixed:
            fh.write(f"{date.strftime('%d-%b-%y')},{name},{c},{rcv},{d}\n")
    print(f"wrote {OUT} ({len(fixed)} rows)")


if __name__ == "__main__":
    main()
