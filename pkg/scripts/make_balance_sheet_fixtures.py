#!/usr/bin/env python3
"""Regenerate the bundled balance-sheet fixture CSVs.

Each (country, year) block expands published aggregate statistics (mean and
sample standard deviation of total assets and tier-1 capital, and the bank
count) into synthetic per-bank rows that reproduce those aggregates exactly:
one high outlier at m + s*(n-1)/sqrt(n) and n-1 identical rows at
m - s/sqrt(n). All generated values are positive for these aggregates, so no
row gets excluded by the tier-1 filter.
"""

from __future__ import annotations

import csv
from pathlib import Path

# (country, year, currency) -> (mu_A, std_A, mu_E, std_E, n_banks)
AGGREGATES = {
    ("UK", 2007): (2.0287e11, 4.7503e11, 6.3032e9, 1.3785e10, 26),
    ("UK", 2012): (1.8307e11, 4.2912e11, 8.1836e9, 2.0298e10, 38),
    ("US", 2007): (1.8505e10, 1.3592e11, 1.0615e9, 6.6785e9, 666),
    ("US", 2012): (2.0247e10, 1.5234e11, 1.5829e9, 1.1102e10, 779),
}


def expand(mean: float, std: float, n: int) -> list[float]:
    high = mean + std * (n - 1) / n**0.5
    low = mean - std / n**0.5
    assert low > 0, (mean, std, n)
    return [high] + [low] * (n - 1)


def write_country(path: Path, country: str) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bank_id", "country", "year", "total_assets", "tier1_capital"])
        for (ctry, year), (mu_a, std_a, mu_e, std_e, n) in sorted(AGGREGATES.items()):
            if ctry != country:
                continue
            assets = expand(mu_a, std_a, n)
            capital = expand(mu_e, std_e, n)
            for i, (a, e) in enumerate(zip(assets, capital)):
                writer.writerow([f"{ctry}{year}-{i:04d}", ctry, year,
                                 format(a, ".10e"), format(e, ".10e")])


def main() -> None:
    data_dir = Path(__file__).resolve().parent.parent / "data"
    data_dir.mkdir(exist_ok=True)
    write_country(data_dir / "uk_balance_sheets.csv", "UK")
    write_country(data_dir / "us_balance_sheets.csv", "US")
    print(f"fixtures written to {data_dir}")


if __name__ == "__main__":
    main()
