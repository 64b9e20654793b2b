#!/usr/bin/env python3
"""Convert the UCI Adult `adult.data` file into data/adult.csv with a header row.

Usage: prepare_adult.py <adult.data> <out.csv>

Column names follow the usual UCI naming, except `fnlwgt` is written as
`final-weight` and `sex` as `gender`. Leading/trailing blanks are stripped.
"""
import csv
import sys

HEADER = [
    "age", "workclass", "final-weight", "education", "education-num",
    "marital-status", "occupation", "relationship", "race", "gender",
    "capital-gain", "capital-loss", "hours-per-week", "native-country",
    "income",
]


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    with open(sys.argv[1], encoding="utf-8") as src:
        rows = [[c.strip() for c in line.split(",")]
                for line in src if line.strip()]
    with open(sys.argv[2], "w", newline="", encoding="utf-8") as dst:
        writer = csv.writer(dst, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
