#!/usr/bin/env python3
"""Emit the per-uplift verdict partition for one household as CSV.

The output rows partition [0, cap] into points and open intervals with
the exact verdict of baseline-vs-counterfactual on each; suitable for
plotting the preferred / incomparable / dispreferred bands with any
external tool.

    python scripts/compensation_regions.py household.csv afriat regions.csv
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

from revpref import compensation_regions, parse_csv
from revpref.rational import as_fraction


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("dataset")
    parser.add_argument("loss", choices=("afriat", "varian", "hm"))
    parser.add_argument("out")
    parser.add_argument("--good", type=int, default=0)
    parser.add_argument("--reduction", default="1/4")
    parser.add_argument("--cap", default="1")
    args = parser.parse_args()

    data = parse_csv(Path(args.dataset).read_bytes())
    regions = compensation_regions(
        data,
        args.loss,
        args.good,
        reduction=as_fraction(args.reduction),
        cap=as_fraction(args.cap),
    )
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["k_lo", "k_hi", "open_interval", "verdict"])
        for region in regions:
            writer.writerow(
                [
                    str(region.lower),
                    str(region.upper),
                    int(region.open_interval),
                    region.result.verdict.value,
                ]
            )
    print(f"wrote {len(regions)} regions to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
