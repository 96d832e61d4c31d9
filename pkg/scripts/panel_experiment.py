#!/usr/bin/env python3
"""Panel experiment: index rank correlations and compensation summaries.

Computes every index for each household file in a directory, prints the
pairwise Spearman matrix, and (optionally) the distribution of weak and
strong compensation levels for a chosen loss plus the pairwise sharpness
tallies between losses. The qualitative pattern of interest: the two
budget-waste indices track each other much more closely than either
tracks the removal count.

    python scripts/synth_panel.py /tmp/panel --households 40 --T 12
    python scripts/panel_experiment.py /tmp/panel --compensate afriat,varian
"""

from __future__ import annotations

import argparse
from collections import Counter
from fractions import Fraction
from pathlib import Path

from revpref import (
    build_index_report,
    compensation_levels,
    panel_summary,
    parse_csv,
    sharpness_compare,
)
from revpref.report import PANEL_LOSSES


def quantiles(values: list[Fraction]) -> str:
    if not values:
        return "n/a"
    ranked = sorted(values)
    picks = [ranked[min(len(ranked) - 1, int(q * len(ranked)))] for q in (0.25, 0.5, 0.75)]
    return ", ".join(f"{float(v):.3f}" for v in picks)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory")
    parser.add_argument(
        "--compensate",
        default="",
        help="comma list of losses to run compensation for (afriat,varian,hm)",
    )
    parser.add_argument("--good", type=int, default=0)
    args = parser.parse_args()

    files = sorted(Path(args.directory).glob("*.csv"))
    datasets = {path.stem: parse_csv(path.read_bytes()) for path in files}
    reports = [build_index_report(data, name) for name, data in datasets.items()]
    summary = panel_summary(reports)

    inconsistent = sum(1 for r in reports if not r.garp)
    print(f"households: {len(reports)}  violating consistency: {inconsistent}")
    print("\nSpearman rank correlations:")
    header = "          " + "  ".join(f"{name:>12s}" for name in PANEL_LOSSES)
    print(header)
    for name, row in zip(PANEL_LOSSES, summary.spearman):
        cells = "  ".join(f"{float(v):12.3f}" for v in row)
        print(f"{name:>10s}{cells}")

    losses = [token for token in args.compensate.split(",") if token]
    results = {}
    for loss in losses:
        outcomes = {
            name: compensation_levels(data, loss, args.good)
            for name, data in datasets.items()
        }
        results[loss] = outcomes
        weak = [r.k_weak for r in outcomes.values() if r.k_weak is not None]
        strong = [r.k_strong for r in outcomes.values() if r.k_strong is not None]
        print(f"\n{loss}: weak-level quartiles  [{quantiles(weak)}]")
        print(f"{loss}: strong-level quartiles [{quantiles(strong)}]")
        over = sum(1 for r in outcomes.values() if r.k_strong is None)
        print(f"{loss}: strong level above cap for {over} households")

    for i, first in enumerate(losses):
        for second in losses[i + 1 :]:
            tally = Counter(
                sharpness_compare(results[first][name], results[second][name]).value
                for name in datasets
            )
            print(f"\nsharpness {first} vs {second}: {dict(tally)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
