"""Per-dataset index reports, panel summaries, and JSON rendering.

Every rational number in JSON output is rendered twice: as an exact
fraction string and as a float for quick reading. The JSON layout is
versioned via ``schema_version``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .afriat import afriat_index
from .classes import check_homothetic
from .dataset import PurchaseDataset
from .errors import CapExceeded
from .indices import houtman_maks_index, swaps_index, varian_index
from .relations import check_garp, classify_cycles

SCHEMA_VERSION = "1"

INDEX_CHOICES = ("afriat", "varian", "hm", "swaps", "all")


@dataclass(frozen=True)
class Note:
    """Structured warning attached to a report (e.g. an enumeration cap)."""

    code: str
    message: str


@dataclass(frozen=True)
class IndexReport:
    dataset_id: str
    T: int
    L: int
    garp: bool
    cycle_class: str
    afriat: Fraction | None
    varian: Fraction | None
    houtman_maks: int | None
    swaps: Fraction | None
    homothetic: bool | None
    notes: tuple[Note, ...] = ()

    def __post_init__(self):
        if self.garp and self.afriat not in (None, 0):
            raise ValueError("consistent data must have a zero efficiency index")
        if self.houtman_maks is not None and (self.houtman_maks == 0) != self.garp:
            raise ValueError("zero removals must coincide with consistency")


def build_index_report(
    dataset: PurchaseDataset, dataset_id: str, which: str = "all"
) -> IndexReport:
    """Compute the requested indices; caps degrade to notes, not failures."""
    if which not in INDEX_CHOICES:
        raise ValueError(f"unknown index selection {which!r}")
    garp = check_garp(dataset).satisfied
    cycles = classify_cycles(dataset).value
    notes: list[Note] = []
    wanted = {which} if which != "all" else {"afriat", "varian", "hm", "swaps"}
    afriat = afriat_index(dataset) if "afriat" in wanted else None
    varian = varian_index(dataset) if "varian" in wanted else None
    hm = houtman_maks_index(dataset) if "hm" in wanted else None
    swaps: Fraction | None = None
    if "swaps" in wanted:
        try:
            swaps = swaps_index(dataset)
        except CapExceeded as exc:
            notes.append(Note("swaps_cap_exceeded", str(exc)))
    homothetic = check_homothetic(dataset) if which == "all" else None
    return IndexReport(
        dataset_id=dataset_id,
        T=dataset.T,
        L=dataset.L,
        garp=garp,
        cycle_class=cycles,
        afriat=afriat,
        varian=varian,
        houtman_maks=hm,
        swaps=swaps,
        homothetic=homothetic,
        notes=tuple(notes),
    )


def average_ranks(values: Sequence) -> list[Fraction]:
    """1-based ranks with ties sharing their average rank, exactly."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks: list[Fraction] = [Fraction(0)] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = Fraction(i + 1 + j + 1, 2)
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def spearman(xs: Sequence, ys: Sequence) -> Fraction:
    """Exact rank correlation with average-rank ties.

    Degenerate cases follow ranking semantics rather than returning an
    undefined value: two constant-rank vectors correlate perfectly, one
    constant against a non-constant vector correlates at zero.
    """
    if len(xs) != len(ys):
        raise ValueError("vectors must have equal length")
    if not xs:
        raise ValueError("vectors must be nonempty")
    rx = average_ranks(xs)
    ry = average_ranks(ys)
    n = len(rx)
    mean = Fraction(n + 1, 2)
    dx = [r - mean for r in rx]
    dy = [r - mean for r in ry]
    var_x = sum(d * d for d in dx)
    var_y = sum(d * d for d in dy)
    if var_x == 0 and var_y == 0:
        return Fraction(1)
    if var_x == 0 or var_y == 0:
        return Fraction(0)
    cov = sum(a * b for a, b in zip(dx, dy))
    # The rank variances coincide unless the two tie patterns differ, so
    # the normalizer is almost always exactly rational; otherwise it is
    # approximated to twelve decimal digits.
    if var_x == var_y:
        return cov / var_x
    value = cov / _sqrt_fraction(var_x * var_y)
    return max(Fraction(-1), min(Fraction(1), value))


def _sqrt_fraction(value: Fraction) -> Fraction:
    """Exact square root when it exists, else a rational within 1e-12."""
    import math

    num, den = value.numerator, value.denominator
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return Fraction(root_num, root_den)
    scale = 10**12
    return Fraction(math.isqrt(num * scale * scale // den), scale)


PANEL_LOSSES = ("afriat", "varian", "houtman_maks")


@dataclass(frozen=True)
class PanelSummary:
    reports: tuple[IndexReport, ...]
    spearman: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.spearman)
        for i in range(n):
            if self.spearman[i][i] != 1:
                raise ValueError("correlation matrix must have a unit diagonal")
            for j in range(n):
                if self.spearman[i][j] != self.spearman[j][i]:
                    raise ValueError("correlation matrix must be symmetric")


def panel_summary(reports: Sequence[IndexReport]) -> PanelSummary:
    """Rank-correlation matrix across the three scalar indices."""
    series = {
        "afriat": [r.afriat for r in reports],
        "varian": [r.varian for r in reports],
        "houtman_maks": [Fraction(r.houtman_maks) for r in reports],
    }
    for name, values in series.items():
        if any(v is None for v in values):
            raise ValueError(f"panel reports missing the {name} index")
    matrix = tuple(
        tuple(spearman(series[a], series[b]) for b in PANEL_LOSSES)
        for a in PANEL_LOSSES
    )
    return PanelSummary(tuple(reports), matrix)


def rational_json(value: Fraction) -> dict[str, Any]:
    return {"fraction": str(value), "decimal": float(value)}


def report_json(report: IndexReport) -> dict[str, Any]:
    def opt(value):
        return None if value is None else rational_json(value)

    return {
        "schema_version": SCHEMA_VERSION,
        "dataset_id": report.dataset_id,
        "T": report.T,
        "L": report.L,
        "garp": report.garp,
        "cycle_class": report.cycle_class,
        "afriat": opt(report.afriat),
        "varian": opt(report.varian),
        "houtman_maks": report.houtman_maks,
        "swaps": opt(report.swaps),
        "homothetic": report.homothetic,
        "notes": [{"code": n.code, "message": n.message} for n in report.notes],
    }


def panel_json(summary: PanelSummary, failures: Sequence[dict[str, str]] = ()) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "reports": [report_json(r) for r in summary.reports],
        "spearman_losses": list(PANEL_LOSSES),
        "spearman": [[rational_json(v) for v in row] for row in summary.spearman],
        "failures": list(failures),
    }
