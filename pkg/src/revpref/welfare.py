"""Robust preference queries and compensation levels.

A bundle is robustly preferred to another when some benchmark utility
exists such that every utility fitting the data at least as well ranks
the first bundle weakly above the second. For each supported loss the
query reduces to reachability through dominance and budget edges at
specific efficiency levels:

- budget-waste (scalar) loss: reachability at the exact critical level,
  through weak edges when that level is itself consistent and through
  strict edges when it is only a supremum;
- minimum-removal loss: weak reachability at full efficiency inside
  every minimum removal set's retained data (the loss is minimizable,
  so best-fitting utilities are exactly those rationalizing some
  maximal retained subset);
- per-observation budget-waste loss: weak reachability at every
  aggregator-minimal feasible breakpoint vector when the minimum is
  attained, strict reachability at the optimal orders' limit vectors
  when it is not.

The last two reductions are documented package semantics: they
reproduce all worked examples and the attained/non-attained dichotomy
of the scalar case, but no general equivalence proof ships with them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .afriat import afriat_estar
from .dataset import Bundle, PurchaseDataset
from .errors import InternalCheckError
from .indices import (
    MEAN_SHORTFALL,
    Aggregator,
    feasible_breakpoint_minimum,
    houtman_maks_minsets,
    _varian_optimum,
)
from .orders import order_efficiency
from .rational import Rational, as_fraction
from .relations import EfficiencyVector, check_e_garp, reach_with_virtual

ZERO = Fraction(0)
ONE = Fraction(1)

LOSSES = ("afriat", "varian", "hm")


class Verdict(Enum):
    PREFERRED = "preferred"
    DISPREFERRED = "dispreferred"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class RobustQueryResult:
    forward: bool
    backward: bool
    verdict: Verdict

    @classmethod
    def from_flags(cls, forward: bool, backward: bool) -> "RobustQueryResult":
        if forward and backward:
            verdict = Verdict.EQUIVALENT
        elif forward:
            verdict = Verdict.PREFERRED
        elif backward:
            verdict = Verdict.DISPREFERRED
        else:
            verdict = Verdict.INCOMPARABLE
        return cls(forward, backward, verdict)


@dataclass(frozen=True)
class _Config:
    """One reachability instance: dataset, efficiency levels, edge mode."""

    dataset: PurchaseDataset
    efficiency: EfficiencyVector
    strict: bool


@lru_cache(maxsize=256)
def _afriat_configs(dataset: PurchaseDataset) -> tuple[_Config, ...]:
    estar = afriat_estar(dataset)
    attained = check_e_garp(dataset, estar)
    return (
        _Config(dataset, EfficiencyVector.constant(estar, dataset.T), not attained),
    )


@lru_cache(maxsize=256)
def _hm_configs(dataset: PurchaseDataset, cap: int | None) -> tuple[_Config, ...]:
    configs = []
    for removal in houtman_maks_minsets(dataset, cap=cap):
        retained = tuple(i for i in range(dataset.T) if i not in removal.removed)
        sub = dataset.restricted(retained)
        configs.append(_Config(sub, EfficiencyVector.constant(ONE, sub.T), False))
    return tuple(configs)


@lru_cache(maxsize=256)
def _varian_configs(
    dataset: PurchaseDataset, agg: Aggregator, leaf_cap: int | None
) -> tuple[_Config, ...]:
    optimum, _ = _varian_optimum(dataset, agg, keep_ties=False)
    feasible_min, feasible_vectors = feasible_breakpoint_minimum(
        dataset, agg, leaf_cap=leaf_cap
    )
    if feasible_min == optimum:
        return tuple(_Config(dataset, vec, False) for vec in feasible_vectors)
    _, optimal_orders = _varian_optimum(
        dataset, agg, keep_ties=True, initial_best=optimum, leaf_cap=leaf_cap
    )
    vectors = {order_efficiency(dataset, order).values for order in optimal_orders}
    return tuple(
        _Config(dataset, EfficiencyVector(values), True) for values in sorted(vectors)
    )


def _configs(
    dataset: PurchaseDataset,
    loss: str,
    agg: Aggregator = MEAN_SHORTFALL,
    cap: int | None = None,
) -> tuple[_Config, ...]:
    if loss == "afriat":
        return _afriat_configs(dataset)
    if loss == "hm":
        return _hm_configs(dataset, cap)
    if loss == "varian":
        return _varian_configs(dataset, agg, cap)
    raise ValueError(f"unknown loss {loss!r}; expected one of {LOSSES}")


def _reachable(configs: Sequence[_Config], a: Bundle, b: Bundle) -> bool:
    return all(
        reach_with_virtual(
            cfg.dataset, cfg.efficiency, strict=cfg.strict, source=a, target=b
        )
        for cfg in configs
    )


def robust_pref_afriat(dataset: PurchaseDataset, a: Bundle, b: Bundle) -> bool:
    """Robust preference under the scalar budget-waste loss.

    Weak reachability at the exact critical level when the data is still
    consistent there, strict reachability when that level is only
    approached from below.
    """
    return _reachable(_afriat_configs(dataset), a, b)


def robust_pref_hm(
    dataset: PurchaseDataset, a: Bundle, b: Bundle, cap: int | None = None
) -> bool:
    """Robust preference under the minimum-removal loss.

    Requires weak full-efficiency reachability within every minimum
    removal set's retained data.
    """
    return _reachable(_hm_configs(dataset, cap), a, b)


def robust_pref_varian(
    dataset: PurchaseDataset,
    a: Bundle,
    b: Bundle,
    agg: Aggregator = MEAN_SHORTFALL,
    cap: int | None = None,
) -> bool:
    """Robust preference under the per-observation budget-waste loss."""
    return _reachable(_varian_configs(dataset, agg, cap), a, b)


def robust_query(
    dataset: PurchaseDataset,
    loss: str,
    a: Bundle,
    b: Bundle,
    agg: Aggregator = MEAN_SHORTFALL,
    cap: int | None = None,
) -> RobustQueryResult:
    """Both query directions plus the derived verdict."""
    configs = _configs(dataset, loss, agg, cap)
    return RobustQueryResult.from_flags(
        _reachable(configs, a, b), _reachable(configs, b, a)
    )


def median_bundle(dataset: PurchaseDataset, good: int) -> Bundle:
    """Observed bundle with the median quantity of the designated good.

    Bundles are sorted ascending by that good (ties by observation
    index) and the ceil(T/2)-th is returned, i.e. the lower median for
    even T.
    """
    if not 0 <= good < dataset.L:
        raise ValueError("good index out of range")
    ranked = sorted(range(dataset.T), key=lambda t: (dataset.bundles[t][good], t))
    return dataset.bundles[ranked[(dataset.T + 1) // 2 - 1]]


def counterfactual_bundle(
    base: Bundle, good: int, reduction: Fraction, k: Fraction
) -> Bundle:
    """Scale the designated good down by ``reduction``, every other up by ``k``."""
    return Bundle(
        tuple(
            q * (1 - reduction) if i == good else q * (1 + k)
            for i, q in enumerate(base.quantities)
        )
    )


@dataclass(frozen=True)
class CompensationResult:
    """Weak and strong compensation levels; ``None`` means above the cap.

    The weak level is the smallest uplift at which the reduced bundle
    stops being robustly dominated by the baseline; the strong level is
    the smallest uplift at which it becomes robustly preferred.
    """

    k_weak: Fraction | None
    k_strong: Fraction | None
    cap: Fraction

    def __post_init__(self):
        for value in (self.k_weak, self.k_strong):
            if value is not None and not 0 <= value <= self.cap:
                raise ValueError("compensation level outside [0, cap]")
        if (
            self.k_weak is not None
            and self.k_strong is not None
            and self.k_weak > self.k_strong
        ):
            raise ValueError("weak level cannot exceed strong level")


@dataclass(frozen=True)
class CompensationRegion:
    """Verdict of baseline-vs-counterfactual on one point or open interval."""

    lower: Fraction
    upper: Fraction
    open_interval: bool
    result: RobustQueryResult


def _k_breakpoints(
    configs: Sequence[_Config],
    base: Bundle,
    good: int,
    reduction: Fraction,
    cap: Fraction,
) -> list[Fraction]:
    """Every uplift where a relation edge involving the counterfactual flips.

    All candidate edges are linear in the uplift: budget edges through
    the counterfactual's cost, dominance edges componentwise.
    """
    points: set[Fraction] = set()

    def consider(k: Fraction) -> None:
        if 0 < k < cap:
            points.add(k)

    slope_terms = [
        (i, q) for i, q in enumerate(base.quantities) if i != good and q > 0
    ]
    for cfg in configs:
        data = cfg.dataset
        for t in range(data.T):
            price = data.observations[t].price
            slope = sum((price[i] * q for i, q in slope_terms), ZERO)
            const = price[good] * (1 - reduction) * base[good] + slope
            if slope > 0:
                budget = cfg.efficiency[t] * data.expenditure(t)
                consider((budget - const) / slope)
        for bundle in data.bundles + (base,):
            for i, q in slope_terms:
                consider(bundle[i] / q - 1)
    return sorted(points)


def compensation_regions(
    dataset: PurchaseDataset,
    loss: str,
    good: int,
    reduction: Rational = Fraction(1, 4),
    cap: Rational = ONE,
    agg: Aggregator = MEAN_SHORTFALL,
    enum_cap: int | None = None,
) -> list[CompensationRegion]:
    """Exact partition of [0, cap] by the baseline-vs-counterfactual verdict.

    The query outcome is constant between consecutive breakpoints, so
    evaluating each breakpoint and each open interval (at its midpoint)
    determines the verdict everywhere. The scan also asserts the
    monotone structure the thresholds rely on: the forward relation can
    only switch off as the uplift grows, the backward one only on.
    """
    reduction = as_fraction(reduction)
    cap = as_fraction(cap)
    if not 0 < reduction < 1:
        raise ValueError("reduction must lie strictly between 0 and 1")
    if cap <= 0:
        raise ValueError("cap must be positive")
    base = median_bundle(dataset, good)
    configs = _configs(dataset, loss, agg, enum_cap)

    def query(k: Fraction) -> RobustQueryResult:
        other = counterfactual_bundle(base, good, reduction, k)
        return RobustQueryResult.from_flags(
            _reachable(configs, base, other), _reachable(configs, other, base)
        )

    grid = [ZERO] + _k_breakpoints(configs, base, good, reduction, cap) + [cap]
    regions: list[CompensationRegion] = []
    for i, point in enumerate(grid):
        regions.append(CompensationRegion(point, point, False, query(point)))
        if i + 1 < len(grid):
            mid = (point + grid[i + 1]) / 2
            regions.append(
                CompensationRegion(point, grid[i + 1], True, query(mid))
            )
    forward_seen_off = False
    backward_seen_on = False
    for region in regions:
        if forward_seen_off and region.result.forward:
            raise InternalCheckError("forward relation is not monotone in the uplift")
        if region.result.backward and not backward_seen_on:
            backward_seen_on = True
        if backward_seen_on and not region.result.backward:
            raise InternalCheckError("backward relation is not monotone in the uplift")
        if not region.result.forward:
            forward_seen_off = True
    return regions


def compensation_levels(
    dataset: PurchaseDataset,
    loss: str,
    good: int,
    reduction: Rational = Fraction(1, 4),
    cap: Rational = ONE,
    agg: Aggregator = MEAN_SHORTFALL,
    enum_cap: int | None = None,
) -> CompensationResult:
    """Exact weak and strong compensation levels.

    Both are infima over the uplift of a monotone predicate, located by
    the exact region scan: the infimum is the left endpoint of the first
    region where the predicate holds (which the predicate itself may or
    may not attain). ``None`` marks levels beyond the cap.
    """
    regions = compensation_regions(
        dataset, loss, good, reduction, cap, agg, enum_cap
    )
    k_weak = next(
        (r.lower for r in regions if not r.result.forward), None
    )
    k_strong = next((r.lower for r in regions if r.result.backward), None)
    return CompensationResult(k_weak, k_strong, as_fraction(cap))


class Sharpness(Enum):
    FIRST_SHARPER = "first_sharper"
    SECOND_SHARPER = "second_sharper"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def sharpness_compare(first: CompensationResult, second: CompensationResult) -> Sharpness:
    """Compare the ambiguous intervals [k_weak, k_strong] by containment.

    A loss is sharper when its interval nests strictly inside the
    other's. Levels above the cap are clamped to the cap endpoint for
    the comparison (the containment verdict is then conservative).
    """
    if first.cap != second.cap:
        raise ValueError("results must share the same cap")

    def interval(result: CompensationResult) -> tuple[Fraction, Fraction]:
        low = result.k_weak if result.k_weak is not None else result.cap
        high = result.k_strong if result.k_strong is not None else result.cap
        return low, high

    lo1, hi1 = interval(first)
    lo2, hi2 = interval(second)
    first_inside = lo2 <= lo1 and hi1 <= hi2
    second_inside = lo1 <= lo2 and hi2 <= hi1
    if first_inside and second_inside:
        return Sharpness.EQUAL
    if first_inside:
        return Sharpness.FIRST_SHARPER
    if second_inside:
        return Sharpness.SECOND_SHARPER
    return Sharpness.INCOMPARABLE
