"""Goodness-of-fit indices beyond the scalar efficiency index.

Per-observation budget-waste minimization over preference orders, the
minimum-removal count and its full set of minimum removal sets, and the
surplus-measure index that integrates the affordable strictly-better
region. Everything is exact: order search is branch-and-bound with
admissible bounds, measures come from closed-form simplex volumes via
inclusion-exclusion, and removal search is iterative deepening with
cycle-hitting branching, cross-checked by design against exhaustive
oracles in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .caps import (
    DEFAULT_INCLUSION_EXCLUSION,
    DEFAULT_MINSET_CANDIDATES,
    check_candidate_count,
    check_order_enumeration,
)
from .dataset import Bundle, PriceVector, PurchaseDataset
from .errors import CapExceeded
from .orders import PreferenceOrder, optimize_preorders, order_efficiency
from .relations import EfficiencyVector, check_garp, check_e_garp

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Aggregator:
    """Aggregates a per-observation efficiency vector into one loss number.

    Only the mean-shortfall form is supported: f(e) = (1/T) sum (1-e_t),
    which is continuous, decreasing, zero exactly at the all-ones vector
    and stays in [0, 1] across dataset sizes.
    """

    kind: str = "mean_shortfall"

    def __post_init__(self):
        if self.kind != "mean_shortfall":
            raise ValueError(f"unsupported aggregator kind: {self.kind}")

    def evaluate(self, efficiency: EfficiencyVector | Sequence[Fraction]) -> Fraction:
        values = (
            efficiency.values
            if isinstance(efficiency, EfficiencyVector)
            else tuple(efficiency)
        )
        if not values:
            raise ValueError("cannot aggregate an empty vector")
        return sum((1 - v for v in values), ZERO) / len(values)


MEAN_SHORTFALL = Aggregator()


def _ratio_matrix(dataset: PurchaseDataset) -> list[list[Fraction]]:
    cross = dataset.cross_matrix
    return [
        [cross[t][s] / cross[t][t] for s in range(dataset.T)] for t in range(dataset.T)
    ]


def varian_index(dataset: PurchaseDataset, agg: Aggregator = MEAN_SHORTFALL) -> Fraction:
    """Minimum aggregated budget waste over admissible preference orders.

    Branch-and-bound over the order family; exact for any T (the
    accumulated shortfall of placed observations is an admissible lower
    bound because upper sets only grow).
    """
    best, _ = _varian_optimum(dataset, agg, keep_ties=False)
    return best


def _varian_optimum(
    dataset: PurchaseDataset,
    agg: Aggregator,
    *,
    keep_ties: bool,
    initial_best: Fraction | None = None,
    leaf_cap: int | None = None,
) -> tuple[Fraction, list[PreferenceOrder]]:
    ratios = _ratio_matrix(dataset)
    T = dataset.T
    memo: dict[tuple[int, int], Fraction] = {}

    def cost(t: int, mask: int) -> Fraction:
        key = (t, mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        row = ratios[t]
        value = min(row[s] for s in range(T) if mask >> s & 1)
        value = (1 - value) / T
        memo[key] = value
        return value

    return optimize_preorders(
        dataset, cost, keep_ties=keep_ties, initial_best=initial_best, leaf_cap=leaf_cap
    )


def _simplex_volume(slack: Fraction, prices: PriceVector) -> Fraction:
    """Volume of {y >= 0 : p.y <= slack}."""
    if slack <= 0:
        return ZERO
    L = len(prices)
    volume = slack**L / math.factorial(L)
    for p in prices.prices:
        volume /= p
    return volume


def _minimal_bundles(bundles: Iterable[Bundle]) -> list[Bundle]:
    """Distinct bundles minimal under componentwise dominance.

    Dropping dominated generators loses nothing: the cone above a bigger
    bundle is contained in the cone above a smaller one.
    """
    unique: list[Bundle] = []
    seen: set[tuple[Fraction, ...]] = set()
    for b in bundles:
        if b.quantities not in seen:
            seen.add(b.quantities)
            unique.append(b)
    return [
        b
        for b in unique
        if not any(other is not b and b.dominates(other) for other in unique)
    ]


def _union_cone_measure(
    price: PriceVector, budget: Fraction, generators: Sequence[Bundle], cap: int
) -> Fraction:
    """Lebesgue measure of (union of cones {q >= g}) within B(price, budget).

    Inclusion-exclusion: each intersection is the cone above the
    componentwise maximum, a translated simplex with a closed-form
    volume.
    """
    basis = _minimal_bundles(generators)
    n = len(basis)
    if n > cap:
        raise CapExceeded("inclusion-exclusion generators", cap, n)
    total = ZERO
    for bits in range(1, 1 << n):
        chosen = [basis[i] for i in range(n) if bits >> i & 1]
        peak = tuple(max(b[i] for b in chosen) for i in range(len(price)))
        slack = budget - price.dot(peak)
        term = _simplex_volume(slack, price)
        total += term if bin(bits).count("1") % 2 == 1 else -term
    return total


def upper_contour_measure(
    dataset: PurchaseDataset,
    t: int,
    members: Iterable[int],
    cap: int = DEFAULT_INCLUSION_EXCLUSION,
) -> Fraction:
    """Measure of the affordable part of the cones above the given bundles.

    The budget set is observation t's; ``members`` index the observations
    whose bundles generate the cones.
    """
    member_list = sorted(set(members))
    if not member_list:
        raise ValueError("members must be nonempty")
    if any(not 0 <= s < dataset.T for s in member_list):
        raise ValueError("member index out of range")
    obs = dataset.observations[t]
    generators = [dataset.bundles[s] for s in member_list]
    if len(member_list) > cap:
        raise CapExceeded("inclusion-exclusion generators", cap, len(member_list))
    return _union_cone_measure(obs.price, obs.expenditure, generators, cap)


def swaps_index(dataset: PurchaseDataset, agg_cap: int | None = None) -> Fraction:
    """Minimum total measure of affordable strictly-better bundles.

    For each order, observation t contributes the measure of the part of
    its budget set lying above some bundle ranked weakly over the bought
    one; the index minimizes the sum over admissible orders. Gated by
    the order-enumeration cap (override via ``REVPREF_MAX_ENUM``).
    """
    check_order_enumeration(dataset.T, "swaps order enumeration")
    T = dataset.T
    bundles = dataset.bundles
    memo: dict[tuple[int, int], Fraction] = {}
    ie_cap = max(DEFAULT_INCLUSION_EXCLUSION, T)

    def cost(t: int, mask: int) -> Fraction:
        key = (t, mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        obs = dataset.observations[t]
        generators = [bundles[s] for s in range(T) if mask >> s & 1]
        value = _union_cone_measure(obs.price, obs.expenditure, generators, ie_cap)
        memo[key] = value
        return value

    best, _ = optimize_preorders(dataset, cost)
    return best


@dataclass(frozen=True)
class RemovalSet:
    """Observation indices whose removal restores consistency."""

    removed: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "removed", frozenset(self.removed))


def _violating_cycle(
    dataset: PurchaseDataset, active: tuple[int, ...]
) -> tuple[int, ...] | None:
    sub = dataset.restricted(active)
    result = check_garp(sub)
    if result.satisfied:
        return None
    assert result.witness is not None
    return tuple(active[i] for i in result.witness.nodes)


def houtman_maks_index(dataset: PurchaseDataset) -> int:
    """Minimum number of observations to drop so the rest satisfies GARP.

    Iterative deepening on the removal budget; at each node the search
    branches only over members of one concrete violating cycle, since
    any valid removal set must hit every violating cycle. A single
    observation is always consistent, so the search terminates at T-1.
    """
    T = dataset.T
    cycle_cache: dict[tuple[int, ...], tuple[int, ...] | None] = {}

    def cycle_of(active: tuple[int, ...]) -> tuple[int, ...] | None:
        hit = cycle_cache.get(active, False)
        if hit is not False:
            return hit
        found = _violating_cycle(dataset, active)
        cycle_cache[active] = found
        return found

    def search(active: tuple[int, ...], budget: int) -> bool:
        cycle = cycle_of(active)
        if cycle is None:
            return True
        if budget == 0:
            return False
        for node in dict.fromkeys(cycle):
            reduced = tuple(i for i in active if i != node)
            if search(reduced, budget - 1):
                return True
        return False

    everything = tuple(range(T))
    for budget in range(T):
        if search(everything, budget):
            return budget
    return T - 1


def houtman_maks_minsets(
    dataset: PurchaseDataset, cap: int | None = None
) -> list[RemovalSet]:
    """All removal sets of exactly minimum cardinality, in lexicographic order.

    Fails loudly (``CapExceeded``) when the number of candidate subsets
    at the minimum cardinality exceeds the cap rather than returning a
    silently truncated list.
    """
    depth = houtman_maks_index(dataset)
    if depth == 0:
        return [RemovalSet(frozenset())]
    T = dataset.T
    candidates = math.comb(T, depth)
    limit = cap if cap is not None else DEFAULT_MINSET_CANDIDATES
    check_candidate_count(candidates, "minimum-removal-set candidates", limit)
    keep_all = range(T)
    found: list[RemovalSet] = []
    for removed in combinations(keep_all, depth):
        retained = tuple(i for i in keep_all if i not in removed)
        if check_garp(dataset.restricted(retained)).satisfied:
            found.append(RemovalSet(frozenset(removed)))
    return found


def feasible_breakpoint_minimum(
    dataset: PurchaseDataset,
    agg: Aggregator = MEAN_SHORTFALL,
    leaf_cap: int | None = None,
) -> tuple[Fraction, list[EfficiencyVector]]:
    """Minimize the aggregator over feasible per-observation breakpoint vectors.

    Feasible means the vector-deflated data passes e-GARP. Candidate
    values per observation are its expenditure ratios in [0, 1] (its own
    ratio contributes 1). Because feasibility is downward closed and
    relations only flip at breakpoints, an attained aggregator minimum
    over all feasible vectors is always attained on this grid, which is
    what the robust-preference machinery needs to detect attainment.

    Returns the minimum and every argmin vector. Depth-first search over
    per-observation values in descending order; a prefix is pruned as
    soon as its rows alone contain a violation (later rows only add
    edges) or its shortfall already exceeds the best found.
    """
    T = dataset.T
    cross = dataset.cross_matrix
    ratios = _ratio_matrix(dataset)
    grids = [
        sorted({r for r in ratios[t] if r <= 1}, reverse=True) for t in range(T)
    ]
    assigned: list[Fraction | None] = [None] * T
    best: Fraction | None = None
    winners: list[tuple[Fraction, ...]] = []
    leaves = 0

    def prefix_feasible(upto: int) -> bool:
        # Violation check over rows 0..upto only; unassigned rows have no
        # out-edges and therefore cannot lie on a violating cycle.
        k = upto + 1
        weak = [[False] * k for _ in range(k)]
        strict = [[False] * k for _ in range(k)]
        for i in range(k):
            budget = assigned[i] * cross[i][i]
            for j in range(k):
                weak[i][j] = budget >= cross[i][j]
                strict[i][j] = budget > cross[i][j]
        closure = [row[:] for row in weak]
        for mid in range(k):
            for a in range(k):
                if closure[a][mid]:
                    row_a = closure[a]
                    row_m = closure[mid]
                    for b in range(k):
                        if row_m[b]:
                            row_a[b] = True
        return not any(
            strict[a][b] and closure[b][a] for a in range(k) for b in range(k)
        )

    def rec(t: int, shortfall: Fraction) -> None:
        nonlocal best, winners, leaves
        if t == T:
            leaves += 1
            if leaf_cap is not None and leaves > leaf_cap:
                raise CapExceeded("breakpoint-vector enumeration", leaf_cap, leaves)
            if best is None or shortfall < best:
                best = shortfall
                winners = [tuple(assigned)]  # type: ignore[arg-type]
            elif shortfall == best:
                winners.append(tuple(assigned))  # type: ignore[arg-type]
            return
        for e in grids[t]:
            extended = shortfall + (1 - e) / T
            if best is not None and extended > best:
                break  # descending grid: later values only raise the shortfall
            assigned[t] = e
            if prefix_feasible(t):
                rec(t + 1, extended)
        assigned[t] = None

    rec(0, ZERO)
    assert best is not None  # the all-zeros vector is always feasible
    return best, [EfficiencyVector(v) for v in winners]
