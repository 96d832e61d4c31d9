"""Total preorders over observed bundles and exact optimization over them.

The admissible orders are the total preorders on the observed bundles
that respect componentwise dominance (weakly for >=, strictly for >).
Each order induces a per-observation efficiency vector: the cheapest
ratio at which something ranked weakly above the bought bundle was
affordable. Both the budget-waste and the surplus-measure indices are
minima of additive, upper-set-monotone costs over this finite family,
so one branch-and-bound engine serves both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .dataset import PurchaseDataset
from .errors import CapExceeded
from .relations import EfficiencyVector


@dataclass(frozen=True)
class PreferenceOrder:
    """A total preorder as a level per observation; higher level = better.

    Ties (equal levels) mean indifference. Only the relative ordering of
    levels matters.
    """

    levels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(v) for v in self.levels))
        if not self.levels:
            raise ValueError("order needs at least one observation")

    def upper_set(self, t: int) -> frozenset[int]:
        return frozenset(
            s for s, lvl in enumerate(self.levels) if lvl >= self.levels[t]
        )


def _dominance(dataset: PurchaseDataset) -> tuple[list[list[bool]], list[list[bool]]]:
    bundles = dataset.bundles
    T = dataset.T
    ge = [[bundles[t].dominates(bundles[s]) for s in range(T)] for t in range(T)]
    gt = [
        [ge[t][s] and bundles[t].quantities != bundles[s].quantities for s in range(T)]
        for t in range(T)
    ]
    return ge, gt


def is_admissible(dataset: PurchaseDataset, order: PreferenceOrder) -> bool:
    """Whether the order respects dominance between observed bundles."""
    if len(order.levels) != dataset.T:
        raise ValueError("order length does not match dataset")
    ge, gt = _dominance(dataset)
    for t in range(dataset.T):
        for s in range(dataset.T):
            if gt[t][s] and order.levels[t] <= order.levels[s]:
                return False
            if ge[t][s] and order.levels[t] < order.levels[s]:
                return False
    return True


def order_efficiency(dataset: PurchaseDataset, order: PreferenceOrder) -> EfficiencyVector:
    """Efficiency vector induced by an admissible order.

    Entry t is the smallest expenditure ratio ``p^t.q^s / p^t.q^t`` over
    observations s ranked weakly above t; the bought bundle itself keeps
    every entry at or below one.
    """
    if not is_admissible(dataset, order):
        raise ValueError("order violates dominance between observed bundles")
    cross = dataset.cross_matrix
    values = []
    for t in range(dataset.T):
        upper = order.upper_set(t)
        values.append(min(cross[t][s] / cross[t][t] for s in upper))
    return EfficiencyVector(tuple(values))


def optimize_preorders(
    dataset: PurchaseDataset,
    cost: Callable[[int, int], Fraction],
    *,
    keep_ties: bool = False,
    initial_best: Fraction | None = None,
    leaf_cap: int | None = None,
) -> tuple[Fraction, list[PreferenceOrder]]:
    """Minimize ``sum_t cost(t, upper_mask_t)`` over admissible preorders.

    ``cost(t, mask)`` must be nonnegative and nondecreasing as the upper
    set grows; partial sums are then admissible lower bounds, which is
    what makes the pruning exact. Returns the minimum and the orders
    attaining it (all of them when ``keep_ties``, else just one).
    Observations are inserted one at a time into the running level
    structure, so every ordered set partition is generated exactly once.
    """
    T = dataset.T
    ge, gt = _dominance(dataset)
    best: Fraction | None = initial_best
    winners: list[tuple[int, ...]] = []
    leaves_seen = 0

    def level_of(levels: list[int], t: int) -> int:
        for i, mask in enumerate(levels):
            if mask >> t & 1:
                return i
        raise KeyError(t)

    def admissible_with(levels: list[int], u: int) -> bool:
        lu = level_of(levels, u)
        for v in range(u):
            lv = level_of(levels, v)
            if gt[u][v] and lu <= lv:
                return False
            if gt[v][u] and lv <= lu:
                return False
            if ge[u][v] and lu < lv:
                return False
            if ge[v][u] and lv < lu:
                return False
        return True

    def partial_cost(levels: list[int]) -> Fraction:
        total = Fraction(0)
        upper = 0
        per_level: list[Fraction] = []
        for mask in reversed(levels):
            upper |= mask
            subtotal = Fraction(0)
            t = 0
            bits = mask
            while bits:
                if bits & 1:
                    subtotal += cost(t, upper)
                bits >>= 1
                t += 1
            per_level.append(subtotal)
        for subtotal in per_level:
            total += subtotal
        return total

    def record(levels: list[int], total: Fraction) -> None:
        nonlocal best, winners, leaves_seen
        leaves_seen += 1
        if leaf_cap is not None and leaves_seen > leaf_cap:
            raise CapExceeded("preorder enumeration", leaf_cap, leaves_seen)
        if best is None or total < best:
            best = total
            winners = [tuple(levels)]
        elif keep_ties and total == best:
            winners.append(tuple(levels))

    def rec(u: int, levels: list[int], running: Fraction) -> None:
        if u == T:
            record(levels, running)
            return
        bit = 1 << u
        k = len(levels)
        candidates: list[list[int]] = []
        for i in range(k):
            candidates.append(levels[:i] + [levels[i] | bit] + levels[i + 1 :])
        for i in range(k + 1):
            candidates.append(levels[:i] + [bit] + levels[i:])
        for cand in candidates:
            if not admissible_with(cand, u):
                continue
            partial = partial_cost(cand)
            if best is not None and (partial > best or (not keep_ties and partial >= best)):
                continue
            rec(u + 1, cand, partial)

    rec(0, [], Fraction(0))
    if best is None:
        raise RuntimeError("no admissible preorder found; dominance data inconsistent")
    orders = [
        PreferenceOrder(
            tuple(next(i for i, mask in enumerate(levels) if mask >> t & 1) for t in range(T))
        )
        for levels in winners
    ]
    return best, orders
