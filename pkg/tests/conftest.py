"""Shared fixtures: the worked two-observation datasets and random generators."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from revpref import Bundle, Observation, PriceVector, PurchaseDataset


def dataset(prices, quantities) -> PurchaseDataset:
    return PurchaseDataset.from_lists(prices, quantities)


@pytest.fixture
def dbar() -> PurchaseDataset:
    """Cusp dataset: one weak cycle, q=(4,4) on the crossing of both budget lines."""
    return dataset([(2, 1), (1, 2)], [(4, 4), (2, 5)])


@pytest.fixture
def dstar() -> PurchaseDataset:
    """Strong-cycle variant: first bundle moved southeast along its budget line."""
    return dataset([(2, 1), (1, 2)], [(Fraction(9, 2), 3), (2, 5)])


def approaching(n: int) -> PurchaseDataset:
    """The consistent dataset with the first bundle 1/(3n) away from the cusp."""
    q = (4 - Fraction(1, 3 * n), 4 + Fraction(2, 3 * n))
    return dataset([(2, 1), (1, 2)], [q, (2, 5)])


@pytest.fixture
def d1() -> PurchaseDataset:
    return approaching(1)


def random_dataset(
    rng: random.Random,
    min_T: int = 2,
    max_T: int = 6,
    max_L: int = 3,
    denominator: int = 4,
) -> PurchaseDataset:
    """Small random dataset on a rational grid (prices positive, bundles nonzero)."""
    T = rng.randint(min_T, max_T)
    L = rng.randint(2, max_L)
    observations = []
    for _ in range(T):
        price = PriceVector(
            tuple(Fraction(rng.randint(1, 4 * denominator), denominator) for _ in range(L))
        )
        while True:
            quantities = tuple(
                Fraction(rng.randint(0, 6 * denominator), denominator) for _ in range(L)
            )
            if any(quantities):
                break
        observations.append(Observation(price, Bundle(quantities)))
    return PurchaseDataset(tuple(observations))


def _random_price(rng: random.Random) -> PriceVector:
    return PriceVector((Fraction(rng.randint(1, 8)), Fraction(rng.randint(1, 8))))


def weak_only_dataset(rng: random.Random) -> PurchaseDataset:
    """Two goods, two observations, exactly one weak violating cycle.

    The second bundle is drawn freely; the first sits exactly on the
    second observation's budget line (so the back-link is a tie) while
    costing strictly more than the second bundle at its own prices (so
    the forward link is strict). The reverse strict link would need to
    beat a tie, so no strong cycle can appear.
    """
    while True:
        p1, p2 = _random_price(rng), _random_price(rng)
        if p1.prices[0] * p2.prices[1] == p1.prices[1] * p2.prices[0]:
            continue  # parallel budget lines cannot cross
        q2 = Bundle((Fraction(rng.randint(1, 6)), Fraction(rng.randint(1, 6))))
        m2 = p2.dot(q2)
        # Points on the line p2.x = m2: x(s) = (s, (m2 - p2_1 s)/p2_2).
        s_max = m2 / p2.prices[0]
        cost = p1.dot(q2)

        def along(s: Fraction) -> tuple[Fraction, Fraction]:
            return (s, (m2 - p2.prices[0] * s) / p2.prices[1])

        lo_val = p1.dot(along(Fraction(0)))
        hi_val = p1.dot(along(s_max))
        best_s = s_max if hi_val > lo_val else Fraction(0)
        if p1.dot(along(best_s)) <= cost:
            continue  # no room for a strict forward link; redraw
        # Solve p1.x(s) = cost and step halfway toward the better endpoint.
        slope = p1.prices[0] - p1.prices[1] * p2.prices[0] / p2.prices[1]
        s_threshold = (cost - p1.prices[1] * m2 / p2.prices[1]) / slope
        s = (s_threshold + best_s) / 2
        q1 = Bundle(along(s))
        if q1.is_zero:
            continue
        return PurchaseDataset(
            (Observation(p1, q1), Observation(p2, q2))
        )


def strong_cycle_dataset(rng: random.Random) -> PurchaseDataset:
    """Two observations strictly revealed preferred to each other."""
    for _ in range(10_000):
        p1, p2 = _random_price(rng), _random_price(rng)
        q1 = Bundle((Fraction(rng.randint(1, 6)), Fraction(rng.randint(1, 6))))
        q2 = Bundle((Fraction(rng.randint(1, 6)), Fraction(rng.randint(1, 6))))
        if p1.dot(q1) > p1.dot(q2) and p2.dot(q2) > p2.dot(q1):
            return PurchaseDataset((Observation(p1, q1), Observation(p2, q2)))
    raise AssertionError("failed to draw a strong cycle")
