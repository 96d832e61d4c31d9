"""Rationalizability tests for restricted utility families.

Both tests reduce to exact multiplicative cycle detection: homothetic
consistency fails when some cycle of cross-expenditure ratios multiplies
to less than one, and objective concave expected-utility consistency
fails when some balanced sequence of quantity comparisons carries a
price/probability product above one. Balance makes any such sequence a
circulation over observations, and circulations decompose into simple
cycles, so a per-edge best-factor graph plus cycle search is complete.

Products are tracked as exact rationals along bounded-length paths; the
verdicts are knife-edge at product one, where a logarithm in floating
point could land on the wrong side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dataset import PurchaseDataset
from .rational import as_fraction_vector

ONE = Fraction(1)


@dataclass(frozen=True)
class ProbabilityVector:
    """Strictly positive state probabilities summing to one exactly."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", as_fraction_vector(self.probs))
        if not self.probs:
            raise ValueError("need at least one state")
        if any(p <= 0 for p in self.probs):
            raise ValueError("probabilities must be strictly positive")
        if sum(self.probs) != 1:
            raise ValueError("probabilities must sum to one exactly")

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, index: int) -> Fraction:
        return self.probs[index]


def _has_cycle_product_below_one(
    n: int, edges: list[tuple[int, int, Fraction]]
) -> bool:
    """Multiplicative Bellman-Ford: is there a cycle with edge product < 1?

    Distances start at one everywhere (a virtual source), relax n rounds,
    and any further improvement certifies the cycle. Weights are positive
    rationals, so this mirrors additive shortest paths under log.
    """
    dist = [ONE] * n
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            candidate = dist[u] * w
            if candidate < dist[v]:
                dist[v] = candidate
                changed = True
        if not changed:
            return False
    return any(dist[u] * w < dist[v] for u, v, w in edges)


def check_homothetic(dataset: PurchaseDataset) -> bool:
    """Consistency with a continuous, increasing, homothetic utility.

    Holds exactly when every cycle's product of cross-expenditure ratios
    ``p^t.q^s / p^t.q^t`` is at least one. Scale-invariant in any single
    observation's prices (each cycle factor carries them once above and
    once below the line).
    """
    T = dataset.T
    cross = dataset.cross_matrix
    edges = [
        (t, s, cross[t][s] / cross[t][t])
        for t in range(T)
        for s in range(T)
        if s != t
    ]
    return not _has_cycle_product_below_one(T, edges)


def check_oceu(dataset: PurchaseDataset, probabilities: ProbabilityVector) -> bool:
    """Consistency with objective concave expected utility.

    States have known probabilities and a common concave felicity. For
    every ordered observation pair (including an observation with
    itself), the relevant factor is the best probability-deflated price
    ratio over good pairs where the first quantity strictly exceeds the
    second; the data is consistent exactly when no cycle of such factors
    multiplies above one.
    """
    if len(probabilities) != dataset.L:
        raise ValueError("probability vector length must match the good count")
    T, L = dataset.T, dataset.L
    bundles = dataset.bundles
    prices = dataset.prices
    edges: list[tuple[int, int, Fraction]] = []
    for t in range(T):
        for u in range(T):
            best: Fraction | None = None
            for a in range(L):
                for b in range(L):
                    if bundles[t][a] > bundles[u][b]:
                        factor = (probabilities[b] * prices[t][a]) / (
                            probabilities[a] * prices[u][b]
                        )
                        if best is None or factor > best:
                            best = factor
            if best is not None:
                # Inverted so a product above one becomes a product below one.
                edges.append((t, u, 1 / best))
    return not _has_cycle_product_below_one(T, edges)
