"""Deterministic synthetic purchase panels.

Prices are drawn from a rational grid inside the configured range and
the exact utility-maximizing bundle is computed in closed form for the
chosen family. Noise then slides the purchase along the budget frontier:
the recorded bundle is the optimum blended at weight e_t with a random
axis vertex of the budget line, so expenditure is preserved exactly and
the drawn efficiency bounds the utility share the consumer retains.
At e_t = 1 the consumer optimizes exactly and the panel is consistent;
lower draws produce genuine violations. (Radially contracting the
optimum instead would not: these families are homothetic, so a
contracted optimum is still optimal for its own expenditure and the
contracted data stays rationalizable.) Everything is a function of the
seed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .dataset import Bundle, Observation, PriceVector, PurchaseDataset
from .rational import Rational, as_fraction, as_fraction_vector

GRID = 1000  # resolution of the rational draws


class UtilityFamily(str, Enum):
    COBB_DOUGLAS = "cobb-douglas"
    CES = "ces"
    LEONTIEF = "leontief"


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything a synthetic panel draw depends on.

    ``utility_params``: the family's weights; for the CES family one
    trailing extra entry gives the (integer) demand-elasticity exponent
    so demand stays exactly rational. ``efficiency_noise`` bounds the
    per-observation efficiency draw; [1, 1] produces exactly optimizing,
    hence consistent, data. The noise lower bound must be positive
    because a zero-efficiency observation would buy the zero bundle.
    """

    T: int
    L: int
    utility_family: UtilityFamily
    utility_params: tuple[Fraction, ...]
    efficiency_noise: tuple[Fraction, Fraction]
    price_range: tuple[Fraction, Fraction]
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "utility_family", UtilityFamily(self.utility_family))
        object.__setattr__(
            self, "utility_params", as_fraction_vector(self.utility_params)
        )
        object.__setattr__(
            self,
            "efficiency_noise",
            tuple(as_fraction(v) for v in self.efficiency_noise),
        )
        object.__setattr__(
            self, "price_range", tuple(as_fraction(v) for v in self.price_range)
        )
        if self.T < 1 or self.L < 1:
            raise ValueError("T and L must be at least 1")
        lo, hi = self.price_range
        if not 0 < lo <= hi:
            raise ValueError("price range must be positive and ordered")
        nlo, nhi = self.efficiency_noise
        if not 0 < nlo <= nhi <= 1:
            raise ValueError("noise bounds must satisfy 0 < lo <= hi <= 1")
        self._validate_params()

    def _validate_params(self):
        params = self.utility_params
        family = self.utility_family
        if family is UtilityFamily.CES:
            if len(params) != self.L + 1:
                raise ValueError("CES needs L weights plus an elasticity exponent")
            weights, sigma = params[:-1], params[-1]
            if sigma.denominator != 1 or sigma < 1:
                raise ValueError("CES elasticity exponent must be a positive integer")
        else:
            if len(params) != self.L:
                raise ValueError(f"{family.value} needs exactly L weights")
            weights = params
        if any(w <= 0 for w in weights):
            raise ValueError("utility weights must be strictly positive")


def _draw(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randint(0, GRID), GRID)


def _demand(spec: GeneratorSpec, price: PriceVector, budget: Fraction) -> Bundle:
    params = spec.utility_params
    if spec.utility_family is UtilityFamily.COBB_DOUGLAS:
        total = sum(params)
        return Bundle(tuple(w / total * budget / p for w, p in zip(params, price.prices)))
    if spec.utility_family is UtilityFamily.CES:
        weights, sigma = params[:-1], int(params[-1])
        shares = [(w / p) ** sigma for w, p in zip(weights, price.prices)]
        denom = sum(p * s for p, s in zip(price.prices, shares))
        return Bundle(tuple(budget * s / denom for s in shares))
    coeffs = params
    scale = budget / price.dot(coeffs)
    return Bundle(tuple(scale * a for a in coeffs))


def synthesize(spec: GeneratorSpec) -> PurchaseDataset:
    """Draw one panel; identical seeds give identical datasets."""
    rng = random.Random(spec.seed)
    observations = []
    for _ in range(spec.T):
        price = PriceVector(
            tuple(_draw(rng, *spec.price_range) for _ in range(spec.L))
        )
        budget = spec.L * _draw(rng, Fraction(1), Fraction(2))
        optimum = _demand(spec, price, budget)
        share = _draw(rng, *spec.efficiency_noise)
        corner = rng.randrange(spec.L)
        bought = Bundle(
            tuple(
                share * q + (0 if i != corner else (1 - share) * budget / price[i])
                for i, q in enumerate(optimum.quantities)
            )
        )
        observations.append(Observation(price, bought))
    return PurchaseDataset(tuple(observations))
