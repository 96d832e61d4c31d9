"""Piecewise-concave utilities and exact budget maximization.

The utility value is the minimum of finitely many affine pieces with
strictly positive gradients, which keeps every constructed utility
continuous and increasing. Budget maximization is an exact LP: maximize
z subject to z <= const_k + grad_k.x for every piece, p.x <= m, x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dataset import Bundle, PriceVector
from .lp import ZERO, ONE, solve_lp_max
from .rational import as_fraction, as_fraction_vector


@dataclass(frozen=True)
class PiecewiseConcaveUtility:
    """min over pieces of (constant + gradient . x)."""

    pieces: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        coerced = tuple(
            (as_fraction(c), as_fraction_vector(g)) for c, g in self.pieces
        )
        object.__setattr__(self, "pieces", coerced)
        if not self.pieces:
            raise ValueError("utility needs at least one piece")
        L = len(self.pieces[0][1])
        if any(len(g) != L for _, g in self.pieces):
            raise ValueError("pieces disagree on the number of goods")
        if any(any(gi <= 0 for gi in g) for _, g in self.pieces):
            raise ValueError("gradients must be strictly positive")

    @property
    def n_goods(self) -> int:
        return len(self.pieces[0][1])

    def value(self, bundle: Bundle | Sequence[Fraction]) -> Fraction:
        xs = bundle.quantities if isinstance(bundle, Bundle) else as_fraction_vector(bundle)
        if len(xs) != self.n_goods:
            raise ValueError("bundle dimension mismatch")
        return min(
            c + sum((gi * xi for gi, xi in zip(g, xs)), ZERO) for c, g in self.pieces
        )


@dataclass(frozen=True)
class BudgetOptimum:
    argmax: Bundle
    value: Fraction


def maximize_on_budget(
    utility: PiecewiseConcaveUtility, price: PriceVector, budget: Fraction
) -> BudgetOptimum:
    """Exact maximum of the utility over the budget set B(price, budget).

    Solved as an LP over (x, z+, z-) with z = z+ - z- free; the returned
    argmax is a vertex and, because gradients are positive, exhausts the
    budget whenever it is positive.
    """
    budget = as_fraction(budget)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    L = utility.n_goods
    if len(price) != L:
        raise ValueError("price dimension mismatch")
    # Variables: x_1..x_L, z_plus, z_minus.
    objective = [ZERO] * L + [ONE, -ONE]
    constraints: list[list[Fraction]] = []
    bounds: list[Fraction] = []
    for const, grad in utility.pieces:
        constraints.append([-g for g in grad] + [ONE, -ONE])
        bounds.append(const)
    constraints.append(list(price.prices) + [ZERO, ZERO])
    bounds.append(budget)
    value, solution = solve_lp_max(objective, constraints, bounds)
    return BudgetOptimum(Bundle(tuple(solution[:L])), value)
