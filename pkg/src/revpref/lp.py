"""A small exact linear-program solver.

Dense two-phase tableau simplex over :class:`~fractions.Fraction` with
Bland's rule, for problems of the form

    maximize c.x   subject to  A x <= b,  x >= 0

where ``b`` may have any sign. Problem sizes in this package are tiny
(tens of variables), so clarity and exactness win over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalCheckError

ZERO = Fraction(0)
ONE = Fraction(1)


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = ONE / pivot_row[col]
    tableau[row] = [v * inv for v in pivot_row]
    pivot_row = tableau[row]
    for r, other in enumerate(tableau):
        if r != row and other[col] != 0:
            factor = other[col]
            tableau[r] = [v - factor * p for v, p in zip(other, pivot_row)]
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> list[Fraction]:
    """Maximize with objective row ``cost`` (reduced in place); Bland's rule."""
    m = len(basis)
    width = len(cost)
    # Reduce the cost row against the current basis.
    for r, b in enumerate(basis):
        if cost[b] != 0:
            factor = cost[b]
            cost[:] = [v - factor * p for v, p in zip(cost, tableau[r])]
    while True:
        col = next((j for j in range(width - 1) if cost[j] > 0), None)
        if col is None:
            return cost
        best_row = None
        best_ratio = None
        for r in range(m):
            coeff = tableau[r][col]
            if coeff > 0:
                ratio = tableau[r][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = r
        if best_row is None:
            raise Unbounded
        _pivot(tableau, basis, best_row, col)
        factor = cost[col]
        if factor != 0:
            pivot_row = tableau[best_row]
            cost[:] = [v - factor * p for v, p in zip(cost, pivot_row)]


def solve_lp_max(
    objective: Sequence[Fraction],
    constraints: Sequence[Sequence[Fraction]],
    bounds: Sequence[Fraction],
) -> tuple[Fraction, list[Fraction]]:
    """Solve max c.x s.t. A x <= b, x >= 0 exactly.

    Returns (optimal value, a vertex optimizer). Raises
    :class:`Infeasible` / :class:`Unbounded` accordingly.
    """
    m = len(constraints)
    n = len(objective)
    if len(bounds) != m or any(len(row) != n for row in constraints):
        raise ValueError("inconsistent LP dimensions")

    # Columns: n structural, m slack, then artificials as needed, then RHS.
    artificial_rows = [i for i in range(m) if bounds[i] < 0]
    n_art = len(artificial_rows)
    width = n + m + n_art + 1
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {row: n + m + k for k, row in enumerate(artificial_rows)}
    for i in range(m):
        row = [ZERO] * width
        sign = -1 if bounds[i] < 0 else 1
        for j in range(n):
            row[j] = sign * Fraction(constraints[i][j])
        row[n + i] = Fraction(sign)
        row[-1] = sign * Fraction(bounds[i])
        if i in art_col:
            row[art_col[i]] = ONE
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        tableau.append(row)

    if n_art:
        phase1 = [ZERO] * width
        for col in art_col.values():
            phase1[col] = -ONE
        reduced = _run_simplex(tableau, basis, phase1)
        if reduced[-1] != 0:
            raise Infeasible
        # Drive any artificial still in the basis out of it; rows where
        # that is impossible are redundant and get dropped.
        drop: set[int] = set()
        for r in range(m):
            if basis[r] >= n + m:
                col = next((j for j in range(n + m) if tableau[r][j] != 0), None)
                if col is None:
                    drop.add(r)
                else:
                    _pivot(tableau, basis, r, col)
        if drop:
            tableau = [row for r, row in enumerate(tableau) if r not in drop]
            basis = [b for r, b in enumerate(basis) if r not in drop]
        for row in tableau:
            del row[n + m : n + m + n_art]
        width -= n_art

    phase2 = [ZERO] * width
    for j in range(n):
        phase2[j] = Fraction(objective[j])
    reduced = _run_simplex(tableau, basis, phase2)
    solution = [ZERO] * n
    for r, b in enumerate(basis):
        if b < n:
            solution[b] = tableau[r][-1]
    value = -reduced[-1]
    if any(x < 0 for x in solution):
        raise InternalCheckError("simplex produced a negative coordinate")
    return value, solution
