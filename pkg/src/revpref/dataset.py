"""Exact-rational purchase data and its CSV round-trip.

A purchase dataset records T buying decisions over L goods: at each
observation the consumer bought bundle q at strictly positive prices p.
All values are exact :class:`~fractions.Fraction`s. Exactness is a hard
contract here, not an optimization: several verdicts downstream (weak
vs. strict revealed preference, weak vs. strong cycles) flip on exact
expenditure ties that floating point cannot represent reliably.

CSV schema: header ``t,p1..pL,q1..qL``, one row per observation, fields
either decimal numbers or ``a/b`` integer fractions, UTF-8, comma
separated. The ``t`` column is informational; row order is what defines
observation order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DatasetError
from .rational import as_fraction_vector, format_rational


@dataclass(frozen=True)
class Bundle:
    """A consumption bundle: nonnegative quantities for L >= 1 goods."""

    quantities: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "quantities", as_fraction_vector(self.quantities))
        if len(self.quantities) < 1:
            raise ValueError("bundle needs at least one good")
        if any(q < 0 for q in self.quantities):
            raise ValueError("bundle quantities must be nonnegative")

    def __len__(self) -> int:
        return len(self.quantities)

    def __getitem__(self, index: int) -> Fraction:
        return self.quantities[index]

    @property
    def is_zero(self) -> bool:
        return all(q == 0 for q in self.quantities)

    def dominates(self, other: "Bundle") -> bool:
        """Componentwise >=."""
        return all(a >= b for a, b in zip(self.quantities, other.quantities))

    def strictly_dominates(self, other: "Bundle") -> bool:
        """Componentwise >= with at least one strict coordinate."""
        return self.dominates(other) and self.quantities != other.quantities


@dataclass(frozen=True)
class PriceVector:
    """Strictly positive prices for L goods."""

    prices: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "prices", as_fraction_vector(self.prices))
        if len(self.prices) < 1:
            raise ValueError("price vector needs at least one good")
        if any(p <= 0 for p in self.prices):
            raise ValueError("prices must be strictly positive")

    def __len__(self) -> int:
        return len(self.prices)

    def __getitem__(self, index: int) -> Fraction:
        return self.prices[index]

    def dot(self, bundle: Bundle | Sequence[Fraction]) -> Fraction:
        values = bundle.quantities if isinstance(bundle, Bundle) else bundle
        if len(values) != len(self.prices):
            raise ValueError("price/bundle length mismatch")
        return sum((p * q for p, q in zip(self.prices, values)), Fraction(0))


@dataclass(frozen=True)
class Observation:
    """One purchase decision: a bundle bought at posted prices.

    The bundle may not be the zero vector, which together with positive
    prices forces strictly positive expenditure.
    """

    price: PriceVector
    quantity: Bundle

    def __post_init__(self):
        if len(self.price) != len(self.quantity):
            raise ValueError("price and quantity dimensions differ")
        if self.quantity.is_zero:
            raise ValueError("bundle must not be the zero vector")

    @property
    def expenditure(self) -> Fraction:
        return self.price.dot(self.quantity)


@dataclass(frozen=True)
class PurchaseDataset:
    """An ordered series of observations sharing one good space."""

    observations: tuple[Observation, ...]

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        if len(self.observations) < 1:
            raise ValueError("dataset needs at least one observation")
        L = len(self.observations[0].price)
        if any(len(obs.price) != L for obs in self.observations):
            raise ValueError("observations disagree on the number of goods")

    @classmethod
    def from_lists(cls, prices: Iterable, quantities: Iterable) -> "PurchaseDataset":
        """Build from parallel iterables of price rows and quantity rows."""
        obs = tuple(
            Observation(PriceVector(tuple(p)), Bundle(tuple(q)))
            for p, q in zip(prices, quantities, strict=True)
        )
        return cls(obs)

    @property
    def T(self) -> int:
        return len(self.observations)

    @property
    def L(self) -> int:
        return len(self.observations[0].price)

    @property
    def bundles(self) -> tuple[Bundle, ...]:
        return tuple(obs.quantity for obs in self.observations)

    @property
    def prices(self) -> tuple[PriceVector, ...]:
        return tuple(obs.price for obs in self.observations)

    def expenditure(self, t: int) -> Fraction:
        return self.cross_matrix[t][t]

    def cross(self, t: int, s: int) -> Fraction:
        """Cost of observation s's bundle at observation t's prices."""
        return self.cross_matrix[t][s]

    @cached_property
    def cross_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(obs.price.dot(other.quantity) for other in self.observations)
            for obs in self.observations
        )

    def restricted(self, keep: Sequence[int]) -> "PurchaseDataset":
        """Sub-dataset with the given observation indices, original order kept."""
        kept = sorted(set(keep))
        if not kept:
            raise ValueError("restriction must keep at least one observation")
        return PurchaseDataset(tuple(self.observations[i] for i in kept))

    def with_bundles(self, bundles: Sequence[Bundle]) -> "PurchaseDataset":
        """Same prices, replacement bundles (used by perturbation routines)."""
        if len(bundles) != self.T:
            raise ValueError("need exactly one bundle per observation")
        return PurchaseDataset(
            tuple(Observation(obs.price, b) for obs, b in zip(self.observations, bundles))
        )


def _header(L: int) -> list[str]:
    return ["t"] + [f"p{i}" for i in range(1, L + 1)] + [f"q{i}" for i in range(1, L + 1)]


def parse_csv(text: str | bytes) -> PurchaseDataset:
    """Parse schema-conformant CSV into a dataset of exact rationals.

    Malformed rows, nonpositive prices, all-zero bundles and inconsistent
    column counts raise :class:`DatasetError` carrying the data-row
    number. Decimal fields are parsed as exact ratios of integers.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise DatasetError("empty file")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 3 or (len(header) - 1) % 2 != 0:
        raise DatasetError(f"header must be t,p1..pL,q1..qL, got {header!r}")
    L = (len(header) - 1) // 2
    if header != _header(L):
        raise DatasetError(f"header must be {','.join(_header(L))}, got {','.join(header)}")
    body = rows[1:]
    if not body:
        raise DatasetError("empty dataset: no observation rows")
    observations = []
    for number, row in enumerate(body, start=1):
        if len(row) != 1 + 2 * L:
            raise DatasetError(
                f"expected {1 + 2 * L} columns, got {len(row)}", row=number
            )
        try:
            prices = PriceVector(tuple(row[1 : 1 + L]))
            bundle = Bundle(tuple(row[1 + L :]))
            observations.append(Observation(prices, bundle))
        except (ValueError, ZeroDivisionError) as exc:
            raise DatasetError(str(exc), row=number) from exc
    return PurchaseDataset(tuple(observations))


def serialize_csv(dataset: PurchaseDataset) -> str:
    """Emit schema-conformant CSV; ``parse_csv(serialize_csv(D)) == D``.

    Rationals render as decimals when terminating and as ``a/b``
    otherwise, so the round trip is exact.
    """
    lines = [",".join(_header(dataset.L))]
    for t, obs in enumerate(dataset.observations, start=1):
        fields = [str(t)]
        fields += [format_rational(p) for p in obs.price.prices]
        fields += [format_rational(q) for q in obs.quantity.quantities]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"
