"""Exact rational parsing and rendering.

Data files carry plain decimals ("2.5") or integer fractions ("1/3");
both parse to exact :class:`~fractions.Fraction` values, and everything
rendered here parses back to the same rational. No float ever enters a
computation.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction | int | str | float


def as_fraction(value: Rational) -> Fraction:
    """Coerce a rational-like value to an exact ``Fraction``.

    Floats are converted through their shortest decimal repr, so 0.1
    means 1/10 rather than its binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        token = value.strip()
        if not token:
            raise ValueError("empty numeric field")
        return Fraction(token)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def as_fraction_vector(values) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def format_rational(value: Fraction) -> str:
    """Render a rational exactly.

    Integers print plainly, terminating decimals as decimals, everything
    else as "n/d". ``as_fraction(format_rational(x)) == x`` always.
    """
    n, d = value.numerator, value.denominator
    if d == 1:
        return str(n)
    twos = fives = 0
    rest = d
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{n}/{d}"
    digits = max(twos, fives)
    scaled = str(abs(n) * 10**digits // d).rjust(digits + 1, "0")
    sign = "-" if n < 0 else ""
    return f"{sign}{scaled[:-digits]}.{scaled[-digits:]}"
