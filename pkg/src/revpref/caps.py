"""Enumeration caps, overridable through ``REVPREF_MAX_ENUM``.

Every combinatorial listing in the package fails loudly (with
:class:`~revpref.errors.CapExceeded`) instead of silently truncating.
The environment variable, when set to an integer, replaces the default
candidate-count ceilings below.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

from .errors import CapExceeded

ENV_VAR = "REVPREF_MAX_ENUM"

# Ordered Bell number of 8: total preorders on 8 observations.
DEFAULT_ORDER_CANDIDATES = 545_835
DEFAULT_MINSET_CANDIDATES = 1_000_000
DEFAULT_INCLUSION_EXCLUSION = 20


@lru_cache(maxsize=None)
def ordered_bell(n: int) -> int:
    """Number of total preorders (ordered set partitions) on n items."""
    if n == 0:
        return 1
    return sum(math.comb(n, k) * ordered_bell(n - k) for k in range(1, n + 1))


def max_enum(default: int) -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be positive")
    return value


def check_order_enumeration(T: int, kind: str) -> int:
    """Gate a full preorder enumeration over T observations; returns the cap."""
    limit = max_enum(DEFAULT_ORDER_CANDIDATES)
    required = ordered_bell(T)
    if required > limit:
        raise CapExceeded(kind, limit, required)
    return limit


def check_candidate_count(required: int, kind: str, default: int) -> int:
    limit = max_enum(default)
    if required > limit:
        raise CapExceeded(kind, limit, required)
    return limit
