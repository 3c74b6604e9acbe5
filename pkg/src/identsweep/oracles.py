"""Brute-force cross-checks that never touch the arithmetic evaluators.

Injection counts come from explicit enumeration of ordered tuples; the
dyadic sum is rebuilt from binary digit strings. Both are capped at desk
scale and refuse larger inputs rather than running slowly.
"""

from __future__ import annotations

from itertools import permutations

from identsweep.dyadic import DyadicCase
from identsweep.exact import DomainError

ENUMERATION_LIMIT = 10
DYADIC_STRING_LIMIT = 16


class OracleSizeError(ValueError):
    """The instance is too large for exhaustive enumeration."""


def _check_enumerable(k: int, n: int) -> None:
    if k < 0 or n < 0:
        raise DomainError(f"k and n must be nonnegative, got k={k}, n={n}")
    if k > n:
        raise DomainError(f"requires k≤n, got k={k}, n={n}")
    if n > ENUMERATION_LIMIT:
        raise OracleSizeError(f"n={n} exceeds the enumeration limit {ENUMERATION_LIMIT}")


def count_injections(k: int, n: int) -> int:
    """Count ordered k-tuples of distinct elements of {1..n}."""
    _check_enumerable(k, n)
    return sum(1 for _ in permutations(range(1, n + 1), k))


def count_injections_hitting(k: int, m: int, n: int) -> int:
    """Count ordered k-tuples of distinct elements of {1..n} using at least one of {1..m}."""
    _check_enumerable(k, n)
    if not 0 <= m <= n:
        raise DomainError(f"requires 0≤m≤n, got m={m}, n={n}")
    return sum(1 for tup in permutations(range(1, n + 1), k) if any(x <= m for x in tup))


def dyadic_sum_by_strings(case: DyadicCase) -> int:
    if case.j > DYADIC_STRING_LIMIT:
        raise OracleSizeError(f"j={case.j} exceeds the string oracle limit {DYADIC_STRING_LIMIT}")
    total = 0
    for i in range(1, case.a + 1):
        width = len(format(i, "b"))
        digits = format(case.k + i, "b")
        kept = digits[:-width] if len(digits) > width else ""
        total += int(kept + "0" * width, 2)
    return total
