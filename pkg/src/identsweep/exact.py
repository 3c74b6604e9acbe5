"""Exact integer kernel: factorials, falling factorials and binomials.

Python ints are unbounded, so every value here is exact. Negative arguments
are rejected outright; an index larger than the population gives 0.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


def _check_nonneg(**args: int) -> None:
    for name, value in args.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise DomainError(f"{name} must be an integer, got {value!r}")
        if value < 0:
            raise DomainError(f"{name} must be nonnegative, got {name}={value}")


def falling_factorial(n: int, k: int) -> int:
    """Return n(n-1)...(n-k+1), the number of injections of a k-set into an n-set.

    >>> falling_factorial(5, 2)
    20
    >>> falling_factorial(3, 5)
    0
    """
    _check_nonneg(n=n, k=k)
    if k > n:
        return 0
    result = 1
    for factor in range(n - k + 1, n + 1):
        result *= factor
    return result


def factorial(n: int) -> int:
    _check_nonneg(n=n)
    return falling_factorial(n, n)


def binomial(n: int, k: int) -> int:
    """Return C(n, k), or 0 when k > n."""
    _check_nonneg(n=n, k=k)
    if k > n:
        return 0
    k = min(k, n - k)
    # running product stays integral: after step t it equals C(n-k+t, t)
    result = 1
    for t in range(1, k + 1):
        result = result * (n - k + t) // t
    return result
