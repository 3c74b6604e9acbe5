"""Binary truncation sums over the all-ones numbers 2^(j+1) - 1.

For k < eta = 2^(j+1) - 1 and a = eta - k, each i in 1..a contributes
b_i: the binary expansion of k + i with its t_i lowest digits cleared,
where t_i is the bit length of i. The sum of the b_i equals k * a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from identsweep.exact import DomainError
from identsweep.records import IdentityId, ParamPoint, VerificationRecord


@dataclass(frozen=True)
class DyadicCase:
    j: int
    k: int

    def __post_init__(self) -> None:
        if self.j < 1:
            raise DomainError(f"j must be at least 1, got j={self.j}")
        if not 1 <= self.k < self.eta:
            raise DomainError(f"requires 1≤k<η with η={self.eta}, got k={self.k}")

    @property
    def eta(self) -> int:
        return (1 << (self.j + 1)) - 1

    @property
    def a(self) -> int:
        return self.eta - self.k


@dataclass(frozen=True)
class TruncationTerm:
    i: int
    t: int
    b: int


def bit_length(i: int) -> int:
    """Return the unique t with 2^(t-1) <= i < 2^t."""
    if i <= 0:
        raise DomainError(f"bit length needs i >= 1, got i={i}")
    return i.bit_length()


def truncate_low_bits(x: int, t: int) -> int:
    """Clear the ``t`` lowest binary digits of ``x``."""
    if x < 0:
        raise DomainError(f"x must be nonnegative, got x={x}")
    if t < 0:
        raise DomainError(f"t must be nonnegative, got t={t}")
    return (x >> t) << t


def compute_terms(case: DyadicCase) -> list[TruncationTerm]:
    terms = []
    for i in range(1, case.a + 1):
        t = bit_length(i)
        terms.append(TruncationTerm(i, t, truncate_low_bits(case.k + i, t)))
    return terms


# above this j the sum of the b_i may exceed int64
_INT64_MAX_J = 29


def term_arrays(case: DyadicCase) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Columns (i, t, b) of :func:`compute_terms` as int64 arrays."""
    if case.j > _INT64_MAX_J:
        raise DomainError(f"j={case.j} too large for int64 term arrays (max {_INT64_MAX_J})")
    a = case.a
    i = np.arange(1, a + 1, dtype=np.int64)
    # i in [2^(t-1), 2^t) has bit length t; fill block by block
    widths = np.arange(1, a.bit_length() + 1, dtype=np.int64)
    t = np.repeat(widths, 1 << (widths - 1))[:a]
    b = ((case.k + i) >> t) << t
    return i, t, b


def dyadic_rhs(case: DyadicCase) -> int:
    if case.j > _INT64_MAX_J:
        return sum(term.b for term in compute_terms(case))
    return int(term_arrays(case)[2].sum())


def verify_dyadic(case: DyadicCase) -> VerificationRecord:
    lhs = case.k * case.a
    rhs = dyadic_rhs(case)
    return VerificationRecord.build(IdentityId.DYADIC, ParamPoint(k=case.k, j=case.j), lhs, rhs, in_domain=True)


def proof_case(case: DyadicCase) -> int:
    """Classify (j, k) into the four cases of the induction step from j-1 to j.

    1: k below 2^j - 1;  2: k == 2^j - 1;  3: k == 2^j;  4: k above 2^j.
    """
    half = 1 << case.j
    if case.k < half - 1:
        return 1
    if case.k == half - 1:
        return 2
    if case.k == half:
        return 3
    return 4
