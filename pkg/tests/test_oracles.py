from itertools import product

import pytest

from identsweep.dyadic import DyadicCase, compute_terms
from identsweep.exact import DomainError, falling_factorial
from identsweep.identities import eval_theorem_perm
from identsweep.oracles import (
    OracleSizeError,
    count_injections,
    count_injections_hitting,
    dyadic_sum_by_strings,
)


def test_hitting_examples():
    assert count_injections_hitting(1, 2, 3) == 2
    assert count_injections_hitting(2, 2, 4) == 10
    assert count_injections_hitting(0, 1, 3) == 0


def test_hitting_by_hand():
    # ordered pairs from {1..4} avoiding {1, 2}: only (3,4) and (4,3)
    pairs = [p for p in product(range(1, 5), repeat=2) if p[0] != p[1]]
    assert len(pairs) == 12
    assert count_injections_hitting(2, 2, 4) == len(pairs) - 2


def test_count_injections():
    assert count_injections(0, 0) == 1
    assert count_injections(3, 5) == 60


def test_caps():
    with pytest.raises(OracleSizeError):
        count_injections_hitting(1, 1, 11)
    with pytest.raises(DomainError):
        count_injections_hitting(3, 1, 2)
    with pytest.raises(DomainError):
        count_injections_hitting(1, 4, 3)
    with pytest.raises(OracleSizeError):
        dyadic_sum_by_strings(DyadicCase(17, 1))


def test_string_oracle_examples():
    assert dyadic_sum_by_strings(DyadicCase(1, 1)) == 2
    assert dyadic_sum_by_strings(DyadicCase(1, 2)) == 2
    assert dyadic_sum_by_strings(DyadicCase(3, 5)) == 5 * 10


def test_hitting_equals_falling_difference():
    for n in range(1, 9):
        for k in range(1, n + 1):
            for m in range(n + 1):
                assert count_injections_hitting(k, m, n) == falling_factorial(n, k) - falling_factorial(n - m, k)


def test_hitting_matches_theorem_sides():
    for k in range(1, 3):
        for m in range(2 * k, 9):
            for n in range(m + k, 9):
                rec = eval_theorem_perm(k, m, n)
                assert rec.in_domain
                assert count_injections_hitting(k, m, n) == rec.lhs == rec.rhs


def test_string_oracle_matches_terms():
    for j in range(1, 8):
        for k in range(1, 2 ** (j + 1) - 1):
            case = DyadicCase(j, k)
            assert dyadic_sum_by_strings(case) == sum(t.b for t in compute_terms(case))
