"""Exact evaluators for both sides of each identity, plus the identity registry.

Left and right sides are computed by separate code paths with no shared
simplification, so an error on one side cannot cancel against the other.
Evaluation outside an identity's hypotheses is allowed and flagged through
``VerificationRecord.in_domain``; what is rejected is any point that would
need a falling factorial or binomial with a negative argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from identsweep.dyadic import DyadicCase, verify_dyadic
from identsweep.exact import DomainError, binomial, falling_factorial
from identsweep.records import IdentityId, ParamPoint, VerificationRecord

P = falling_factorial
C = binomial


@dataclass(frozen=True)
class Constraint:
    """A hypothesis written as ``slack(point) >= 0``.

    A slack of -1 means the hypothesis is missed by exactly one unit, which
    is what the boundary sweep probes.
    """

    label: str
    slack: Callable[[ParamPoint], int]

    def satisfied(self, point: ParamPoint) -> bool:
        return self.slack(point) >= 0


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def _nonneg(**args: int) -> None:
    for name, value in args.items():
        _require(value >= 0, f"{name} must be nonnegative, got {name}={value}")


# --- classical identities -------------------------------------------------


def eval_vandermonde(m: int, n: int, k: int) -> VerificationRecord:
    _nonneg(m=m, n=n, k=k)
    lhs = C(m + n, k)
    rhs = 0
    for r in range(k + 1):
        rhs += C(m, r) * C(n, k - r)
    return VerificationRecord.build(IdentityId.VANDERMONDE, ParamPoint(k=k, m=m, n=n), lhs, rhs, True)


def eval_li_shanlan(n: int, k: int) -> VerificationRecord:
    _nonneg(n=n, k=k)
    lhs = C(n + k, k) ** 2
    rhs = 0
    for r in range(k + 1):
        rhs += C(k, r) ** 2 * C(n + 2 * k - r, 2 * k)
    return VerificationRecord.build(IdentityId.LI_SHANLAN, ParamPoint(k=k, n=n), lhs, rhs, True)


def eval_injection_diff(k: int, m: int, n: int) -> VerificationRecord:
    """P(n,k) - P(n-m,k) against the sum over r of C(k,r) P(m,r) P(n-m,k-r)."""
    _nonneg(k=k, m=m, n=n)
    _require(k >= 1, f"requires k≥1, got k={k}")
    _require(m <= n, f"requires m≤n, got m={m}, n={n}")
    lhs = P(n, k) - P(n - m, k)
    rhs = 0
    for r in range(1, k + 1):
        rhs += C(k, r) * P(m, r) * P(n - m, k - r)
    point = ParamPoint(k=k, m=m, n=n)
    return VerificationRecord.build(IdentityId.INJECTION_DIFF, point, lhs, rhs, _in_domain(IdentityId.INJECTION_DIFF, point))


# --- permutation theorem, its proof step, and the conjecture ---------------


def _check_perm_args(k: int, m: int, n: int) -> None:
    _require(k >= 1, f"requires k≥1, got k={k}")
    _require(m >= 1, f"requires m≥1, got m={m}")
    _require(n > m, f"requires m<n, got m={m}, n={n}")
    # the summand P(m-r-1, r-1) at r = k needs m-k-1 >= 0
    _require(m >= k + 1, f"requires m≥k+1 so every falling factorial index is nonnegative, got k={k}, m={m}")


def eval_theorem_perm(k: int, m: int, n: int) -> VerificationRecord:
    """P(n,k) - P(n-m,k) = m * sum_{r=1..k} C(k,r) P(m-r-1, r-1) P(n-m+r, k-r)."""
    _check_perm_args(k, m, n)
    lhs = P(n, k) - P(n - m, k)
    total = 0
    for r in range(1, k + 1):
        total += C(k, r) * P(m - r - 1, r - 1) * P(n - m + r, k - r)
    rhs = m * total
    point = ParamPoint(k=k, m=m, n=n)
    return VerificationRecord.build(IdentityId.THEOREM_PERM, point, lhs, rhs, _in_domain(IdentityId.THEOREM_PERM, point))


def _check_conjecture_args(k: int, m: int, n: int, i: int) -> None:
    for name, value in (("k", k), ("m", m), ("n", n), ("i", i)):
        _require(value >= 1, f"requires {name}≥1, got {name}={value}")
    _require(i <= k, f"requires 1≤i≤k, got i={i}, k={k}")
    _require(n - k - m >= 0, f"requires n−k−m≥0, got k={k}, m={m}, n={n}")
    # r + s reaches k, and P(m-r-s-1, r-1) then needs m-k-1 >= 0
    _require(m >= k + 1, f"requires m≥k+1 so every falling factorial index is nonnegative, got k={k}, m={m}")


def eval_conjecture(k: int, m: int, n: int, i: int) -> VerificationRecord:
    """The conjectured generalization of the permutation theorem (i = k recovers it at n - k)."""
    _check_conjecture_args(k, m, n, i)
    lhs = P(k, k - i) * (P(n - k, i) - P(n - k - m, i))
    total = 0
    for r in range(1, i + 1):
        for s in range(k - i + 1):
            total += (
                C(i, r)
                * C(k - i, s)
                * P(m - r - s - 1, r - 1)
                * P(r + s - 1, s)
                * P(n - k + r + s - m, i - r)
                * P(k - r - s, k - i - s)
            )
    rhs = m * total
    point = ParamPoint(k=k, m=m, n=n, i=i)
    return VerificationRecord.build(IdentityId.CONJECTURE_GEN, point, lhs, rhs, _in_domain(IdentityId.CONJECTURE_GEN, point))


def proof_reindex_terms(k: int, m: int, n: int) -> tuple[list[int], list[int]]:
    """Summands of the two sums equated at the end of the induction step, by ascending r."""
    _require(k >= 1, f"requires k≥1, got k={k}")
    _require(m >= 2, f"requires m≥2, got m={m}")
    _require(n > m, f"requires m<n, got m={m}, n={n}")
    _require(m >= k + 1, f"requires m≥k+1 so every falling factorial index is nonnegative, got k={k}, m={m}")
    left = [C(k, r - 1) * P(m - r - 1, r - 1) * P(n - m + r - 1, k - r) for r in range(1, k + 1)]
    right = [C(k, r) * P(n - m + k - r, r - 1) * P(m - k + r - 2, k - r) for r in range(1, k + 1)]
    return left, right


def eval_proof_reindex(k: int, m: int, n: int) -> VerificationRecord:
    left, right = proof_reindex_terms(k, m, n)
    point = ParamPoint(k=k, m=m, n=n)
    return VerificationRecord.build(
        IdentityId.PROOF_REINDEX, point, sum(left), sum(right), _in_domain(IdentityId.PROOF_REINDEX, point)
    )


# --- registry --------------------------------------------------------------


@dataclass(frozen=True)
class IdentityEntry:
    identity: IdentityId
    arity: tuple[str, ...]
    evaluate: Callable[[ParamPoint], VerificationRecord]
    constraints: tuple[Constraint, ...]
    condition: str
    evaluable: Callable[[ParamPoint], bool]

    def in_domain(self, point: ParamPoint) -> bool:
        return all(c.satisfied(point) for c in self.constraints)

    def violated(self, point: ParamPoint) -> list[str]:
        return [c.label for c in self.constraints if not c.satisfied(point)]


def _dyadic_eval(p: ParamPoint) -> VerificationRecord:
    return verify_dyadic(DyadicCase(p.j, p.k))


def _eta(p: ParamPoint) -> int:
    return (1 << (p.j + 1)) - 1


_REGISTRY: dict[IdentityId, IdentityEntry] = {
    entry.identity: entry
    for entry in (
        IdentityEntry(
            IdentityId.VANDERMONDE,
            ("m", "n", "k"),
            lambda p: eval_vandermonde(p.m, p.n, p.k),
            (),
            "m, n, k ≥ 0",
            lambda p: min(p.m, p.n, p.k) >= 0,
        ),
        IdentityEntry(
            IdentityId.LI_SHANLAN,
            ("n", "k"),
            lambda p: eval_li_shanlan(p.n, p.k),
            (),
            "n, k ≥ 0",
            lambda p: min(p.n, p.k) >= 0,
        ),
        IdentityEntry(
            IdentityId.INJECTION_DIFF,
            ("k", "m", "n"),
            lambda p: eval_injection_diff(p.k, p.m, p.n),
            (Constraint("k≤n", lambda p: p.n - p.k),),
            "k≤n",
            lambda p: p.k >= 1 and 0 <= p.m <= p.n,
        ),
        IdentityEntry(
            IdentityId.THEOREM_PERM,
            ("k", "m", "n"),
            lambda p: eval_theorem_perm(p.k, p.m, p.n),
            (
                Constraint("1<2k", lambda p: 2 * p.k - 2),
                Constraint("2k≤m", lambda p: p.m - 2 * p.k),
                Constraint("k≤n−m", lambda p: p.n - p.m - p.k),
            ),
            "1<2k≤m and k≤n−m",
            lambda p: p.k >= 1 and p.m >= p.k + 1 and p.n > p.m,
        ),
        IdentityEntry(
            IdentityId.CONJECTURE_GEN,
            ("k", "m", "n", "i"),
            lambda p: eval_conjecture(p.k, p.m, p.n, p.i),
            (
                Constraint("1<2k", lambda p: 2 * p.k - 2),
                Constraint("2k≤n−m", lambda p: p.n - p.m - 2 * p.k),
                Constraint("2k≤m", lambda p: p.m - 2 * p.k),
                Constraint("1≤i", lambda p: p.i - 1),
                Constraint("i≤k", lambda p: p.k - p.i),
            ),
            "1<2k≤n−m, 1<2k≤m and 1≤i≤k",
            lambda p: p.k >= 1 and 1 <= p.i <= p.k and p.m >= p.k + 1 and p.n - p.k - p.m >= 0,
        ),
        IdentityEntry(
            IdentityId.PROOF_REINDEX,
            ("k", "m", "n"),
            lambda p: eval_proof_reindex(p.k, p.m, p.n),
            (
                Constraint("2(k+1)≤m", lambda p: p.m - 2 * p.k - 2),
                Constraint("k≤n−m", lambda p: p.n - p.m - p.k),
            ),
            "2(k+1)≤m and k≤n−m",
            lambda p: p.k >= 1 and p.m >= 2 and p.m >= p.k + 1 and p.n > p.m,
        ),
        IdentityEntry(
            IdentityId.DYADIC,
            ("j", "k"),
            _dyadic_eval,
            (
                Constraint("1≤k", lambda p: p.k - 1),
                Constraint("k<η", lambda p: _eta(p) - 1 - p.k),
            ),
            "1≤k<η=2^(j+1)−1",
            lambda p: p.j >= 1 and 1 <= p.k < _eta(p),
        ),
    )
}


def registry_lookup(identity: IdentityId | str) -> IdentityEntry:
    if isinstance(identity, str):
        identity = IdentityId.parse(identity)
    try:
        return _REGISTRY[identity]
    except KeyError:
        raise LookupError(f"no registry entry for {identity!r}") from None


def _in_domain(identity: IdentityId, point: ParamPoint) -> bool:
    return _REGISTRY[identity].in_domain(point)


def evaluate(identity: IdentityId | str, point: ParamPoint) -> VerificationRecord:
    return registry_lookup(identity).evaluate(point)


def make_point(identity: IdentityId | str, params: dict[str, Optional[int]]) -> ParamPoint:
    """Build a point from named values, rejecting missing or extra parameters."""
    entry = registry_lookup(identity)
    given = {name for name, value in params.items() if value is not None}
    missing = [name for name in entry.arity if name not in given]
    extra = sorted(given - set(entry.arity))
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(missing))
        if extra:
            parts.append("unexpected " + ", ".join(extra))
        raise DomainError(f"{entry.identity.value} takes ({', '.join(entry.arity)}): {'; '.join(parts)}")
    return ParamPoint(**{name: params[name] for name in entry.arity})
