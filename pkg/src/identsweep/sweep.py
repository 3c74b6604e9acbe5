"""Exhaustive parameter sweeps with deterministic, worker-count independent output.

Points are enumerated in lexicographic (k, m, n, i) order ((j, k) for the
dyadic sum), cut into contiguous chunks, and evaluated either inline or on a
process pool. Chunk results are released strictly in submission order, so
the record stream is identical for any number of workers.
"""

from __future__ import annotations

import enum
import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import islice
from typing import Iterable, Iterator, Optional, TextIO

from identsweep import oracles
from identsweep.dyadic import DyadicCase
from identsweep.identities import evaluate, registry_lookup
from identsweep.records import IdentityId, ParamPoint, VerificationRecord
from identsweep.report import csv_header, csv_line, csv_row, jsonl_line

log = logging.getLogger(__name__)

ORACLE_N_LIMIT = 8


class SpecError(ValueError):
    """Malformed sweep bounds or options."""


class ConstraintMode(enum.Enum):
    IN_DOMAIN_ONLY = "in-domain"
    INCLUDE_BOUNDARY = "include-boundary"


class OutputFormat(enum.Enum):
    JSONL = "jsonl"
    CSV = "csv"
    SUMMARY = "summary"


# smallest n (j for the dyadic sum) admitting an in-domain point
_MIN_BOUND = {
    IdentityId.VANDERMONDE: 0,
    IdentityId.LI_SHANLAN: 0,
    IdentityId.INJECTION_DIFF: 1,
    IdentityId.THEOREM_PERM: 3,
    IdentityId.CONJECTURE_GEN: 4,
    IdentityId.PROOF_REINDEX: 5,
    IdentityId.DYADIC: 1,
}


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep. ``n_max`` is required except for the dyadic sum, which takes ``j_max``."""

    identity: IdentityId
    n_max: Optional[int] = None
    k_max: Optional[int] = None
    m_max: Optional[int] = None
    j_max: Optional[int] = None
    constraint_mode: ConstraintMode = ConstraintMode.IN_DOMAIN_ONLY
    workers: int = 1
    output: OutputFormat = OutputFormat.SUMMARY

    def __post_init__(self) -> None:
        for name in ("n_max", "k_max", "m_max", "j_max"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or value < 0):
                raise SpecError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.workers < 1:
            raise SpecError(f"workers must be at least 1, got {self.workers}")
        floor = _MIN_BOUND[self.identity]
        if self.identity is IdentityId.DYADIC:
            if self.j_max is None:
                raise SpecError("dyadic sweeps need j_max")
            if self.j_max < floor:
                raise SpecError(f"j_max={self.j_max} admits no point; need j_max≥{floor}")
        else:
            if self.n_max is None:
                raise SpecError(f"{self.identity.value} sweeps need n_max")
            if self.n_max < floor:
                raise SpecError(f"n_max={self.n_max} admits no in-domain point; need n_max≥{floor}")
            if self.j_max is not None:
                raise SpecError(f"j_max does not apply to {self.identity.value}")

    @property
    def bound_k(self) -> int:
        if self.k_max is not None:
            return self.k_max
        if self.identity is IdentityId.DYADIC:
            return (1 << (self.j_max + 1)) - 2
        return self.n_max

    @property
    def bound_m(self) -> int:
        return self.n_max if self.m_max is None else self.m_max


@dataclass
class SweepReport:
    spec: SweepSpec
    points_evaluated: int = 0
    failures: list[VerificationRecord] = field(default_factory=list)
    boundary_failures: list[VerificationRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def summary(self) -> dict:
        return {
            "identity": self.spec.identity.value,
            "mode": self.spec.constraint_mode.value,
            "workers": self.spec.workers,
            "points_evaluated": self.points_evaluated,
            "failures": len(self.failures),
            "boundary_failures": len(self.boundary_failures),
            "wall_time_s": round(self.wall_time, 3),
        }


# --- enumeration -------------------------------------------------------------


def _in_domain_points(spec: SweepSpec) -> Iterator[ParamPoint]:
    ident = spec.identity
    K, M = spec.bound_k, spec.bound_m
    N = spec.n_max
    if ident is IdentityId.THEOREM_PERM:
        for k in range(1, K + 1):
            for m in range(2 * k, M + 1):
                for n in range(m + k, N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    elif ident is IdentityId.CONJECTURE_GEN:
        for k in range(1, K + 1):
            for m in range(2 * k, M + 1):
                for n in range(m + 2 * k, N + 1):
                    for i in range(1, k + 1):
                        yield ParamPoint(k=k, m=m, n=n, i=i)
    elif ident is IdentityId.PROOF_REINDEX:
        for k in range(1, K + 1):
            for m in range(2 * k + 2, M + 1):
                for n in range(m + k, N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    elif ident is IdentityId.INJECTION_DIFF:
        for k in range(1, K + 1):
            for m in range(0, M + 1):
                for n in range(max(m, k), N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    elif ident is IdentityId.VANDERMONDE:
        for k in range(0, K + 1):
            for m in range(0, M + 1):
                for n in range(0, N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    elif ident is IdentityId.LI_SHANLAN:
        for k in range(0, K + 1):
            for n in range(0, N + 1):
                yield ParamPoint(k=k, n=n)
    elif ident is IdentityId.DYADIC:
        for j in range(1, spec.j_max + 1):
            for k in range(1, min(K, (1 << (j + 1)) - 2) + 1):
                yield ParamPoint(k=k, j=j)
    else:  # pragma: no cover
        raise SpecError(f"no enumerator for {ident}")


def _candidate_box(spec: SweepSpec) -> Iterator[ParamPoint]:
    """A superset of domain plus boundary shell, in enumeration order."""
    ident = spec.identity
    K, M = spec.bound_k, spec.bound_m
    N = spec.n_max
    if ident is IdentityId.THEOREM_PERM or ident is IdentityId.PROOF_REINDEX:
        for k in range(1, K + 1):
            for m in range(k + 1, M + 1):
                for n in range(m + 1, N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    elif ident is IdentityId.CONJECTURE_GEN:
        for k in range(1, K + 1):
            for m in range(k + 1, M + 1):
                for n in range(m + k, N + 1):
                    for i in range(1, k + 1):
                        yield ParamPoint(k=k, m=m, n=n, i=i)
    elif ident is IdentityId.INJECTION_DIFF:
        for k in range(1, K + 1):
            for m in range(0, M + 1):
                for n in range(m, N + 1):
                    yield ParamPoint(k=k, m=m, n=n)
    else:
        # no hypotheses beyond the evaluator's own preconditions: the shell is empty
        yield from _in_domain_points(spec)


def _boundary_or_domain(spec: SweepSpec, point: ParamPoint) -> bool:
    entry = registry_lookup(spec.identity)
    if not entry.evaluable(point):
        return False
    slacks = [c.slack(point) for c in entry.constraints]
    misses = [s for s in slacks if s < 0]
    return not misses or misses == [-1]


def enumerate_domain(spec: SweepSpec) -> Iterator[ParamPoint]:
    """Yield every point of the sweep in canonical order.

    In INCLUDE_BOUNDARY mode the stream also contains each evaluable point
    that misses exactly one hypothesis by exactly one unit.
    """
    if spec.constraint_mode is ConstraintMode.IN_DOMAIN_ONLY:
        return _in_domain_points(spec)
    return (p for p in _candidate_box(spec) if _boundary_or_domain(spec, p))


def _span(lo: int, hi: int, c: int) -> int:
    """Sum of (c - m) for m from lo to hi, clipped at zero terms."""
    hi = min(hi, c)
    if hi < lo:
        return 0
    count = hi - lo + 1
    return count * c - (lo + hi) * count // 2


def domain_size(spec: SweepSpec) -> int:
    """Cardinality of the in-domain sweep by closed-form counting, without enumerating."""
    ident = spec.identity
    K, M = spec.bound_k, spec.bound_m
    N = spec.n_max
    if ident is IdentityId.THEOREM_PERM:
        return sum(_span(2 * k, M, N - k + 1) for k in range(1, K + 1))
    if ident is IdentityId.CONJECTURE_GEN:
        return sum(k * _span(2 * k, M, N - 2 * k + 1) for k in range(1, K + 1))
    if ident is IdentityId.PROOF_REINDEX:
        return sum(_span(2 * k + 2, M, N - k + 1) for k in range(1, K + 1))
    if ident is IdentityId.INJECTION_DIFF:
        total = 0
        for k in range(1, min(K, N) + 1):
            low = min(M, k - 1)
            total += (low + 1) * (N - k + 1)  # m < k: n runs over k..N
            total += _span(k, M, N + 1)  # m >= k: n runs over m..N
        return total
    if ident is IdentityId.VANDERMONDE:
        return (K + 1) * (M + 1) * (N + 1)
    if ident is IdentityId.LI_SHANLAN:
        return (K + 1) * (N + 1)
    if ident is IdentityId.DYADIC:
        return sum(min(K, (1 << (j + 1)) - 2) for j in range(1, spec.j_max + 1))
    raise SpecError(f"no counter for {ident}")  # pragma: no cover


# --- evaluation ----------------------------------------------------------------


def _evaluate_chunk(tag: str, points: list[ParamPoint]) -> list[VerificationRecord]:
    identity = IdentityId(tag)
    return [evaluate(identity, p) for p in points]


def _chunks(points: Iterable[ParamPoint], size: int) -> Iterator[list[ParamPoint]]:
    it = iter(points)
    while chunk := list(islice(it, size)):
        yield chunk


def iter_records(spec: SweepSpec, chunk_size: Optional[int] = None) -> Iterator[VerificationRecord]:
    """Evaluate every enumerated point, yielding records in enumeration order."""
    tag = spec.identity.value
    points = enumerate_domain(spec)
    if spec.workers == 1:
        for point in points:
            yield evaluate(spec.identity, point)
        return
    if chunk_size is None:
        chunk_size = 256
    window = 4 * spec.workers
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        pending: deque = deque()
        try:
            for chunk in _chunks(points, chunk_size):
                pending.append(pool.submit(_evaluate_chunk, tag, chunk))
                if len(pending) >= window:
                    yield from pending.popleft().result()
            while pending:
                yield from pending.popleft().result()
        finally:
            for fut in pending:
                fut.cancel()


def _oracle_verdict(record: VerificationRecord) -> Optional[bool]:
    p = record.params
    ident = record.identity
    if ident is IdentityId.DYADIC:
        if p.j > oracles.DYADIC_STRING_LIMIT:
            return None
        return oracles.dyadic_sum_by_strings(DyadicCase(p.j, p.k)) == record.rhs
    if p.n is None or p.n > ORACLE_N_LIMIT:
        return None
    if ident in (IdentityId.THEOREM_PERM, IdentityId.INJECTION_DIFF):
        if p.k > p.n:
            return None
        return oracles.count_injections_hitting(p.k, p.m, p.n) == record.lhs
    if ident is IdentityId.CONJECTURE_GEN:
        outside = oracles.count_injections(p.k - p.i, p.k)
        hitting = oracles.count_injections_hitting(p.i, p.m, p.n - p.k)
        return outside * hitting == record.lhs
    return None


def recheck_failure(record: VerificationRecord) -> VerificationRecord:
    """Re-evaluate a record in-process and attach a brute-force oracle verdict where one exists.

    For injection-based identities the oracle recomputes the left side; for the
    dyadic sum it recomputes the right side.
    """
    fresh = evaluate(record.identity, record.params)
    if fresh != record:
        log.warning("re-evaluation of %s %s differs from the swept record", record.identity.value, record.params)
    return replace(fresh, oracle_agrees=_oracle_verdict(fresh))


def confirmed_failures(records: Iterable[VerificationRecord]) -> Iterator[VerificationRecord]:
    """Filter a record stream down to re-verified in-domain failures."""
    for record in records:
        if record.in_domain and not record.holds:
            confirmed = recheck_failure(record)
            if not confirmed.holds:
                yield confirmed


def run_sweep(spec: SweepSpec, sink: Optional[TextIO] = None) -> SweepReport:
    """Run a sweep, streaming rendered records into ``sink`` unless the output is SUMMARY."""
    report = SweepReport(spec)
    start = time.perf_counter()
    emit = sink is not None and spec.output is not OutputFormat.SUMMARY
    if emit and spec.output is OutputFormat.CSV:
        sink.write(csv_line(csv_header(spec.identity)))
    for record in iter_records(spec):
        report.points_evaluated += 1
        if emit:
            sink.write(jsonl_line(record) if spec.output is OutputFormat.JSONL else csv_line(csv_row(record)))
        if record.holds:
            continue
        if record.in_domain:
            confirmed = recheck_failure(record)
            if confirmed.holds:
                log.warning("transient failure at %s did not reproduce", record.params)
            else:
                report.failures.append(confirmed)
        else:
            report.boundary_failures.append(recheck_failure(record))
    report.wall_time = time.perf_counter() - start
    return report
