"""Sieve-driven sweeps over radicands m.

For squarefree m the verdict is a pure congruence test: m must avoid the
Frobenius-fixed classes mod p^2 for each p | n.  Each segment is sieved for
squarefreeness, residues are looked up in per-prime bad-class tables, and
segment results are merged in ascending order, so counts do not depend on
segment size or worker count.

Irreducibility of X^n - m only needs attention at m = +-1: every other
squarefree m makes X^n - m Eisenstein at any of its primes.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from .arith import integer_root, prime_divisors, squarefree_sieve
from .criterion import (
    NU_AT_LEAST_TWO,
    LocalResult,
    MonogenicityReport,
    frobenius_fixed_classes,
    is_irreducible_pure,
)
from .density import ExactDensity, ap_density, delta_n, failure_distribution
from .errors import DomainError

DEFAULT_SEGMENT = 1 << 20


def default_tolerance(X: int) -> float:
    return 0.003 if X >= 10**7 else 0.005


@lru_cache(maxsize=64)
def _bad_tables(n: int) -> tuple[tuple[int, np.ndarray], ...]:
    out = []
    for p in prime_divisors(n):
        bad = frobenius_fixed_classes(p)
        tab = np.zeros(bad.modulus, dtype=bool)
        tab[sorted(bad.classes)] = True
        out.append((bad.modulus, tab))
    return tuple(out)


def _segment(n: int, lo: int, hi: int, sign: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(values m, squarefree mask, failure bit codes) for m = sign*k, k in [lo, hi]."""
    k = np.arange(lo, hi + 1, dtype=np.int64)
    m = k if sign > 0 else -k
    sqf = squarefree_sieve(lo, hi)
    code = np.zeros(k.shape, dtype=np.int64)
    for bit, (q, tab) in enumerate(_bad_tables(n)):
        code |= tab[m % q].astype(np.int64) << bit
    return m, sqf, code


def _good_mask(n: int, lo: int, hi: int, sign: int, modulus: int, residue: int) -> np.ndarray:
    m, sqf, code = _segment(n, lo, hi, sign)
    ok = sqf & (code == 0)
    if modulus > 1:
        ok &= (m % modulus) == (residue % modulus)
    if lo == 1 and ok.size:
        # X^n - 1 is always reducible; X^n + 1 only for n not a power of two
        ok[0] = ok[0] and is_irreducible_pure(n, sign)
    return ok


def _count_job(args) -> int:
    n, lo, hi, sign, modulus, residue = args
    return int(np.count_nonzero(_good_mask(n, lo, hi, sign, modulus, residue)))


def _hist_job(args) -> np.ndarray:
    n, lo, hi = args
    _, sqf, code = _segment(n, lo, hi, 1)
    return np.bincount(code[sqf], minlength=1 << len(_bad_tables(n)))


def _shards(lo: int, hi: int, size: int) -> Iterator[tuple[int, int]]:
    if size < 1:
        raise DomainError("segment size must be >= 1")
    start = lo
    while start <= hi:
        stop = min(hi, start + size - 1)
        yield start, stop
        start = stop + 1


def _run(job: Callable, tasks: list, workers: int) -> list:
    if workers < 1:
        raise DomainError("worker count must be >= 1")
    if workers == 1 or len(tasks) < 2:
        return [job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves task order, which keeps the merge deterministic
        return list(pool.map(job, tasks))


def _signed_pieces(lo: int, hi: int) -> list[tuple[int, int, int]]:
    """Split [lo, hi] minus {0} into (k_lo, k_hi, sign) with m = sign*k, k >= 1."""
    pieces = []
    if lo <= -1:
        pieces.append((max(1, -hi), -lo, -1))
    if hi >= 1:
        pieces.append((max(1, lo), hi, 1))
    return [(a, b, s) for a, b, s in pieces if a <= b]


def count_monogenic(
    n: int,
    lo: int,
    hi: int,
    *,
    modulus: int = 1,
    residue: int = 0,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
) -> int:
    """Number of m in [lo, hi], m != 0, m = residue mod modulus, with X^n - m
    irreducible and Z[alpha] maximal."""
    if n < 2:
        raise DomainError("degree must be >= 2")
    tasks = [
        (n, a, b, s, modulus, residue)
        for k_lo, k_hi, s in _signed_pieces(lo, hi)
        for a, b in _shards(k_lo, k_hi, segment_size)
    ]
    return sum(_run(_count_job, tasks, workers))


@dataclass(frozen=True)
class CensusResult:
    n: int
    lo: int
    hi: int
    sides: str
    count: int
    length: int
    theoretical: ExactDensity
    runtime_ms: float
    modulus: int | None = None
    residue: int | None = None
    disc_bound: int | None = None
    tolerance: float | None = None

    @property
    def empirical(self) -> float:
        return self.count / self.length if self.length else 0.0

    @property
    def main_term(self) -> float:
        """Predicted count: density times interval length."""
        return self.theoretical.numeric() * self.length

    @property
    def abs_error(self) -> float:
        return abs(self.empirical - self.theoretical.numeric())

    @property
    def rel_error(self) -> float:
        t = self.theoretical.numeric()
        return self.abs_error / t if t else (0.0 if self.count == 0 else math.inf)

    @property
    def within_tolerance(self) -> bool | None:
        return None if self.tolerance is None else self.abs_error <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lo": self.lo,
            "hi": self.hi,
            "sides": self.sides,
            "count": self.count,
            "length": self.length,
            "empirical": self.empirical,
            "theoretical": self.theoretical.to_dict(),
            "main_term": self.main_term,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "runtime_ms": self.runtime_ms,
            "modulus": self.modulus,
            "residue": self.residue,
            "disc_bound": self.disc_bound,
            "tolerance": self.tolerance,
            "within_tolerance": self.within_tolerance,
        }


def interval_census(
    n: int,
    X: int,
    sides: str = "one",
    *,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
    tolerance: float | None = None,
) -> CensusResult:
    """Count monogenic m in [1, X] (sides='one') or 0 < |m| <= X (sides='two')."""
    if sides not in ("one", "two"):
        raise DomainError("sides must be 'one' or 'two'")
    if X < 0:
        raise DomainError("X must be >= 0")
    t0 = time.perf_counter()
    lo = 1 if sides == "one" else -X
    count = count_monogenic(n, lo, X, segment_size=segment_size, workers=workers)
    length = X if sides == "one" else 2 * X
    return CensusResult(
        n, lo, X, sides, count, length, delta_n(n),
        (time.perf_counter() - t0) * 1e3,
        tolerance=default_tolerance(X) if tolerance is None else tolerance,
    )


def ap_census(
    n: int,
    q: int,
    a: int,
    X: int,
    *,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
    tolerance: float | None = None,
) -> CensusResult:
    """Count monogenic m in [1, X] with m = a mod q; density is count / X."""
    theoretical = ap_density(n, q, a)  # refuses gcd(a, q) > 1
    t0 = time.perf_counter()
    count = count_monogenic(n, 1, X, modulus=q, residue=a, segment_size=segment_size, workers=workers)
    return CensusResult(
        n, 1, X, "one", count, X, theoretical,
        (time.perf_counter() - t0) * 1e3,
        modulus=q, residue=a % q,
        tolerance=default_tolerance(X) if tolerance is None else tolerance,
    )


def disc_radius(n: int, Y: int) -> int:
    """Largest X >= 0 with n^n X^(n-1) <= Y (exact integer arithmetic)."""
    if n < 2:
        raise DomainError("degree must be >= 2")
    if Y < 0:
        raise DomainError("Y must be >= 0")
    return integer_root(Y // n**n, n - 1)


def disc_census(
    n: int, Y: int, *, segment_size: int = DEFAULT_SEGMENT, workers: int = 1
) -> CensusResult:
    """Count monogenic pure fields with |disc| <= Y.

    Fields are counted by parameter m: m in [1, X] for odd n (m and -m give
    the same field) and 0 < |m| <= X for even n.
    """
    t0 = time.perf_counter()
    X = disc_radius(n, Y)
    sides = "one" if n % 2 else "two"
    lo = 1 if sides == "one" else -X
    count = count_monogenic(n, lo, X, segment_size=segment_size, workers=workers)
    length = X if sides == "one" else 2 * X
    return CensusResult(
        n, lo, X, sides, count, length, delta_n(n),
        (time.perf_counter() - t0) * 1e3,
        disc_bound=Y,
    )


@dataclass(frozen=True)
class FailureHistogram:
    """Counts of squarefree m in [1, X] by their exact set of failing primes."""

    n: int
    X: int
    primes: tuple[int, ...]
    counts: dict[frozenset[int], int] = field(default_factory=dict)

    @property
    def squarefree_total(self) -> int:
        return sum(self.counts.values())

    def frequency(self, S: Iterable[int]) -> float:
        """Count for S divided by X (density among all integers)."""
        return self.counts.get(frozenset(S), 0) / self.X if self.X else 0.0

    def conditional(self, S: Iterable[int]) -> float:
        """Count for S divided by the number of squarefree m swept."""
        total = self.squarefree_total
        return self.counts.get(frozenset(S), 0) / total if total else 0.0

    def failure_rate(self, primes: Iterable[int]) -> float:
        """Proportion of squarefree m failing at every prime in ``primes``."""
        need = frozenset(primes)
        total = self.squarefree_total
        hit = sum(c for S, c in self.counts.items() if need <= S)
        return hit / total if total else 0.0

    def mean_failures(self) -> float:
        total = self.squarefree_total
        return sum(len(S) * c for S, c in self.counts.items()) / total if total else 0.0

    def to_dict(self) -> dict:
        theory = failure_distribution(self.n)
        return {
            "n": self.n,
            "X": self.X,
            "primes": list(self.primes),
            "squarefree_total": self.squarefree_total,
            "subsets": [
                {
                    "S": sorted(S),
                    "count": self.counts.get(S, 0),
                    "frequency": self.frequency(S),
                    "theoretical": theory[S].to_dict(),
                }
                for S in sorted(theory, key=lambda s: (len(s), sorted(s)))
            ],
            "mean_failures": self.mean_failures(),
        }


def failure_histogram(
    n: int, X: int, *, segment_size: int = DEFAULT_SEGMENT, workers: int = 1
) -> FailureHistogram:
    if n < 2:
        raise DomainError("degree must be >= 2")
    primes = prime_divisors(n)
    tasks = [(n, a, b) for a, b in _shards(1, X, segment_size)]
    total = np.zeros(1 << len(primes), dtype=np.int64)
    for part in _run(_hist_job, tasks, workers):
        total += part
    counts = {
        frozenset(p for bit, p in enumerate(primes) if code >> bit & 1): int(c)
        for code, c in enumerate(total)
    }
    return FailureHistogram(n, X, primes, counts)


def sweep(n: int, lo: int, hi: int, *, segment_size: int = DEFAULT_SEGMENT) -> Iterator[MonogenicityReport]:
    """One report per m in [lo, hi] (m = 0 skipped), in ascending order of m."""
    if n < 2:
        raise DomainError("degree must be >= 2")
    primes = prime_divisors(n)
    pieces = _signed_pieces(lo, hi)
    for k_lo, k_hi, sign in pieces:
        shards = list(_shards(k_lo, k_hi, segment_size))
        if sign < 0:
            # negative k ranges run from large |m| to small; reverse for ascending m
            shards.reverse()
        for a, b in shards:
            ms, sqf, code = _segment(n, a, b, sign)
            order = range(len(ms) - 1, -1, -1) if sign < 0 else range(len(ms))
            for i in order:
                yield _row(n, int(ms[i]), bool(sqf[i]), int(code[i]), primes)


def _row(n: int, m: int, sqf: bool, code: int, primes: tuple[int, ...]) -> MonogenicityReport:
    irreducible = True if sqf and abs(m) > 1 else is_irreducible_pure(n, m)
    locals_ = tuple(
        LocalResult(p, NU_AT_LEAST_TWO if code >> bit & 1 else 1, not code >> bit & 1)
        for bit, p in enumerate(primes)
    )
    failing = frozenset(r.p for r in locals_ if not r.passes)
    verdict = (sqf and not failing) if irreducible else None
    return MonogenicityReport(n, m, sqf, irreducible, locals_, failing, verdict)


SWEEP_HEADER = ("m", "n", "squarefree", "irreducible", "fail_primes", "verdict")


def _flag(v: bool | None) -> str:
    return "na" if v is None else ("true" if v else "false")


def sweep_csv_row(r: MonogenicityReport) -> list[str]:
    return [
        str(r.m),
        str(r.n),
        _flag(r.squarefree),
        _flag(r.irreducible),
        ";".join(str(p) for p in sorted(r.failing_set)),
        _flag(r.verdict),
    ]


def write_sweep_csv(rows: Iterable[MonogenicityReport], fh: TextIO) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    k = 0
    for r in rows:
        writer.writerow(sweep_csv_row(r))
        k += 1
    return k
