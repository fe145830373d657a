"""Exact densities, all of the form rational * zeta(2)^{-1}.

Densities are natural densities per unit length: the proportion of m in
[1, X] (or equivalently of m in [-X, X]) with the given property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath

from .arith import is_prime, prime_divisors, radical, valuation
from .criterion import frobenius_fixed_classes
from .errors import DomainError


@dataclass(frozen=True)
class ExactDensity:
    """rational, times zeta(2)^{-1} = 6/pi^2 when ``zeta2_inv`` is set."""

    rational: Fraction
    zeta2_inv: bool = True

    def __post_init__(self):
        r = Fraction(self.rational)
        if r < 0:
            raise DomainError("densities are nonnegative")
        object.__setattr__(self, "rational", r)

    def numeric(self, dps: int | None = None) -> float | mpmath.mpf:
        if dps is None:
            factor = 6 / math.pi**2 if self.zeta2_inv else 1.0
            return float(self.rational) * factor
        with mpmath.workdps(dps):
            v = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            if self.zeta2_inv:
                v *= 6 / mpmath.pi**2
            return v

    def __mul__(self, other: Fraction | int) -> ExactDensity:
        return ExactDensity(self.rational * Fraction(other), self.zeta2_inv)

    __rmul__ = __mul__

    def __add__(self, other: ExactDensity) -> ExactDensity:
        if other.zeta2_inv != self.zeta2_inv:
            if other.rational == 0:
                return self
            if self.rational == 0:
                return other
            raise DomainError("cannot add densities with different zeta(2) factors")
        return ExactDensity(self.rational + other.rational, self.zeta2_inv)

    def pi_form(self) -> str:
        """e.g. '4/pi^2' for (2/3) zeta(2)^{-1}."""
        if not self.zeta2_inv:
            return str(self.rational)
        c = self.rational * 6
        if c == 0:
            return "0"
        num = "" if c.numerator == 1 else str(c.numerator)
        if c.denominator == 1:
            return f"{num or '1'}/pi^2"
        return f"{num or '1'}/({c.denominator}*pi^2)"

    def __str__(self) -> str:
        tag = " * zeta(2)^-1" if self.zeta2_inv else ""
        return f"{self.rational}{tag} = {self.pi_form()} ~ {self.numeric():.6f}"

    def to_dict(self) -> dict:
        return {
            "num": self.rational.numerator,
            "den": self.rational.denominator,
            "zeta2_inv": self.zeta2_inv,
            "approx": self.numeric(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ExactDensity:
        return cls(Fraction(d["num"], d["den"]), bool(d["zeta2_inv"]))


ZERO = ExactDensity(Fraction(0))
SQUAREFREE = ExactDensity(Fraction(1))


@dataclass(frozen=True)
class LocalFactor:
    p: int
    depth: int
    value: Fraction


@dataclass(frozen=True)
class GoodProgression:
    n: int
    modulus: int
    good_classes: frozenset[int]

    def to_dict(self) -> dict:
        return {"n": self.n, "modulus": self.modulus, "good_classes": sorted(self.good_classes)}


def _check_degree(n: int) -> None:
    if n < 2:
        raise DomainError("degree must be >= 2")


def delta_n(n: int) -> ExactDensity:
    """Density of alpha-monogenic m: zeta(2)^{-1} * prod_{p | n} p/(p+1)."""
    _check_degree(n)
    r = Fraction(1)
    for p in prime_divisors(n):
        r *= Fraction(p, p + 1)
    return ExactDensity(r)


def sf_ap_density(q: int, a: int) -> ExactDensity:
    """Density of squarefree m = a mod q, for gcd(a, q) = 1."""
    if q < 1:
        raise DomainError("modulus must be >= 1")
    if math.gcd(a, q) != 1:
        raise DomainError(f"gcd({a}, {q}) != 1")
    r = Fraction(1, q)
    for ell in prime_divisors(q) if q > 1 else ():
        r *= Fraction(ell * ell, ell * ell - 1)
    return ExactDensity(r)


def local_factor(p: int, q: int, a: int) -> LocalFactor:
    """Survival factor at p given m = a mod q (gcd(a, q) = 1)."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if math.gcd(a, q) != 1:
        raise DomainError(f"gcd({a}, {q}) != 1")
    depth = valuation(p, q)
    if depth == 0:
        value = Fraction(p, p + 1)
    elif depth == 1:
        value = Fraction(p - 1, p)
    else:
        value = Fraction(0) if a in frobenius_fixed_classes(p) else Fraction(1)
    return LocalFactor(p, depth, value)


def ap_density(n: int, q: int, a: int) -> ExactDensity:
    """Density of alpha-monogenic m = a mod q, normalized over all integers."""
    _check_degree(n)
    base = sf_ap_density(q, a)
    for p in prime_divisors(n):
        base = base * local_factor(p, q, a).value
    return base


def full_ap_modulus(n: int) -> GoodProgression:
    """Modulus prod_{p | n} p^2 and the coprime classes on which every
    squarefree m passes all local tests."""
    _check_degree(n)
    primes = prime_divisors(n)
    M = math.prod(p * p for p in primes)
    bad = [frobenius_fixed_classes(p) for p in primes]
    good = frozenset(
        a for a in range(M) if math.gcd(a, M) == 1 and not any(a in b for b in bad)
    )
    return GoodProgression(n, M, good)


def failure_distribution(n: int) -> dict[frozenset[int], ExactDensity]:
    """Density of squarefree m whose set of failing primes is exactly S, for every S."""
    _check_degree(n)
    primes = prime_divisors(n)
    out = {}
    for k in range(len(primes) + 1):
        for S in combinations(primes, k):
            r = Fraction(1)
            for p in primes:
                r *= Fraction(1, p + 1) if p in S else Fraction(p, p + 1)
            out[frozenset(S)] = ExactDensity(r)
    return out


def expected_failures(n: int) -> Fraction:
    _check_degree(n)
    return sum((Fraction(1, p + 1) for p in prime_divisors(n)), Fraction(0))


def bad_intersection_density(primes) -> ExactDensity:
    """Density of squarefree m failing at every prime in ``primes``."""
    r = Fraction(1)
    for p in primes:
        r *= Fraction(p - 1, p * p - 1)
    return ExactDensity(r)


def local_loss(p: int) -> Fraction:
    """Proportion of squarefree integers failing the local test at p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return Fraction(1, p + 1)


def conditional_survival(p: int, a: int) -> Fraction:
    """Survival probability at p among squarefree m = a mod p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return Fraction(1) if a % p == 0 else Fraction(p - 1, p)


def refinement_modulus(n: int) -> int:
    """prod_{p^e || n} p^{e+1} = n * rad(n)."""
    _check_degree(n)
    return n * radical(n)
