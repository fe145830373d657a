"""Integer arithmetic substrate.

Factorization (trial division then Pollard-rho), p-adic valuations, Moebius,
radicals, exact integer roots and a numpy-backed segmented squarefree sieve.

All public functions contract to |x| <= 2**62 and moduli <= 2**63.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError

MAX_INPUT = 1 << 62
MAX_MODULUS = 1 << 63
TRIAL_BOUND = 10**6
# default cap on sieve segment length (one byte per entry)
SEGMENT_CAPACITY = 1 << 27

# deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInteger:
    """Sign and prime-power factorization of a nonzero integer."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __int__(self) -> int:
        return self.value()

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return f"-{body}" if self.sign < 0 else body


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(TRIAL_BOUND))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n.

    Seeds run through c = 1, 2, ... so the result is reproducible.
    """
    for c in range(1, 1 << 20):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"pollard-rho failed on {n}")  # pragma: no cover


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, out)
        _split(root, out)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=1 << 17)
def _factor_abs(n: int) -> tuple[tuple[int, int], ...]:
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n <= TRIAL_BOUND**2:
            found[n] = found.get(n, 0) + 1
        else:
            _split(n, found)
    return tuple(sorted(found.items()))


def _check_nonzero(x: int, what: str = "x") -> None:
    if x == 0:
        raise DomainError(f"{what} must be nonzero")
    if abs(x) > MAX_INPUT:
        raise CapacityError(f"|{what}| exceeds 2**62")


def factorize(x: int) -> FactoredInteger:
    """Factor a nonzero integer with |x| <= 2**62.

    >>> factorize(12)
    FactoredInteger(sign=1, factors=((2, 2), (3, 1)))
    """
    _check_nonzero(x)
    return FactoredInteger(1 if x > 0 else -1, _factor_abs(abs(x)))


def prime_divisors(x: int) -> tuple[int, ...]:
    return factorize(x).primes


def valuation(p: int, x: int) -> int:
    """Largest k with p**k dividing x."""
    if x == 0:
        raise DomainError("valuation of 0 is infinite")
    if p < 2:
        raise DomainError("p must be prime")
    k = 0
    x = abs(x)
    while x % p == 0:
        x //= p
        k += 1
    return k


def is_squarefree(x: int) -> bool:
    _check_nonzero(x)
    return all(e == 1 for _, e in _factor_abs(abs(x)))


def mobius(x: int) -> int:
    if x < 1:
        raise DomainError("mobius is defined for x >= 1")
    fac = _factor_abs(x)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def radical(n: int) -> int:
    if n < 1:
        raise DomainError("radical is defined for n >= 1")
    return math.prod(p for p, _ in _factor_abs(n))


def modpow(b: int, e: int, q: int) -> int:
    """b**e mod q in [0, q), negative bases normalized first."""
    if q <= 0:
        raise DomainError("modulus must be >= 1")
    if q > MAX_MODULUS:
        raise CapacityError("modulus exceeds 2**63")
    if e < 0:
        raise DomainError("exponent must be nonnegative")
    return pow(b % q, e, q)


def integer_root(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0, computed exactly."""
    if x < 0 or k < 1:
        raise DomainError("integer_root needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = int(round(x ** (1.0 / k))) if x.bit_length() < 1000 else 1 << (x.bit_length() // k)
    # float guess is within a few units; walk to the exact floor
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def is_perfect_power(x: int, k: int) -> bool:
    """True iff x = y**k for some integer y (negative x allowed for odd k)."""
    if x < 0:
        return k % 2 == 1 and is_perfect_power(-x, k)
    r = integer_root(x, k)
    return r**k == x


def squarefree_sieve(lo: int, hi: int, capacity: int = SEGMENT_CAPACITY) -> np.ndarray:
    """Boolean array whose entry i is True iff lo + i is squarefree.

    Uses mu^2(m) = sum_{d^2 | m} mu(d): it suffices to strike multiples of
    p^2 for primes p <= sqrt(hi).
    """
    if lo < 1 or hi > MAX_INPUT:
        raise DomainError("sieve range must satisfy 1 <= lo and hi <= 2**62")
    if hi < lo:
        return np.zeros(0, dtype=bool)
    length = hi - lo + 1
    if length > capacity:
        raise CapacityError(f"segment of {length} entries exceeds capacity {capacity}")
    out = np.ones(length, dtype=bool)
    for p in _sieve_primes(math.isqrt(hi)):
        sq = p * p
        start = (-lo) % sq
        out[start::sq] = False
    return out


@lru_cache(maxsize=4)
def _prime_table(bound: int) -> np.ndarray:
    return primes_up_to(bound)


def _sieve_primes(limit: int) -> list[int]:
    # table sized to the next power of two so neighbouring segments share it
    table = _prime_table(1 << max(limit, 1).bit_length())
    return table[: np.searchsorted(table, limit, side="right")].tolist()
