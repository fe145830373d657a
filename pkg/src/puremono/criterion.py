"""Alpha-monogeneity of pure fields Q(alpha), alpha^n = m.

Z[alpha] is the maximal order exactly when m is squarefree and, for every
prime p dividing n, nu_p(m^p - m) = 1.  Because m^p - m is always divisible
by p, the local test reduces to m^p != m (mod p^2), i.e. m avoiding the
Frobenius-fixed classes mod p^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (
    FactoredInteger,
    factorize,
    is_perfect_power,
    is_prime,
    is_squarefree,
    prime_divisors,
)
from .errors import DomainError, NotMonogenicError

# nu_p(m^p - m) >= 2 is reported as this sentinel; only 1 vs >= 2 matters
NU_AT_LEAST_TWO = 2


@dataclass(frozen=True)
class PureField:
    n: int
    m: int
    irreducible: bool

    @classmethod
    def of(cls, n: int, m: int) -> PureField:
        return cls(n, m, is_irreducible_pure(n, m))


@dataclass(frozen=True)
class LocalResult:
    p: int
    nu: int
    passes: bool


@dataclass(frozen=True)
class MonogenicityReport:
    """Verdict for one (n, m).

    ``verdict`` is None when X^n - m is reducible: there is no degree-n field
    to speak of, though the local data are still filled in.
    """

    n: int
    m: int
    squarefree: bool
    irreducible: bool
    locals: tuple[LocalResult, ...]
    failing_set: frozenset[int]
    verdict: bool | None

    @property
    def applicable(self) -> bool:
        return self.verdict is not None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "squarefree": self.squarefree,
            "irreducible": self.irreducible,
            "locals": [{"p": r.p, "nu": r.nu, "passes": r.passes} for r in self.locals],
            "failing_set": sorted(self.failing_set),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class BadClassSet:
    """Solutions of x^p = x mod p^2: zero plus the p - 1 Teichmueller lifts."""

    p: int
    modulus: int
    classes: frozenset[int]

    @property
    def unit_classes(self) -> frozenset[int]:
        return self.classes - {0}

    def __contains__(self, m: int) -> bool:
        return m % self.modulus in self.classes

    def to_dict(self) -> dict:
        return {"p": self.p, "modulus": self.modulus, "classes": sorted(self.classes)}


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def frobenius_fixed_classes(p: int) -> BadClassSet:
    """The p classes mod p^2 fixed by x -> x^p.

    Each unit residue a mod p has the unique fixed lift a^p mod p^2.
    """
    _require_prime(p)
    q = p * p
    return BadClassSet(p, q, frozenset({0} | {pow(a, p, q) for a in range(1, p)}))


def local_condition(p: int, m: int) -> tuple[int, bool]:
    """(nu, passes) for the local test at p; nu is 1 or NU_AT_LEAST_TWO."""
    _require_prime(p)
    q = p * p
    r = m % q
    if (pow(r, p, q) - r) % q:
        return 1, True
    return NU_AT_LEAST_TWO, False


def is_irreducible_pure(n: int, m: int) -> bool:
    """Capelli: X^n - m is irreducible over Q iff m is not a p-th power for
    any prime p | n and, when 4 | n, m is not of the form -4 t^4."""
    if n < 2:
        raise DomainError("degree must be >= 2")
    if m == 0:
        return False
    for p in prime_divisors(n):
        if is_perfect_power(m, p):
            return False
    if n % 4 == 0 and m < 0 and (-m) % 4 == 0 and is_perfect_power(-m // 4, 4):
        return False
    return True


def is_alpha_monogenic(n: int, m: int) -> MonogenicityReport:
    if n < 2:
        raise DomainError("degree must be >= 2")
    if m == 0:
        raise DomainError("radicand must be nonzero")
    sqf = is_squarefree(m)
    irreducible = is_irreducible_pure(n, m)
    results = []
    for p in prime_divisors(n):
        nu, ok = local_condition(p, m)
        results.append(LocalResult(p, nu, ok))
    failing = frozenset(r.p for r in results if not r.passes)
    verdict = (sqf and not failing) if irreducible else None
    return MonogenicityReport(n, m, sqf, irreducible, tuple(results), failing, verdict)


def congruence_shortcut(n: int, m: int) -> bool:
    """Residue tests in degrees 3 to 6."""
    if n not in (3, 4, 5, 6):
        raise DomainError("shortcut only available for n in {3, 4, 5, 6}")
    if m == 0:
        raise DomainError("radicand must be nonzero")
    if not is_squarefree(m):
        return False
    if n == 3:
        return m % 9 not in (1, 8)
    if n == 4:
        return m % 4 != 1
    if n == 5:
        return m % 25 not in (1, 7, 18, 24)
    return m % 4 != 1 and m % 9 not in (1, 8)


def poly_discriminant(n: int, m: int) -> int:
    """disc(X^n - m) = (-1)^{n(n-1)/2} n^n (-m)^{n-1}.

    >>> poly_discriminant(2, -2)
    -8
    """
    if n < 2:
        raise DomainError("degree must be >= 2")
    if m == 0:
        raise DomainError("radicand must be nonzero")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * n**n * (-m) ** (n - 1)


def poly_discriminant_factored(n: int, m: int) -> FactoredInteger:
    """Same value as poly_discriminant, assembled from the factorizations of n and m."""
    d = poly_discriminant(n, m)
    exps: dict[int, int] = {}
    for p, e in factorize(n).factors:
        exps[p] = exps.get(p, 0) + n * e
    for p, e in factorize(m).factors:
        exps[p] = exps.get(p, 0) + (n - 1) * e
    return FactoredInteger(1 if d > 0 else -1, tuple(sorted(exps.items())))


def field_discriminant_if_monogenic(n: int, m: int) -> int:
    """Field discriminant when the index is 1 (then it equals disc(X^n - m))."""
    report = is_alpha_monogenic(n, m)
    if report.verdict is not True:
        raise NotMonogenicError(f"Z[alpha] is not maximal for n={n}, m={m}")
    return poly_discriminant(n, m)
