"""Executable Dedekind index test for f = X^n - m.

For a prime p, factor f mod p as prod pi_j^{e_j}, lift the pi_j to monic
integer polynomials, and set F = (f - prod pi_j^{e_j}) / p.  Then p divides
the index (O_K : Z[alpha]) iff some pi_j with e_j >= 2 divides F mod p.

Nothing here uses the congruence criterion; it is the independent check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, is_prime, prime_divisors
from .criterion import is_irreducible_pure, poly_discriminant
from .errors import DomainError, ReducibleError
from .finite_poly import FactorizationModP, PolyZq, _divmod, factor_mod_p, poly_gcd


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_pow(a: list[int], e: int) -> list[int]:
    out = [1]
    base = a
    while e:
        if e & 1:
            out = _int_mul(out, base)
        e >>= 1
        if e:
            base = _int_mul(base, base)
    return out


@dataclass(frozen=True)
class DedekindCertificate:
    n: int
    m: int
    p: int
    factorization: FactorizationModP
    lifted_product: tuple[int, ...]
    F: PolyZq
    witnesses: tuple[PolyZq, ...]

    @property
    def index_divisible(self) -> bool:
        return bool(self.witnesses)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "index_divisible": self.index_divisible,
            "factorization": {
                "unit": self.factorization.unit,
                "factors": [
                    {"coeffs": list(g.coeffs), "multiplicity": e}
                    for g, e in self.factorization.factors
                ],
            },
            "lifted_product": list(self.lifted_product),
            "F": list(self.F.coeffs),
            "witnesses": [list(w.coeffs) for w in self.witnesses],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> DedekindCertificate:
        p = d["p"]
        fac = FactorizationModP(
            p,
            d["factorization"]["unit"],
            tuple((PolyZq(tuple(f["coeffs"]), p), f["multiplicity"]) for f in d["factorization"]["factors"]),
        )
        return cls(
            d["n"],
            d["m"],
            p,
            fac,
            tuple(d["lifted_product"]),
            PolyZq(tuple(d["F"]), p),
            tuple(PolyZq(tuple(w), p) for w in d["witnesses"]),
        )


def _binomial_coeffs(n: int, m: int) -> list[int]:
    return [-m] + [0] * (n - 1) + [1]


@lru_cache(maxsize=1 << 14)
def _factor_binomial(n: int, m_mod_p: int, p: int) -> FactorizationModP:
    # f mod p depends only on m mod p
    return factor_mod_p(PolyZq.binomial(n, m_mod_p, p), p)


def carry_polynomial(
    f: list[int], factorization: FactorizationModP, lift_offset: int = 0
) -> tuple[list[int], PolyZq]:
    """Return (lifted product over Z, F mod p) for the given factorization.

    Lifts use representatives in [0, p) shifted by ``lift_offset * p`` on the
    non-leading coefficients; F mod p changes under a different lift, but its
    divisibility by the repeated factors does not.
    """
    p = factorization.p
    prod = [1]
    for g, e in factorization.factors:
        lift = [c + lift_offset * p for c in g.coeffs[:-1]] + [1]
        prod = _int_mul(prod, _int_pow(lift, e))
    width = max(len(f), len(prod))
    diff = [(f[i] if i < len(f) else 0) - (prod[i] if i < len(prod) else 0) for i in range(width)]
    if any(c % p for c in diff):
        raise AssertionError("lifted product does not reduce to f mod p")
    return prod, PolyZq(tuple(c // p for c in diff), p)


def _check_inputs(n: int, m: int) -> None:
    if n < 2:
        raise DomainError("degree must be >= 2")
    if not is_irreducible_pure(n, m):
        raise ReducibleError(f"X^{n} - ({m}) is reducible over Q")


def monic_index_divides(f: list[int], p: int) -> bool:
    """Dedekind test for an arbitrary monic integer polynomial f (lowest degree first)."""
    if not f or f[-1] != 1:
        raise DomainError("polynomial must be monic")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    factorization = factor_mod_p(PolyZq(tuple(f), p), p)
    _, F = carry_polynomial(f, factorization)
    return any(e >= 2 and not _divmod(F.coeffs, g.coeffs, p)[1] for g, e in factorization.factors)


def dedekind_index_divides(n: int, m: int, p: int, lift_offset: int = 0) -> tuple[bool, DedekindCertificate]:
    """Decide whether p divides (O_K : Z[alpha]) for alpha^n = m."""
    _check_inputs(n, m)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if (m * n) % p:
        raise DomainError(f"{p} does not divide m*n; it cannot divide the index")
    f = _binomial_coeffs(n, m)
    factorization = _factor_binomial(n, m % p, p)
    prod, F = carry_polynomial(f, factorization, lift_offset)
    witnesses = tuple(
        g for g, e in factorization.factors if e >= 2 and not _divmod(F.coeffs, g.coeffs, p)[1]
    )
    cert = DedekindCertificate(n, m, p, factorization, tuple(prod), F, witnesses)
    return cert.index_divisible, cert


def index_support_primes(n: int, m: int) -> frozenset[int]:
    """Primes dividing the index; only primes of m*n can occur."""
    _check_inputs(n, m)
    return frozenset(p for p in prime_divisors(m * n) if dedekind_index_divides(n, m, p)[0])


def oracle_is_monogenic(n: int, m: int) -> bool:
    return not index_support_primes(n, m)


def verify_certificate(cert: DedekindCertificate) -> bool:
    """Recheck a certificate from scratch.

    Confirms each factor has positive degree and is monic, that the lifted
    product reduces to f mod p and reproduces F, and that the witness list is
    exactly the repeated factors dividing F.
    """
    p = cert.p
    fac = cert.factorization
    if (fac.unit - 1) % p:
        return False
    if fac.expand() != PolyZq.binomial(cert.n, cert.m, p):
        return False
    if not all(g.is_monic() and g.degree >= 1 for g, _ in fac.factors):
        return False
    prod = list(cert.lifted_product)
    if not prod or prod[-1] != 1 or PolyZq(tuple(prod), p) != fac.expand():
        return False
    f = _binomial_coeffs(cert.n, cert.m)
    width = max(len(f), len(prod))
    diff = [(f[i] if i < len(f) else 0) - (prod[i] if i < len(prod) else 0) for i in range(width)]
    if any(c % p for c in diff) or PolyZq(tuple(c // p for c in diff), p) != cert.F:
        return False
    expected = []
    for g, e in fac.factors:
        if e >= 2 and poly_gcd(g, cert.F, p) == g:
            expected.append(g)
    return tuple(expected) == cert.witnesses


# ---------------------------------------------------------------------------
# pure cubics with m = +-1 mod 9


def _charpoly3(a: list[list[int]]) -> tuple[int, int, int]:
    """(trace, sum of principal 2-minors, det) of a 3x3 integer matrix."""
    tr = a[0][0] + a[1][1] + a[2][2]
    c2 = (
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
        + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2] - a[1][2] * a[2][1]
    )
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    return tr, c2, det


def cubic_discriminant(c: tuple) -> Fraction:
    """Discriminant of x^3 + b x^2 + c x + d given as (d, c, b, 1)."""
    d, cc, b = (Fraction(v) for v in c[:3])
    return b * b * cc * cc - 4 * cc**3 - 4 * b**3 * d - 27 * d * d + 18 * b * cc * d


@dataclass(frozen=True)
class CubicGenerator:
    m: int
    sign: int
    minpoly: tuple[Fraction, ...]  # lowest degree first, monic
    integral: bool
    disc_ratio: Fraction
    # primes dividing (O_K : Z[theta]); empty when theta is not integral
    index_primes: frozenset[int] = frozenset()


def cubic_exceptional_generator(m: int, sign: int | None = None) -> CubicGenerator:
    """Minimal polynomial of theta = (1 + sign*alpha + alpha^2)/3 with alpha^3 = m.

    Works with 3*theta, whose multiplication matrix on {1, alpha, alpha^2} is
    integral; the minimal polynomial of theta is its characteristic polynomial
    rescaled by 27.  ``sign`` defaults to +1 for m = 1 mod 9 and -1 for
    m = -1 mod 9 (and +1 otherwise, where theta is not integral).
    """
    if not is_irreducible_pure(3, m):
        raise ReducibleError(f"X^3 - ({m}) is reducible over Q")
    if sign is None:
        sign = -1 if m % 9 == 8 else 1
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    s = sign
    # columns: 3*theta times 1, alpha, alpha^2  (alpha^3 = m)
    cols = [(1, s, 1), (m, 1, s), (s * m, m, 1)]
    a = [[cols[j][i] for j in range(3)] for i in range(3)]
    tr, c2, det = _charpoly3(a)
    # chi_{3 theta}(3x) / 27 = x^3 - (tr/3) x^2 + (c2/9) x - det/27
    minpoly = (Fraction(-det, 27), Fraction(c2, 9), Fraction(-tr, 3), Fraction(1))
    integral = all(c.denominator == 1 for c in minpoly)
    disc_theta = cubic_discriminant(minpoly)
    ratio = Fraction(poly_discriminant(3, m)) / disc_theta
    index_primes: frozenset[int] = frozenset()
    if integral:
        coeffs = [int(c) for c in minpoly]
        d = int(disc_theta)
        index_primes = frozenset(
            p for p, e in factorize(d).factors if e >= 2 and monic_index_divides(coeffs, p)
        )
    return CubicGenerator(m, s, minpoly, integral, ratio, index_primes)
