"""Dense polynomials over Z/qZ and complete factorization over F_p.

Coefficients are stored lowest degree first with no trailing zeros; the zero
polynomial is the empty tuple.  The list-level helpers (``_mul``, ``_divmod``
...) do the work; :class:`PolyZq` wraps them with modulus checking.

Factorization over F_p runs the usual pipeline: squarefree decomposition
(gcd with the derivative, p-th roots when the derivative vanishes),
distinct-degree factorization, then Cantor-Zassenhaus equal-degree splitting
with a generator seeded from the input so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arith import is_prime
from .errors import DomainError

Coeffs = list[int]


class ModulusMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# list-level arithmetic


def _trim(a: Coeffs) -> Coeffs:
    while a and a[-1] == 0:
        a.pop()
    return a


def _norm(a: Iterable[int], q: int) -> Coeffs:
    return _trim([c % q for c in a])


def _add(a: Sequence[int], b: Sequence[int], q: int) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % q
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], q: int) -> Coeffs:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % q
    return _trim(out)


def _scale(a: Sequence[int], s: int, q: int) -> Coeffs:
    return _trim([c * s % q for c in a])


def _mul(a: Sequence[int], b: Sequence[int], q: int) -> Coeffs:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def _divmod(a: Sequence[int], b: Sequence[int], q: int) -> tuple[Coeffs, Coeffs]:
    """Division by b whose leading coefficient is a unit mod q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    rem = list(a)
    if len(rem) <= db:
        return [], rem
    lead = b[-1]
    inv = 1 if lead == 1 else pow(lead, -1, q)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % q
        if c:
            c = c * inv % q
            quot[k - db] = c
            base = k - db
            for j in range(db):
                rem[base + j] = (rem[base + j] - c * b[j]) % q
        rem[k] = 0
    return _trim(quot), _trim([c % q for c in rem[:db]])


def _mod(a: Sequence[int], b: Sequence[int], q: int) -> Coeffs:
    return _divmod(a, b, q)[1]


def _monic(a: Sequence[int], p: int) -> Coeffs:
    if not a:
        return []
    lead = a[-1]
    if lead == 1:
        return list(a)
    return _scale(a, pow(lead, -1, p), p)


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a: Sequence[int], q: int) -> Coeffs:
    return _trim([i * a[i] % q for i in range(1, len(a))])


def _powmod(base: Sequence[int], e: int, f: Sequence[int], q: int) -> Coeffs:
    result: Coeffs = [1] if len(f) > 1 else []
    b = _mod(base, f, q)
    while e:
        if e & 1:
            result = _mod(_mul(result, b, q), f, q)
        e >>= 1
        if e:
            b = _mod(_mul(b, b, q), f, q)
    return result


def _eval(a: Sequence[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


# ---------------------------------------------------------------------------
# public polynomial type


@dataclass(frozen=True)
class PolyZq:
    """Polynomial over Z/qZ, coefficients lowest degree first.

    >>> PolyZq((1, 1), 5) * PolyZq((-1, 1), 5)
    PolyZq(coeffs=(4, 0, 1), modulus=5)
    """

    coeffs: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError("modulus must be >= 2")
        object.__setattr__(self, "coeffs", tuple(_norm(self.coeffs, self.modulus)))

    @classmethod
    def x(cls, q: int) -> PolyZq:
        return cls((0, 1), q)

    @classmethod
    def constant(cls, c: int, q: int) -> PolyZq:
        return cls((c,), q)

    @classmethod
    def binomial(cls, n: int, m: int, q: int) -> PolyZq:
        """X^n - m reduced mod q."""
        return cls((-m,) + (0,) * (n - 1) + (1,), q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.lead == 1

    def _check(self, other: PolyZq) -> None:
        if not isinstance(other, PolyZq):
            raise TypeError("expected PolyZq")
        if other.modulus != self.modulus:
            raise ModulusMismatchError(f"moduli {self.modulus} and {other.modulus} differ")

    def _wrap(self, c: Sequence[int]) -> PolyZq:
        return PolyZq(tuple(c), self.modulus)

    def __add__(self, other: PolyZq) -> PolyZq:
        self._check(other)
        return self._wrap(_add(self.coeffs, other.coeffs, self.modulus))

    def __sub__(self, other: PolyZq) -> PolyZq:
        self._check(other)
        return self._wrap(_sub(self.coeffs, other.coeffs, self.modulus))

    def __neg__(self) -> PolyZq:
        return self._wrap([-c for c in self.coeffs])

    def __mul__(self, other: PolyZq | int) -> PolyZq:
        if isinstance(other, int):
            return self._wrap(_scale(self.coeffs, other, self.modulus))
        self._check(other)
        return self._wrap(_mul(self.coeffs, other.coeffs, self.modulus))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PolyZq:
        if e < 0:
            raise DomainError("negative exponent")
        out = PolyZq((1,), self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divrem(self, divisor: PolyZq) -> tuple[PolyZq, PolyZq]:
        """Quotient and remainder by a monic divisor."""
        self._check(divisor)
        if not divisor.is_monic():
            raise DomainError("divisor must be monic")
        quot, rem = _divmod(self.coeffs, divisor.coeffs, self.modulus)
        return self._wrap(quot), self._wrap(rem)

    def __floordiv__(self, divisor: PolyZq) -> PolyZq:
        return self.divrem(divisor)[0]

    def __mod__(self, divisor: PolyZq) -> PolyZq:
        return self.divrem(divisor)[1]

    def __call__(self, x: int) -> int:
        return _eval(self.coeffs, x, self.modulus)

    def derivative(self) -> PolyZq:
        return self._wrap(_deriv(self.coeffs, self.modulus))

    def monic(self) -> PolyZq:
        """Scale by the inverse of the leading coefficient (must be a unit)."""
        if self.is_zero():
            return self
        return self._wrap(_scale(self.coeffs, pow(self.lead, -1, self.modulus), self.modulus))

    def reduce(self, q: int) -> PolyZq:
        """Reinterpret the coefficients modulo q (q should divide the modulus)."""
        return PolyZq(self.coeffs, q)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def poly_gcd(f: PolyZq, g: PolyZq, p: int) -> PolyZq:
    """Monic gcd in F_p[X]; gcd(0, 0) = 0."""
    _require_prime(p)
    if f.modulus != p or g.modulus != p:
        raise ModulusMismatchError("operands must live over F_p")
    return PolyZq(tuple(_gcd(f.coeffs, g.coeffs, p)), p)


# ---------------------------------------------------------------------------
# factorization over F_p


@dataclass(frozen=True)
class FactorizationModP:
    p: int
    unit: int
    factors: tuple[tuple[PolyZq, int], ...] = field(default_factory=tuple)

    def expand(self) -> PolyZq:
        out = PolyZq((self.unit,), self.p)
        for g, e in self.factors:
            out = out * g**e
        return out

    @property
    def multiplicities(self) -> list[int]:
        return [e for _, e in self.factors]

    def repeated(self) -> list[tuple[PolyZq, int]]:
        return [(g, e) for g, e in self.factors if e >= 2]


def _pth_root(a: Sequence[int], p: int) -> Coeffs:
    # over F_p coefficients are their own p-th roots
    return [a[i] for i in range(0, len(a), p)]


def _squarefree_decomposition(f: Coeffs, p: int) -> list[tuple[Coeffs, int]]:
    out: list[tuple[Coeffs, int]] = []
    c = _gcd(f, _deriv(f, p), p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        fac = _divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = _divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for g, j in _squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, j * p))
    return out


def _distinct_degree(f: Coeffs, p: int) -> list[tuple[Coeffs, int]]:
    out = []
    x = [0, 1]
    h = x
    i = 1
    while len(f) - 1 >= 2 * i:
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f: Coeffs, d: int, p: int, rng: random.Random) -> list[Coeffs]:
    n = len(f) - 1
    if n == d:
        return [f]
    if d == 1 and p <= 64:
        # root search is cheap for tiny fields
        return [[(-r) % p, 1] for r in range(p) if _eval(f, r, p) == 0]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map F_{2^d} -> F_2
            t = list(a)
            b = list(a)
            for _ in range(d - 1):
                b = _mod(_mul(b, b, 2), f, 2)
                t = _add(t, b, 2)
            g = _gcd(f, t, 2)
        else:
            g = _gcd(f, a, p)
            if len(g) == 1:
                b = _powmod(a, (p**d - 1) // 2, f, p)
                g = _gcd(f, _sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(_divmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f: PolyZq, p: int) -> FactorizationModP:
    """Factor f over F_p into monic irreducibles with multiplicities.

    >>> [str(g) for g, _ in factor_mod_p(PolyZq((-3, 0, 0, 1), 5), 5).factors]
    ['x + 3', 'x^2 + 2*x + 4']
    """
    _require_prime(p)
    if f.modulus != p:
        f = f.reduce(p)
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    unit = f.lead
    monic = _monic(list(f.coeffs), p)
    rng = random.Random(hash((p,) + tuple(monic)) & 0xFFFFFFFF)
    collected: dict[tuple[int, ...], int] = {}
    for g, e in _squarefree_decomposition(monic, p):
        for h, d in _distinct_degree(g, p):
            for irr in _equal_degree(h, d, p, rng):
                key = tuple(irr)
                collected[key] = collected.get(key, 0) + e
    factors = tuple(
        (PolyZq(k, p), e) for k, e in sorted(collected.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    )
    return FactorizationModP(p, unit, factors)


def is_irreducible_mod_p(f: PolyZq, p: int) -> bool:
    """Rabin's test: f of degree n is irreducible iff x^{p^n} = x mod f and
    gcd(f, x^{p^{n/r}} - x) = 1 for each prime r | n."""
    _require_prime(p)
    f = f.reduce(p) if f.modulus != p else f
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    g = _monic(list(f.coeffs), p)
    x = [0, 1]
    for r in {r for r in range(2, n + 1) if n % r == 0 and is_prime(r)}:
        h = _powmod(x, p ** (n // r), g, p)
        if len(_gcd(g, _sub(h, x, p), p)) > 1:
            return False
    return _powmod(x, p**n, g, p) == _mod(x, g, p)
