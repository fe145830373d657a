import pytest
import sympy
from hypothesis import given, strategies as st

from puremono.arith import is_prime, is_squarefree, radical, valuation
from puremono.criterion import (
    congruence_shortcut,
    field_discriminant_if_monogenic,
    frobenius_fixed_classes,
    is_alpha_monogenic,
    is_irreducible_pure,
    local_condition,
    poly_discriminant,
    poly_discriminant_factored,
)
from puremono.errors import DomainError, NotMonogenicError

X = sympy.Symbol("x")
PRIMES_50 = [p for p in range(2, 50) if is_prime(p)]


# --- Frobenius-fixed classes ------------------------------------------------


def test_frobenius_examples():
    assert frobenius_fixed_classes(3).classes == {0, 1, 8}
    assert frobenius_fixed_classes(5).classes == {0, 1, 7, 18, 24}
    b2 = frobenius_fixed_classes(2)
    assert b2.modulus == 4 and b2.classes == {0, 1}
    with pytest.raises(DomainError):
        frobenius_fixed_classes(9)


@pytest.mark.parametrize("p", PRIMES_50)
def test_frobenius_against_enumeration(p):
    q = p * p
    solutions = {x for x in range(q) if (pow(x, p, q) - x) % q == 0}
    b = frobenius_fixed_classes(p)
    assert b.classes == solutions
    assert len(b.classes) == p and 0 in b.classes
    # one fixed lift above each unit residue mod p
    assert sorted(c % p for c in b.unit_classes) == list(range(1, p))


# --- local condition ---------------------------------------------------------


def test_local_condition_examples():
    assert local_condition(3, 3) == (1, True)
    assert local_condition(3, 10)[1] is False
    assert local_condition(2, -2) == (1, True)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_local_condition_matches_exact_valuation_and_bad_classes(p):
    bad = frobenius_fixed_classes(p)
    for m in range(-10**4, 10**4 + 1):
        if m == 0:
            continue
        nu, ok = local_condition(p, m)
        if m**p - m != 0:
            assert min(valuation(p, m**p - m), 2) == nu
        else:
            assert nu == 2  # m = 1 (or -1 for odd p): m^p - m = 0
        assert ok == (nu == 1) == ((m % (p * p)) not in bad.classes)


# --- irreducibility ----------------------------------------------------------


def test_irreducible_examples():
    assert not is_irreducible_pure(4, 16)
    assert not is_irreducible_pure(4, -4)
    assert is_irreducible_pure(5, 6)
    assert not is_irreducible_pure(3, 1)
    assert is_irreducible_pure(8, -1)
    assert not is_irreducible_pure(6, -1)
    assert not is_irreducible_pure(6, -8)  # (-2)^3
    assert not is_irreducible_pure(8, -64)  # -4 * 2^4


def test_x4_plus_4_factors():
    assert sympy.expand((X**2 + 2 * X + 2) * (X**2 - 2 * X + 2)) == X**4 + 4


def test_irreducibility_against_sympy():
    for n in range(2, 9):
        for m in range(-130, 131):
            if m == 0:
                continue
            expected = sympy.Poly(X**n - m, X).is_irreducible
            assert is_irreducible_pure(n, m) == expected, (n, m)


# --- main criterion ----------------------------------------------------------


def test_criterion_examples():
    assert is_alpha_monogenic(5, 6).verdict is True
    assert is_alpha_monogenic(4, 5).verdict is False
    assert is_alpha_monogenic(3, 12).verdict is False
    assert is_alpha_monogenic(2, -1).verdict is True
    assert is_alpha_monogenic(2, -2).verdict is True
    assert is_alpha_monogenic(3, 3).verdict is True
    with pytest.raises(DomainError):
        is_alpha_monogenic(1, 3)
    with pytest.raises(DomainError):
        is_alpha_monogenic(3, 0)


def test_reducible_input_is_not_applicable():
    r = is_alpha_monogenic(4, 16)
    assert r.verdict is None and not r.applicable
    assert not r.irreducible
    assert [x.p for x in r.locals] == [2]


@given(st.integers(2, 60), st.integers(-10**6, 10**6).filter(bool))
def test_report_invariants(n, m):
    r = is_alpha_monogenic(n, m)
    assert [x.p for x in r.locals] == sorted(sympy.primefactors(n))
    assert r.failing_set == {x.p for x in r.locals if not x.passes}
    assert all(x.passes == (x.nu == 1) for x in r.locals)
    if r.irreducible:
        assert r.verdict == (r.squarefree and not r.failing_set)
    assert r.to_dict()["failing_set"] == sorted(r.failing_set)


def test_quadratic_classical_rule():
    # Z[sqrt(m)] is maximal iff m is squarefree and m = 2, 3 mod 4
    for m in range(-500, 501):
        if m in (0, 1) or sympy.sqrt(m).is_integer:
            continue
        expected = is_squarefree(m) and m % 4 in (2, 3)
        assert is_alpha_monogenic(2, m).verdict == expected


# --- degree shortcuts --------------------------------------------------------


def test_shortcut_examples():
    assert congruence_shortcut(3, 17) is False
    assert congruence_shortcut(6, 11) is True
    assert congruence_shortcut(4, 2) is True
    with pytest.raises(DomainError):
        congruence_shortcut(7, 2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_shortcut_matches_criterion(n):
    for m in range(-10**4, 10**4 + 1):
        if m == 0 or not is_irreducible_pure(n, m):
            continue
        assert congruence_shortcut(n, m) == is_alpha_monogenic(n, m).verdict


@pytest.mark.parametrize("n,period", [(3, 9), (4, 4), (5, 25), (6, 36)])
def test_shortcut_periodicity(n, period):
    seen = {}
    for m in range(-3000, 3001):
        if m == 0 or not is_squarefree(m) or not is_irreducible_pure(n, m):
            continue
        v = is_alpha_monogenic(n, m).verdict
        assert seen.setdefault(m % period, v) == v


# --- remark on p^r ------------------------------------------------------------


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(-10**4, 10**4))
def test_nu_invariance_sampled(p, r, m):
    if m == 0 or not is_squarefree(m):
        return
    q = p ** (r + 2)
    big = (pow(m, p**r, q) - m) % q
    small = (pow(m, p, q) - m) % q
    cap = lambda v: r + 2 if v == 0 else valuation(p, v)
    assert cap(big) == cap(small)


# --- discriminants -----------------------------------------------------------


def test_discriminant_examples():
    assert poly_discriminant(2, -2) == -8
    assert poly_discriminant(3, 3) == -243
    assert poly_discriminant(2, 5) == 20
    assert poly_discriminant(4, 2) == -2048


def test_discriminant_against_sympy():
    for n in range(2, 9):
        for m in (-7, -3, -2, -1, 1, 2, 5, 12):
            d = poly_discriminant(n, m)
            assert d == sympy.discriminant(X**n - m, X)
            assert abs(d) == n**n * abs(m) ** (n - 1)
            assert poly_discriminant_factored(n, m).value() == d


def test_field_discriminant():
    assert field_discriminant_if_monogenic(2, -1) == -4
    assert field_discriminant_if_monogenic(3, 3) == -243
    assert field_discriminant_if_monogenic(4, 2) == -2048
    with pytest.raises(NotMonogenicError):
        field_discriminant_if_monogenic(4, 5)
    with pytest.raises(NotMonogenicError):
        field_discriminant_if_monogenic(4, 16)


def test_radical_controls_local_primes():
    for n in range(2, 200):
        assert [x.p for x in is_alpha_monogenic(n, 7).locals] == sympy.primefactors(radical(n))
