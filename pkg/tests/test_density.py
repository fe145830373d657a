import json
import math
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np
import pytest

from puremono.arith import is_prime, prime_divisors, radical, squarefree_sieve
from puremono.criterion import frobenius_fixed_classes, is_alpha_monogenic
from puremono.density import (
    ExactDensity,
    ap_density,
    bad_intersection_density,
    conditional_survival,
    delta_n,
    expected_failures,
    failure_distribution,
    full_ap_modulus,
    local_factor,
    local_loss,
    refinement_modulus,
    sf_ap_density,
)
from puremono.errors import DomainError

from conftest import ZETA2_INV

F = Fraction


def test_delta_examples():
    assert delta_n(4) == ExactDensity(F(2, 3))
    assert delta_n(3) == ExactDensity(F(3, 4))
    assert delta_n(6) == ExactDensity(F(1, 2))
    assert abs(delta_n(4).numeric() - 4 / math.pi**2) < 1e-15
    assert round(delta_n(4).numeric(), 4) == 0.4053
    assert round(delta_n(3).numeric(), 4) == 0.4559
    assert round(delta_n(6).numeric(), 4) == 0.3040
    assert round(delta_n(5).numeric(), 4) == 0.5066
    assert delta_n(6).pi_form() == "3/pi^2"
    assert delta_n(3).pi_form() == "9/(2*pi^2)"
    with pytest.raises(DomainError):
        delta_n(1)


def test_delta_properties():
    for n in range(2, 400):
        assert delta_n(n) == delta_n(radical(n))
        assert ap_density(n, 1, 0) == delta_n(n)
        for k in range(2, 6):
            assert delta_n(n * k).numeric() <= delta_n(n).numeric()


def test_extended_precision():
    v = delta_n(4).numeric(dps=50)
    with mpmath.workdps(60):
        assert abs(v - 4 / mpmath.pi**2) < mpmath.mpf(10) ** -45


def test_exact_density_serialization():
    d = ap_density(6, 5, 2)
    doc = json.loads(json.dumps(d.to_dict()))
    assert set(doc) == {"num", "den", "zeta2_inv", "approx"}
    assert ExactDensity.from_dict(doc) == d
    with pytest.raises(DomainError):
        ExactDensity(F(-1))


def test_sf_ap_examples():
    assert sf_ap_density(1, 0) == ExactDensity(F(1))
    assert sf_ap_density(4, 3) == ExactDensity(F(1, 3))
    assert sf_ap_density(4, 3).pi_form() == "2/pi^2"
    assert sf_ap_density(9, 2) == ExactDensity(F(1, 8))
    with pytest.raises(DomainError):
        sf_ap_density(4, 2)


@pytest.mark.parametrize("q,a", [(4, 3), (9, 2), (25, 7), (12, 5), (7, 3)])
def test_sf_ap_density_empirical(q, a):
    X = 10**6
    sqf = squarefree_sieve(1, X)
    m = np.arange(1, X + 1)
    count = int(np.count_nonzero(sqf & (m % q == a)))
    assert abs(count / X - sf_ap_density(q, a).numeric()) < 2e-3 / q**0.5


def test_local_factor_examples():
    assert local_factor(2, 4, 3).value == 1
    assert local_factor(3, 5, 2).value == F(3, 4)
    assert local_factor(3, 3, 2).value == F(2, 3)
    assert local_factor(2, 4, 1).value == 0
    assert local_factor(3, 5, 2).depth == 0 and local_factor(3, 27, 2).depth == 3


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_depth_one_factor_by_counting_lifts(p):
    bad = frobenius_fixed_classes(p)
    for a in range(1, p):
        lifts = [a + p * t for t in range(p)]
        good = sum(1 for b in lifts if b not in bad)
        assert F(good, p) == local_factor(p, p, a).value == conditional_survival(p, a)


def test_ap_density_examples():
    assert ap_density(4, 4, 3) == ExactDensity(F(1, 3))
    assert ap_density(4, 4, 3).pi_form() == "2/pi^2"
    assert ap_density(4, 4, 1) == ExactDensity(F(0))
    with pytest.raises(DomainError):
        ap_density(4, 6, 3)


def test_full_ap_examples():
    assert full_ap_modulus(6).modulus == 36
    g3 = full_ap_modulus(3)
    assert g3.modulus == 9 and g3.good_classes == {2, 4, 5, 7}
    g2 = full_ap_modulus(2)
    assert g2.modulus == 4 and g2.good_classes == {3}


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 10, 12, 15])
def test_good_classes_are_fully_monogenic(n):
    g = full_ap_modulus(n)
    for a in g.good_classes:
        assert math.gcd(a, g.modulus) == 1
        assert ap_density(n, g.modulus, a) == sf_ap_density(g.modulus, a)
        for m in range(a, 20_000, g.modulus):
            r = is_alpha_monogenic(n, m)
            if r.squarefree and r.irreducible:
                assert r.verdict


def test_failure_distribution_examples():
    d6 = failure_distribution(6)
    assert d6[frozenset()] == delta_n(6)
    assert d6[frozenset({2, 3})] == ExactDensity(F(1, 12))
    assert failure_distribution(4)[frozenset({2})].pi_form() == "2/pi^2"


def test_failure_distribution_sums_to_squarefree_density():
    for n in range(2, 31):
        dist = failure_distribution(n)
        assert len(dist) == 2 ** len(prime_divisors(n))
        total = ExactDensity(F(0))
        for v in dist.values():
            total = total + v
        assert total == ExactDensity(F(1))
        mean = sum((len(S) * v.rational for S, v in dist.items()), F(0))
        assert mean == expected_failures(n)


def test_expected_failures_examples():
    assert expected_failures(6) == F(7, 12)
    assert expected_failures(4) == F(1, 3)
    assert expected_failures(7) == F(1, 8)


def test_intersection_density_identity():
    dist = failure_distribution(30)
    for k in range(4):
        for P in combinations((2, 3, 5), k):
            need = frozenset(P)
            total = sum((v.rational for S, v in dist.items() if need <= S), F(0))
            assert ExactDensity(total) == bad_intersection_density(P)


@pytest.mark.parametrize("p", [p for p in range(2, 60) if is_prime(p)])
def test_local_loss_from_class_densities(p):
    q = p * p
    bad_units = frobenius_fixed_classes(p).unit_classes
    total = sum((sf_ap_density(q, a).rational for a in bad_units), F(0))
    assert total == F(p - 1) * sf_ap_density(q, 1).rational == local_loss(p) == F(1, p + 1)


def test_conditional_survival_examples():
    assert conditional_survival(3, 0) == 1
    assert conditional_survival(3, 1) == F(2, 3)
    assert conditional_survival(2, 1) == F(1, 2)


def test_refinement_modulus_examples():
    assert refinement_modulus(12) == 72
    assert refinement_modulus(6) == 36
    assert refinement_modulus(7) == 49
    for n in range(2, 300):
        expected = math.prod(p ** (e + 1) for p, e in _fac(n))
        assert refinement_modulus(n) == expected


def _fac(n):
    out = []
    for p in prime_divisors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out
