"""Acceptance gate: one recorded pass/fail line per criterion.

The lines are printed in the terminal summary under "acceptance criteria".
"""

import math
import time
from fractions import Fraction

from puremono.arith import is_squarefree, valuation
from puremono.census import ap_census, disc_census, failure_histogram, interval_census, sweep
from puremono.cli import run_verification
from puremono.criterion import congruence_shortcut, frobenius_fixed_classes, is_alpha_monogenic
from puremono.density import ExactDensity, ap_density, delta_n, full_ap_modulus
from puremono.dedekind import cubic_exceptional_generator

from conftest import ZETA2_INV


def test_c01_oracle_equivalence(record):
    t0 = time.perf_counter()
    checked, mismatches = run_verification(12, 2000)
    secs = time.perf_counter() - t0
    ok = not mismatches and secs < 120
    record("C1 oracle equivalence", ok, f"{checked} cases, {len(mismatches)} mismatches, {secs:.1f}s")
    assert ok, mismatches[:5]


def test_c02_teichmuller_sets(record):
    got = {p: frobenius_fixed_classes(p) for p in (2, 3, 5)}
    ok = (
        got[5].unit_classes == {1, 7, 18, 24}
        and got[3].unit_classes == {1, 8}
        and got[2].unit_classes == {1}
        and got[2].modulus == 4
    )
    detail = "; ".join(f"p={p}: {sorted(b.unit_classes)} mod {b.modulus}" for p, b in got.items())
    record("C2 Teichmueller sets", ok, detail)
    assert ok


def test_c03_degree_shortcuts(record):
    bound = 10**5
    mismatches = []
    checked = 0
    for n in (3, 4, 5, 6):
        for m in range(-bound, bound + 1):
            if m == 0:
                continue
            r = is_alpha_monogenic(n, m)
            if not r.irreducible:
                continue
            checked += 1
            if congruence_shortcut(n, m) != r.verdict:
                mismatches.append((n, m))
    record("C3 degree shortcuts", not mismatches, f"{checked} irreducible cases, {len(mismatches)} mismatches")
    assert not mismatches, mismatches[:5]


def test_c04_exact_densities(record):
    want = {4: Fraction(2, 3), 3: Fraction(3, 4), 6: Fraction(1, 2), 5: Fraction(5, 6)}
    forms = {4: "4/pi^2", 3: "9/(2*pi^2)", 6: "3/pi^2", 5: "5/pi^2"}
    ok = all(delta_n(n) == ExactDensity(r) and delta_n(n).pi_form() == forms[n] for n, r in want.items())
    ap = ap_density(4, 4, 3)
    ok = ok and ap == ExactDensity(Fraction(1, 3)) and ap.pi_form() == "2/pi^2"
    detail = ", ".join(f"n={n}: {delta_n(n).pi_form()}" for n in want) + f", ap(4,4,3)={ap.pi_form()}"
    record("C4 exact densities", ok, detail)
    assert ok


def test_c05_empirical_density(record):
    parts = []
    ok = True
    for n in (4, 6):
        res = interval_census(n, 10**7)
        good = res.abs_error <= 0.003 and res.runtime_ms < 60_000
        ok &= good
        parts.append(f"n={n}: {res.empirical:.6f} err {res.abs_error:.2e} in {res.runtime_ms / 1e3:.1f}s")
    record("C5 empirical density X=1e7", ok, "; ".join(parts))
    assert ok


def test_c06_ap_census(record):
    good = ap_census(4, 4, 3, 10**6)
    bad = ap_census(4, 4, 1, 10**6)
    target = 2 / math.pi**2
    ok = abs(good.empirical - target) <= 0.005 and bad.count == 0
    record(
        "C6 AP census",
        ok,
        f"3 mod 4: {good.empirical:.6f} vs {target:.6f}; 1 mod 4: count {bad.count}",
    )
    assert ok


def test_c07_failure_distribution(record):
    h = failure_histogram(6, 10**6)
    want = {
        frozenset(): 1 / 2,
        frozenset({2}): 1 / 4,
        frozenset({3}): 1 / 6,
        frozenset({2, 3}): 1 / 12,
    }
    errs = {S: abs(h.frequency(S) - ZETA2_INV * w) for S, w in want.items()}
    joint = h.failure_rate({2, 3})
    product = h.failure_rate({2}) * h.failure_rate({3})
    gap = abs(joint - product)
    ok = max(errs.values()) <= 0.005 and gap <= 0.005
    record(
        "C7 failure distribution",
        ok,
        f"max subset err {max(errs.values()):.2e}; joint {joint:.5f} vs product {product:.5f}",
    )
    assert ok


def test_c08_discriminant_census(record):
    X = 10**4
    r3 = disc_census(3, 27 * X**2)
    r4 = disc_census(4, 256 * X**3)
    e3 = abs(r3.count - delta_n(3).numeric() * X) / (delta_n(3).numeric() * X)
    e4 = abs(r4.count - 2 * delta_n(4).numeric() * X) / (2 * delta_n(4).numeric() * X)
    ok = r3.hi == X and r4.hi == X and e3 <= 0.02 and e4 <= 0.02
    record("C8 discriminant census", ok, f"n=3: {r3.count} (rel {e3:.4f}); n=4: {r4.count} (rel {e4:.4f})")
    assert ok


def test_c09_good_progressions(record):
    g = full_ap_modulus(6)
    exceptions = []
    checked = 0
    for r in sweep(6, 1, 10**5):
        if r.squarefree and r.m % g.modulus in g.good_classes:
            checked += 1
            if not r.verdict:
                exceptions.append(r.m)
    ok = g.modulus == 36 and bool(g.good_classes) and not exceptions
    record(
        "C9 good progressions mod 36",
        ok,
        f"classes {sorted(g.good_classes)}; {checked} squarefree m checked, {len(exceptions)} exceptions",
    )
    assert ok


def test_c10a_nu_invariance(record):
    bad = []
    for p in (2, 3, 5):
        for r in (1, 2, 3):
            q = p ** (r + 2)
            for m in range(-10**4, 10**4 + 1):
                if m == 0 or not is_squarefree(m):
                    continue
                big = (pow(m, p**r, q) - m) % q
                small = (pow(m, p, q) - m) % q
                vb = r + 2 if big == 0 else valuation(p, big)
                vs = r + 2 if small == 0 else valuation(p, small)
                if vb != vs:
                    bad.append((p, r, m))
    record("C10a nu-invariance", not bad, f"{len(bad)} violations")
    assert not bad


def test_c10b_cubic_exceptional_generator(record):
    ms = []
    m = 2
    while len(ms) < 50:
        if m % 9 in (1, 8) and is_squarefree(m):
            ms.append(m)
        m += 1
    gens = [cubic_exceptional_generator(m) for m in ms]
    integral = [g.m for g in gens if not g.integral]
    off = [g.m for g in gens if g.disc_ratio != 9]
    ok = not integral and not off
    record(
        "C10b cubic generator",
        ok,
        f"{len(ms)} m: non-integral {len(integral)}; disc ratio != 9 for {len(off)} "
        f"(ratio is 729/(m-s)^2, e.g. m={gens[1].m}: {gens[1].disc_ratio})",
    )
    assert ok


def test_c11_small_exact_counts(record):
    count = interval_census(4, 20).count
    rows = {r.m: r.verdict for r in sweep(5, 1, 10)}
    true_set = {m for m, v in rows.items() if v}
    ok = count == 9 and true_set == {2, 3, 5, 6, 10} and rows[7] is False and 7 in frobenius_fixed_classes(5)
    record("C11 small exact counts", ok, f"census(4,20)={count}; sweep(5,1,10) true {sorted(true_set)}, m=7 {rows[7]}")
    assert ok
