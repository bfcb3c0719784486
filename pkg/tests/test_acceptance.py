"""The twelve acceptance criteria, one test each.

Every test records a ``ACnn PASS|FAIL ...`` line (shown in the pytest
terminal summary) before asserting. Run this file directly to execute
just these criteria.
"""
import random
import sys

import pytest

from towerarith.arithmetic import add, add_via_search, add_via_sqrt, integer_universe
from towerarith.codec import UniPolynomial, to_polynomial
from towerarith.errors import NotApplicable
from towerarith.progression import check_relation
from towerarith.series import euler_iterate, rational_iterate, rational_values, reciprocal_sum_check
from towerarith.sieve import eratosthenes, primes_in_range, product_of_raisers, pruned_product
from towerarith.textio import format_polytower, format_tower, parse_polytower, parse_tower
from towerarith.tower import ONE, UNIT, Factor, Polytower, Tower, decode, encode, multiply, raiser


x1, x2, x3, x4 = (Tower.pillar(k) for k in range(1, 5))
G0 = Polytower.from_towers([ONE, x1, x2, multiply(x1, x2)])


def record(report, ac, ok, detail):
    report(f"{ac} {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_ac01_codec_round_trip(acceptance_report):
    failures = [n for n in range(1, 10**6 + 1) if decode(encode(n)) != n]
    record(acceptance_report, "AC01", not failures,
           f"round-trip over [1, 10^6]: {len(failures)} failures")


def test_ac02_mixed_product_list(acceptance_report):
    expected = [1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 64, 72, 192, 576]
    prod, _ = product_of_raisers([(x1, G0), (x2, Polytower.from_towers([ONE, x1]))])
    ok = prod.values() == expected and prod.max_coefficient == 1
    record(acceptance_report, "AC02", ok, f"{len(prod)} terms, max coefficient {prod.max_coefficient}")


def test_ac03_first_iterate(acceptance_report):
    expected = [1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 27, 36, 54, 64, 72, 108, 192, 216, 576, 729,
                1458, 1728, 2916, 5832, 46656]
    g1 = euler_iterate([2, 3], 1)
    record(acceptance_report, "AC03", g1.values() == expected and g1.max_coefficient == 1,
           f"{len(g1)} values, largest {g1.values()[-1]}")


def test_ac04_renormalised_counts(acceptance_report):
    l1_values = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 21, 24, 28, 30, 35, 36, 40,
                 42, 45, 56, 60, 63, 64, 70, 72, 84, 90, 105, 120, 126, 140, 168, 180, 192, 210,
                 252, 280, 315, 320, 360, 420, 448, 504, 576, 630, 840, 960, 1260, 1344, 2240,
                 2520, 2880, 4032, 6720, 20160]
    l2_values = [1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 15, 20, 21, 24, 28, 30, 35, 40, 42, 56, 60,
                 70, 84, 105, 120, 140, 168, 210, 280, 420, 840]
    # L1: mixed raiser product times (1 + x3)(1 + x4)
    l1, _ = product_of_raisers([(x1, G0), (x2, Polytower.from_towers([ONE, x1])), (x3, UNIT), (x4, UNIT)])
    # L2: drop x1*x2 from the exponent set, then multiply by (1 + x2)(1 + x3)(1 + x4)
    a = UNIT + raiser(x1, G0 - multiply(x1, x2))
    l2, _ = pruned_product([a] + [UNIT + x for x in (x2, x3, x4)])
    ok = (len(l1), len(l2)) == (60, 32) and l1.values() == l1_values and l2.values() == l2_values
    record(acceptance_report, "AC04", ok, f"L1 {len(l1)} terms, L2 {len(l2)} terms")


def test_ac05_sieve(acceptance_report):
    problems = []
    for t in range(2, 13):
        primes, trace = primes_in_range(t)
        lo, hi = 1 << t, 1 << (t + 1)
        if primes != [p for p in eratosthenes(hi) if p >= lo]:
            problems.append(f"t={t} mismatch")
        if not primes:
            problems.append(f"t={t} empty")
        if any(it.max_coefficient != 1 for it in trace.iterations):
            problems.append(f"t={t} coefficient > 1")
    if primes_in_range(2)[0] != [5, 7] or primes_in_range(3)[0] != [11, 13]:
        problems.append("small instances")
    record(acceptance_report, "AC05", not problems, "t in [2, 12]: " + (", ".join(problems) or "all exact"))


def test_ac06_homomorphism(acceptance_report):
    rng = random.Random(2024)
    failures = 0
    for _ in range(10**4):
        a = rng.randint(1, 10**9)
        b = rng.randint(1, 10**9 // a)
        if decode(multiply(encode(a), encode(b))) != a * b:
            failures += 1
    record(acceptance_report, "AC06", failures == 0, f"10^4 pairs with product <= 10^9: {failures} failures")


def test_ac07_polynomial_order(acceptance_report):
    ok = (
        to_polynomial(encode(12)) == UniPolynomial([0, 0, 1, 1])
        and to_polynomial(encode(9)) == UniPolynomial([1, 2, 1])
        and to_polynomial(encode(11)) == UniPolynomial([1, 1, 0, 1])
    )
    bad = [n for n in range(1, 10**4 + 1) if to_polynomial(encode(n))(2) != n]
    record(acceptance_report, "AC07", ok and not bad, f"examples {'ok' if ok else 'wrong'}, {len(bad)} evaluation failures")


def test_ac08_reciprocal_sum(acceptance_report):
    r = reciprocal_sum_check([2, 3], 10**4)
    sums = [reciprocal_sum_check([2, 3], b).partial_sum for b in (10, 100, 1000, 10**4)]
    monotone = all(x <= y for x, y in zip(sums, sums[1:]))
    ok = r.passed and r.euler_bound == 3 and monotone
    record(acceptance_report, "AC08", ok, f"sum {float(r.partial_sum):.6f} < {r.euler_bound}, monotone={monotone}")


def test_ac09_rationals(acceptance_report):
    h = rational_iterate([2, 3], 1)
    values = rational_values(h)
    ok = len(h) == 81 and h.max_coefficient == 1 and len(set(values)) == 81
    record(acceptance_report, "AC09", ok, f"{len(h)} terms, {len(set(values))} distinct values")


def test_ac10_progression(acceptance_report):
    results = {n: check_relation(n) for n in range(9)}
    failed = [str(n) for n, ok in results.items() if not ok]
    record(acceptance_report, "AC10", not failed, "n in [0, 8]: " + (", ".join(failed) + " failed" if failed else "all hold"))


def test_ac11_addition_strategies(acceptance_report):
    towers = [encode(n) for n in range(1, 1001)]
    universe = integer_universe(2000)
    disagreements = 0
    sqrt_cases = 0
    for a in range(1, 1001):
        ta = towers[a - 1]
        for b in range(1, 1001 - a + 1):
            tb = towers[b - 1]
            expected = add(ta, tb)
            if add_via_search(ta, tb, universe) != expected:
                disagreements += 1
            try:
                got = add_via_sqrt(ta, tb)
            except NotApplicable:
                continue
            sqrt_cases += 1
            if got != expected:
                disagreements += 1
    conventions = add(ONE, ONE) == encode(2) and add(x1, x1) == encode(4)
    record(acceptance_report, "AC11", disagreements == 0 and conventions,
           f"sums <= 1000: {disagreements} disagreements, {sqrt_cases} sqrt cases, 1+1 and 2+2 {'ok' if conventions else 'wrong'}")


def random_tower(rng, depth=3, signed=False):
    """A canonical tower built structurally: distinct pillars, random subtrees."""
    if depth == 0:
        return ONE
    pillars = sorted(rng.sample(range(1, 9), rng.randint(0, 3)))
    return Tower(
        Factor(k, random_tower(rng, rng.randint(0, depth - 1)), rng.choice((1, -1)) if signed else 1)
        for k in pillars
    )


def random_polytower(rng):
    terms = [(random_tower(rng, 2), rng.choice((-3, -2, -1, 1, 2, 3))) for _ in range(rng.randint(0, 5))]
    return Polytower(terms)


def test_ac12_text_round_trip(acceptance_report):
    rng = random.Random(12)
    failures = 0
    for i in range(10**4):
        kind = i % 3
        if kind == 2:
            p = random_polytower(rng)
            text = format_polytower(p)
            back = parse_polytower(text)
            again = format_polytower(Polytower(reversed(list(back.items()))))
        else:
            p = random_tower(rng, 4, signed=kind == 1)
            text = format_tower(p)
            back = parse_tower(text)
            again = format_tower(back)
        if back != p or again != text:
            failures += 1
    record(acceptance_report, "AC12", failures == 0, f"10^4 random towers and polytowers: {failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider", *sys.argv[1:]]))
