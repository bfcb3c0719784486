"""Finite truncations of the tower analogue of Euler's product.

For a prime vector P the generator ``G_{n+1} = prod_k (1 + R(p_k, G_n))``
converges (below any value bound) to the sum of all P-towers: numbers
whose tower uses pillars from P only, at every level. This module runs
that iteration, checks it against a direct classifier, bounds reciprocal
sums by the Euler factor, extends to rationals and estimates how often a
pillar occurs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .codec import contains_prime
from .errors import DomainError, DuplicateGenerated
from .sieve import _pillars, _sieve_step, generate_until_stable, pruned_product, value_if_at_most
from .tower import ONE, UNIT, Factor, Polytower, Tower, decode, encode, poly_mul, raiser


def pure_towers(k: int, height: Optional[int], bound: Optional[int] = None) -> Polytower:
    """``1 + x_k + x_k^x_k + ...`` up to ``height`` levels and/or values <= bound."""
    if height is None and bound is None:
        raise DomainError("need a height or a bound to truncate the pure tower series")
    terms = [ONE]
    top = ONE
    while height is None or len(terms) <= height:
        top = Tower.pillar(k, top)
        if bound is not None and value_if_at_most(top, bound) is None:
            break
        terms.append(top)
    return Polytower.from_towers(terms)


def euler_iterate(
    primes: Sequence[int],
    iterations: int,
    bound: Optional[int] = None,
    seed_height: Optional[int] = 1,
) -> Polytower:
    """``G_iterations`` for the prime vector, pruned at ``bound`` when given.

    The seed ``G_0`` is the product over P of pure tower series of height
    ``seed_height`` (default 1, i.e. ``prod (1 + x_k)``); ``seed_height=None``
    keeps every pure tower with value <= bound.
    """
    if iterations < 0:
        raise DomainError(f"iterations must be >= 0, got {iterations}")
    if bound is not None and bound < 2:
        raise DomainError(f"bound must be >= 2, got {bound}")
    pillars = _pillars(primes)
    g, _ = pruned_product([pure_towers(k, seed_height, bound) for k in pillars], bound)
    for _ in range(iterations):
        g, _ = _sieve_step(g, pillars, bound)
    return g


def fixed_point(primes: Sequence[int], bound: int) -> Polytower:
    """Iterate from the maximal seed until the set of towers <= bound is stable."""
    if bound < 2:
        raise DomainError(f"bound must be >= 2, got {bound}")
    pillars = _pillars(primes)
    seed, _ = pruned_product([pure_towers(k, None, bound) for k in pillars], bound)
    return generate_until_stable(seed, pillars, bound)


def _trial_factor(n: int) -> List[Tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_p_tower_number(n: int, primes: Sequence[int]) -> bool:
    """Classifier oracle: every prime at every level of n's factorisation lies in P."""
    allowed = frozenset(primes)

    @lru_cache(maxsize=None)
    def check(m: int) -> bool:
        return all(p in allowed and check(e) for p, e in _trial_factor(m))

    return check(n)


@dataclass
class CoverageReport:
    primes: Tuple[int, ...]
    bound: int
    expected: List[int]
    generated: List[int]
    missing: List[int] = field(default_factory=list)
    unexpected: List[int] = field(default_factory=list)
    error: str = ""

    @property
    def ok(self) -> bool:
        return not (self.missing or self.unexpected or self.error)

    def lines(self) -> List[str]:
        out = [
            f"coverage primes={','.join(map(str, self.primes)) or '-'} bound={self.bound}"
            f" expected={len(self.expected)} generated={len(self.generated)}"
            f" ok={'true' if self.ok else 'false'}"
        ]
        if self.missing:
            out.append("missing=" + ",".join(map(str, self.missing)))
        if self.unexpected:
            out.append("unexpected=" + ",".join(map(str, self.unexpected)))
        if self.error:
            out.append(f"error={self.error}")
        return out


def coverage_check(primes: Sequence[int], bound: int) -> CoverageReport:
    """Compare the generated value set below ``bound`` with the P-tower classifier."""
    if bound > 10**5:
        raise DomainError(f"coverage_check enumerates every n <= bound; {bound} is too large")
    expected = [n for n in range(1, bound + 1) if is_p_tower_number(n, primes)]
    report = CoverageReport(tuple(primes), bound, expected, [])
    try:
        g = fixed_point(primes, bound)
    except DuplicateGenerated as exc:
        report.error = f"DuplicateGenerated: {exc}"
        return report
    if g.max_coefficient > 1:
        report.error = f"coefficient {g.max_coefficient} > 1"
    report.generated = g.values()
    if len(set(report.generated)) != len(report.generated):
        report.error = "repeated value in generated set"
    got = set(report.generated)
    want = set(expected)
    report.missing = sorted(want - got)
    report.unexpected = sorted(got - want)
    return report


def invariance_holds(primes: Sequence[int], bound: int) -> bool:
    """One more product step leaves the covered value set below bound unchanged."""
    g = fixed_point(primes, bound)
    step, _ = _sieve_step(g, _pillars(primes), bound)
    return step.values() == g.values()


@dataclass(frozen=True)
class ReciprocalSumReport:
    partial_sum: Fraction
    euler_bound: Fraction
    passed: bool


def euler_factor(primes: Sequence[int]) -> Fraction:
    """``prod 1/(1 - 1/p)`` over the prime vector."""
    out = Fraction(1)
    for p in primes:
        out *= Fraction(p, p - 1)
    return out


def reciprocal_sum_check(primes: Sequence[int], bound: int) -> ReciprocalSumReport:
    """Sum of 1/v over generated values v <= bound, against the Euler factor.

    Passes only on strict inequality, so the empty prime vector (sum 1,
    factor 1) fails.
    """
    total = sum((Fraction(1, v) for v in fixed_point(primes, bound).values()), Fraction(0))
    eb = euler_factor(primes)
    return ReciprocalSumReport(total, eb, total < eb)


def rational_iterate(primes: Sequence[int], iterations: int) -> Polytower:
    """``prod_k (R(x_k^-1, G) + 1 + R(x_k, G))`` with ``G = G_{iterations-1}``.

    ``G_{-1}`` is the unit polytower, which makes ``G_0 = prod (1 + x_k)``
    one ordinary step from it. Output towers carry signed factors; every
    coefficient must be 1.
    """
    if iterations < 0:
        raise DomainError(f"iterations must be >= 0, got {iterations}")
    pillars = _pillars(primes)
    g = UNIT if iterations == 0 else euler_iterate(primes, iterations - 1)
    h = UNIT
    for k in pillars:
        inverse = Tower((Factor(k, ONE, -1),))
        h = poly_mul(h, raiser(inverse, g) + UNIT + raiser(Tower.pillar(k), g))
    if h.max_coefficient > 1:
        raise DuplicateGenerated(f"rational expansion has coefficient {h.max_coefficient}")
    return h


def pillar_frequency(k: int, n: int) -> Fraction:
    """Fraction of integers in [2, n] whose tower mentions pillar k at some level."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    hits = sum(1 for m in range(2, n + 1) if contains_prime(encode(m), k))
    return Fraction(hits, n - 1)


def rational_values(h: Polytower, cap: Optional[int] = None) -> list:
    return [decode(t, cap) for t in h.towers()]
