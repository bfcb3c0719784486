"""Prime sieve that generates every composite as a tower, exactly once.

Starting from truncated pure towers of each known prime, the generator

    G_{n+1} = prod_k (1 + R(x_k, G_n))

is expanded with every tower above the range bound discarded after each
product. Once the generated set stops changing, the integers of
``[2^t, 2^(t+1)]`` that were never produced are the primes in that range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import bisect
from math import isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, DuplicateGenerated, EvaluationOverflow
from .primes import nth_prime, prime_index, primes_below
from .tower import ONE, Polytower, Tower, decode, raiser

MAX_ITERATIONS = 64


def eratosthenes(n: int) -> List[int]:
    """Primes <= n by the textbook sieve (used as ground truth)."""
    if n < 2:
        return []
    is_p = [True] * (n + 1)
    is_p[0] = is_p[1] = False
    for i in range(2, isqrt(n) + 1):
        if is_p[i]:
            for j in range(i * i, n + 1, i):
                is_p[j] = False
    return [i for i in range(n + 1) if is_p[i]]


def value_if_at_most(t: Tower, bound: int) -> Optional[int]:
    """Value of the integer tower ``t`` if it is <= bound, else None.

    Every intermediate of an integer decode is at most the final value, so
    decoding under a cap of ``bound.bit_length()`` bits never overflows for
    towers within the bound.
    """
    try:
        v = decode(t, bound.bit_length())
    except EvaluationOverflow:
        return None
    return v if v <= bound else None


def truncated_geometric(k: int, bound: int) -> Polytower:
    """``1 + x_k + x_k^x_k + ...`` keeping every pure tower with value < bound."""
    if bound < 2:
        raise DomainError(f"bound must be >= 2, got {bound}")
    terms = [ONE]
    top = ONE
    while True:
        top = Tower.pillar(k, top)
        if value_if_at_most(top, bound - 1) is None:
            break
        terms.append(top)
    return Polytower.from_towers(terms)


def renormalize(poly: Polytower, bound: int) -> Tuple[Polytower, int]:
    """Drop every tower whose value exceeds ``bound``; returns (kept, removed count)."""
    kept = {t: c for t, c in poly.items() if value_if_at_most(t, bound) is not None}
    return Polytower(kept), len(poly) - len(kept)


def _require_unit_coefficients(poly: Polytower, what: str) -> None:
    for t, c in poly.items():
        if c != 1:
            raise DuplicateGenerated(f"{what} holds tower {t} with coefficient {c}")


def pruned_product(factors: Sequence[Polytower], bound: Optional[int] = None) -> Tuple[Polytower, int]:
    """Expand ``prod factors`` keeping towers <= bound after every multiplication.

    All coefficients must be 1 and must stay 1; a tower produced twice
    raises DuplicateGenerated. Returns the product and the number of
    candidate towers discarded (both from the factors and from products).
    """
    pruned = 0
    staged: List[List[Tuple[int, Tower]]] = []
    for i, f in enumerate(factors):
        _require_unit_coefficients(f, f"factor {i}")
        if bound is None:
            staged.append([(0, t) for t in f.towers()])
            continue
        kept = []
        for t in f.towers():
            v = value_if_at_most(t, bound)
            if v is None:
                pruned += 1
            else:
                kept.append((v, t))
        kept.sort(key=lambda vt: vt[0])
        staged.append(kept)

    # Multiply the last factors first: with large primes at the end this
    # keeps the running product small until the dense small-prime factors.
    partial: List[Tuple[int, Tower]] = [(1, ONE)]
    for terms in reversed(staged):
        out: Dict[Tower, int] = {}
        for v1, t1 in partial:
            for j, (v2, t2) in enumerate(terms):
                v = v1 * v2
                if bound is not None and v > bound:
                    # terms ascend by value; the rest are larger still
                    pruned += len(terms) - j
                    break
                t = t1 * t2
                if t in out:
                    raise DuplicateGenerated(f"tower {t} generated more than once")
                out[t] = v
        partial = [(v, t) for t, v in out.items()]
        if bound is not None:
            partial.sort(key=lambda vt: vt[0])
    return Polytower.from_towers(t for _, t in partial), pruned


def product_of_raisers(
    factors: Sequence[Tuple[Tower, Polytower]], bound: Optional[int] = None
) -> Tuple[Polytower, int]:
    """``prod (1 + R(base, s))`` over (base, s) pairs, pruned at ``bound``."""
    expanded = []
    pruned = 0
    for base, s in factors:
        if bound is not None and not base.is_integer:
            raise DomainError("pruning by value needs integer bases")
        if bound is not None:
            # base^T <= bound forces T <= log2(bound); skip decoding huge powers
            small = {t: c for t, c in s.items() if value_if_at_most(t, bound.bit_length()) is not None}
            pruned += len(s) - len(small)
            s = Polytower(small)
        expanded.append(Polytower({ONE: 1}) + raiser(base, s))
    product, more = pruned_product(expanded, bound)
    return product, pruned + more


def _pillars(primes: Iterable[int]) -> List[int]:
    ks = [prime_index(p) for p in primes]
    if len(set(ks)) != len(ks):
        raise DomainError("prime vector entries must be distinct")
    return ks


def sieve_step(current: Polytower, primes: Sequence[int], bound: Optional[int] = None) -> Polytower:
    """One application of ``prod_k (1 + R(x_k, current))`` with pruning above bound."""
    return _sieve_step(current, _pillars(primes), bound)[0]


def _sieve_step(current: Polytower, pillars: Sequence[int], bound: Optional[int]) -> Tuple[Polytower, int]:
    _require_unit_coefficients(current, "current polytower")
    if bound is None:
        return product_of_raisers([(Tower.pillar(k), current) for k in pillars])
    # p^T <= bound needs T <= log_p(bound): rank exponents once, slice per pillar
    ranked = []
    for t in current.towers():
        v = value_if_at_most(t, bound.bit_length())
        if v is not None:
            ranked.append((v, t))
    ranked.sort(key=lambda vt: vt[0])
    exps = [v for v, _ in ranked]
    pruned = 0
    factors = []
    for k in pillars:
        p = nth_prime(k)
        top = 0
        while p ** (top + 1) <= bound:
            top += 1
        usable = ranked[: bisect.bisect_right(exps, top)]
        pruned += len(current) - len(usable)
        factors.append((Tower.pillar(k), Polytower.from_towers(t for _, t in usable)))
    product, more = product_of_raisers(factors, bound)
    return product, pruned + more


@dataclass(frozen=True)
class SieveIteration:
    iteration: int
    generated: Polytower
    pruned_count: int
    new_terms: int
    max_coefficient: int
    stopped: bool = False
    reason: str = ""

    def line(self) -> str:
        s = (
            f"iteration={self.iteration} terms={len(self.generated)} new={self.new_terms}"
            f" pruned={self.pruned_count} max_coefficient={self.max_coefficient}"
            f" stopped={'true' if self.stopped else 'false'}"
        )
        if self.reason:
            s += f" reason={self.reason}"
        return s


@dataclass
class SieveTrace:
    t: int
    bound: int
    primes: Tuple[int, ...]
    iterations: List[SieveIteration] = field(default_factory=list)

    @property
    def final(self) -> Polytower:
        return self.iterations[-1].generated

    def lines(self) -> List[str]:
        head = f"sieve t={self.t} bound={self.bound} pillars={len(self.primes)}"
        return [head] + [it.line() for it in self.iterations]

    def __str__(self):
        return "\n".join(self.lines())


def generate_until_stable(
    seed: Polytower, pillars: Sequence[int], bound: int, trace: Optional[List[SieveIteration]] = None
) -> Polytower:
    """Iterate sieve steps from ``seed`` until the generated set stops changing."""
    current = seed
    for n in range(1, MAX_ITERATIONS + 1):
        nxt, pruned = _sieve_step(current, pillars, bound)
        new = sum(1 for t in nxt.towers() if t not in current)
        stable = nxt == current
        if trace is not None:
            trace.append(
                SieveIteration(
                    n, nxt, pruned, new, nxt.max_coefficient, stable, "stable" if stable else ""
                )
            )
        if stable:
            return nxt
        current = nxt
    raise RuntimeError(f"no fixed point after {MAX_ITERATIONS} iterations")


def primes_in_range(t: int) -> Tuple[List[int], SieveTrace]:
    """Primes in ``[2^t, 2^(t+1)]`` read off as the integers the sieve never generates."""
    if t < 2:
        raise DomainError(f"t must be >= 2 (primes below 2^t must include 2 and 3), got {t}")
    lo, bound = 1 << t, 1 << (t + 1)
    primes = primes_below(lo)
    pillars = _pillars(primes)
    trace = SieveTrace(t, bound, tuple(primes))

    seed, pruned = pruned_product([truncated_geometric(k, bound) for k in pillars], bound)
    trace.iterations.append(SieveIteration(0, seed, pruned, len(seed), seed.max_coefficient))
    generated = generate_until_stable(seed, pillars, bound, trace.iterations)

    values = set(decode(tw) for tw in generated.towers())
    missing = [n for n in range(lo, bound + 1) if n not in values]
    return missing, trace

