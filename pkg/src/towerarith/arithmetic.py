"""Addition and subtraction of towers.

Three routes to a sum: the decode/add/encode oracle, the square-root
identity ``n + m = (sqrt n + sqrt m)^2 - 2 sqrt n sqrt m``, and a search
over an ordered universe of towers for the one at distance ``m`` from
``n``. The last two are checked against the first.
"""
from __future__ import annotations

import bisect
import logging
from typing import Sequence

from .errors import DomainError, NonRepresentable, NotApplicable, NotFound, NotPerfectSquare
from .tower import Factor, Tower, decode, encode, multiply

log = logging.getLogger(__name__)

TWO = encode(2)

# Sums of at most this value come straight from the table in the sqrt
# recursion instead of recursing further.
SMALL_SUM = 8
_SMALL_TABLE = {n: encode(n) for n in range(1, SMALL_SUM + 1)}


def _int_value(t: Tower) -> int:
    if not t.is_integer:
        raise DomainError(f"tower {t} is not an integer tower")
    return decode(t)


def add(a: Tower, b: Tower) -> Tower:
    return encode(_int_value(a) + _int_value(b))


def sub(a: Tower, b: Tower) -> Tower:
    """``a - b``; there is no tower for zero or negatives."""
    d = _int_value(a) - _int_value(b)
    if d < 1:
        raise NonRepresentable(f"{decode(a)} - {decode(b)} = {d} has no tower")
    return encode(d)


def distance(a: Tower, b: Tower) -> int:
    return abs(decode(a) - decode(b))


def sqrt_tower(a: Tower) -> Tower:
    """Halve every base exponent; NotPerfectSquare if one is odd."""
    if not a.is_integer:
        raise DomainError(f"tower {a} is not an integer tower")
    factors = []
    for f in a.factors:
        e = decode(f.exponent)
        if e % 2:
            raise NotPerfectSquare(f"{decode(a)} is not a perfect square")
        factors.append(Factor(f.pillar, encode(e // 2)))
    return Tower(factors)


def _is_square(t: Tower) -> bool:
    return all(decode(f.exponent) % 2 == 0 for f in t.factors)


def _add_rec(a: Tower, b: Tower) -> Tower:
    va, vb = decode(a), decode(b)
    if va + vb <= SMALL_SUM:
        return _SMALL_TABLE[va + vb]
    if not (_is_square(a) and _is_square(b)):
        log.debug("sqrt identity not applicable to %s + %s, using oracle", va, vb)
        return add(a, b)
    ra, rb = sqrt_tower(a), sqrt_tower(b)
    s = _add_rec(ra, rb)
    twice = multiply(TWO, multiply(ra, rb))
    return _sub_rec(multiply(s, s), twice)


def _sub_rec(a: Tower, b: Tower) -> Tower:
    va, vb = decode(a), decode(b)
    if va <= vb:
        raise NonRepresentable(f"{va} - {vb} has no tower")
    if va <= SMALL_SUM:
        return _SMALL_TABLE[va - vb]
    if not (_is_square(a) and _is_square(b)):
        log.debug("sqrt identity not applicable to %s - %s, using oracle", va, vb)
        return sub(a, b)
    ra, rb = sqrt_tower(a), sqrt_tower(b)
    # n - m = (sqrt n - sqrt m)(sqrt n + sqrt m)
    return multiply(_sub_rec(ra, rb), _add_rec(ra, rb))


def add_via_sqrt(a: Tower, b: Tower) -> Tower:
    """Sum of two perfect-square towers through the square-root identity."""
    for t in (a, b):
        if not t.is_integer or not _is_square(t):
            raise NotApplicable(f"{decode(t)} is not a perfect square")
    ra, rb = sqrt_tower(a), sqrt_tower(b)
    s = _add_rec(ra, rb)
    twice = multiply(TWO, multiply(ra, rb))
    return _sub_rec(multiply(s, s), twice)


def sub_via_sqrt(a: Tower, b: Tower) -> Tower:
    for t in (a, b):
        if not t.is_integer or not _is_square(t):
            raise NotApplicable(f"{decode(t)} is not a perfect square")
    if decode(a) <= decode(b):
        raise NonRepresentable(f"{decode(a)} - {decode(b)} has no tower")
    ra, rb = sqrt_tower(a), sqrt_tower(b)
    return multiply(_sub_rec(ra, rb), _add_rec(ra, rb))


def add_via_search(a: Tower, b: Tower, universe: Sequence[Tower]) -> Tower:
    """Find the tower p in a value-sorted universe with p >= a, p >= b and d(a, p) = d(0, b).

    ``d(0, b)`` is read as the value of b. Above ``a`` the distance to ``a``
    grows with p, so the first p meeting ``d(a, p) >= d(0, b)`` is found by
    bisection and accepted only if ``d(a, p) <= d(0, b)`` as well.
    """
    va, vb = decode(a), decode(b)
    lo = bisect.bisect_left(universe, max(va, vb), key=decode)
    i = bisect.bisect_left(universe, True, lo=lo, key=lambda p: distance(a, p) >= vb)
    if i < len(universe):
        p = universe[i]
        vp = decode(p)
        d = distance(a, p)
        if vp >= va and vp >= vb and d >= vb and d <= vb:
            return p
    raise NotFound(f"no tower in the universe equals {va} + {vb}")


def integer_universe(limit: int) -> list:
    """Towers of 1..limit in value order, a universe that holds every sum <= limit."""
    return [encode(n) for n in range(1, limit + 1)]


__all__ = [
    "add",
    "add_via_search",
    "add_via_sqrt",
    "distance",
    "integer_universe",
    "sqrt_tower",
    "sub",
    "sub_via_sqrt",
]
