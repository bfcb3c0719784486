"""Towers, polytowers and their algebra.

A tower is the recursive prime factorisation of a positive integer: a
product of pillars ``x_k`` (the k-th prime) each raised to an exponent
that is itself a tower. The empty product is the number 1. A factor may
carry sign -1, meaning the pillar sits in the denominator; such towers
describe positive rationals.

A polytower is a finite formal sum of distinct towers with nonzero
integer coefficients.
"""
from __future__ import annotations

import enum
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import CanonicalError, DomainError, EvaluationOverflow
from .primes import factorize, nth_prime, prime_index

DEFAULT_CAP = 4096

_cap: ContextVar[int] = ContextVar("evaluation_cap", default=DEFAULT_CAP)

Number = Union[int, Fraction]


def get_cap() -> int:
    return _cap.get()


@contextmanager
def evaluation_cap(bits: int):
    """Temporarily change the bit-length cap used by every decode."""
    if bits < 1:
        raise DomainError(f"evaluation cap must be positive, got {bits}")
    token = _cap.set(bits)
    try:
        yield bits
    finally:
        _cap.reset(token)


@dataclass(frozen=True, slots=True)
class Factor:
    pillar: int
    exponent: "Tower"
    sign: int = 1

    def __post_init__(self):
        if self.pillar < 1:
            raise DomainError(f"pillar index must be >= 1, got {self.pillar}")
        if self.sign not in (1, -1):
            raise DomainError(f"factor sign must be +1 or -1, got {self.sign}")
        if not self.exponent.is_integer:
            raise CanonicalError("exponent towers must be integer towers")


class Tower:
    """Canonical product of factors with strictly increasing pillars."""

    __slots__ = ("factors", "_hash", "_integer")

    def __init__(self, factors: Iterable[Factor] = ()):
        factors = tuple(factors)
        for a, b in zip(factors, factors[1:]):
            if a.pillar >= b.pillar:
                raise CanonicalError(
                    f"pillars must be strictly increasing, got p{a.pillar} before p{b.pillar}"
                )
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "_hash", hash(factors))
        object.__setattr__(self, "_integer", all(f.sign > 0 for f in factors))

    def __setattr__(self, name, value):
        raise AttributeError("Tower is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tower):
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __bool__(self):
        # every tower is a nonzero number; keep truthiness independent of len()
        return True

    def __len__(self):
        return len(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    def __mul__(self, other):
        if isinstance(other, Tower):
            return multiply(self, other)
        return NotImplemented

    def __str__(self):
        from .textio import format_tower

        return format_tower(self)

    def __repr__(self):
        return f"Tower({str(self)!r})"

    @classmethod
    def pillar(cls, k: int, exponent: "Tower | None" = None, sign: int = 1) -> "Tower":
        return cls((Factor(k, ONE if exponent is None else exponent, sign),))

    @property
    def is_one(self) -> bool:
        return not self.factors

    @property
    def is_integer(self) -> bool:
        return self._integer

    @property
    def pillars(self) -> Tuple[int, ...]:
        return tuple(f.pillar for f in self.factors)

    @property
    def height(self) -> int:
        """Maximum depth of iterated exponentiation; 1 has height 0, x_k height 1."""
        return max((1 + f.exponent.height for f in self.factors), default=0)

    def value(self, cap: int | None = None) -> Number:
        return decode(self, cap)


ONE = Tower()


# -- codec core -------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _encode(n: int) -> Tower:
    return Tower(Factor(prime_index(p), _encode(e)) for p, e in factorize(n))


def encode(n: int) -> Tower:
    """Tower of the positive integer ``n``."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"encode expects an int, got {type(n).__name__}")
    if n < 1:
        raise DomainError(f"only integers >= 1 have towers, got {n}")
    return _encode(n)


def encode_rational(q: Number) -> Tower:
    """Signed-factor tower of a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError(f"only positive rationals have towers, got {q}")
    factors = [(p, e, 1) for p, e in factorize(q.numerator)]
    factors += [(p, e, -1) for p, e in factorize(q.denominator)]
    factors.sort()
    return Tower(Factor(prime_index(p), _encode(e), s) for p, e, s in factors)


def _checked_power(p: int, e: int, cap: int) -> int:
    # p**e has at least e*(bitlen(p)-1)+1 bits
    if e * (p.bit_length() - 1) + 1 > cap:
        raise EvaluationOverflow(f"{p}^{e} exceeds the {cap}-bit evaluation cap")
    v = p**e
    if v.bit_length() > cap:
        raise EvaluationOverflow(f"{p}^{e} exceeds the {cap}-bit evaluation cap")
    return v


@lru_cache(maxsize=1 << 16)
def _decode(t: Tower, cap: int) -> Number:
    num = den = 1
    for f in t.factors:
        e = _decode(f.exponent, cap)
        v = _checked_power(nth_prime(f.pillar), e, cap)
        if f.sign > 0:
            num *= v
            if num.bit_length() > cap:
                raise EvaluationOverflow(f"numerator exceeds the {cap}-bit evaluation cap")
        else:
            den *= v
            if den.bit_length() > cap:
                raise EvaluationOverflow(f"denominator exceeds the {cap}-bit evaluation cap")
    return num if den == 1 else Fraction(num, den)


def decode(t: Tower, cap: int | None = None) -> Number:
    """Evaluate a tower bottom-up; returns an int, or a Fraction for rational towers."""
    return _decode(t, get_cap() if cap is None else cap)


# -- multiplication and comparison --------------------------------------------


def _signed_exponent(f: Factor) -> int:
    return f.sign * decode(f.exponent)


def multiply(a: Tower, b: Tower) -> Tower:
    """Product of two towers: union of pillars, exponents of shared pillars added."""
    if a.is_one:
        return b
    if b.is_one:
        return a
    fa, fb = a.factors, b.factors
    if fa[-1].pillar < fb[0].pillar:
        return Tower(fa + fb)
    if fb[-1].pillar < fa[0].pillar:
        return Tower(fb + fa)
    out = []
    i = j = 0
    while i < len(fa) and j < len(fb):
        x, y = fa[i], fb[j]
        if x.pillar < y.pillar:
            out.append(x)
            i += 1
        elif y.pillar < x.pillar:
            out.append(y)
            j += 1
        else:
            total = _signed_exponent(x) + _signed_exponent(y)
            if total:
                out.append(Factor(x.pillar, encode(abs(total)), 1 if total > 0 else -1))
            i += 1
            j += 1
    out.extend(fa[i:])
    out.extend(fb[j:])
    return Tower(out)


def power(base: Tower, exponent: Tower) -> Tower:
    """``base`` raised to the integer tower ``exponent``; exponents multiply symbolically."""
    if not exponent.is_integer:
        raise DomainError("raiser exponents must be integer towers")
    if exponent.is_one:
        return base
    return Tower(Factor(f.pillar, multiply(f.exponent, exponent), f.sign) for f in base.factors)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(a: Tower, b: Tower) -> Ordering:
    if a == b:
        return Ordering.EQUAL
    va, vb = decode(a), decode(b)
    if va < vb:
        return Ordering.LESS
    if va > vb:
        return Ordering.GREATER
    # distinct canonical towers never share a value
    raise AssertionError(f"distinct towers {a} and {b} decode to the same value {va}")


# -- polytowers -----------------------------------------------------------------


class Polytower:
    """Finite formal sum of distinct towers with nonzero integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Tower, int], Iterable[Tuple[Tower, int]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[Tower, int] = {}
        for t, c in items:
            if not isinstance(t, Tower):
                raise TypeError(f"polytower keys must be Tower, got {type(t).__name__}")
            merged[t] = merged.get(t, 0) + c
        object.__setattr__(self, "_terms", {t: c for t, c in merged.items() if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polytower is immutable")

    @classmethod
    def from_towers(cls, towers: Iterable[Tower]) -> "Polytower":
        return cls((t, 1) for t in towers)

    @classmethod
    def _trusted(cls, terms: Dict[Tower, int]) -> "Polytower":
        # terms already merged with zeros dropped
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def items(self):
        return self._terms.items()

    def towers(self):
        return self._terms.keys()

    def coefficient(self, t: Tower) -> int:
        return self._terms.get(t, 0)

    @property
    def max_coefficient(self) -> int:
        return max(self._terms.values(), default=0)

    def values(self, cap: int | None = None) -> list:
        """Decoded values of the terms, ascending (coefficients ignored)."""
        return sorted(decode(t, cap) for t in self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tower]:
        return iter(self._terms)

    def __contains__(self, t):
        return t in self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Tower):
            other = Polytower({other: 1})
        if not isinstance(other, Polytower):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Polytower._trusted({t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return Polytower()
            return Polytower._trusted({t: c * other for t, c in self._terms.items()})
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __str__(self):
        from .textio import format_polytower

        return format_polytower(self)

    def __repr__(self):
        return f"Polytower({str(self)!r})"


def _as_poly(x) -> "Polytower | None":
    if isinstance(x, Polytower):
        return x
    if isinstance(x, Tower):
        return Polytower({x: 1})
    if isinstance(x, int) and not isinstance(x, bool):
        return Polytower({ONE: x})
    return None


UNIT = Polytower({ONE: 1})


def poly_add(a: Polytower, b: Polytower) -> Polytower:
    terms = dict(a._terms)
    for t, c in b._terms.items():
        s = terms.get(t, 0) + c
        if s:
            terms[t] = s
        else:
            terms.pop(t, None)
    return Polytower._trusted(terms)


def poly_mul(a: Polytower, b: Polytower) -> Polytower:
    terms: Dict[Tower, int] = {}
    for ta, ca in a._terms.items():
        for tb, cb in b._terms.items():
            t = multiply(ta, tb)
            terms[t] = terms.get(t, 0) + ca * cb
    return Polytower._trusted({t: c for t, c in terms.items() if c})


def raiser(base: Tower, s: Union[Polytower, Tower]) -> Polytower:
    """Map every term ``c*T`` of ``s`` to ``c*base^T``."""
    s = _as_poly(s)
    terms: Dict[Tower, int] = {}
    for t, c in s._terms.items():
        r = power(base, t)
        terms[r] = terms.get(r, 0) + c
    return Polytower._trusted({t: c for t, c in terms.items() if c})
