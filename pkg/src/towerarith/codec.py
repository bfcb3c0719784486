"""Conversions between numbers and towers, and the base-2 polynomial form.

``encode``/``decode`` live in :mod:`towerarith.tower` (multiplication needs
them) and are re-exported here.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DomainError
from .primes import nth_prime
from .tower import Tower, decode, encode, encode_rational

RationalValue = Fraction

__all__ = [
    "RationalValue",
    "UniPolynomial",
    "contains_prime",
    "decode",
    "encode",
    "encode_rational",
    "to_polynomial",
]


class UniPolynomial:
    """Integer polynomial in ``x``; ``coefficients[i]`` multiplies ``x**i``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int] = ()):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPolynomial is immutable")

    @classmethod
    def binary(cls, n: int) -> "UniPolynomial":
        """Polynomial whose coefficients are the binary digits of ``n``."""
        if n < 0:
            raise DomainError(f"binary expansion needs n >= 0, got {n}")
        return cls(int(b) for b in reversed(bin(n)[2:]))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __mul__(self, other: "UniPolynomial") -> "UniPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return UniPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPolynomial(out)

    def __pow__(self, e: int) -> "UniPolynomial":
        result = UniPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"UniPolynomial({list(self.coefficients)})"


def to_polynomial(t: Tower) -> UniPolynomial:
    """Replace each base pillar by the binary polynomial of its prime.

    Exponent subtrees collapse to their decoded integers, so the result
    evaluated at ``x = 2`` equals ``decode(t)``.
    """
    if not t.is_integer:
        raise DomainError("to_polynomial needs an integer tower")
    poly = UniPolynomial((1,))
    for f in t.factors:
        poly = poly * UniPolynomial.binary(nth_prime(f.pillar)) ** decode(f.exponent)
    return poly


def contains_prime(t: Tower, k: int) -> bool:
    """True iff pillar ``k`` occurs at any level of ``t``."""
    return any(f.pillar == k or contains_prime(f.exponent, k) for f in t.factors)


def pillars_used(t: Tower) -> Tuple[int, ...]:
    """Every pillar index occurring anywhere in ``t``, ascending."""
    seen = set()
    stack = [t]
    while stack:
        for f in stack.pop().factors:
            seen.add(f.pillar)
            stack.append(f.exponent)
    return tuple(sorted(seen))
