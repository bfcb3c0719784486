"""Tower progressions ``S_n = 1 + x + x^x + ... `` in a single pillar.

The bare pillar has height 1 and the empty tower height 0, so ``S_n`` has
``n + 1`` terms and its top term is the pure tower of height ``n``.
"""
from __future__ import annotations

from .errors import DomainError
from .tower import ONE, UNIT, Polytower, Tower, raiser


def pure_tower(height: int, pillar: int = 1) -> Tower:
    if height < 0:
        raise DomainError(f"height must be >= 0, got {height}")
    t = ONE
    for _ in range(height):
        t = Tower.pillar(pillar, t)
    return t


def build_progression(n: int, pillar: int = 1) -> Polytower:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return Polytower.from_towers(pure_tower(h, pillar) for h in range(n + 1))


def relation_residual(n: int, top_height: int, pillar: int = 1) -> Polytower:
    """``1 + R(x, S_n) - S_n - (pure tower of height top_height)``."""
    s = build_progression(n, pillar)
    return UNIT + raiser(Tower.pillar(pillar), s) - s - pure_tower(top_height, pillar)


def check_relation(n: int, pillar: int = 1) -> bool:
    """Verify the progression identities symbolically, without evaluating anything.

    Checks ``S_{n+1} = 1 + R(x, S_n)``, ``S_{n+1} = S_n + (height n+1 tower)``
    and that ``1 + R(x, S_n) - S_n - (height n+1 tower)`` is the empty polytower.
    """
    s_n = build_progression(n, pillar)
    s_next = build_progression(n + 1, pillar)
    top = pure_tower(n + 1, pillar)
    return (
        s_next == UNIT + raiser(Tower.pillar(pillar), s_n)
        and s_next == s_n + top
        and not relation_residual(n, n + 1, pillar)
    )
