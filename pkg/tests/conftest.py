from math import isqrt

import pytest
from hypothesis import strategies as st

from towerarith.tower import ONE, Factor, Polytower, Tower, encode


def trial_factor(n):
    """Independent factorisation oracle: plain trial division."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_list(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, isqrt(n) + 1))]


def _build(factors):
    by_pillar = {}
    for k, e, s in factors:
        by_pillar.setdefault(k, (k, e, s))
    return Tower(Factor(k, e, s) for k, e, s in sorted(by_pillar.values(), key=lambda f: f[0]))


def integer_towers(max_pillar=5, max_leaves=6):
    """Random canonical integer towers, built structurally (not via encode)."""
    return st.recursive(
        st.just(ONE),
        lambda children: st.lists(
            st.tuples(st.integers(1, max_pillar), children, st.just(1)), max_size=3
        ).map(_build),
        max_leaves=max_leaves,
    )


def signed_towers(max_pillar=5):
    return st.lists(
        st.tuples(st.integers(1, max_pillar), integer_towers(max_pillar, 4), st.sampled_from([1, -1])),
        max_size=3,
    ).map(_build)


def small_towers(limit=200):
    """Towers of small integers, always decodable."""
    return st.integers(1, limit).map(encode)


def polytowers(tower_strategy=None, max_terms=4):
    tower_strategy = small_towers(60) if tower_strategy is None else tower_strategy
    return st.lists(
        st.tuples(tower_strategy, st.integers(-3, 3).filter(bool)), max_size=max_terms
    ).map(Polytower)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
