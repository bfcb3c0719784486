"""Cached prime table mapping pillar indices to primes and back.

Pillar ``k`` (1-based) names the k-th prime. Below ``MAX_TABLE_LIMIT`` a
dense table grows on demand by re-sieving to a doubled limit. Above it,
primes are counted with a segmented sieve: whole blocks are sieved once to
record cumulative counts per small window, and a lookup then re-sieves a
single window. Growth is serialised behind a lock so concurrent readers
only ever observe a complete prefix.
"""
from __future__ import annotations

import bisect
import threading
from functools import lru_cache
from itertools import compress
from math import isqrt
from typing import List, Tuple

from .errors import DomainError

#: Upper end of the dense table.
MAX_TABLE_LIMIT = 1 << 24
#: Width of the window a single lookup above the table re-sieves.
WINDOW = 1 << 16
#: Windows counted together in one pass.
BLOCK = 1 << 22
#: Largest prime a pillar may name.
MAX_PRIME = 1 << 32

_ZEROS = memoryview(bytes(BLOCK))


def _sieve(limit: int) -> List[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return list(compress(range(limit + 1), flags))


class PrimeTable:
    def __init__(self, initial_limit: int = 1 << 12):
        self._lock = threading.RLock()
        self._limit = initial_limit
        self._primes: List[int] = _sieve(initial_limit)
        # _window_ends[s] = number of primes below MAX_TABLE_LIMIT + (s+1)*WINDOW
        self._window_ends: List[int] = []
        self._window = lru_cache(maxsize=256)(self._sieve_window)

    @property
    def limit(self) -> int:
        return self._limit

    def _grow(self, limit: int) -> None:
        if limit > MAX_TABLE_LIMIT:
            raise DomainError(f"dense prime table limit {MAX_TABLE_LIMIT} exceeded (requested {limit})")
        with self._lock:
            if limit <= self._limit:
                return
            new_limit = min(max(limit, 2 * self._limit), MAX_TABLE_LIMIT)
            self._primes = _sieve(new_limit)
            self._limit = new_limit

    # segmented region above the dense table --------------------------------

    def _flags(self, lo: int, size: int) -> bytearray:
        """Primality flags for ``[lo, lo + size)``, with ``lo`` above every sieving prime."""
        r = isqrt(lo + size - 1)
        self._grow(r)
        flags = bytearray(b"\x01") * size
        for p in self._primes:
            if p > r:
                break
            start = -lo % p
            flags[start::p] = _ZEROS[: len(range(start, size, p))]
        return flags

    def _sieve_window(self, s: int) -> bytearray:
        return self._flags(MAX_TABLE_LIMIT + s * WINDOW, WINDOW)

    def _count_windows(self, s: int) -> None:
        """Extend ``_window_ends`` by whole blocks until it covers window s."""
        if s < len(self._window_ends):
            return
        if MAX_TABLE_LIMIT + s * WINDOW >= MAX_PRIME:
            raise DomainError(f"pillar lookup beyond the supported prime limit {MAX_PRIME}")
        self._grow(MAX_TABLE_LIMIT)
        with self._lock:
            ends = self._window_ends
            while len(ends) <= s:
                flags = self._flags(MAX_TABLE_LIMIT + len(ends) * WINDOW, BLOCK)
                total = ends[-1] if ends else len(self._primes)
                for w in range(0, BLOCK, WINDOW):
                    total += flags.count(1, w, w + WINDOW)
                    ends.append(total)

    def _before_window(self, s: int) -> int:
        """Number of primes below the start of window s."""
        if s == 0:
            self._grow(MAX_TABLE_LIMIT)
            return len(self._primes)
        self._count_windows(s - 1)
        return self._window_ends[s - 1]

    # lookups ---------------------------------------------------------------

    def nth(self, k: int) -> int:
        """Return the k-th prime (``nth(1) == 2``)."""
        if k < 1:
            raise DomainError(f"pillar index must be >= 1, got {k}")
        while k > len(self._primes) and self._limit < MAX_TABLE_LIMIT:
            # p_k < k (ln k + ln ln k) for k >= 6
            self._grow(min(max(2 * self._limit, 16 * k), MAX_TABLE_LIMIT))
        primes = self._primes
        if k <= len(primes):
            return primes[k - 1]
        s = len(self._window_ends)
        while not self._window_ends or self._window_ends[-1] < k:
            self._count_windows(s)
            s = len(self._window_ends)
        s = bisect.bisect_left(self._window_ends, k)
        offsets = list(compress(range(WINDOW), self._window(s)))
        return MAX_TABLE_LIMIT + s * WINDOW + offsets[k - 1 - self._before_window(s)]

    def index_of(self, p: int) -> int:
        """Return the pillar index of prime ``p``; DomainError if not prime."""
        if p < MAX_TABLE_LIMIT:
            if p > self._limit:
                self._grow(p)
            primes = self._primes
            i = bisect.bisect_left(primes, p)
            if i == len(primes) or primes[i] != p:
                raise DomainError(f"{p} is not prime")
            return i + 1
        if p >= MAX_PRIME:
            raise DomainError(f"prime {p} is above the supported limit {MAX_PRIME}")
        s, off = divmod(p - MAX_TABLE_LIMIT, WINDOW)
        flags = self._window(s)
        if not flags[off]:
            raise DomainError(f"{p} is not prime")
        return self._before_window(s) + flags.count(1, 0, off + 1)

    def primes_below(self, n: int) -> List[int]:
        """All primes strictly less than ``n`` (``n`` at most MAX_TABLE_LIMIT)."""
        if n - 1 > self._limit:
            self._grow(n - 1)
        primes = self._primes
        return primes[: bisect.bisect_left(primes, n)]

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        if n <= self._limit:
            primes = self._primes
            i = bisect.bisect_left(primes, n)
            return i < len(primes) and primes[i] == n
        r = isqrt(n)
        if r > self._limit:
            self._grow(r)
        for p in self._primes:
            if p > r:
                return True
            if n % p == 0:
                return False
        return True

    def factorize(self, n: int) -> List[Tuple[int, int]]:
        """Trial-division factorisation of ``n >= 1`` as ascending (prime, exponent) pairs."""
        if n < 1:
            raise DomainError(f"cannot factor {n}")
        out: List[Tuple[int, int]] = []
        r = isqrt(n)
        if r > self._limit:
            self._grow(r)
        for p in self._primes:
            if p * p > n:
                break
            if n % p:
                continue
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        if n > 1:
            out.append((n, 1))
        return out


_TABLE = PrimeTable()


def nth_prime(k: int) -> int:
    return _TABLE.nth(k)


def prime_index(p: int) -> int:
    return _TABLE.index_of(p)


def primes_below(n: int) -> List[int]:
    return _TABLE.primes_below(n)


def is_prime(n: int) -> bool:
    return _TABLE.is_prime(n)


def factorize(n: int) -> List[Tuple[int, int]]:
    return _TABLE.factorize(n)
