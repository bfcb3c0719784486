import threading

import pytest

from towerarith.errors import DomainError
from towerarith.primes import PrimeTable, factorize, is_prime, nth_prime, prime_index, primes_below

from conftest import prime_list, trial_factor


def test_first_primes():
    assert [nth_prime(k) for k in range(1, 11)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_index(2) == 1
    assert prime_index(29) == 10


def test_index_round_trip():
    ref = prime_list(5000)
    assert primes_below(5001) == ref
    for k, p in enumerate(ref, start=1):
        assert nth_prime(k) == p
        assert prime_index(p) == k


def test_non_prime_index():
    with pytest.raises(DomainError):
        prime_index(9)
    with pytest.raises(DomainError):
        nth_prime(0)


def test_factorize_matches_trial_division():
    for n in list(range(1, 3000)) + [2**31 - 1, 600851475143, 10**12 + 39]:
        assert factorize(n) == trial_factor(n)


def test_is_prime_above_table():
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31 + 1)


def test_table_growth_is_thread_safe():
    table = PrimeTable(initial_limit=16)
    results = []

    def worker(k):
        results.append((k, table.nth(k)))

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(1, 2000, 37)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = prime_list(20000)
    assert all(ref[k - 1] == p for k, p in results)


def test_segmented_region_boundaries():
    from towerarith.primes import MAX_TABLE_LIMIT, WINDOW, BLOCK

    for edge in (MAX_TABLE_LIMIT, MAX_TABLE_LIMIT + WINDOW, MAX_TABLE_LIMIT + BLOCK):
        ps = [n for n in range(edge - 400, edge + 400) if is_prime(n)]
        idx = [prime_index(p) for p in ps]
        assert idx == list(range(idx[0], idx[0] + len(idx)))
        assert [nth_prime(k) for k in idx] == ps
    with pytest.raises(DomainError):
        prime_index(MAX_TABLE_LIMIT + 1)  # 2^24 + 1 = 97 * 172961


def test_prime_counts_match_known_values():
    # pi(2^24) = 1077871 and pi(10^8) = 5761455 are tabulated prime counts
    assert prime_index(16777213) == 1077871
    assert prime_index(99999989) == 5761455
    assert nth_prime(5761456) == 100000007
