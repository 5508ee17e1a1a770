import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_prime_td, naive_primes
from ramanujan_pi import prime_core
from ramanujan_pi.errors import OutOfRangeError, PreconditionError, SieveResourceError, TableFormatError
from ramanujan_pi.prime_core import (
    PrimeStore,
    SieveConfig,
    count_primes,
    load_store,
    nth_prime,
    pi,
    pk_size_estimate,
    save_store,
    sieve,
    sieve_to,
)

# frozen from the list-based sieve in oracles.py
PI_1E6 = 78498
P_1E6 = 15485863
PI_468049 = 39071


def test_sieve_small_limits():
    assert sieve(SieveConfig(10)).primes.tolist() == [2, 3, 5, 7]
    s = sieve(SieveConfig(2))
    assert s.primes.tolist() == [2] and s.count == 1


def test_sieve_1e6_count(store_1e6):
    assert store_1e6.count == PI_1E6


@pytest.mark.parametrize("limit", [2, 3, 4, 9, 25, 97, 1000, 4099, 65536])
@pytest.mark.parametrize("segment", [1, 7, 64, 1 << 18])
def test_matches_naive_sieve(limit, segment):
    got = sieve(SieveConfig(limit, segment_size=segment)).primes.tolist()
    assert got == naive_primes(limit)


def test_threads_give_identical_store():
    a = sieve(SieveConfig(300_000, segment_size=997))
    b = sieve(SieveConfig(300_000, segment_size=997, threads=4))
    assert a == b


def test_invalid_config():
    for kwargs in ({"limit": 1}, {"limit": 10, "segment_size": 0}, {"limit": 10, "threads": 0}):
        with pytest.raises(PreconditionError):
            SieveConfig(**kwargs)


def test_resource_error_echoes_limit(monkeypatch):
    class Tiny:
        available = 1024

    monkeypatch.setattr(prime_core.psutil, "virtual_memory", lambda: Tiny())
    with pytest.raises(SieveResourceError) as info:
        sieve_to(10**9)
    assert info.value.limit == 10**9
    assert "1000000000" in str(info.value)


def test_pi_examples(store_1e6):
    assert pi(store_1e6, 1) == 0
    assert pi(store_1e6, 2) == 1
    assert pi(store_1e6, 100) == 25
    assert pi(store_1e6, 0) == 0
    assert pi(store_1e6, 468049) == PI_468049


def test_pi_out_of_range(store_1e6):
    with pytest.raises(OutOfRangeError):
        pi(store_1e6, 10**6 + 1)
    with pytest.raises(OutOfRangeError):
        store_1e6.pi_many([5, 10**7])


def test_nth_prime_examples(store_1e6):
    assert nth_prime(store_1e6, 1) == 2
    assert nth_prime(store_1e6, 5) == 11
    assert nth_prime(store_1e6, 20) == 71
    assert nth_prime(store_1e6, 100) == 541
    for k in (0, store_1e6.count + 1):
        with pytest.raises(OutOfRangeError):
            nth_prime(store_1e6, k)


def test_store_invariants(store_1e6):
    p = store_1e6.primes
    assert p[0] == 2
    assert np.all(np.diff(p.astype(np.int64)) > 0)
    rng = np.random.default_rng(7)
    for v in rng.choice(p, 200):
        assert is_prime_td(int(v))
    with pytest.raises(ValueError):
        p[0] = 4  # read-only


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_pi_round_trip(store_1e6, x):
    k = pi(store_1e6, x)
    if k:
        assert pi(store_1e6, nth_prime(store_1e6, k)) == k
        assert nth_prime(store_1e6, k) <= x


_TD_PREFIX = np.cumsum([1 if is_prime_td(k) else 0 for k in range(10**5 + 1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=10**5))
def test_pi_against_trial_division(store_1e6, x):
    assert pi(store_1e6, x) == _TD_PREFIX[x]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_pi_monotone(store_1e6, x, y):
    x, y = min(x, y), max(x, y)
    assert pi(store_1e6, x) <= pi(store_1e6, y)


def test_pk_size_estimate_examples(store_1e6):
    assert pk_size_estimate(1) == 13
    assert pk_size_estimate(5) == 13
    assert pk_size_estimate(100) >= 541
    assert pk_size_estimate(10**6) >= P_1E6
    assert sieve_to(pk_size_estimate(10**6)).nth_prime(10**6) == P_1E6


def test_pk_size_estimate_contains_all(store_1e6):
    k = np.arange(1, store_1e6.count + 1)
    est = np.array([pk_size_estimate(int(i)) for i in k])
    assert np.all(est >= store_1e6.primes)


def test_count_only_scan(store_1e6):
    assert count_primes(10**6) == PI_1E6
    assert count_primes(1) == 0
    assert count_primes(2) == 1
    assert count_primes(1000, segment_size=13) == 168


def test_cache_round_trip(tmp_path, store_1e6):
    path = tmp_path / "p.bin"
    save_store(store_1e6, path)
    raw = path.read_bytes()
    assert raw[:4] == b"RPV1"
    assert int.from_bytes(raw[4:12], "little") == 10**6
    assert int.from_bytes(raw[12:20], "little") == PI_1E6
    assert len(raw) == 20 + 8 * PI_1E6
    assert load_store(path) == store_1e6


def test_cache_rejects_bad_files(tmp_path, store_1e6):
    path = tmp_path / "p.bin"
    save_store(sieve_to(1000), path)
    raw = bytearray(path.read_bytes())

    bad = tmp_path / "magic.bin"
    bad.write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(TableFormatError, match="magic"):
        load_store(bad)

    short = tmp_path / "short.bin"
    short.write_bytes(raw[:-8])
    with pytest.raises(TableFormatError):
        load_store(short)

    swapped = bytearray(raw)
    swapped[20:28], swapped[28:36] = raw[28:36], raw[20:28]
    unsorted = tmp_path / "unsorted.bin"
    unsorted.write_bytes(bytes(swapped))
    with pytest.raises(TableFormatError):
        load_store(unsorted)


def test_store_equality_and_hash():
    a, b = sieve_to(100), sieve_to(100)
    assert a == b and a != sieve_to(101)
    with pytest.raises(TypeError):
        hash(a)
    assert isinstance(a, PrimeStore)
