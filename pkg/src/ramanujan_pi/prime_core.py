"""Exact prime generation and counting backed by a segmented odd-only sieve.

The store keeps every prime up to its limit in memory as ``uint64`` so that
``pi`` and ``nth_prime`` are a binary search and an index respectively.
Nothing here ever estimates: a query past the sieved limit raises.
"""

from __future__ import annotations

import logging
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np
import psutil

from .errors import OutOfRangeError, PreconditionError, SieveResourceError, TableFormatError

log = logging.getLogger(__name__)

DEFAULT_SEGMENT_SIZE = 1 << 18
CACHE_MAGIC = b"RPV1"
MAX_LIMIT = (1 << 63) - 1


@dataclass(frozen=True)
class SieveConfig:
    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    threads: int = 1

    def __post_init__(self):
        if int(self.limit) < 2:
            raise PreconditionError(f"sieve limit must be >= 2, got {self.limit}")
        if int(self.limit) > MAX_LIMIT:
            raise PreconditionError(f"sieve limit {self.limit} exceeds 2**63 - 1")
        if int(self.segment_size) <= 0:
            raise PreconditionError(f"segment_size must be > 0, got {self.segment_size}")
        if int(self.threads) < 1:
            raise PreconditionError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True, eq=False)
class PrimeStore:
    """All primes ``<= limit`` in ascending order."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes.setflags(write=False)

    @property
    def count(self) -> int:
        return int(self.primes.size)

    def pi(self, x: int) -> int:
        x = int(x)
        if x < 0 or x > self.limit:
            raise OutOfRangeError(f"pi({x}) outside sieved range [0, {self.limit}]")
        return int(np.searchsorted(self.primes, np.uint64(x), side="right"))

    def pi_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size and (xs.min() < 0 or xs.max() > self.limit):
            raise OutOfRangeError(f"pi query outside sieved range [0, {self.limit}]")
        return np.searchsorted(self.primes, xs.astype(np.uint64), side="right").astype(np.int64)

    def nth_prime(self, k: int) -> int:
        k = int(k)
        if k < 1 or k > self.count:
            raise OutOfRangeError(f"p_{k} requested but store holds {self.count} primes")
        return int(self.primes[k - 1])

    def is_prime(self, x: int) -> bool:
        x = int(x)
        if x < 0 or x > self.limit:
            raise OutOfRangeError(f"{x} outside sieved range [0, {self.limit}]")
        i = int(np.searchsorted(self.primes, np.uint64(x), side="left"))
        return i < self.count and int(self.primes[i]) == x

    def __eq__(self, other):
        if not isinstance(other, PrimeStore):
            return NotImplemented
        return self.limit == other.limit and np.array_equal(self.primes, other.primes)

    __hash__ = None


def pi(store: PrimeStore, x: int) -> int:
    """Number of primes ``<= x``; ``x`` must lie within the store."""
    return store.pi(x)


def nth_prime(store: PrimeStore, k: int) -> int:
    return store.nth_prime(k)


def simple_sieve(limit: int) -> np.ndarray:
    """Plain Eratosthenes over ``[0, limit]``; used for base primes and as an oracle."""
    if limit < 2:
        return np.array([], dtype=np.uint64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.uint64)


def _estimated_bytes(limit: int, segment_size: int, threads: int) -> int:
    # Rosser-Schoenfeld: pi(x) < 1.25506 x / log x for x > 1
    count = 1.25506 * limit / math.log(max(limit, 3)) + 16
    return int(8 * count * 2 + segment_size * threads * 2)


def _check_memory(config: SieveConfig) -> None:
    need = _estimated_bytes(config.limit, config.segment_size, config.threads)
    avail = psutil.virtual_memory().available
    if need > avail:
        raise SieveResourceError(config.limit, need, avail)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes among the odd numbers ``2i+1`` for ``lo <= i < hi``."""
    mask = np.ones(hi - lo, dtype=bool)
    if lo == 0:
        mask[0] = False  # the number 1
    v_lo, v_hi = 2 * lo + 1, 2 * hi - 1
    for p in base:
        p = int(p)
        sq = p * p
        if sq > v_hi:
            break
        start = max(sq, ((v_lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start > v_hi:
            continue
        mask[(start - 1) // 2 - lo :: p] = False
    return (2 * (np.flatnonzero(mask).astype(np.uint64) + lo) + 1).astype(np.uint64)


def iter_segments(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> Iterator[np.ndarray]:
    """Yield ascending arrays of primes covering ``[2, limit]`` segment by segment."""
    if limit < 2:
        return
    yield np.array([2], dtype=np.uint64)
    n_odd = (limit - 1) // 2 + 1  # odd numbers 1, 3, ..., <= limit
    base = simple_sieve(math.isqrt(limit))[1:]
    bounds = [(lo, min(lo + segment_size, n_odd)) for lo in range(0, n_odd, segment_size)]
    if threads <= 1:
        for lo, hi in bounds:
            yield _sieve_segment(lo, hi, base)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map preserves submission order, so the merge is deterministic
        for chunk_start in range(0, len(bounds), 4 * threads):
            chunk = bounds[chunk_start : chunk_start + 4 * threads]
            yield from pool.map(lambda b: _sieve_segment(b[0], b[1], base), chunk)


def sieve(config: SieveConfig) -> PrimeStore:
    _check_memory(config)
    parts = list(iter_segments(int(config.limit), int(config.segment_size), int(config.threads)))
    primes = np.concatenate(parts) if parts else np.array([], dtype=np.uint64)
    log.debug("sieved %d primes up to %d", primes.size, config.limit)
    return PrimeStore(limit=int(config.limit), primes=primes)


def sieve_to(limit: int, **kwargs) -> PrimeStore:
    return sieve(SieveConfig(limit=limit, **kwargs))


def count_primes(x: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> int:
    """Exact pi(x) by a count-only segmented scan; nothing is retained."""
    if x < 2:
        return 0
    return sum(int(seg.size) for seg in iter_segments(int(x), segment_size, threads))


def pk_size_estimate(k: int) -> int:
    """A sieve limit guaranteed to contain p_k.

    Uses Rosser's bound p_k < k (log k + log log k), valid for k >= 6.
    """
    k = int(k)
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if k < 6:
        return 13
    return math.ceil(k * (math.log(k) + math.log(math.log(k))))


def save_store(store: PrimeStore, path) -> None:
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<QQ", store.limit, store.count))
        fh.write(store.primes.astype("<u8").tobytes())


def load_store(path) -> PrimeStore:
    path = Path(path)
    with path.open("rb") as fh:
        magic = fh.read(4)
        if magic != CACHE_MAGIC:
            raise TableFormatError(f"{path}: bad magic {magic!r}, expected {CACHE_MAGIC!r}")
        header = fh.read(16)
        if len(header) != 16:
            raise TableFormatError(f"{path}: truncated header")
        limit, count = struct.unpack("<QQ", header)
        body = fh.read()
    if len(body) != 8 * count:
        raise TableFormatError(f"{path}: header says {count} primes, body holds {len(body) / 8:g}")
    primes = np.frombuffer(body, dtype="<u8").astype(np.uint64)
    head = primes[:100]
    if head.size and (int(head[0]) != 2 or np.any(np.diff(head.astype(np.int64)) <= 0)):
        raise TableFormatError(f"{path}: first entries are not an ascending prime list from 2")
    if count and int(primes[-1]) > limit:
        raise TableFormatError(f"{path}: last prime {int(primes[-1])} exceeds stored limit {limit}")
    return PrimeStore(limit=int(limit), primes=primes)
