"""Exact tables of Ramanujan primes R_n and their prime indices pi(R_n).

R_n is the least integer R with pi(x) - pi(x/2) >= n for every x >= R.
The table builder sweeps f(x) = pi(x) - pi(floor(x/2)) over [1, p_{3N}],
which contains every R_n with n <= N by Laishram's bound pi(R_n) < 3n.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import OutOfRangeError, PreconditionError, TableFormatError
from .prime_core import PrimeStore, pk_size_estimate, sieve_to

CSV_HEADER = "n,R,piR"
_ROW = re.compile(r"^(\d+),(\d+),(\d+)$")


@dataclass(frozen=True)
class RamanujanEntry:
    n: int
    r: int
    idx: int


@dataclass(frozen=True, eq=False)
class RamanujanTable:
    max_n: int
    r: np.ndarray = field(repr=False)  # r[n-1] = R_n
    idx: np.ndarray = field(repr=False)  # idx[n-1] = pi(R_n)
    scan_limit: int | None = None
    guarantee: str = ""
    complete_to: int | None = None  # every n with R_n <= complete_to is present

    @property
    def r_cap(self) -> int:
        return int(self.complete_to) if self.complete_to is not None else int(self.r[-1])

    def __post_init__(self):
        self.r.setflags(write=False)
        self.idx.setflags(write=False)

    def get(self, n: int) -> RamanujanEntry:
        n = int(n)
        if n < 1 or n > self.max_n:
            raise OutOfRangeError(f"n={n} outside table range [1, {self.max_n}]")
        return RamanujanEntry(n, int(self.r[n - 1]), int(self.idx[n - 1]))

    def pi_r(self, n: int) -> int:
        """pi(R_n) as a plain int."""
        return self.get(n).idx

    @property
    def entries(self) -> list[RamanujanEntry]:
        return [RamanujanEntry(n, int(r), int(i)) for n, (r, i) in enumerate(zip(self.r, self.idx), 1)]

    def idx_array(self) -> np.ndarray:
        """pi(R_n) indexed directly by n; slot 0 is unused and holds 0."""
        return np.concatenate(([0], self.idx.astype(np.int64)))

    def __eq__(self, other):
        if not isinstance(other, RamanujanTable):
            return NotImplemented
        return (
            self.max_n == other.max_n
            and np.array_equal(self.r, other.r)
            and np.array_equal(self.idx, other.idx)
        )

    __hash__ = None


def get(table: RamanujanTable, n: int) -> RamanujanEntry:
    return table.get(n)


def _f_events(primes: np.ndarray, limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions where f jumps, and the value of f from each position onward.

    f rises by one at every prime q and falls by one at every 2p; the two
    sets of positions are disjoint (one is odd or 2, the other even >= 4).
    """
    primes = primes[primes <= limit].astype(np.int64)
    doubled = 2 * primes[primes <= limit // 2]
    pos = np.concatenate((primes, doubled))
    step = np.concatenate((np.ones(primes.size, np.int64), -np.ones(doubled.size, np.int64)))
    order = np.argsort(pos, kind="stable")
    return pos[order], np.cumsum(step[order])


def compute_table(N: int, store: PrimeStore) -> RamanujanTable:
    N = int(N)
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if store.count < 3 * N:
        raise PreconditionError(
            f"store holds {store.count} primes but p_{3 * N} is needed; "
            f"sieve to at least {pk_size_estimate(3 * N)}"
        )
    scan_limit = store.nth_prime(3 * N)
    pos, f = _f_events(store.primes[: 3 * N], scan_limit)
    # least event index from which f never drops below n again (within the scan)
    suffix_min = np.minimum.accumulate(f[::-1])[::-1]
    at = np.searchsorted(suffix_min, np.arange(1, N + 1), side="left")
    if at.size and at[-1] >= pos.size:
        raise PreconditionError(f"scan to {scan_limit} did not reach f >= {N}")
    r = pos[at].astype(np.uint64)
    idx = np.searchsorted(store.primes, r, side="left").astype(np.int64) + 1
    return RamanujanTable(
        max_n=N,
        r=r,
        idx=idx,
        scan_limit=int(scan_limit),
        guarantee=f"Laishram: pi(R_n) < 3n, so R_{N} < p_{3 * N} = {scan_limit}",
    )


def build_table(N: int, **sieve_kwargs) -> tuple[PrimeStore, RamanujanTable]:
    """Sieve just far enough for ``N`` Ramanujan primes and build the table."""
    store = sieve_to(pk_size_estimate(3 * int(N)), **sieve_kwargs)
    return store, compute_table(N, store)


def table_size_for_cap(store: PrimeStore, cap: int) -> int:
    """Largest N that certainly includes every n with R_n <= cap.

    R_n <= cap forces 2n < pi(R_n) <= pi(cap), so n < pi(cap)/2.
    """
    return max(1, (store.pi(cap) - 1) // 2)


def cap_sieve_limit(cap: int) -> int:
    """A sieve limit large enough to build the table for ``cap``."""
    # pi(cap) < 1.25506 cap / log cap bounds the table size before sieving
    cap = int(cap)
    n_guess = max(1, int(1.25506 * cap / math.log(max(cap, 3))) // 2 + 1)
    return max(cap, pk_size_estimate(3 * n_guess))


def table_for_cap(store: PrimeStore, cap: int) -> RamanujanTable:
    """Table holding every R_n <= cap (and possibly a few beyond)."""
    table = compute_table(table_size_for_cap(store, cap), store)
    return replace(table, complete_to=max(int(cap), int(table.r[-1])))


def build_table_for_cap(cap: int, **sieve_kwargs) -> tuple[PrimeStore, RamanujanTable]:
    store = sieve_to(cap_sieve_limit(cap), **sieve_kwargs)
    return store, table_for_cap(store, cap)


def f_values(store: PrimeStore, xs) -> np.ndarray:
    """Direct f(x) = pi(x) - pi(floor(x/2)) at each x."""
    xs = np.asarray(xs, dtype=np.int64)
    return store.pi_many(xs) - store.pi_many(xs // 2)


def _validate(r: np.ndarray, idx: np.ndarray, store: PrimeStore | None, row_offset: int) -> None:
    n = np.arange(1, r.size + 1, dtype=np.int64)
    idx = idx.astype(np.int64)

    def fail(mask, what):
        bad = np.flatnonzero(mask)
        if bad.size:
            i = int(bad[0])
            raise TableFormatError(
                f"row {i + row_offset}: {what} (n={i + 1}, R={int(r[i])}, piR={int(idx[i])})"
            )

    if r.size > 1:
        fail(np.concatenate(([False], np.diff(r.astype(np.int64)) <= 0)), "R not strictly increasing")
    fail((n >= 2) & (idx <= 2 * n), "piR <= 2n")
    fail(idx >= 3 * n, "piR >= 3n")
    fail(idx > np.ceil(2.6 * n).astype(np.int64), "piR > ceil(2.6n)")
    if store is not None:
        beyond = np.flatnonzero((idx > store.count) | (r > np.uint64(store.limit)))
        if beyond.size:
            i = int(beyond[0])
            raise TableFormatError(f"row {i + row_offset}: R={int(r[i])} beyond the supplied prime store")
        fail(store.primes[idx - 1] != r, "R is not the piR-th prime")


def validate_table(table: RamanujanTable, store: PrimeStore | None = None) -> None:
    _validate(table.r, table.idx, store, row_offset=2)


def save_table(table: RamanujanTable, path) -> None:
    path = Path(path)
    with path.open("w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for n, (r, i) in enumerate(zip(table.r.tolist(), table.idx.tolist()), 1):
            fh.write(f"{n},{r},{i}\n")


def load_table(path, store: PrimeStore | None = None) -> RamanujanTable:
    path = Path(path)
    with path.open("r", newline="") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        raise TableFormatError(f"{path}: row 1: expected header {CSV_HEADER!r}")
    if len(lines) == 1:
        raise TableFormatError(f"{path}: table is empty")
    rs, idxs = [], []
    for lineno, line in enumerate(lines[1:], 2):
        m = _ROW.match(line)
        if not m:
            raise TableFormatError(f"{path}: row {lineno}: malformed {line!r}")
        n, r, i = (int(g) for g in m.groups())
        if n != lineno - 1:
            raise TableFormatError(f"{path}: row {lineno}: expected n={lineno - 1}, got {n}")
        rs.append(r)
        idxs.append(i)
    r = np.array(rs, dtype=np.uint64)
    idx = np.array(idxs, dtype=np.int64)
    try:
        _validate(r, idx, store, row_offset=2)
    except TableFormatError as exc:
        raise TableFormatError(f"{path}: {exc}") from None
    guarantee = "loaded from file" + (", checked against prime store" if store is not None else "")
    return RamanujanTable(max_n=len(rs), r=r, idx=idx, scan_limit=None, guarantee=guarantee)


def trend_ratio(table: RamanujanTable) -> np.ndarray:
    """pi(R_n) / (2n) for n = 1..max_n."""
    n = np.arange(1, table.max_n + 1, dtype=np.float64)
    return table.idx / (2.0 * n)


__all__ = [
    "CSV_HEADER",
    "RamanujanEntry",
    "RamanujanTable",
    "build_table",
    "build_table_for_cap",
    "cap_sieve_limit",
    "table_for_cap",
    "compute_table",
    "f_values",
    "get",
    "load_table",
    "save_table",
    "table_size_for_cap",
    "trend_ratio",
    "validate_table",
]
