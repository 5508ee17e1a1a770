"""Verification campaigns over an exact Ramanujan table and prime store.

Each campaign returns a :class:`VerificationReport`. ``unexpected`` counts
failures that contradict a proven statement; failures in probe-below
ranges or in cases that are known to fail are reported but not counted.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds
from .bounds import CATALOG, BoundId, lemma51_params
from .errors import DependencyError, PreconditionError
from .prime_core import PrimeStore
from .ramanujan import RamanujanTable

# Smallest n from which pi(R_mn) <= m pi(R_n) is asserted, per m
N_OF_M = {1: 1, 2: 1245, 3: 189, 4: 189, 5: 85, 6: 85, **{m: 10 for m in range(7, 20)}}
N_OF_M_LARGE = 2
KNOWN_EXCEPTION = (38, 9)

# Every (m, n) with m >= 2, n >= 2 for which pi(R_mn) > m pi(R_n)
REMARK_FAILURES = frozenset(
    [(2, n) for n in (
        3, 7, 8, 9, 22, 23, 25, 37, 38, 49, 53, 54, 55, 66, 82, 83, 84, 85, 86, 87, 101, 102, 113,
        114, 115, 160, 161, 162, 179, 180, 184, 185, 186, 232, 240, 241, 246, 247, 376, 377, 378,
        379, 380, 381, 386, 387, 388, 412, 531, 532, 537, 538, 547, 548, 549, 550, 551, 552, 553,
        554, 555, 556, 557, 558, 792, 793, 794, 795, 796, 797, 798, 799, 800, 801, 802, 803, 804,
        1140, 1141, 1142, 1146, 1147, 1202, 1241, 1242, 1243, 1244)]
    + [(3, n) for n in (9, 11, 23, 25, 49, 54, 55, 56, 57, 66, 67, 83, 84, 114, 115, 160, 187, 188)]
    + [(4, n) for n in (9, 11, 37, 38, 42, 54, 55, 82, 83, 84, 114, 115, 188)]
    + [(5, 3), (5, 9), (5, 84), (6, 28), (6, 54), (6, 55), (6, 84)]
    + [(7, 3), (7, 9), (8, 9), (9, 9), (10, 9), (11, 3), (11, 9), (12, 9), (13, 9), (14, 9),
       (15, 3), (15, 9), (16, 9), (17, 9), (18, 9), (19, 9), (38, 9)]
)


def n_of_m(m: int) -> int:
    return N_OF_M.get(m, N_OF_M_LARGE)


@dataclass(frozen=True)
class ConjectureCase:
    m: int
    n: int
    lhs: int  # pi(R_mn)
    rhs: int  # m pi(R_n)

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    def as_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack}


@dataclass
class VerificationReport:
    campaign: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    truncated: list = field(default_factory=list)
    wall_time_s: float = 0.0
    rows: list | None = None
    unexpected: int = 0

    @property
    def ok(self) -> bool:
        return self.unexpected == 0

    def as_dict(self) -> dict:
        d = {
            "campaign": self.campaign,
            "params": self.params,
            "checked": self.checked,
            "failures": [f.as_dict() if hasattr(f, "as_dict") else f for f in self.failures],
            "truncated": list(self.truncated),
            "wall_time_s": self.wall_time_s,
        }
        if self.rows is not None:
            d["rows"] = self.rows
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        rows = self.as_dict()["failures"]
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()


def _timed(report: VerificationReport, t0: float) -> VerificationReport:
    report.wall_time_s = round(time.perf_counter() - t0, 6)
    return report


def _need_table(table: RamanujanTable | None, n: int, what: str) -> RamanujanTable:
    if table is None:
        raise DependencyError(f"{what} needs a Ramanujan table")
    if n > table.max_n:
        raise DependencyError(f"{what} needs pi(R_{n}) but the table stops at n={table.max_n}")
    return table


def check_bound_range(bound, n_from: int, n_to: int, table: RamanujanTable, store: PrimeStore | None = None,
                      probe_below: bool = False, t=None) -> VerificationReport:
    t0 = time.perf_counter()
    spec = CATALOG[BoundId(bound)]
    _need_table(table, n_to, f"checking {spec.id}")
    lowest = max(2, spec.threshold)
    if n_from < 2 or (n_from < lowest and not probe_below):
        raise PreconditionError(f"{spec.id} is proven for n >= {lowest}; got n_from={n_from} (use probe_below)")
    params = {"bound": spec.id.value, "n_from": n_from, "n_to": n_to, "probe_below": probe_below}
    if spec.id is BoundId.srinivasan_t:
        params["t"] = str(bounds._as_t(t))
    report = VerificationReport(f"bound:{spec.id.value}", params)
    if n_to < n_from:
        return _timed(report, t0)

    n = np.arange(n_from, n_to + 1, dtype=np.int64)
    exact = table.idx_array()[n]
    values = bounds.bound_values_array(spec.id, n, store=store, t=t)
    if spec.formula is None:
        holds = np.array(spec.holds(values, exact))
        margins = spec.margin(values, exact).astype(np.int64)
    else:
        holds = np.array(spec.holds(values, exact))
        margins = spec.margin(values, exact)
        # hand anything within the safety margin to the high-precision path
        close = np.flatnonzero(np.abs(values - exact) <= bounds.SAFETY_MARGIN * np.maximum(1.0, np.abs(exact)))
        for i in close:
            h, mg, _ = bounds.decide(spec.id, int(n[i]), int(exact[i]))
            holds[i], margins[i] = h, mg
    for i in np.flatnonzero(~holds):
        margin = margins[i].item()
        report.failures.append({"bound": spec.id.value, "n": int(n[i]), "margin": margin})
        if n[i] >= spec.threshold:
            report.unexpected += 1
    report.checked = int(n.size)
    return _timed(report, t0)


def conjecture_case(m: int, n: int, table: RamanujanTable) -> ConjectureCase:
    _need_table(table, m * n, "conjecture case")
    return ConjectureCase(m, n, table.pi_r(m * n), m * table.pi_r(n))


def check_conjecture(m: int, n_from: int, n_to: int, table: RamanujanTable,
                     r_cap: int | None = None) -> VerificationReport:
    """pi(R_mn) <= m pi(R_n) for every n in [n_from, n_to].

    With ``r_cap`` the range is cut to pairs with R_mn <= r_cap; the table
    must then hold every Ramanujan prime up to that cap.
    """
    t0 = time.perf_counter()
    if m < 1 or n_from < 1:
        raise PreconditionError(f"need m >= 1 and n >= 1, got m={m}, n_from={n_from}")
    params = {"m": m, "n_from": n_from, "n_to": n_to}
    if r_cap is not None:
        if r_cap > table.r_cap:
            raise DependencyError(f"table is complete only up to R <= {table.r_cap}, cap {r_cap} requested")
        params["r_cap"] = r_cap
        last = min(n_to, table.max_n // m)
        if last >= n_from:
            r = table.r[m * np.arange(n_from, last + 1) - 1]
            last = n_from - 1 + int(np.searchsorted(r, np.uint64(r_cap), side="right"))
        n_to = last
    else:
        _need_table(table, m * n_to, f"checking m={m}")
    report = VerificationReport("conjecture", params)
    if n_to < n_from:
        return _timed(report, t0)
    idx = table.idx_array()
    n = np.arange(n_from, n_to + 1, dtype=np.int64)
    lhs = idx[m * n]
    rhs = m * idx[n]
    for i in np.flatnonzero(rhs < lhs):
        report.failures.append(ConjectureCase(m, int(n[i]), int(lhs[i]), int(rhs[i])))
    report.unexpected = len(report.failures)
    report.checked = int(n.size)
    if r_cap is not None:
        report.params["n_to_checked"] = int(n_to)
    return _timed(report, t0)


def find_failures(max_m: int, max_n: int, table: RamanujanTable, r_cap: int | None = None) -> list[ConjectureCase]:
    """All (m, n) with 2 <= m <= max_m, 2 <= n <= max_n and pi(R_mn) > m pi(R_n).

    Without ``r_cap`` the table must cover max_m * max_n. With it, pairs
    with R_mn > r_cap are skipped (certified absent from the table).
    """
    if r_cap is None:
        _need_table(table, max_m * max_n, "find_failures")
    elif r_cap > table.r_cap:
        raise DependencyError(f"table is complete only up to R <= {table.r_cap}, cap {r_cap} requested")
    idx = table.idx_array()
    out = []
    for m in range(2, max_m + 1):
        last = min(max_n, table.max_n // m)
        if last < 2:
            continue
        n = np.arange(2, last + 1, dtype=np.int64)
        if r_cap is not None:
            n = n[table.r[m * n - 1] <= np.uint64(r_cap)]
        lhs = idx[m * n]
        rhs = m * idx[n]
        out.extend(ConjectureCase(m, int(n[i]), int(lhs[i]), int(rhs[i])) for i in np.flatnonzero(rhs < lhs))
    return out


def remark_report(max_m: int, max_n: int, table: RamanujanTable, r_cap: int | None = None) -> VerificationReport:
    """Failure set compared with the published list of exceptions.

    ``unexpected`` counts the symmetric difference within the scanned range.
    """
    t0 = time.perf_counter()
    found = find_failures(max_m, max_n, table, r_cap)
    params = {"max_m": max_m, "max_n": max_n, "table_max_n": table.max_n}
    if r_cap is not None:
        params["r_cap"] = r_cap
    report = VerificationReport("remark", params, failures=found)
    found_pairs = {(c.m, c.n) for c in found}
    scanned = _scanned_pairs(max_m, max_n, table, r_cap)
    expected = {p for p in REMARK_FAILURES if p in scanned}
    missing = sorted(expected - found_pairs)
    extra = sorted(found_pairs - expected)
    report.params["missing_from_expected"] = [list(p) for p in missing]
    report.params["not_in_expected"] = [list(p) for p in extra]
    report.unexpected = len(missing) + len(extra)
    report.checked = len(scanned)
    return _timed(report, t0)


def _scanned_pairs(max_m, max_n, table, r_cap):
    pairs = set()
    for m in range(2, max_m + 1):
        last = min(max_n, table.max_n // m)
        for n in range(2, last + 1):
            if r_cap is None or int(table.r[m * n - 1]) <= r_cap:
                pairs.add((m, n))
    return pairs


def check_lemma_31(table: RamanujanTable, store: PrimeStore, n_to: int) -> VerificationReport:
    """2 p_{s-n} < p_s with s = pi(R_n), for 2 <= n <= n_to."""
    return _lemma_check("lemma_31", table, store, n_to, first=2, shift=0)


def check_lemma_41(table: RamanujanTable, store: PrimeStore, n_to: int) -> VerificationReport:
    """p_s < 2 p_{s-n+1} with s = pi(R_n), for 1 <= n <= n_to."""
    return _lemma_check("lemma_41", table, store, n_to, first=1, shift=1)


def _lemma_check(name, table, store, n_to, first, shift):
    t0 = time.perf_counter()
    _need_table(table, n_to, name)
    report = VerificationReport(name, {"n_from": first, "n_to": n_to})
    if n_to < first:
        return _timed(report, t0)
    n = np.arange(first, n_to + 1, dtype=np.int64)
    s = table.idx_array()[n]
    if int(s.max()) > store.count:
        raise DependencyError(f"{name} needs p_{int(s.max())}, store holds {store.count} primes")
    primes = store.primes.astype(np.int64)
    ps = primes[s - 1]
    pk = primes[s - n + shift - 1]
    ok = 2 * pk < ps if shift == 0 else ps < 2 * pk
    for i in np.flatnonzero(~ok):
        report.failures.append({"n": int(n[i]), "s": int(s[i]), "p_s": int(ps[i]), "p_k": int(pk[i])})
    report.unexpected = len(report.failures)
    report.checked = int(n.size)
    return _timed(report, t0)


def check_pi_bounds(store: PrimeStore, x_from: int, x_to: int, samples: int) -> VerificationReport:
    """Bracket the exact pi(x) by the two explicit estimates at evenly spaced x."""
    t0 = time.perf_counter()
    if x_to > store.limit:
        raise DependencyError(f"pi({x_to}) requested, store covers up to {store.limit}")
    if x_from < 2 or x_to < x_from or samples < 1:
        raise PreconditionError("need 2 <= x_from <= x_to and samples >= 1")
    xs = np.unique(np.linspace(x_from, x_to, samples).round().astype(np.int64))
    exact = store.pi_many(xs)
    report = VerificationReport("pi-bounds", {"x_from": x_from, "x_to": x_to, "samples": samples})
    checked = 0
    up_mask = xs >= bounds.PI_UPPER_THRESHOLD
    lo_mask = xs >= bounds.PI_LOWER_THRESHOLD
    for side, mask, fn, holds in (
        ("upper", up_mask, bounds._pi_upper, lambda v, e: e < v),
        ("lower", lo_mask, bounds._pi_lower, lambda v, e: v < e),
    ):
        x, e = xs[mask], exact[mask]
        if not x.size:
            continue
        v = fn(x, bounds.NUMPY)
        ok = holds(v, e)
        for i in np.flatnonzero(~ok):
            report.failures.append({"side": side, "x": int(x[i]), "pi": int(e[i]), "bound": float(v[i])})
        checked += int(x.size)
    report.checked = checked
    report.unexpected = len(report.failures)
    return _timed(report, t0)


@dataclass(frozen=True)
class MScheduleRow:
    n: int
    M_start: int
    start: int  # where the descent actually began
    L: int
    truncated: bool
    pi_X9_exact: bool

    def as_dict(self) -> dict:
        return asdict(self)


def m_schedule(n_from: int, n_to: int, table: RamanujanTable, store: PrimeStore | None = None,
               work_cap: int | None = None) -> tuple[list[MScheduleRow], VerificationReport]:
    """Descend m from the guaranteed M(n) while pi(R_nm) <= m pi(R_n) and m >= 20.

    L = (first failing m) + 1, or 20 when every m down to 20 holds. A row is
    truncated when M(n) exceeds what the table can reach (``work_cap``
    bounds the largest index n*m consulted).
    """
    t0 = time.perf_counter()
    if n_from < 2:
        raise PreconditionError(f"n_from must be >= 2, got {n_from}")
    _need_table(table, n_to, "m_schedule")
    reach = table.max_n if work_cap is None else min(work_cap, table.max_n)
    idx = table.idx_array()
    rows = []
    report = VerificationReport("m-schedule", {"n_from": n_from, "n_to": n_to, "work_cap": reach})
    for n in range(n_from, n_to + 1):
        pin = int(idx[n])
        params = lemma51_params(n, pin, store)
        cap_n = reach // n
        start = min(params.M, cap_n)
        truncated = params.M > cap_n
        M = start
        if start >= 20:
            ms = np.arange(start, 19, -1, dtype=np.int64)
            slack = ms * pin - idx[n * ms]
            bad = np.flatnonzero(slack < 0)
            if bad.size:
                M = int(ms[bad[0]])
                report.failures.append(ConjectureCase(M, n, int(idx[n * M]), M * pin))
            else:
                M = 19
        rows.append(MScheduleRow(n, params.M, start, M + 1, truncated, params.pi_X9_exact))
        if truncated:
            report.truncated.append(n)
    report.checked = len(rows)
    report.rows = [r.as_dict() for r in rows]
    report.unexpected = sum(1 for c in report.failures if (c.m, c.n) != KNOWN_EXCEPTION)
    return rows, _timed(report, t0)
