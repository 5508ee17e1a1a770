import json

import numpy as np
import pytest

from oracles import naive_primes, naive_ramanujan
from ramanujan_pi.bounds import BoundId, pi_upper
from ramanujan_pi.errors import DependencyError, PreconditionError
from ramanujan_pi.prime_core import sieve_to
from ramanujan_pi.verify import (
    KNOWN_EXCEPTION,
    REMARK_FAILURES,
    VerificationReport,
    check_bound_range,
    check_conjecture,
    check_lemma_31,
    check_lemma_41,
    check_pi_bounds,
    conjecture_case,
    find_failures,
    m_schedule,
    n_of_m,
    remark_report,
)

# slack m pi(R_9) - pi(R_9m) for m = 20..38, frozen from the exact table and
# cross-checked with a brute-force definition scan (see oracles.naive_ramanujan)
SLACK_9 = {20: 2, 21: 3, 22: -8, 23: -7, 24: -6, 25: -4, 26: -3, 27: 0, 28: 2, 29: 0, 30: 3,
           31: 3, 32: -4, 33: -4, 34: 6, 35: 6, 36: -3, 37: -3, 38: -2}


def test_conjecture_case_examples(small):
    _, t = small
    c = conjecture_case(38, 9, t)
    assert (c.lhs, c.rhs, c.slack, c.holds) == (762, 760, -2, False)
    assert conjecture_case(2, 1245, t).holds
    c = conjecture_case(5, 3, t)
    assert not c.holds and c.as_dict()["slack"] == c.rhs - c.lhs


def test_find_failures_small(small):
    _, t = small
    found = {(c.m, c.n) for c in find_failures(5, 100, t)}
    assert {(5, 3), (5, 9), (5, 84)} <= found
    assert {c.n for c in find_failures(2, 10, t)} == {3, 7, 8, 9}
    assert (38, 9) in {(c.m, c.n) for c in find_failures(38, 9, t)}


def test_slacks_for_n9(small):
    _, t = small
    got = {m: conjecture_case(m, 9, t).slack for m in range(20, 39)}
    assert got == SLACK_9


def test_slacks_for_n9_brute_force():
    idx = {n: i for n, _, i in naive_ramanujan(342)}
    assert {m: m * idx[9] - idx[9 * m] for m in range(20, 39)} == SLACK_9


def test_check_conjecture(small):
    _, t = small
    rep = check_conjecture(2, 1245, 40_000, t)
    assert rep.ok and rep.checked == 40_000 - 1244 and rep.failures == []
    rep = check_conjecture(2, 2, 100, t)
    assert not rep.ok and {c.n for c in rep.failures} >= {3, 7, 8, 9}
    with pytest.raises(DependencyError):
        check_conjecture(2, 2, 10**5, t)
    with pytest.raises(DependencyError):
        check_conjecture(2, 2, 10, t, r_cap=10**9)


def test_check_conjecture_with_cap(small):
    _, t = small
    cap = int(t.r[-1])
    rep = check_conjecture(3, 189, 10**6, t, r_cap=cap)
    last = rep.params["n_to_checked"]
    assert t.get(3 * last).r <= cap
    assert 3 * (last + 1) > t.max_n or t.get(3 * (last + 1)).r > cap


def test_n_of_m():
    assert [n_of_m(m) for m in range(1, 8)] == [1, 1245, 189, 189, 85, 85, 10]
    assert n_of_m(19) == 10 and n_of_m(20) == 2 and n_of_m(1000) == 2


def test_remark_within_small_table(small):
    _, t = small
    rep = remark_report(6, 300, t)
    assert rep.ok, rep.params
    assert rep.params["missing_from_expected"] == [] and rep.params["not_in_expected"] == []


def test_remark_flags_unlisted_pairs(small):
    _, t = small
    rep = remark_report(38, 9, t)
    extra = {tuple(p) for p in rep.params["not_in_expected"]}
    assert extra == {(m, 9) for m, s in SLACK_9.items() if s < 0} - {KNOWN_EXCEPTION}
    assert rep.params["missing_from_expected"] == []
    assert rep.unexpected == len(extra)


def test_remark_list_shape():
    assert KNOWN_EXCEPTION in REMARK_FAILURES
    assert max(m * n for m, n in REMARK_FAILURES) <= 1244 * 2


def test_lemmas(small):
    store, t = small
    for fn in (check_lemma_31, check_lemma_41):
        rep = fn(t, store, 10**5)
        assert rep.ok and rep.checked >= 10**5 - 1


def test_lemmas_need_primes(small):
    _, t = small
    with pytest.raises(DependencyError):
        check_lemma_31(t, sieve_to(1000), 10**4)


def test_pi_bounds_lower_side(store_1e6):
    rep = check_pi_bounds(store_1e6, 468_049, 10**6, 500)
    assert rep.checked == 1000
    assert [f for f in rep.failures if f["side"] == "lower"] == []


def test_pi_bounds_upper_side_failures_are_real(store_1e6):
    # the 1.17 upper estimate is below pi(x) at many x < 10^8 (e.g. x = 617294)
    rep = check_pi_bounds(store_1e6, 468_049, 10**6, 500)
    assert not rep.ok and rep.unexpected == len(rep.failures)
    primes = np.array(naive_primes(10**6))
    for f in rep.failures:
        assert f["side"] == "upper"
        exact = int(np.searchsorted(primes, f["x"], side="right"))
        assert f["pi"] == exact and f["bound"] <= exact
    assert store_1e6.pi(617_294) == 50_416 > pi_upper(617_294)


def test_pi_bounds_errors(store_1e6):
    with pytest.raises(DependencyError):
        check_pi_bounds(store_1e6, 2, 10**7, 5)
    with pytest.raises(PreconditionError):
        check_pi_bounds(store_1e6, 10, 5, 5)


def test_check_bound_range(small):
    store, t = small
    for bid, start in (("thm1_2_upper", 5225), ("cor3_6_upper", 640), ("srinivasan_ares", 44), ("laishram_3n", 2)):
        rep = check_bound_range(bid, start, 10**5, t)
        assert rep.ok and rep.failures == [] and rep.checked == 10**5 - start + 1
    with pytest.raises(PreconditionError):
        check_bound_range("thm1_3_lower", 100, 2000, t)


def test_probe_below_reports_without_failing(small):
    _, t = small
    rep = check_bound_range("thm1_3_lower", 2, 2000, t, probe_below=True)
    assert rep.failures and rep.ok
    assert all(f["n"] < 1245 for f in rep.failures)
    assert rep.failures[0]["bound"] == "thm1_3_lower"


def test_sondow_nicholson_noe_range(small):
    store, t = small
    rep = check_bound_range(BoundId.sondow_nicholson_noe, 2, 30_000, t, store)
    assert rep.ok


def test_m_schedule_small(small):
    store, t = small
    rows, rep = m_schedule(2, 20, t, store)
    assert [r.n for r in rows] == list(range(2, 21))
    for r in rows:
        assert r.M_start >= 20
        assert r.truncated == (r.M_start > t.max_n // r.n)
    assert rep.truncated == [r.n for r in rows if r.truncated]
    with pytest.raises(PreconditionError):
        m_schedule(1, 5, t)


def test_m_schedule_n9(desk):
    store, t = desk
    rows, rep = m_schedule(9, 9, t, store)
    row = rows[0]
    assert not row.truncated and row.L == 39
    assert rep.ok and [(c.m, c.n) for c in rep.failures] == [KNOWN_EXCEPTION]


def test_m_schedule_work_cap(small):
    _, t = small
    rows, rep = m_schedule(2, 4, t, work_cap=100)
    assert all(r.truncated and r.start == 100 // r.n for r in rows)
    assert rep.params["work_cap"] == 100


def test_report_json_round_trip(small):
    _, t = small
    rep = check_conjecture(2, 2, 100, t)
    text = rep.to_json()
    d = json.loads(text)
    assert set(d) == {"campaign", "params", "checked", "failures", "truncated", "wall_time_s"}
    assert json.dumps(d, indent=2) + "\n" == text
    # pi(R_6) = 15 > 2 pi(R_3) = 14
    assert d["failures"][0] == {"m": 2, "n": 3, "lhs": 15, "rhs": 14, "slack": -1}


def test_reports_are_deterministic(small):
    _, t = small
    a = remark_report(6, 200, t).as_dict()
    b = remark_report(6, 200, t).as_dict()
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_report_csv(small):
    _, t = small
    text = check_conjecture(2, 2, 20, t).to_csv()
    lines = text.splitlines()
    assert lines[0] == "m,n,lhs,rhs,slack"
    assert lines[1].startswith("2,3,")
    assert VerificationReport("x", {}).to_csv() == ""


def test_unexpected_counts(small):
    _, t = small
    rep = check_bound_range("cor3_6_upper", 2, 1000, t, probe_below=True)
    below = [f for f in rep.failures if f["n"] < 640]
    assert rep.unexpected == len(rep.failures) - len(below) == 0
    assert np.all([isinstance(f["margin"], float) for f in rep.failures])
