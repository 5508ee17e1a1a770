"""Evaluators for explicit estimates of p_n, pi(x) and pi(R_n).

Every formula is written once against a small numeric backend (``math``,
``numpy`` or ``mpmath``) so the same expression serves scalar evaluation,
vectorised range checks, and the high-precision recheck used when a real
bound lands within 1e-9 (relative) of the exact integer it is compared to.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace
from typing import Callable

import mpmath
import numpy as np

from .errors import DependencyError, DomainError, PreconditionError
from .prime_core import PrimeStore

FLOAT = SimpleNamespace(log=math.log, exp=math.exp, sqrt=math.sqrt, c=float, num=float)
NUMPY = SimpleNamespace(log=np.log, exp=np.exp, sqrt=np.sqrt, c=float, num=lambda x: np.asarray(x, dtype=np.float64))
MP = SimpleNamespace(log=mpmath.log, exp=mpmath.exp, sqrt=mpmath.sqrt, c=mpmath.mpf, num=mpmath.mpf)

SAFETY_MARGIN = 1e-9
HIGH_PRECISION_DPS = 40


# --------------------------------------------------------------------------
# auxiliary functions
# --------------------------------------------------------------------------

def _consts(ns):
    l2 = ns.log(ns.c("2"))
    return l2, l2 * l2, l2 * l2 * l2


def _aux_ratio(x, ns, first, second):
    """Shared shape of the U and L correction terms."""
    l2, l2sq, l2cu = _consts(ns)
    lx = ns.log(ns.num(x))
    llx = ns.log(lx)
    num = l2 * lx * llx**2 - first * lx * llx + second * lx - l2sq * llx + l2cu + l2sq
    den = lx**4 + lx**3 * llx - lx**3 * l2 - lx**2 * l2
    return num / den


def _u(x, ns):
    l2, l2sq, l2cu = _consts(ns)
    return _aux_ratio(x, ns, 2 * l2sq + l2, l2cu + 2 * l2sq + ns.c("0.565"))


def _l(x, ns):
    l2, l2sq, l2cu = _consts(ns)
    return _aux_ratio(x, ns, 2 * l2sq + l2 + ns.c("1.472"), l2cu + 2 * l2sq - ns.c("2.51"))


def _lam(x, ns):
    """log x + log log x - log 2 - log 2 / log x."""
    l2 = ns.log(ns.c("2"))
    lx = ns.log(ns.num(x))
    return lx + ns.log(lx) - l2 - l2 / lx


def _gamma(x, ns):
    l2 = ns.log(ns.c("2"))
    lx = ns.log(ns.num(x))
    return (l2 + l2 / lx + ns.c("0.565") / lx**2) / _lam(x, ns)


def _delta(x, ns):
    l2 = ns.log(ns.c("2"))
    lx = ns.log(ns.num(x))
    return (l2 + l2 / lx - (ns.c("1.472") * ns.log(lx) + ns.c("2.51")) / lx**2) / _lam(x, ns)


def _main_bracket(x, ns):
    """log2/log x - (log2 loglog x - log^2 2 - log2)/log^2 x."""
    l2, l2sq, _ = _consts(ns)
    lx = ns.log(ns.num(x))
    return l2 / lx - (l2 * ns.log(lx) - l2sq - l2) / lx**2


def _pn_shape(x, ns, const):
    x = ns.num(x)
    lx = ns.log(x)
    llx = ns.log(lx)
    return x * (lx + llx - 1 + (llx - 2) / lx - (llx**2 - 6 * llx + ns.c(const)) / (2 * lx**2))


def _g(x, ns):
    return _pn_shape(x, ns, "10.667")


def _h(x, ns):
    return _pn_shape(x, ns, "11.508")


def _phi(x, ns):
    return ns.c("1.472") * ns.log(ns.log(ns.num(x))) + ns.c("2.51")


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def u_term(x: float) -> float:
    """Correction term U(x) in the upper bound for pi(R_n)."""
    _require(x > math.e, f"u_term needs x > e, got {x}")
    return _u(x, FLOAT)


def l_term(x: float) -> float:
    """Correction term L(x) in the lower bound for pi(R_n)."""
    _require(x > math.e, f"l_term needs x > e, got {x}")
    return _l(x, FLOAT)


def gamma_fn(x: float) -> float:
    _require(x >= 4, f"gamma_fn needs x >= 4, got {x}")
    return _gamma(x, FLOAT)


def delta_fn(x: float) -> float:
    _require(x >= 4, f"delta_fn needs x >= 4, got {x}")
    return _delta(x, FLOAT)


def gamma_expanded(x: float) -> float:
    """gamma(x) rewritten as the main bracket plus U(x)."""
    return _main_bracket(x, FLOAT) + u_term(x)


def delta_expanded(x: float) -> float:
    """delta(x) rewritten as the main bracket plus L(x)."""
    return _main_bracket(x, FLOAT) + l_term(x)


def g_fn(x: float) -> float:
    _require(x > math.e, f"g_fn needs x > e, got {x}")
    return _g(x, FLOAT)


def h_fn(x: float) -> float:
    _require(x > math.e, f"h_fn needs x > e, got {x}")
    return _h(x, FLOAT)


def _f_domain(n, x, shift):
    _require(2 * n < x < 2.6 * n, f"x={x} outside the open interval (2n, 2.6n) for n={n}")
    _require(x - shift > math.e, f"x - {shift} must exceed e, got x={x}")


def f1(n: int, x: float) -> float:
    """G(x) - 2 H(x - n) on (2n, 2.6n)."""
    _f_domain(n, x, n)
    return _g(x, FLOAT) - 2 * _h(x - n, FLOAT)


def f2(n: int, x: float) -> float:
    """H(x) - 2 G(x - n + 1) on (2n, 2.6n)."""
    _f_domain(n, x, n - 1)
    return _h(x, FLOAT) - 2 * _g(x - n + 1, FLOAT)


def pn_upper(n: int) -> float:
    """Upper estimate for p_n; proven for n >= 46 254 381 only."""
    _require(n >= 2, f"pn_upper needs n >= 2, got {n}")
    return _g(n, FLOAT)


def pn_lower(n: int) -> float:
    """Lower estimate for p_n, valid for every n >= 2."""
    _require(n >= 2, f"pn_lower needs n >= 2, got {n}")
    return _h(n, FLOAT)


PN_UPPER_THRESHOLD = 46_254_381
PI_UPPER_THRESHOLD = 5.43
PI_LOWER_THRESHOLD = 468_049


def _pi_upper(x, ns):
    lx = ns.log(ns.num(x))
    return ns.num(x) / (lx - 1 - ns.c("1.17") / lx)


def _pi_lower(x, ns):
    lx = ns.log(ns.num(x))
    return ns.num(x) / (lx - 1 - 1 / lx)


def pi_upper(x: float) -> float:
    _require(x >= PI_UPPER_THRESHOLD, f"pi_upper holds for x >= 5.43 only, got {x}")
    return _pi_upper(x, FLOAT)


def pi_lower(x: float) -> float:
    _require(x >= PI_LOWER_THRESHOLD, f"pi_lower holds for x >= 468049 only, got {x}")
    return _pi_lower(x, FLOAT)


# --------------------------------------------------------------------------
# the pi(R_n) bound catalog
# --------------------------------------------------------------------------

class BoundId(str, enum.Enum):
    thm1_2_upper = "thm1_2_upper"
    thm1_3_lower = "thm1_3_lower"
    prop1_1_alpha = "prop1_1_alpha"
    prop1_1_beta = "prop1_1_beta"
    cor3_4_upper = "cor3_4_upper"
    cor3_5_upper = "cor3_5_upper"
    cor3_6_upper = "cor3_6_upper"
    cor4_a_lower = "cor4_a_lower"
    cor4_b_lower = "cor4_b_lower"
    cor4_c_lower = "cor4_c_lower"
    srinivasan_t = "srinivasan_t"
    srinivasan_nicholson = "srinivasan_nicholson"
    srinivasan_ares = "srinivasan_ares"
    sondow_4n = "sondow_4n"
    laishram_3n = "laishram_3n"
    sondow_nicholson_noe = "sondow_nicholson_noe"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BoundSpec:
    id: BoundId
    direction: str  # "upper" or "lower"
    threshold: int
    strict: bool
    anchor: str
    formula: Callable | None = None  # (n, ns) -> real; None for exact integer bounds

    def holds(self, value, idx) -> bool:
        if self.direction == "upper":
            return idx < value if self.strict else idx <= value
        return idx > value if self.strict else idx >= value

    def margin(self, value, idx):
        return value - idx if self.direction == "upper" else idx - value


def _two_n(n, ns, bracket):
    return 2 * ns.num(n) * (1 + bracket)


def _yt(n, ns, shift):
    # 2n (1 + log2/log n - (log2 loglog n - log^2 2 - log 2 + shift)/log^2 n)
    l2, l2sq, _ = _consts(ns)
    ln = ns.log(ns.num(n))
    return _two_n(n, ns, l2 / ln - (l2 * ns.log(ln) - l2sq - l2 + shift) / ln**2)


def _thm_upper(n, ns):
    return _two_n(n, ns, _main_bracket(n, ns) + _u(n, ns))


def _thm_lower(n, ns):
    return _two_n(n, ns, _main_bracket(n, ns) + _l(n, ns))


def _cor3_4(n, ns):
    l2 = ns.log(ns.c("2"))
    ln = ns.log(ns.num(n))
    return _two_n(n, ns, _main_bracket(n, ns) + l2 * ns.log(ln) ** 2 / ln**3)


def _cor3_6(n, ns):
    return _two_n(n, ns, ns.log(ns.c("2")) / ns.log(ns.num(n)))


def _cor4_c(n, ns):
    l2 = ns.log(ns.c("2"))
    ln = ns.log(ns.num(n))
    return _two_n(n, ns, l2 / ln - l2 * ns.log(ln) / ln**2)


def _srin_nich(n, ns):
    ln = ns.log(ns.num(n))
    return _two_n(n, ns, 3 / (ln + ns.log(ln) - 4))


def _srin_ares(n, ns):
    # epsilon = 0.5, j(n) = log log n - log 2 - 0.5
    l2 = ns.log(ns.c("2"))
    ln = ns.log(ns.num(n))
    half = ns.c("0.5")
    return _two_n(n, ns, (l2 + half) / (ln + ns.log(ln) - l2 - half))


_B = BoundId
CATALOG: dict[BoundId, BoundSpec] = {
    s.id: s
    for s in [
        BoundSpec(_B.thm1_2_upper, "upper", 5225, True,
                  "pi(R_n) < 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2)/log^2 n + U(n))", _thm_upper),
        BoundSpec(_B.thm1_3_lower, "lower", 1245, True,
                  "pi(R_n) > 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2)/log^2 n + L(n))", _thm_lower),
        BoundSpec(_B.prop1_1_alpha, "upper", 10**300 + 1, True,
                  "Yang-Togbe alpha: 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2 - 0.13)/log^2 n), n > 10^300",
                  lambda n, ns: _yt(n, ns, -ns.c("0.13"))),
        BoundSpec(_B.prop1_1_beta, "lower", 10**300 + 1, True,
                  "Yang-Togbe beta: 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2 + 0.11)/log^2 n), n > 10^300",
                  lambda n, ns: _yt(n, ns, ns.c("0.11"))),
        BoundSpec(_B.cor3_4_upper, "upper", 2, True,
                  "pi(R_n) < 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2)/log^2 n + log2 (loglog n)^2/log^3 n)",
                  _cor3_4),
        BoundSpec(_B.cor3_5_upper, "upper", 4_842_763_560_306, True,
                  "pi(R_n) < 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2 - 0.13)/log^2 n)",
                  lambda n, ns: _yt(n, ns, -ns.c("0.13"))),
        BoundSpec(_B.cor3_6_upper, "upper", 640, True, "pi(R_n) < 2n(1 + log2/log n)", _cor3_6),
        BoundSpec(_B.cor4_a_lower, "lower", 10**57, True,
                  "pi(R_n) > 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2)/log^2 n)",
                  lambda n, ns: _yt(n, ns, 0)),
        BoundSpec(_B.cor4_b_lower, "lower", 51_396_214_158_824, True,
                  "pi(R_n) > 2n(1 + log2/log n - (log2 loglog n - log^2 2 - log2 + 0.11)/log^2 n)",
                  lambda n, ns: _yt(n, ns, ns.c("0.11"))),
        BoundSpec(_B.cor4_c_lower, "lower", 85, True,
                  "pi(R_n) > 2n(1 + log2/log n - log2 loglog n/log^2 n)", _cor4_c),
        BoundSpec(_B.srinivasan_t, "upper", 1, False,
                  "Srinivasan/Axler: pi(R_n) <= ceil(t n) for any real t > 48/19"),
        BoundSpec(_B.srinivasan_nicholson, "upper", 242, False,
                  "Srinivasan-Nicholson: pi(R_n) <= 2n(1 + 3/(log n + loglog n - 4))", _srin_nich),
        BoundSpec(_B.srinivasan_ares, "upper", 44, True,
                  "Srinivasan-Ares: pi(R_n) < 2n(1 + (log2 + 0.5)/(log n + loglog n - log2 - 0.5))", _srin_ares),
        BoundSpec(_B.sondow_4n, "upper", 1, True, "Sondow: pi(R_n) < 4n"),
        BoundSpec(_B.laishram_3n, "upper", 1, True, "Laishram: pi(R_n) < 3n"),
        BoundSpec(_B.sondow_nicholson_noe, "upper", 1, False,
                  "Sondow-Nicholson-Noe: pi(R_n) <= pi(41 p_{3n}/47), equality at n = 5"),
    ]
}

DEFAULT_T = Fraction(13, 5)
T_FLOOR = Fraction(48, 19)


def catalog_listing() -> list[dict]:
    return [
        {"name": s.id.value, "direction": s.direction, "threshold": s.threshold, "anchor": s.anchor}
        for s in CATALOG.values()
    ]


def catalog_jsonl() -> str:
    return "".join(json.dumps(row) + "\n" for row in catalog_listing())


@dataclass(frozen=True)
class BoundEvaluation:
    id: BoundId
    n: int
    value: float | int
    threshold_ok: bool
    verdict: bool | None
    margin: float | int | None
    exact: int | None = None
    precise: bool = False  # True when the high-precision recheck decided the verdict

    def as_dict(self) -> dict:
        return {
            "bound": self.id.value,
            "n": self.n,
            "value": self.value,
            "threshold_ok": self.threshold_ok,
            "exact": self.exact,
            "verdict": self.verdict,
            "margin": self.margin,
        }


def _as_t(t) -> Fraction:
    t = DEFAULT_T if t is None else Fraction(str(t)) if isinstance(t, float) else Fraction(t)
    if t <= T_FLOOR:
        raise DomainError(f"t must exceed 48/19, got {t}")
    return t


def exact_value(bound, n: int, store: PrimeStore | None = None, t=None) -> int:
    """Integer-valued bounds: 3n, 4n, ceil(t n), pi(41 p_{3n} / 47)."""
    bid = BoundId(bound)
    if bid is BoundId.laishram_3n:
        return 3 * n
    if bid is BoundId.sondow_4n:
        return 4 * n
    if bid is BoundId.srinivasan_t:
        return math.ceil(_as_t(t) * n)
    if bid is BoundId.sondow_nicholson_noe:
        if store is None:
            raise DependencyError("sondow_nicholson_noe needs a prime store")
        if store.count < 3 * n:
            raise DependencyError(f"store holds {store.count} primes, p_{3 * n} needed")
        return store.pi(41 * store.nth_prime(3 * n) // 47)
    raise ValueError(f"{bid} is not an integer-valued bound")


def bound_value(bound, n, ns=FLOAT):
    """Real-valued bound formula at n (scalar or array, depending on backend)."""
    spec = CATALOG[BoundId(bound)]
    if spec.formula is None:
        raise ValueError(f"{spec.id} is integer-valued; use exact_value")
    if ns is MP:
        with mpmath.workdps(HIGH_PRECISION_DPS):
            return +spec.formula(n, MP)
    if ns is FLOAT and n > 1e300:
        with mpmath.workdps(HIGH_PRECISION_DPS):
            return spec.formula(n, MP)
    return spec.formula(n, ns)


def near_boundary(value, exact) -> bool:
    return abs(value - exact) <= SAFETY_MARGIN * max(1.0, abs(exact))


def decide(bound, n: int, exact: int, value=None) -> tuple[bool, float, bool]:
    """Compare a real bound with pi(R_n), escalating precision near equality.

    Returns (holds, margin, rechecked).
    """
    spec = CATALOG[BoundId(bound)]
    if value is None:
        value = bound_value(spec.id, n)
    rechecked = False
    if near_boundary(float(value), exact):
        with mpmath.workdps(HIGH_PRECISION_DPS):
            value = spec.formula(n, MP)
            holds = spec.holds(value, exact)
            margin = float(spec.margin(value, exact))
        return holds, margin, True
    return spec.holds(value, exact), float(spec.margin(value, exact)), rechecked


def eval_bound(bound, n: int, table=None, store: PrimeStore | None = None, t=None) -> BoundEvaluation:
    spec = CATALOG[BoundId(bound)]
    n = int(n)
    if n < 2:
        raise PreconditionError(f"bounds are evaluated for n >= 2, got {n}")
    threshold_ok = n >= spec.threshold
    exact = None
    if table is not None and n <= table.max_n:
        exact = table.pi_r(n)

    if spec.formula is None:
        value = exact_value(spec.id, n, store, t)
        if exact is None:
            return BoundEvaluation(spec.id, n, value, threshold_ok, None, None)
        verdict = spec.holds(value, exact) if threshold_ok else None
        return BoundEvaluation(spec.id, n, value, threshold_ok, verdict, spec.margin(value, exact), exact)

    value = bound_value(spec.id, n)
    fvalue = float(value)
    if exact is None:
        return BoundEvaluation(spec.id, n, fvalue, threshold_ok, None, None)
    holds, margin, rechecked = decide(spec.id, n, exact, value)
    return BoundEvaluation(
        spec.id, n, fvalue, threshold_ok, holds if threshold_ok else None, margin, exact, rechecked
    )


def bound_values_array(bound, ns_array, store: PrimeStore | None = None, t=None) -> np.ndarray:
    """The bound at every n in ``ns_array`` (float64 or int64)."""
    spec = CATALOG[BoundId(bound)]
    n = np.asarray(ns_array, dtype=np.int64)
    if spec.formula is not None:
        return spec.formula(n, NUMPY)
    if spec.id is BoundId.laishram_3n:
        return 3 * n
    if spec.id is BoundId.sondow_4n:
        return 4 * n
    if spec.id is BoundId.srinivasan_t:
        tt = _as_t(t)
        return -((-tt.numerator * n) // tt.denominator)
    if store is None:
        raise DependencyError("sondow_nicholson_noe needs a prime store")
    if n.size and store.count < 3 * int(n.max()):
        raise DependencyError(f"store holds {store.count} primes, p_{3 * int(n.max())} needed")
    p3n = store.primes[3 * n - 1].astype(np.int64)
    return store.pi_many(41 * p3n // 47)


# --------------------------------------------------------------------------
# machinery for the multiplicative inequality pi(R_mn) <= m pi(R_n)
# --------------------------------------------------------------------------

def w_domain_min(m: int) -> int:
    return max(math.ceil(5225 / m), 1245)


def w_lower(m: int, n: int) -> float:
    """Explicit lower estimate for W_m(n); positive means pi(R_mn) <= m pi(R_n)."""
    _require(m >= 2, f"w_lower needs m >= 2, got {m}")
    _require(n >= w_domain_min(m), f"w_lower needs n >= {w_domain_min(m)} for m={m}, got {n}")
    return _w_lower(m, n, FLOAT)


def _w_lower(m, n, ns):
    l2 = ns.log(ns.c("2"))
    lm = ns.log(ns.num(m))
    ln = ns.log(ns.num(n))
    lln = ns.log(ln)
    lmn = ns.log(ns.num(m) * ns.num(n))
    phi = _phi(n, ns)
    c = ns.c("0.565")
    return (
        lm * (l2 + l2 / ln - phi / ln**2 - phi / ln**3)
        - phi / ln
        - phi * (lln - l2) / ln**2
        + ((lm + ns.c("0.5")) * l2 - c) / lmn
        + (lm * l2 - c) * lln / lmn**2
    )


def w_exact(m: int, n: int) -> float:
    """W_m(n) before any of the simplifying estimates."""
    ns = FLOAT
    l2 = math.log(2)
    ln, lmn = math.log(n), math.log(m * n)
    lln, llmn = math.log(ln), math.log(lmn)
    return (
        l2 * math.log(m)
        + l2 * (llmn - lln)
        + l2 * (lmn / ln - ln / lmn)
        + l2 * (llmn / ln - lln / lmn)
        - _phi(n, ns) * _lam(m * n, ns) / ln**2
        - 0.565 * _lam(n, ns) / lmn**2
    )


@dataclass(frozen=True)
class Lemma51Params:
    n: int
    idx: int
    epsilon: Fraction
    lam: Fraction
    S: mpmath.mpf
    T: mpmath.mpf
    X9: int
    pi_X9: int
    pi_X9_exact: bool
    M: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "idx": self.idx,
            "epsilon": float(self.epsilon),
            "lambda": float(self.lam),
            "S": mpmath.nstr(self.S, 20),
            "T": mpmath.nstr(self.T, 20),
            "X9": self.X9,
            "pi_X9": self.pi_X9,
            "pi_X9_tag": "exact" if self.pi_X9_exact else "upper",
            "M": self.M,
        }


def _mp_ceil(v) -> int:
    return int(mpmath.ceil(v))


def lemma51_params(n: int, idx: int, store: PrimeStore | None = None, dps: int = 60) -> Lemma51Params:
    """Derived quantities giving M with pi(R_mn) <= m pi(R_n) for every m >= M."""
    n, idx = int(n), int(idx)
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if idx <= 2 * n:
        raise PreconditionError(f"pi(R_n)={idx} must exceed 2n={2 * n}")
    eps = Fraction(idx, 2 * n) - 1
    lam = eps / 2
    with mpmath.workdps(dps):
        e = mpmath.mpf(eps.numerator) / eps.denominator
        la = e / 2
        l2 = mpmath.log(2)
        k = (1 + e) * l2 / e
        inner = (
            mpmath.mpf("1.17")
            + 2 * (1 + e) / e * (mpmath.mpf("0.17") + l2 / mpmath.log(2 * mpmath.mpf("5.43")))
            + (mpmath.mpf("0.5") + k) ** 2
        )
        S = mpmath.exp(mpmath.sqrt(inner) + mpmath.mpf("0.5") + k)
        T = mpmath.exp(mpmath.mpf("0.5") + mpmath.sqrt(mpmath.mpf("1.17") + mpmath.mpf("0.17") / la + mpmath.mpf("0.25")))
        X9 = max(PI_LOWER_THRESHOLD, _mp_ceil(2 * S), _mp_ceil(T))
        if store is not None and X9 <= store.limit:
            pi_x9, exact = store.pi(X9), True
        else:
            pi_x9, exact = _mp_ceil(_pi_upper(X9, MP)), False
    # (1 + pi(X9)) / (2(1 + eps)) = (1 + pi(X9)) n / idx
    M = -((-(1 + pi_x9) * n) // idx)
    return Lemma51Params(n, idx, eps, lam, S, T, X9, pi_x9, exact, M)


# --------------------------------------------------------------------------
# helper facts used by the analytic arguments, exposed for sampling checks
# --------------------------------------------------------------------------

def log1p_bracket(t: float) -> tuple[float, float, float]:
    """(t - t^2/2, log(1+t), t)."""
    return t - t * t / 2, math.log1p(t), t


def phi_margin(x: float) -> float:
    """log 2 - phi(x)/log x - phi(x)/log^2 x."""
    lx = math.log(x)
    phi = _phi(x, FLOAT)
    return math.log(2) - phi / lx - phi / lx**2


def loglog_ratio(t: float) -> float:
    """(log log t - 2) / log t."""
    lt = math.log(t)
    return (math.log(lt) - 2) / lt


def main_term(n: float) -> float:
    """Leading asymptotic expansion of pi(R_n) up to the log2 (loglog n)^2 / log^3 n term."""
    return _cor3_4(n, FLOAT)
