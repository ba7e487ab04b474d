"""Log-space evaluation of weight sequences p -> M_p and numerical
verification of the growth/comparison conditions they satisfy.

M_p itself is never materialized: p^(tau p^sigma) leaves double range
already around p = 15, so every quantity here is a log value.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, RangeError, UsageError

__all__ = [
    "SequenceParams",
    "LogWeightSequence",
    "extended_gevrey",
    "gevrey",
    "conjugate_generated",
    "constant_quotient",
    "ConditionReport",
    "log_M",
    "log_m",
    "check_condition",
    "check_liminf_condition",
    "lemma_quotient_bounds",
    "default_p_grid",
    "stable_sup",
]

_P_LIMIT = 10 ** 9


@dataclass(frozen=True)
class SequenceParams:
    """Parameter pair (tau, sigma) of one extended Gevrey sequence."""

    tau: float
    sigma: float

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if not self.sigma > 1:
            raise DomainError(f"sigma must exceed 1, got {self.sigma}")


@dataclass(frozen=True)
class LogWeightSequence:
    """An evaluable sequence p -> log M_p with log M_0 = 0."""

    kind: str
    fn: Callable[[np.ndarray], np.ndarray]
    params: Optional[SequenceParams] = None

    def log_M(self, p):
        scalar = np.isscalar(p)
        arr = np.asarray(p)
        if not np.issubdtype(arr.dtype, np.integer) and not np.all(arr == np.floor(arr)):
            raise RangeError("sequence index p must be an integer")
        arr = arr.astype(np.float64)
        if arr.size and (arr.min() < 0 or arr.max() > _P_LIMIT):
            raise RangeError(f"p must lie in [0, {_P_LIMIT}]")
        out = self.fn(arr)
        return float(out) if scalar else out

    def log_m(self, p):
        scalar = np.isscalar(p)
        arr = np.asarray(p)
        if arr.size and arr.min() < 1:
            raise RangeError("quotients m_p are defined for p >= 1")
        out = self.log_M(arr) - self.log_M(arr - 1)
        return float(out) if scalar else out


def _ext_log_M(tau, sigma):
    def fn(p):
        return np.where(p > 1, tau * p ** sigma * np.log(np.maximum(p, 1.0)), 0.0)

    return fn


def extended_gevrey(params: SequenceParams) -> LogWeightSequence:
    """log M_p = tau * p^sigma * ln p."""
    return LogWeightSequence("extended_gevrey", _ext_log_M(params.tau, params.sigma), params)


def gevrey(t: float) -> LogWeightSequence:
    """Classical Gevrey sequence p!^t; admitted for t > 1."""
    if not t > 1:
        raise DomainError(f"gevrey index must exceed 1, got {t}")
    return LogWeightSequence("gevrey", lambda p: t * gammaln(p + 1.0))


def conjugate_generated(phi_star: Callable[[np.ndarray], np.ndarray], H: float) -> LogWeightSequence:
    """log M_p = phi*(H p) / H for a Young conjugate phi*."""
    if not H > 0:
        raise DomainError(f"H must be positive, got {H}")
    return LogWeightSequence("conjugate_generated", lambda p: np.asarray(phi_star(H * p)) / H)


def constant_quotient() -> LogWeightSequence:
    """Degenerate mock M_p = 1; its quotient ratio never exceeds 1."""
    return LogWeightSequence("constant_quotient", lambda p: np.zeros_like(p))


def log_M(seq: LogWeightSequence, p):
    return seq.log_M(p)


def log_m(seq: LogWeightSequence, p):
    return seq.log_m(p)


# ---------------------------------------------------------------------------
# grids and the sup-stabilization criterion
# ---------------------------------------------------------------------------

def default_p_grid(p_max: int, dense_to: int = 128, per_decade: int = 100) -> np.ndarray:
    """Every integer up to `dense_to`, then ~per_decade log-spaced integers."""
    if p_max <= dense_to:
        return np.arange(1, p_max + 1, dtype=np.int64)
    dense = np.arange(1, dense_to + 1, dtype=np.int64)
    decades = math.log10(p_max / dense_to)
    n = max(2, int(per_decade * decades))
    sparse = np.unique(np.round(np.logspace(math.log10(dense_to), math.log10(p_max), n)).astype(np.int64))
    return np.unique(np.concatenate([dense, sparse]))


def stable_sup(p: np.ndarray, values: np.ndarray) -> Tuple[float, int, bool]:
    """Sup over the range plus a stability verdict.

    Stable means the sup is already attained before the last decade of p,
    or the last decade adds less than 1% on top of it.
    """
    p = np.asarray(p)
    values = np.asarray(values, dtype=np.float64)
    i = int(np.argmax(values))
    sup = float(values[i])
    cut = p.max() / 10
    early = values[p <= cut]
    if early.size == 0:
        return sup, int(p[i]), False
    prev = float(np.max(early))
    stable = p[i] <= cut or (sup - prev) <= 0.01 * max(1.0, abs(sup))
    return sup, int(p[i]), stable


# ---------------------------------------------------------------------------
# condition reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    condition: str
    p_range: Tuple[int, int]
    holds: bool
    fitted_constant: Optional[float] = None
    witness: Optional[int] = None

    def to_dict(self):
        return {
            "condition": self.condition,
            "p_range": list(self.p_range),
            "holds": self.holds,
            "fitted_constant": self.fitted_constant,
            "witness": self.witness,
        }


def _require_ext(params):
    if params is None:
        raise UsageError("this condition needs extended Gevrey parameters")
    return extended_gevrey(params)


def _check_m1(seq, p_max):
    p = np.arange(1, p_max + 1, dtype=np.float64)
    f = seq.log_M(np.arange(0, p_max + 2))
    mid, lo, hi = f[1:-1], f[:-2], f[2:]
    slack = 1e-9 * np.maximum(1.0, np.abs(mid))
    bad = 2.0 * mid > lo + hi + slack
    witness = int(p[bad][0]) if bad.any() else None
    return ConditionReport("M.1", (1, p_max), not bad.any(), None, witness)


def _check_m2_prime(params, p_max):
    seq = _require_ext(params)
    p = default_p_grid(p_max)
    v = (seq.log_M(p + 1) - seq.log_M(p)) / p.astype(np.float64) ** params.sigma
    sup, arg, stable = stable_sup(p, v)
    return ConditionReport("~M.2'", (1, p_max), stable, sup, None if stable else arg)


def _check_m2_tilde(params, p_max):
    seq = _require_ext(params)
    big = extended_gevrey(SequenceParams(2.0 ** (params.sigma - 1.0) * params.tau, params.sigma))
    p = default_p_grid(p_max, per_decade=30)
    pf = p.astype(np.float64)
    fsum = seq.log_M(p[:, None] + p[None, :])
    fbig = big.log_M(p)
    denom = pf[:, None] ** params.sigma + pf[None, :] ** params.sigma
    v = (fsum - fbig[:, None] - fbig[None, :]) / denom
    pmax_pair = np.maximum(p[:, None], p[None, :])
    sup, arg, stable = stable_sup(pmax_pair.ravel(), v.ravel())
    return ConditionReport("~M.2", (1, p_max), stable, sup, None if stable else arg)


def _check_m2_classical(params, p_max):
    # full Komatsu-style stability: M_{2p} <= C H^{2p} M_p^2 needs
    # (log M_{2p} - 2 log M_p) / (2p) to stay bounded; here it diverges.
    seq = _require_ext(params)
    p = np.arange(2, min(p_max, 100000) // 2 + 1, dtype=np.int64)
    r = (seq.log_M(2 * p) - 2.0 * seq.log_M(p)) / (2.0 * p)
    sup, arg, stable = stable_sup(p, r)
    grew = r > 10.0 * r[0]
    witness = int(p[grew][0]) if grew.any() else arg
    holds = stable and not grew.any()
    return ConditionReport("M.2-classical", (2, int(p[-1])), holds, sup, None if holds else witness)


def _check_m3_prime(params, p_max):
    seq = _require_ext(params)
    p = np.arange(1, p_max + 1)
    logm = seq.log_m(p)
    partial = float(np.sum(np.exp(-logm)))
    # quotient increments grow, so the term ratio only shrinks past p_max
    ratio = math.exp(-(logm[-1] - logm[-2]))
    tail = math.exp(-float(logm[-1])) * ratio / max(1e-300, 1.0 - ratio) if ratio < 1 else math.inf
    holds = tail < 1e-15 * partial
    return ConditionReport("M.3'", (1, p_max), holds, partial, None)


_DEFAULT_H = (0.5, 1.0, 2.0)


def _check_m4(params, params2, p_max, h_values):
    if params2 is None or params2.sigma != params.sigma or not params.tau < params2.tau:
        raise UsageError("~M.4 compares tau1 < tau2 at equal sigma")
    s1, s2 = _require_ext(params), _require_ext(params2)
    p = default_p_grid(p_max)
    pf = p.astype(np.float64)
    diff = s1.log_M(p) - s2.log_M(p)
    worst = -math.inf
    for h in h_values:
        v = diff - pf ** params.sigma * math.log(h)
        sup, arg, stable = stable_sup(p, v)
        worst = max(worst, sup)
        if not stable:
            return ConditionReport("~M.4", (1, p_max), False, sup, arg)
    return ConditionReport("~M.4", (1, p_max), True, worst, None)


def _check_m4_prime(params, p_max, h_values):
    seq = _require_ext(params)
    p = default_p_grid(p_max)
    pf = p.astype(np.float64)
    f = seq.log_M(p)
    worst = math.inf
    for h in h_values:
        v = -(pf ** params.sigma * math.log(h) + f)   # -log(h^{p^sigma} M_p)
        sup, arg, stable = stable_sup(p, v)
        worst = min(worst, -sup)
        if not stable:
            return ConditionReport("~M.4'", (1, p_max), False, -sup, arg)
    return ConditionReport("~M.4'", (1, p_max), True, worst, None)


def _check_m5(params, params2, p_max, h_values):
    if params2 is None or not params.sigma < params2.sigma:
        raise UsageError("~M.5 compares sigma1 < sigma2")
    s1, s2 = _require_ext(params), _require_ext(params2)
    p = default_p_grid(p_max)
    pf = p.astype(np.float64)
    diff = s1.log_M(p) - s2.log_M(p)
    worst = -math.inf
    for h in h_values:
        v = diff - pf ** params2.sigma * math.log(h)
        sup, arg, stable = stable_sup(p, v)
        worst = max(worst, sup)
        if not stable:
            return ConditionReport("~M.5", (1, p_max), False, sup, arg)
    return ConditionReport("~M.5", (1, p_max), True, worst, None)


def _check_m0(params, p_max):
    seq = _require_ext(params)
    p = default_p_grid(p_max)
    pf = p.astype(np.float64)
    v = pf * np.log(pf) - seq.log_M(p)     # -log(M_p / p^p)
    sup, arg, stable = stable_sup(p, v)
    return ConditionReport("M.0", (1, p_max), stable, -sup, None if stable else arg)


def check_condition(condition: str, params: SequenceParams, p_max: int = 10_000, *,
                    params2: Optional[SequenceParams] = None,
                    h_values=_DEFAULT_H) -> ConditionReport:
    """Verify one sequence condition on [1, p_max].

    For existential "there is a C" conditions, holds=true means the
    finite sup defining log C stabilizes (see `stable_sup`); the fitted
    constant is that sup without any optimality claim.
    """
    if p_max < 3:
        raise UsageError("p_max must be at least 3")
    key = condition.strip().lower().replace("(", "").replace(")", "").replace("~", "").replace(".", "").replace("'", "p").replace("-", "_")
    if key == "m1":
        return _check_m1(_require_ext(params), p_max)
    if key == "m2p":
        return _check_m2_prime(params, p_max)
    if key == "m2":
        return _check_m2_tilde(params, p_max)
    if key == "m2_classical":
        return _check_m2_classical(params, p_max)
    if key == "m3p":
        return _check_m3_prime(params, p_max)
    if key == "m4":
        return _check_m4(params, params2, p_max, h_values)
    if key == "m4p":
        return _check_m4_prime(params, p_max, h_values)
    if key == "m5":
        return _check_m5(params, params2, p_max, h_values)
    if key == "m0":
        return _check_m0(params, p_max)
    raise UsageError(f"unknown condition identifier: {condition!r}")


def check_liminf_condition(seq: LogWeightSequence, Q: int, p_max: int = 10_000) -> ConditionReport:
    """Tail positivity of log m_{Qp} - log m_p (quotient-ratio condition)."""
    if Q < 2:
        raise UsageError("Q must be at least 2")
    if p_max < 10:
        raise UsageError("p_max must be at least 10")
    p = default_p_grid(p_max)
    p = p[p >= 2]
    r = seq.log_m(Q * p) - seq.log_m(p)
    tail = r[p > p.max() / 10]
    tail_min = float(np.min(tail))
    holds = tail_min > 0.0
    bad = r <= 0.0
    witness = int(p[bad][0]) if (not holds and bad.any()) else None
    return ConditionReport(f"liminf-Q{Q}", (2, int(p.max())), holds, tail_min, witness)


@dataclass(frozen=True)
class LemmaBoundsReport:
    params: SequenceParams
    p_range: Tuple[int, int]
    passed: bool
    max_lower_violation: float
    max_upper_violation: float
    witness: Optional[int] = None


def lemma_quotient_bounds(params: SequenceParams, p_min: int = 2, p_max: int = 10_000) -> LemmaBoundsReport:
    """Two-sided mean-value bounds on log m_p for the extended sequence:

        (tau p^(s-1) / 2^(s-1)) ln(e p^s / 2^s) <= log m_p <= tau p^(s-1) ln(e p^s)
    """
    if p_min < 2:
        raise RangeError("the quotient bounds need p >= 2")
    tau, s = params.tau, params.sigma
    seq = extended_gevrey(params)
    p = np.arange(p_min, p_max + 1, dtype=np.int64)
    pf = p.astype(np.float64)
    logm = seq.log_m(p)
    lower = tau * pf ** (s - 1.0) / 2.0 ** (s - 1.0) * (1.0 + s * np.log(pf) - s * math.log(2.0))
    upper = tau * pf ** (s - 1.0) * (1.0 + s * np.log(pf))
    slack = 1e-11 * np.maximum(1.0, np.abs(logm))
    lo_viol = lower - logm
    up_viol = logm - upper
    bad = (lo_viol > slack) | (up_viol > slack)
    witness = int(p[bad][0]) if bad.any() else None
    return LemmaBoundsReport(params, (p_min, p_max), not bad.any(),
                             float(np.max(lo_viol)), float(np.max(up_viol)), witness)
