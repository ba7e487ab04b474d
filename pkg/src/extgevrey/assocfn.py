"""The function T_h(k) = sup_p ln_+ (h^{p^sigma} k^p / M_p) associated to an
extended Gevrey sequence, computed two independent ways (direct supremum
and counting-function sum), plus the Lambert-W sandwich bounds on it.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ._kernels import _assoc_sup_scalar, assoc_sup_grid, counting_sum_grid
from .errors import DomainError, UsageError
from .lambertw import lambert_w0, lambert_w0_grid
from .sequences import SequenceParams, extended_gevrey

__all__ = [
    "AssocFnResult",
    "assoc_fn_sup",
    "assoc_fn_sup_grid",
    "assoc_fn_counting",
    "assoc_fn_counting_grid",
    "counting_fn_floor",
    "counting_fn_direct",
    "rfactor",
    "envelope",
    "sandwich_bounds_check",
    "h_shift_check",
    "SandwichReport",
    "HShiftReport",
]


@dataclass(frozen=True)
class AssocFnResult:
    value: float
    argmax_p: int
    method: str


def _validate_hk(h, k):
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")


def assoc_fn_sup(params: SequenceParams, h: float, k: float) -> AssocFnResult:
    """T_h(k) by direct maximization over integer p >= 0."""
    _validate_hk(h, k)
    value, p = _assoc_sup_scalar(math.log(k), math.log(h), params.tau, params.sigma)
    return AssocFnResult(float(value), int(p), "supremum")


def assoc_fn_sup_grid(params: SequenceParams, h: float, k_grid) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k_grid, dtype=np.float64)
    if not h > 0 or np.any(k <= 0):
        raise DomainError("assoc_fn_sup_grid needs h > 0 and k > 0")
    return assoc_sup_grid(np.log(k), math.log(h), params.tau, params.sigma)


def assoc_fn_counting(params: SequenceParams, k: float) -> AssocFnResult:
    """T(k) at h = 1 as the exact finite sum over quotient jump points."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    values, counts = counting_sum_grid(np.array([math.log(k)]), params.tau, params.sigma)
    return AssocFnResult(float(values[0]), int(counts[0]), "counting_sum")


def assoc_fn_counting_grid(params: SequenceParams, k_grid) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k_grid, dtype=np.float64)
    if np.any(k <= 0):
        raise DomainError("assoc_fn_counting_grid needs k > 0")
    return counting_sum_grid(np.log(k), params.tau, params.sigma)


# ---------------------------------------------------------------------------
# counting function for the shifted quotient variant
# ---------------------------------------------------------------------------

def counting_fn_floor(params: SequenceParams, C: float, lam: float) -> int:
    """Closed form #{p >= 1 : C^{p^(s-1)} p^{tau p^(s-1)} <= lambda} via W."""
    if not C > 0:
        raise DomainError(f"C must be positive, got {C}")
    if lam < 1:
        raise DomainError(f"lambda must be >= 1, got {lam}")
    tau, s = params.tau, params.sigma
    arg = C ** ((s - 1.0) / tau) * (s - 1.0) / tau * math.log(lam)
    val = C ** (-1.0 / tau) * math.exp(lambert_w0(arg) / (s - 1.0))
    # nudge guards against a just-below-integer float value at jump points
    return int(math.floor(val * (1.0 + 1e-12) + 1e-12))


def counting_fn_direct(params: SequenceParams, C: float, lam: float) -> int:
    """Brute-force enumeration of the same count."""
    if not C > 0:
        raise DomainError(f"C must be positive, got {C}")
    if lam < 1:
        raise DomainError(f"lambda must be >= 1, got {lam}")
    tau, s = params.tau, params.sigma
    lnC, lnlam = math.log(C), math.log(lam)
    n = 0
    p = 1
    while True:
        g = p ** (s - 1.0) * (lnC + tau * math.log(p))
        if g > lnlam:
            break
        n += 1
        p += 1
    return n


# ---------------------------------------------------------------------------
# sandwich bounds
# ---------------------------------------------------------------------------

def rfactor(params: SequenceParams, h: float, k: float) -> float:
    """h^(-(s-1)/tau) * e^((s-1)/s) * ((s-1)/(tau s)) * ln(e + k)."""
    _validate_hk(h, k)
    tau, s = params.tau, params.sigma
    return (h ** (-(s - 1.0) / tau)
            * math.exp((s - 1.0) / s)
            * (s - 1.0) / (tau * s)
            * math.log(math.e + k))


def envelope(params: SequenceParams, h: float, k_grid) -> np.ndarray:
    """E(k) = W(R(h,k))^(-1/(s-1)) * ln_+^(s/(s-1)) k."""
    k = np.asarray(k_grid, dtype=np.float64)
    tau, s = params.tau, params.sigma
    r = (h ** (-(s - 1.0) / tau) * math.exp((s - 1.0) / s)
         * (s - 1.0) / (tau * s) * np.log(math.e + k))
    w = lambert_w0_grid(r)
    return w ** (-1.0 / (s - 1.0)) * np.maximum(np.log(k), 0.0) ** (s / (s - 1.0))


@dataclass(frozen=True)
class SandwichReport:
    params: SequenceParams
    h: float
    k: np.ndarray
    T: np.ndarray
    E: np.ndarray
    A1: float
    B1: float
    A2: float
    B2: float
    ratio_lo: float
    ratio_hi: float
    holds: bool

    def fitted(self):
        return {"A1": self.A1, "B1": self.B1, "A2": self.A2, "B2": self.B2,
                "ratio_lo": self.ratio_lo, "ratio_hi": self.ratio_hi}


def sandwich_bounds_check(params: SequenceParams, h: float, k_grid) -> SandwichReport:
    """Fit extremal affine constants for the two-sided envelope bound and
    record the T/E ratio band on the top decade of the grid."""
    k = np.asarray(k_grid, dtype=np.float64)
    if k.size < 8 or k.max() / max(k.min(), 1e-300) < 1e6:
        raise UsageError("k grid must span at least 6 decades")
    T, _ = assoc_fn_sup_grid(params, h, k)
    E = envelope(params, h, k)
    pos = E > 0
    if not pos.any():
        raise UsageError("degenerate grid: envelope vanishes everywhere")
    kp, Tp, Ep = k[pos], T[pos], E[pos]
    top_half = kp >= math.sqrt(kp.min() * kp.max())
    ratios = Tp[top_half] / Ep[top_half]
    A2 = float(np.max(ratios))            # upper slope
    A1 = float(np.min(ratios))            # lower slope
    B2 = float(np.max(Tp - A2 * Ep))      # upper offset
    B1 = float(np.min(Tp - A1 * Ep))      # lower offset
    top_dec = kp >= kp.max() / 10.0
    band = Tp[top_dec] / Ep[top_dec]
    ratio_lo, ratio_hi = float(np.min(band)), float(np.max(band))
    slack = 1e-9 * np.maximum(1.0, np.abs(Tp))
    holds = (ratio_lo > 0
             and bool(np.all(A1 * Ep + B1 <= Tp + slack))
             and bool(np.all(Tp <= A2 * Ep + B2 + slack)))
    return SandwichReport(params, h, k, T, E, A1, B1, A2, B2, ratio_lo, ratio_hi, holds)


@dataclass(frozen=True)
class HShiftReport:
    A: float
    B: float
    holds: bool
    max_violation: float


def h_shift_check(params: SequenceParams, h: float, tau1: float, tau2: float,
                  k_grid) -> HShiftReport:
    """Additive offsets A, B with T(tau2) + A <= T_h(tau) <= T(tau1) + B
    for tau1 < tau < tau2, fitted on the grid and verified pointwise."""
    if not (0 < tau1 <= params.tau <= tau2):
        raise UsageError("need tau1 <= tau <= tau2")
    k = np.asarray(k_grid, dtype=np.float64)
    T_mid, _ = assoc_fn_sup_grid(params, h, k)
    T_lo, _ = assoc_fn_sup_grid(SequenceParams(tau2, params.sigma), 1.0, k)
    T_hi, _ = assoc_fn_sup_grid(SequenceParams(tau1, params.sigma), 1.0, k)
    A = float(np.min(T_mid - T_lo))
    B = float(np.max(T_mid - T_hi))
    viol = np.maximum(T_lo + A - T_mid, T_mid - T_hi - B)
    return HShiftReport(A, B, bool(np.all(viol <= 1e-9)), float(np.max(viol)))
