"""Weight functions, their log-compositions and numerically computed
Young conjugates, the axiom classifier, and the closed-form check of the
Lambert-type integral that drives the main growth estimate.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from .errors import DivergenceError, DomainError, NumericalError
from .lambertw import lambert_w0, lambert_w0_grid
from .sequences import SequenceParams, stable_sup

__all__ = [
    "phi_sigma",
    "WeightFn",
    "bmt_log_power",
    "bmt_quotient",
    "power_weight",
    "corollary_weight",
    "phi_weight",
    "lambert_weight",
    "custom_weight",
    "log_composition",
    "young_conjugate",
    "ConjugateTable",
    "conjugate_table",
    "biconjugate",
    "AxiomReport",
    "check_weight_axioms",
    "IntegralCheckReport",
    "integral_closed_form_check",
]


def phi_sigma(sigma: float, t):
    """phi_s(t) = t^(s/(s-1)) / W(t)^(1/(s-1)), continuously 0 at t = 0.

    Evaluated as t * exp(W(t)/(s-1)), which is stable as t -> 0 because
    t/W(t) = e^(W(t)) -> 1.
    """
    if not sigma > 1:
        raise DomainError(f"sigma must exceed 1, got {sigma}")
    if np.isscalar(t):
        if t < 0:
            raise DomainError(f"phi_sigma needs t >= 0, got {t}")
        return t * math.exp(lambert_w0(t) / (sigma - 1.0))
    t = np.asarray(t, dtype=np.float64)
    if np.any(t < 0):
        raise DomainError("phi_sigma needs t >= 0")
    return t * np.exp(lambert_w0_grid(t) / (sigma - 1.0))


# ---------------------------------------------------------------------------
# weight-function catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFn:
    """An even weight candidate t -> omega(t), vectorized over |t|."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, t):
        a = np.abs(np.asarray(t, dtype=np.float64))
        out = np.asarray(self.fn(np.atleast_1d(a)))
        return float(out.reshape(-1)[0]) if a.ndim == 0 else out.reshape(a.shape)


def bmt_log_power(s: float) -> WeightFn:
    if not s > 1:
        raise DomainError("bmt_log_power needs s > 1")
    return WeightFn(f"log^{s}", lambda a: np.maximum(np.log(np.maximum(a, 1e-300)), 0.0) ** s)


def bmt_quotient(s: float) -> WeightFn:
    if not s > 1:
        raise DomainError("bmt_quotient needs s > 1")
    return WeightFn(f"t/log^{s - 1}", lambda a: a / np.log(math.e + a) ** (s - 1.0))


def power_weight(s: float) -> WeightFn:
    if not s > 0:
        raise DomainError("power_weight needs s > 0")
    return WeightFn(f"|t|^{s}", lambda a: a ** s)


def corollary_weight(s: float) -> WeightFn:
    """ln_+^s|t| / ln^(s-1)(ln(e+|t|)); zero on |t| <= 1."""
    if not s > 1:
        raise DomainError("corollary_weight needs s > 1")

    def fn(a):
        num = np.maximum(np.log(np.maximum(a, 1e-300)), 0.0) ** s
        den = np.log(np.log(math.e + a)) ** (s - 1.0)
        return np.where(a > 1.0, num / np.maximum(den, 1e-300), 0.0)

    return WeightFn(f"corollary[{s}]", fn)


def phi_weight(sigma: float) -> WeightFn:
    """omega(k) = phi_sigma(ln_+ |k|)."""
    if not sigma > 1:
        raise DomainError("phi_weight needs sigma > 1")
    return WeightFn(
        f"phi_sigma[{sigma}]",
        lambda a: phi_sigma(sigma, np.maximum(np.log(np.maximum(a, 1e-300)), 0.0)),
    )


def lambert_weight() -> WeightFn:
    return WeightFn("W", lambda a: lambert_w0_grid(a))


def custom_weight(name: str, fn: Callable[[np.ndarray], np.ndarray]) -> WeightFn:
    return WeightFn(name, fn)


def log_composition(w: WeightFn) -> Callable[[float], float]:
    """phi(t) = omega(e^t) as a scalar callable on t >= 0."""

    def phi(t):
        return float(w(math.exp(t)))

    return phi


# ---------------------------------------------------------------------------
# Young conjugate by golden-section maximization
# ---------------------------------------------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo, hi, tol):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    # the iteration cap guards against stalling once the interval width
    # reaches the float spacing at |b|, where c and d stop moving
    for _ in range(200):
        if b - a <= tol or not (a < c <= d < b):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def young_conjugate(phi: Callable[[float], float], y: float, *,
                    bracket_hint: Optional[float] = None,
                    t_cap: float = 1e12, tol: float = 1e-10) -> Tuple[float, float]:
    """phi*(y) = sup_{t>0} (y t - phi(t)); returns (value, argmax t).

    The objective is concave for convex phi; the bracket doubles until
    the objective stops increasing, then golden section finishes.
    """
    if y < 0:
        raise DomainError(f"young_conjugate needs y >= 0, got {y}")

    def f(t):
        return y * t - phi(t)

    b = max(1.0, 2.0 * bracket_hint) if bracket_hint else 1.0
    while f(b) > f(0.5 * b):
        b *= 2.0
        if b > t_cap:
            raise DivergenceError(
                f"objective still increasing at t = {t_cap:g}; phi*({y}) diverges",
                cap=t_cap)
    t_star, val = _golden_max(f, 0.0, b, tol * max(1.0, b * 1e-6))
    val = max(val, 0.0)       # t -> 0+ always yields 0
    return val, t_star


@dataclass
class ConjugateTable:
    """Monotone table (y, argmax t, phi*(y)) built with warm-started brackets."""

    y: np.ndarray
    t_star: np.ndarray
    phi_star: np.ndarray
    phi: Callable[[float], float] = field(repr=False, default=None)

    def __call__(self, y):
        scalar = np.isscalar(y)
        ys = np.atleast_1d(np.asarray(y, dtype=np.float64))
        out = np.array([self._one(v) for v in ys])
        return float(out[0]) if scalar else out

    def _one(self, y):
        i = np.searchsorted(self.y, y)
        if i < self.y.size and self.y[i] == y:
            return float(self.phi_star[i])
        hint = float(self.t_star[min(i, self.t_star.size - 1)]) or None
        return young_conjugate(self.phi, y, bracket_hint=hint)[0]

    def rows(self):
        return zip(self.y, self.t_star, self.phi_star)


def conjugate_table(phi: Callable[[float], float], y_values) -> ConjugateTable:
    ys = np.sort(np.asarray(y_values, dtype=np.float64))
    t_star = np.empty_like(ys)
    phi_star = np.empty_like(ys)
    hint = None
    for i, y in enumerate(ys):
        phi_star[i], t_star[i] = young_conjugate(phi, float(y), bracket_hint=hint)
        hint = max(t_star[i], 1e-6)
    return ConjugateTable(ys, t_star, phi_star, phi)


def biconjugate(phi: Callable[[float], float], t: float, *,
                y_cap: float = 1e12, hint: Optional[float] = None) -> float:
    """phi**(t) = sup_{y>0} (t y - phi*(y)) with phi* evaluated numerically."""
    if t < 0:
        raise DomainError("biconjugate needs t >= 0")
    t_hint = [hint]

    def f(y):
        val, ts = young_conjugate(phi, y, bracket_hint=t_hint[0])
        t_hint[0] = max(ts, 1e-6)
        return t * y - val

    b = 1.0
    while f(b) > f(0.5 * b):
        b *= 2.0
        if b > y_cap:
            raise DivergenceError(f"biconjugate diverges at t = {t}", cap=y_cap)
    _, val = _golden_max(f, 0.0, b, 1e-9 * max(1.0, b * 1e-3))
    return max(val, 0.0)


# ---------------------------------------------------------------------------
# weight-function axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    name: str
    alpha: bool
    beta: bool
    gamma: bool
    delta: bool
    details: Dict[str, float]

    @property
    def passed(self):
        return self.alpha and self.beta and self.gamma and self.delta

    def to_dict(self):
        return {"weight": self.name, "alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma, "delta": self.delta, "passed": self.passed,
                "details": self.details}


def default_axiom_grid():
    return np.logspace(2, 14, 64 * 12)


def check_weight_axioms(w: WeightFn, grid=None) -> AxiomReport:
    """Classify omega against the four weight-function axioms.

    Doubling (alpha) and linear-growth (beta) are sup-stabilization
    checks on the top half of the grid; the log-domination axiom (gamma)
    requires the top-decade max of ln t / omega(t) to drop below half of
    the first-half max (a slowly decaying ratio needs a wide grid, hence
    the 12-decade default); convexity (delta) checks second divided
    differences of omega(e^t).
    """
    t = np.sort(np.asarray(grid, dtype=np.float64)) if grid is not None else default_axiom_grid()
    if t.max() / t.min() < 1e8:
        raise DomainError("axiom grid must span at least 8 decades")
    wt = w(t)
    top = t >= math.sqrt(t.min() * t.max())
    tt, wt_top = t[top], wt[top]

    ratio_a = w(2.0 * tt) / wt_top
    sup_a, _, stable_a = stable_sup(tt, ratio_a)

    ratio_b = wt_top / tt
    sup_b, _, stable_b = stable_sup(tt, ratio_b)

    g = np.log(t) / np.maximum(wt, 1e-300)
    first_half = ~top
    top_dec = t >= t.max() / 10.0
    gamma_ok = bool(np.max(g[top_dec]) < 0.5 * np.max(g[first_half]))

    u = np.linspace(math.log(t.min()), math.log(t.max()), 1200)
    ph = w(np.exp(u))
    d2 = ph[2:] - 2.0 * ph[1:-1] + ph[:-2]
    tol = 1e-8 * np.maximum(1.0, np.abs(ph[1:-1]))
    delta_ok = bool(np.all(d2 >= -tol))
    defect = float(np.min(d2 / np.maximum(1.0, np.abs(ph[1:-1]))))

    return AxiomReport(w.name, stable_a, stable_b, gamma_ok, delta_ok,
                       {"alpha_sup": sup_a, "beta_sup": sup_b,
                        "gamma_top": float(np.max(g[top_dec])),
                        "gamma_head": float(np.max(g[first_half])),
                        "delta_defect": defect})


# ---------------------------------------------------------------------------
# closed form of the Lambert-type integral
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegralCheckReport:
    params: SequenceParams
    C: float
    k: np.ndarray
    quadrature: np.ndarray
    closed_form: np.ndarray
    rel_err: np.ndarray
    passed: bool


def _closed_antiderivative(sigma: float, t: float) -> float:
    wv = lambert_w0(t)
    return (sigma - 1.0) / sigma * math.exp(sigma * wv / (sigma - 1.0)) * (wv + 1.0 / sigma)


def integral_closed_form_check(params: SequenceParams, C: float, k_grid,
                               rel_tol: float = 1e-6) -> IntegralCheckReport:
    """Quadrature of the shifted-count integral versus its closed form.

    The integral is C^(-1/tau) * int_1^k exp(W(c ln l)/(s-1)) dl/l with
    c = C^((s-1)/tau)(s-1)/tau; quadrature runs in u = ln l, the closed
    form comes from the W-substitution plus integration by parts.
    """
    if not C > 0:
        raise DomainError("C must be positive")
    tau, s = params.tau, params.sigma
    k = np.asarray(k_grid, dtype=np.float64)
    if np.any(k <= 1):
        raise DomainError("integral check needs k > 1")
    c_ts = C ** ((s - 1.0) / tau) * (s - 1.0) / tau
    pref = C ** (-1.0 / tau)

    quads = np.empty_like(k)
    for i, kk in enumerate(k):
        val, err = quad(lambda u: math.exp(lambert_w0(c_ts * u) / (s - 1.0)),
                        0.0, math.log(kk), epsabs=1e-13, epsrel=1e-10, limit=300)
        if err > 1e-6 * max(1.0, abs(val)):
            raise NumericalError(
                f"quadrature failed at k={kk:g}: value {val:g}, error estimate {err:g}")
        quads[i] = pref * val

    closed = np.empty_like(k)
    f0 = _closed_antiderivative(s, 0.0)
    for i, kk in enumerate(k):
        upper = _closed_antiderivative(s, c_ts * math.log(kk))
        closed[i] = C ** (-s / tau) * tau / (s - 1.0) * (upper - f0)

    rel = np.abs(quads - closed) / np.maximum(np.abs(closed), 1e-12)
    return IntegralCheckReport(params, C, k, quads, closed, rel, bool(np.all(rel <= rel_tol)))
