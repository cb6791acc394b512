"""Closed-form constants and bound functions used by the theorem checks.

Everything here is an explicit formula in the model parameters: the moment
production constant C_k, the barrier B_k such that m_k stays below
max{m_k(0), 2 B_k(m_1(0))}, the exponential energy-decay envelope
exp(-h^delta t) m_1(0), the instantaneous-creation bound, Mittag-Leffler
functions/moments, the Young constant of the tail-propagation argument, and
the admissible lambda threshold built from it.

All bound evaluations run in log-domain arithmetic so large exponents and
small masses cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, MLOverflowError
from .model import ModelParams
from .state import State, moment

# Mittag-Leffler series: stop once the current term falls below this fraction
# of the running sum, or after ML_MAX_TERMS terms, whichever comes first.
ML_REL_TOL = 1e-16
ML_MAX_TERMS = 400


def _exponent_pieces(p: ModelParams, k: float) -> tuple[float, float, float]:
    """(q, r, e2) = (delta-2a1-b1+1, delta+k-1, 2a1+b1+k-2) with domain checks.

    The production-constant formula needs k > 1 and k >= 2 - alpha_1 - beta_1;
    the boundary case is admitted with the 0^0 := 1 convention, under which
    the formula is continuous in k.
    """
    a1, b1 = p.alpha[0], p.beta[0]
    if not k > 1.0:
        raise DomainError(f"moment order must satisfy k > 1, got k = {k}")
    if k < 2.0 - a1 - b1:
        raise DomainError(
            f"moment order must satisfy k >= 2 - alpha_1 - beta_1 = {2 - a1 - b1}, got {k}"
        )
    q = p.delta - 2.0 * a1 - b1 + 1.0
    if q <= 0.0:
        raise DomainError("delta > 2*alpha_1 + beta_1 - 1 is required")
    r = p.delta + k - 1.0
    e2 = 2.0 * a1 + b1 + k - 2.0
    return q, r, e2


def c_k(p: ModelParams, k: float) -> float:
    """Production constant

        C_k = (q/r) [2^(b1+1) (2^k - 2)]^(r/q) (2 e2 / r)^(e2/q),

    with q = delta - 2 a1 - b1 + 1, r = delta + k - 1, e2 = 2 a1 + b1 + k - 2
    and the convention 0^0 := 1 when e2 = 0.
    """
    q, r, e2 = _exponent_pieces(p, k)
    b1 = p.beta[0]
    log_c = math.log(q) - math.log(r)
    log_c += (r / q) * ((b1 + 1.0) * math.log(2.0) + math.log(math.pow(2.0, k) - 2.0))
    if e2 > 0.0:
        log_c += (e2 / q) * math.log(2.0 * e2 / r)
    return math.exp(log_c)


def b_k(p: ModelParams, k: float, m1: float) -> float:
    """Barrier B_k(m1) = (2 C_k m1^(1 + r/q + delta/(k-1)))^((k-1)/r).

    Zero at m1 = 0 and strictly increasing in m1.
    """
    if m1 < 0:
        raise DomainError(f"first moment must be >= 0, got {m1}")
    q, r, _ = _exponent_pieces(p, k)
    if m1 == 0.0:
        return 0.0
    exponent = 1.0 + r / q + p.delta / (k - 1.0)
    log_b = ((k - 1.0) / r) * (
        math.log(2.0) + math.log(c_k(p, k)) + exponent * math.log(m1)
    )
    return math.exp(log_b)


def decay_envelope(p: ModelParams, m1_0: float, t: float) -> float:
    """Energy envelope exp(-h^delta t) * m1(0)."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    rate = math.exp(p.delta * math.log(p.h))
    return math.exp(-rate * t) * m1_0


def creation_bound(p: ModelParams, k: float, m1_0: float, t: float) -> float:
    """Instantaneous-creation bound (2(k-1)/(delta t))^((k-1)/delta) m1(0) + B_k(m1(0)).

    Diverges as t -> 0+ and decreases to B_k(m1(0)) as t -> infinity.
    """
    if t <= 0:
        raise DomainError(f"creation bound needs t > 0, got {t}")
    barrier = b_k(p, k, m1_0)
    if m1_0 == 0.0:
        return barrier
    log_t1 = ((k - 1.0) / p.delta) * math.log(2.0 * (k - 1.0) / (p.delta * t))
    return math.exp(log_t1) * m1_0 + barrier


def ml_series(a: float, x: float) -> tuple[float, int]:
    """Mittag-Leffler-type series sum_{k>=1} x^k / Gamma(ak+1) with truncation index.

    Returns (value, number of terms summed).  For a = 1 the closed form
    exp(x) - 1 is used and the reported index is 0.
    """
    if a < 1.0:
        raise DomainError(f"Mittag-Leffler order must satisfy a >= 1, got {a}")
    if x < 0.0:
        raise DomainError(f"Mittag-Leffler argument must be >= 0, got {x}")
    if x == 0.0:
        return 0.0, 0
    if a == 1.0:
        val = math.expm1(x)
        if not math.isfinite(val):
            raise MLOverflowError(f"exp({x}) - 1 overflows")
        return val, 0
    log_x = math.log(x)
    total = 0.0
    for k in range(1, ML_MAX_TERMS + 1):
        term = math.exp(k * log_x - math.lgamma(a * k + 1.0))
        if not math.isfinite(term):
            raise MLOverflowError(f"series term {k} overflows for a={a}, x={x}")
        total += term
        if term <= ML_REL_TOL * total:
            return total, k
    return total, ML_MAX_TERMS


def ml_function(a: float, x: float) -> float:
    """Value of the series sum_{k>=1} x^k / Gamma(ak+1); equals e^x - 1 at a = 1."""
    return ml_series(a, x)[0]


def _ml_values_on_grid(a: float, z: np.ndarray) -> np.ndarray:
    """Vectorized ml_function over nonnegative arguments z (one per cell)."""
    if a == 1.0:
        with np.errstate(over="ignore"):
            vals = np.expm1(z)
        if not np.all(np.isfinite(vals)):
            raise MLOverflowError("expm1 overflow in Mittag-Leffler weights")
        return vals
    vals = np.zeros_like(z)
    pos = z > 0.0
    if not pos.any():
        return vals
    log_z = np.log(z[pos])
    total = np.zeros_like(log_z)
    for k in range(1, ML_MAX_TERMS + 1):
        term = np.exp(k * log_z - gammaln(a * k + 1.0))
        if not np.all(np.isfinite(term)):
            raise MLOverflowError(f"series term {k} overflows for a={a}")
        total += term
        if term.max() <= ML_REL_TOL * max(total.max(), np.finfo(float).tiny):
            break
    vals[pos] = total
    return vals


def ml_moment(s: State, a: float, lam: float) -> float:
    """Tail functional sum_i f_i ML_a(lambda^a * ih), summed index-wise."""
    if a < 1.0:
        raise DomainError(f"Mittag-Leffler order must satisfy a >= 1, got {a}")
    if lam <= 0.0:
        raise DomainError(f"lambda must be > 0, got {lam}")
    z = math.pow(lam, a) * s.params.grid
    weights = _ml_values_on_grid(a, z)
    terms = s.f * weights
    if not np.all(np.isfinite(terms)):
        raise MLOverflowError("Mittag-Leffler moment term overflows")
    return float(np.add.accumulate(terms)[-1]) if terms.size else 0.0


def ml_moment_series(s: State, a: float, lam: float) -> float:
    """Same functional summed the other way, sum_k m_k lambda^(ak) / Gamma(ak+1).

    Cross-check path for :func:`ml_moment`; each term combines in log domain
    so large integer moments cannot overflow before the Gamma division.
    """
    if a < 1.0 or lam <= 0.0:
        raise DomainError("need a >= 1 and lambda > 0")
    log_lam = math.log(lam)
    total = 0.0
    for k in range(1, ML_MAX_TERMS + 1):
        m_k = moment(s, float(k))
        if m_k == 0.0:
            return total
        term = math.exp(math.log(m_k) + a * k * log_lam - math.lgamma(a * k + 1.0))
        if not math.isfinite(term):
            raise MLOverflowError(f"moment-series term {k} overflows")
        total += term
        if term <= ML_REL_TOL * total:
            return total
    return total


def ml_moment_truncated(
    s: State, a: float, lam: float, n: int, rho: float = 0.0
) -> float:
    """Truncated, optionally shifted tail sum: sum_{k=1}^{n} m_{k+rho} lambda^(ak) / Gamma(ak+1)."""
    if a < 1.0 or lam <= 0.0:
        raise DomainError("need a >= 1 and lambda > 0")
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    log_lam = math.log(lam)
    total = 0.0
    for k in range(1, n + 1):
        m_kr = moment(s, k + rho)
        if m_kr == 0.0:
            continue
        total += math.exp(
            math.log(m_kr) + a * k * log_lam - math.lgamma(a * k + 1.0)
        )
    return total


def young_constant(p: ModelParams) -> float:
    """Constant C making 2^(b1+2) sqrt(a) x^theta <= (C/2) sqrt(a)^(1/(1-theta)) + x/2.

    With theta = (2 a1 + b1)/delta < 1, optimizing the left side over x gives

        C = 2 (1-theta) (2 theta)^(theta/(1-theta)) 2^((b1+2)/(1-theta)),

    one admissible choice of the proof-internal constant (exposed so reports
    are auditable; its defining inequality is verified numerically in tests).
    """
    a1, b1 = p.alpha[0], p.beta[0]
    gap = p.delta - 2.0 * a1 - b1
    if gap <= 0.0:
        raise DomainError("young_constant needs delta > 2*alpha_1 + beta_1")
    theta = (2.0 * a1 + b1) / p.delta
    log_c = math.log(2.0) + math.log1p(-theta)
    if theta > 0.0:
        log_c += (theta / (1.0 - theta)) * math.log(2.0 * theta)
    log_c += ((b1 + 2.0) / (1.0 - theta)) * math.log(2.0)
    return math.exp(log_c)


def lambda_max_branches(p: ModelParams, a: float, m1_0: float) -> tuple[float, float]:
    """The two branches of the tail-propagation threshold:

        (4 C sqrt(a)^(delta/(delta-2a1-b1)))^(-1/(delta a))   (Young branch)
        (4 m1(0) ML_a(1))^(-1/a)                              (mass branch)
    """
    if a < 1.0:
        raise DomainError(f"need a >= 1, got {a}")
    if m1_0 <= 0.0:
        raise DomainError(f"need m1(0) > 0, got {m1_0}")
    a1, b1 = p.alpha[0], p.beta[0]
    gap = p.delta - 2.0 * a1 - b1
    if gap <= 0.0:
        raise DomainError("tail threshold needs delta > 2*alpha_1 + beta_1")
    c = young_constant(p)
    log_b1 = -(1.0 / (p.delta * a)) * (
        math.log(4.0) + math.log(c) + (p.delta / gap) * 0.5 * math.log(a)
    )
    log_b2 = -(1.0 / a) * (
        math.log(4.0) + math.log(m1_0) + math.log(ml_function(a, 1.0))
    )
    return math.exp(log_b1), math.exp(log_b2)


def lambda_max_ml(p: ModelParams, a: float, m1_0: float) -> float:
    """Admissible tail-propagation threshold: the smaller of the two branches."""
    return min(lambda_max_branches(p, a, m1_0))


def gamma_combinatorial_ratio(k: int, l: int, a: float) -> float:
    """binom(k,l) Gamma(al+1) Gamma(a(k-l)+1) / Gamma(ak+1), via log-Gamma."""
    if not (k >= 2 and 1 <= l < k):
        raise DomainError(f"need k >= 2 and 1 <= l < k, got k={k}, l={l}")
    if a < 1.0:
        raise DomainError(f"need a >= 1, got {a}")
    log_r = (
        math.lgamma(k + 1.0)
        - math.lgamma(l + 1.0)
        - math.lgamma(k - l + 1.0)
        + math.lgamma(a * l + 1.0)
        + math.lgamma(a * (k - l) + 1.0)
        - math.lgamma(a * k + 1.0)
    )
    return math.exp(log_r)


@dataclass(frozen=True)
class BoundSet:
    """Evaluated constants for one moment order k and one parameter set."""

    k: float
    c_k: float
    b_k_at: Callable[[float], float]
    decay_rate: float
    lambda_max: Callable[[float, float], float]
    young_c: float


def bound_set(p: ModelParams, k: float) -> BoundSet:
    """Bundle every closed-form constant the checks need for order k."""
    try:
        young = young_constant(p)
    except DomainError:
        young = math.nan  # tail-propagation hypothesis delta > 2a1+b1 fails
    if math.isnan(young):
        lam_fn = lambda a, m1: math.nan  # noqa: E731
    else:
        lam_fn = lambda a, m1: lambda_max_ml(p, a, m1)  # noqa: E731
    return BoundSet(
        k=k,
        c_k=c_k(p, k),
        b_k_at=lambda m1: b_k(p, k, m1),
        decay_rate=math.exp(p.delta * math.log(p.h)),
        lambda_max=lam_fn,
        young_c=young,
    )
