"""Scheme parameters, power-law kernels, and precomputed power tables.

The discrete system lives on the uniform grid of cells ``[(i-1)h, ih]``,
``i = 1..N``.  Interactions between cells ``i`` and ``j`` are weighted by
three symmetric product kernels

    K_n(i, j) = (ih)^alpha_n (jh)^alpha_n ((i+j)h)^beta_n,   n = 1, 2, 3,

and every cell dissipates at rate ``gamma(i) = (ih)^delta``.  All powers are
evaluated as ``exp(e * log(x))`` in double precision, and the hot O(N^2)
collision loops read them from tables built once per run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ParameterViolation


class Truncation(Enum):
    """Finite-window semantics for the infinite interaction sums.

    LEAKY keeps every loss term and drops gain landing beyond cell N, so the
    first moment can only leak downward.  CONSERVATIVE also drops the
    coagulation losses whose paired gain would land beyond N, restoring exact
    first-moment conservation of the interaction part on all states.
    """

    LEAKY = "leaky"
    CONSERVATIVE = "conservative"


@dataclass(frozen=True)
class ModelParams:
    """Mesh size, kernel exponents, dissipation exponent, and truncation.

    Attributes
    ----------
    h : mesh size (> 0).
    alpha, beta : the three kernel exponents (each >= 0).
    delta : dissipation exponent (> 0).
    n_cells : number of grid cells N (>= 2).
    truncation : finite-window mode, see :class:`Truncation`.
    """

    h: float
    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]
    delta: float
    n_cells: int
    truncation: Truncation = Truncation.LEAKY

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        if len(self.alpha) != 3 or len(self.beta) != 3:
            raise ParameterViolation("alpha and beta must each hold three exponents")

    def grid_point(self, i: int | np.ndarray) -> float | np.ndarray:
        """Physical location i*h of cell index i."""
        return i * self.h

    @property
    def grid(self) -> np.ndarray:
        """Locations i*h for i = 1..N."""
        return np.arange(1, self.n_cells + 1) * self.h


def validate_params(p: ModelParams) -> None:
    """Reject parameter sets outside the admissible power-law family.

    Requires h > 0, N >= 2, all exponents >= 0, delta > 0, and the two strict
    dissipation-dominance inequalities

        delta > max_n(alpha_n + beta_n),
        delta > 2*alpha_1 + beta_1 - 1.

    Raises
    ------
    ParameterViolation
        Naming the first constraint that fails.
    """
    if not (p.h > 0) or not math.isfinite(p.h):
        raise ParameterViolation(f"mesh size h must be positive and finite, got {p.h}")
    if p.n_cells < 2:
        raise ParameterViolation(f"n_cells must be >= 2, got {p.n_cells}")
    for name, vals in (("alpha", p.alpha), ("beta", p.beta)):
        for n, v in enumerate(vals, start=1):
            if v < 0 or not math.isfinite(v):
                raise ParameterViolation(f"{name}_{n} must be >= 0 and finite, got {v}")
    if p.delta <= 0 or not math.isfinite(p.delta):
        raise ParameterViolation(f"delta must be > 0 and finite, got {p.delta}")
    worst = max(a + b for a, b in zip(p.alpha, p.beta))
    if not (p.delta > worst):
        raise ParameterViolation(
            f"delta > max_n(alpha_n + beta_n) fails: {p.delta} <= {worst}"
        )
    lower = 2.0 * p.alpha[0] + p.beta[0] - 1.0
    if not (p.delta > lower):
        raise ParameterViolation(
            f"delta > 2*alpha_1 + beta_1 - 1 fails: {p.delta} <= {lower}"
        )


def _power(x: float, e: float) -> float:
    """x**e via exp(e*log x) for x > 0; fixed evaluation everywhere."""
    if e == 0.0:
        return 1.0
    return math.exp(e * math.log(x))


def kernel_value(p: ModelParams, n: int, i: int, j: int) -> float:
    """Kernel K_n(i, j) = (ih)^a_n (jh)^a_n ((i+j)h)^b_n for 1-based n, i, j.

    Symmetric in (i, j) exactly: the two alpha factors commute in IEEE
    multiplication and the beta factor depends on i+j only.
    """
    if not (1 <= n <= 3):
        raise ValueError(f"kernel index must be 1..3, got {n}")
    if i < 1 or j < 1:
        raise ValueError(f"cell indices must be >= 1, got ({i}, {j})")
    a = p.alpha[n - 1]
    b = p.beta[n - 1]
    return _power(i * p.h, a) * _power(j * p.h, a) * _power((i + j) * p.h, b)


def gamma_value(p: ModelParams, i: int) -> float:
    """Dissipation rate gamma(i) = (ih)^delta, strictly increasing in i."""
    if i < 1:
        raise ValueError(f"cell index must be >= 1, got {i}")
    return _power(i * p.h, p.delta)


def _power_table(h: float, e: float, size: int) -> np.ndarray:
    """(s*h)^e for s = 0..size-1, log-domain; the s=0 slot is never read."""
    out = np.empty(size)
    out[0] = 1.0 if e == 0.0 else 0.0
    if e == 0.0:
        out[1:] = 1.0
    else:
        s = np.arange(1, size) * h
        out[1:] = np.exp(e * np.log(s))
    return out


@dataclass(frozen=True)
class PowerTables:
    """Per-cell powers for the collision loops, indexed by integer cell/sum index.

    All arrays cover indices 0..2N so that sum arguments (up to i+j = 2N) are
    table lookups.  ``x_alpha[n][i] = (ih)^alpha_n``, ``x_sumpow[n][s] =
    (sh)^beta_n``, ``x_gamma[i] = (ih)^delta``.
    """

    params: ModelParams
    x_alpha: tuple[np.ndarray, np.ndarray, np.ndarray]
    x_sumpow: tuple[np.ndarray, np.ndarray, np.ndarray]
    x_gamma: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        for arr in (*self.x_alpha, *self.x_sumpow, self.x_gamma):
            arr.setflags(write=False)


def build_tables(p: ModelParams) -> PowerTables:
    """Precompute the power tables for a validated parameter set."""
    validate_params(p)
    size = 2 * p.n_cells + 1
    x_alpha = tuple(_power_table(p.h, a, size) for a in p.alpha)
    x_sumpow = tuple(_power_table(p.h, b, size) for b in p.beta)
    x_gamma = _power_table(p.h, p.delta, size)
    return PowerTables(params=p, x_alpha=x_alpha, x_sumpow=x_sumpow, x_gamma=x_gamma)
