"""Discrete distributions on the grid: construction, moments, norms, support.

The k-th moment of a state is ``m_k = sum_i f_i (ih)^k``.  Sums are
accumulated serially in ascending index order (deterministic); a compensated
mode exists for tight-tolerance oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import (
    DimensionMismatch,
    FileParseError,
    NegativeValueError,
    NonFiniteState,
)
from .model import ModelParams


@dataclass
class State:
    """Cell values f_1..f_N attached to the parameter set that owns the grid."""

    f: np.ndarray
    params: ModelParams

    def __post_init__(self):
        self.f = np.asarray(self.f, dtype=float)
        if self.f.ndim != 1 or self.f.size != self.params.n_cells:
            raise DimensionMismatch(
                f"state length {self.f.size} != n_cells {self.params.n_cells}"
            )
        if not np.all(np.isfinite(self.f)):
            raise NonFiniteState("state entries must be finite")

    @property
    def n(self) -> int:
        return self.params.n_cells

    def copy(self) -> "State":
        return State(self.f.copy(), self.params)


@dataclass(frozen=True)
class CosineBump:
    """Half-cosine hump psi(x) = (1 + cos(pi x / L)) / 2 on 0 < x < L, else 0."""

    half_period: float = 5.0
    cell_average: bool = False


@dataclass(frozen=True)
class Indicator:
    """Characteristic function of the closed interval [a, b]."""

    a: float = 3.0
    b: float = 5.0
    cell_average: bool = False


@dataclass(frozen=True)
class PointMasses:
    """Explicit (index, value) pairs, 1-based indices."""

    masses: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class FromFile:
    """Plain-text initial data: one '<index> <value>' pair per line, 1-based."""

    path: str


InitialDataSpec = Union[CosineBump, Indicator, PointMasses, FromFile]

# Closed-interval membership uses a relative slack so that grid points that
# land on an endpoint up to roundoff (e.g. 50 * 0.1 vs 5.0) are kept.
_ENDPOINT_RTOL = 1e-12


def _cosine_pointwise(x: np.ndarray, L: float) -> np.ndarray:
    vals = 0.5 * (1.0 + np.cos(np.pi * x / L))
    return np.where((x > 0.0) & (x < L), vals, 0.0)


def _cosine_cell_integral(lo: np.ndarray, hi: np.ndarray, L: float) -> np.ndarray:
    # antiderivative of psi on (0, L): (x + (L/pi) sin(pi x / L)) / 2
    lo = np.clip(lo, 0.0, L)
    hi = np.clip(hi, 0.0, L)

    def anti(x):
        return 0.5 * (x + (L / np.pi) * np.sin(np.pi * x / L))

    return np.maximum(anti(hi) - anti(lo), 0.0)


def init_from_spec(p: ModelParams, spec: InitialDataSpec) -> State:
    """Construct initial data on the grid of ``p``.

    CosineBump and Indicator sample pointwise at x = ih by default, matching
    the reference experiments; with ``cell_average=True`` they store the cell
    integral over [(i-1)h, ih] instead.
    """
    n = p.n_cells
    x = p.grid
    if isinstance(spec, CosineBump):
        if spec.cell_average:
            f = _cosine_cell_integral(x - p.h, x, spec.half_period)
        else:
            f = _cosine_pointwise(x, spec.half_period)
    elif isinstance(spec, Indicator):
        if spec.b < spec.a:
            raise ValueError(f"indicator interval is empty: [{spec.a}, {spec.b}]")
        if spec.cell_average:
            f = np.maximum(np.minimum(spec.b, x) - np.maximum(spec.a, x - p.h), 0.0)
        else:
            tol = _ENDPOINT_RTOL * max(abs(spec.a), abs(spec.b), 1.0)
            f = np.where((x >= spec.a - tol) & (x <= spec.b + tol), 1.0, 0.0)
    elif isinstance(spec, PointMasses):
        f = np.zeros(n)
        for i, v in spec.masses:
            if not 1 <= i <= n:
                raise ValueError(f"point mass index {i} outside 1..{n}")
            f[i - 1] = v
    elif isinstance(spec, FromFile):
        f = _read_state_file(Path(spec.path), n)
    else:
        raise TypeError(f"unknown initial data spec: {spec!r}")
    return State(f, p)


def _read_state_file(path: Path, n: int) -> np.ndarray:
    f = np.zeros(n)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise FileParseError(f"{path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise FileParseError(f"{path}:{lineno}: expected 'index value', got {line!r}")
        try:
            i = int(parts[0])
            v = float(parts[1])
        except ValueError as exc:
            raise FileParseError(f"{path}:{lineno}: {exc}") from exc
        if not 1 <= i <= n:
            raise FileParseError(f"{path}:{lineno}: index {i} outside 1..{n}")
        if v < 0:
            raise NegativeValueError(f"{path}:{lineno}: negative value {v}")
        f[i - 1] = v
    return f


def _serial_sum(terms: np.ndarray) -> float:
    # ascending-index serial accumulation; add.accumulate fixes the order
    if terms.size == 0:
        return 0.0
    return float(np.add.accumulate(terms)[-1])


def moment(s: State, k: float, compensated: bool = False) -> float:
    """k-th moment m_k = sum_i f_i (ih)^k, k >= 0, ascending-index sum."""
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    if k == 0:
        terms = s.f
    else:
        terms = s.f * np.exp(k * np.log(s.params.grid))
    if compensated:
        return math.fsum(terms.tolist())
    return _serial_sum(terms)


def l1_norm(s: State, compensated: bool = False) -> float:
    """sum_i |f_i|."""
    terms = np.abs(s.f)
    if compensated:
        return math.fsum(terms.tolist())
    return _serial_sum(terms)


def l1_distance(s1: State, s2: State, compensated: bool = False) -> float:
    """sum_i |f_i - g_i|; requires equal grid sizes."""
    if s1.f.size != s2.f.size:
        raise DimensionMismatch(f"state sizes differ: {s1.f.size} vs {s2.f.size}")
    terms = np.abs(s1.f - s2.f)
    if compensated:
        return math.fsum(terms.tolist())
    return _serial_sum(terms)


def support_gcd(s: State, threshold: float = 0.0) -> int:
    """gcd of the 1-based indices with f_i > threshold; 0 for empty support."""
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    idx = np.flatnonzero(s.f > threshold) + 1
    g = 0
    for i in idx:
        g = math.gcd(g, int(i))
        if g == 1:
            break
    return g


def min_value(s: State) -> float:
    """Minimum cell value (negativity diagnostic)."""
    return float(np.min(s.f))
