"""Explicit time stepping (forward Euler, classic RK4) with diagnostics.

The integrator owns its state between steps; step times are k*dt (never an
accumulated sum) so two runs with the same configuration are bitwise
identical.  Negative iterates are surfaced, not hidden: by default nothing is
clamped and a NegativityWarning fires when min f drops below -1e-12 * max f.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import bounds
from .collision import apply_o, loss_rate_bound
from .errors import NegativityWarning, NonFiniteState
from .model import ModelParams, PowerTables
from .state import State, l1_norm, min_value, moment


class Method(Enum):
    EULER = "euler"
    RK4 = "rk4"


@dataclass(frozen=True)
class SimConfig:
    """Time-stepping and diagnostic configuration."""

    dt: float
    t_final: float
    record_every: int = 1
    snapshot_times: tuple[float, ...] = ()
    method: Method = Method.EULER
    clamp_negatives: bool = False
    moment_orders: tuple[float, ...] = (1.0, 2.0, 3.0, 4.0)
    ml_pairs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.t_final < 0:
            raise ValueError(f"t_final must be >= 0, got {self.t_final}")
        for t in self.snapshot_times:
            if not 0.0 <= t <= self.t_final:
                raise ValueError(
                    f"snapshot time {t} outside [0, {self.t_final}]"
                )
        if self.record_every < 1:
            raise ValueError(f"record_every must be >= 1, got {self.record_every}")


@dataclass
class Trajectory:
    """Recorded diagnostics rows plus state snapshots.

    ``data`` holds one row per recorded step with the columns named in
    ``columns`` (time first); rows land at steps divisible by record_every.
    """

    columns: list[str]
    data: np.ndarray
    snapshots: list[tuple[float, State]] = field(default_factory=list)
    total_clamped_mass: float = 0.0

    @property
    def times(self) -> np.ndarray:
        return self.data[:, 0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @property
    def final_state(self) -> State:
        if not self.snapshots:
            raise ValueError("trajectory recorded no snapshots")
        return self.snapshots[-1][1]


def _step_euler(p, tables, f, dt):
    s = State(f, p)
    with np.errstate(over="ignore", invalid="ignore"):
        return f + dt * apply_o(p, tables, s)


def _step_rk4(p, tables, f, dt):
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = apply_o(p, tables, State(f, p))
        k2 = apply_o(p, tables, State(f + 0.5 * dt * k1, p))
        k3 = apply_o(p, tables, State(f + 0.5 * dt * k2, p))
        k4 = apply_o(p, tables, State(f + dt * k3, p))
        return f + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def euler_step(
    p: ModelParams,
    tables: PowerTables,
    s: State,
    dt: float,
    clamp_negatives: bool = False,
) -> State:
    """One forward Euler step f' = f + dt * O[f].

    Raises NonFiniteState if the update produced NaN/Inf.  With
    clamp_negatives the result is floored at zero (the clamped mass is
    tracked by :func:`integrate`, not here).
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    f_new = _step_euler(p, tables, s.f, dt)
    if not np.all(np.isfinite(f_new)):
        raise NonFiniteState("euler step produced non-finite entries")
    if clamp_negatives:
        f_new = np.maximum(f_new, 0.0)
    return State(f_new, p)


def rk4_step(
    p: ModelParams,
    tables: PowerTables,
    s: State,
    dt: float,
    clamp_negatives: bool = False,
) -> State:
    """One classic fourth-order Runge-Kutta step."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    f_new = _step_rk4(p, tables, s.f, dt)
    if not np.all(np.isfinite(f_new)):
        raise NonFiniteState("rk4 step produced non-finite entries")
    if clamp_negatives:
        f_new = np.maximum(f_new, 0.0)
    return State(f_new, p)


def diagnostics_columns(cfg: SimConfig) -> list[str]:
    cols = ["t"]
    cols += [f"m{k:g}" for k in cfg.moment_orders]
    cols += [f"ml_a{a:g}_l{lam:g}" for a, lam in cfg.ml_pairs]
    cols += ["l1_norm", "min_f"]
    return cols


def _diag_row(t: float, s: State, cfg: SimConfig) -> list[float]:
    row = [t]
    row += [moment(s, k) for k in cfg.moment_orders]
    row += [bounds.ml_moment(s, a, lam) for a, lam in cfg.ml_pairs]
    row += [l1_norm(s), min_value(s)]
    return row


def n_steps_for(cfg: SimConfig) -> int:
    if cfg.t_final == 0.0:
        return 0
    return max(0, int(math.ceil(cfg.t_final / cfg.dt - 1e-9)))


def integrate(
    p: ModelParams, tables: PowerTables, s0: State, cfg: SimConfig
) -> Trajectory:
    """March s0 to t_final, recording diagnostics and snapshots.

    Snapshots are taken at the first step time >= each requested time; the
    actual step time is stored.  A NegativityWarning (non-fatal) fires once
    per run if any iterate dips below -1e-12 * max f.
    """
    n_steps = n_steps_for(cfg)
    stepper = _step_euler if cfg.method is Method.EULER else _step_rk4

    # snapshots keep the order of cfg.snapshot_times
    snap_steps: dict[int, list[int]] = {}
    for pos, t_req in enumerate(cfg.snapshot_times):
        k = min(n_steps, max(0, int(math.ceil(t_req / cfg.dt - 1e-9))))
        snap_steps.setdefault(k, []).append(pos)

    rows: list[list[float]] = []
    snap_buf: list[tuple[float, State] | None] = [None] * len(cfg.snapshot_times)
    clamped = 0.0
    warned = False

    f = s0.f.copy()
    for k in range(n_steps + 1):
        t = k * cfg.dt
        if k % cfg.record_every == 0:
            rows.append(_diag_row(t, State(f, p), cfg))
        if k in snap_steps:
            for pos in snap_steps[k]:
                snap_buf[pos] = (t, State(f.copy(), p))
        if k == n_steps:
            break
        f = stepper(p, tables, f, cfg.dt)
        if not np.all(np.isfinite(f)):
            raise NonFiniteState(f"non-finite entries after step {k + 1}")
        fmin = f.min()
        if fmin < 0.0:
            fmax = f.max()
            if not warned and fmin < -1e-12 * max(fmax, 0.0):
                warnings.warn(
                    f"negative iterate min f = {fmin:.3e} at t = {(k + 1) * cfg.dt:.6g}",
                    NegativityWarning,
                    stacklevel=2,
                )
                warned = True
            if cfg.clamp_negatives:
                neg = f < 0.0
                clamped += float(-f[neg].sum())
                f[neg] = 0.0

    return Trajectory(
        columns=diagnostics_columns(cfg),
        data=np.array(rows, dtype=float),
        snapshots=[snap for snap in snap_buf if snap is not None],
        total_clamped_mass=clamped,
    )


def dt_stability_estimate(
    p: ModelParams, tables: PowerTables, s: State, safety: float = 1.0
) -> float:
    """Step size keeping Euler updates sign-safe at the current state.

    Since O[f](i) >= -L_i f_i, a step dt <= 1 / max L_i over occupied cells
    cannot push an occupied cell negative (empty cells only gain).  For the
    zero state the maximum runs over all cells, where L_i reduces to
    (ih)^delta.
    """
    if not 0.0 < safety <= 1.0:
        raise ValueError(f"safety must lie in (0, 1], got {safety}")
    rates = loss_rate_bound(p, tables, s)
    occupied = s.f > 0.0
    worst = float(rates[occupied].max()) if occupied.any() else float(rates.max())
    return safety / worst
