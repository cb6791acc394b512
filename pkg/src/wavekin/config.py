"""Flat key-value run configuration: parsing, validation, serialization.

The format is plain text with dotted sections, one assignment per line:

    model.h = 0.1
    sim.dt = 0.001
    init.kind = cosine_bump

'#' starts a comment.  Unknown keys are rejected by name, parse errors carry
line numbers, and a parsed configuration round-trips through ``to_text``
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, ParameterViolation
from .integrator import Method, SimConfig
from .model import ModelParams, Truncation, validate_params
from .state import CosineBump, FromFile, Indicator, InitialDataSpec, PointMasses

REQUIRED_KEYS = (
    "model.h",
    "model.alpha",
    "model.beta",
    "model.delta",
    "model.n_cells",
    "sim.dt",
    "sim.t_final",
    "init.kind",
)

_INIT_KEYS = {
    "cosine_bump": {"init.l", "init.cell_average"},
    "indicator": {"init.a", "init.b", "init.cell_average"},
    "point_masses": {"init.masses"},
    "file": {"init.path"},
}

KNOWN_KEYS = set(REQUIRED_KEYS) | {
    "model.truncation",
    "sim.record_every",
    "sim.snapshot_times",
    "sim.method",
    "sim.clamp_negatives",
    "diagnostics.ml_pairs",
    "diagnostics.moment_orders",
    "output.dir",
    "output.stem",
} | set().union(*_INIT_KEYS.values())


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    sim: SimConfig
    init: InitialDataSpec
    out_dir: str = "out"
    stem: str = ""

    def to_text(self) -> str:
        p, s = self.model, self.sim
        lines = [
            f"model.h = {p.h!r}",
            "model.alpha = " + " ".join(repr(a) for a in p.alpha),
            "model.beta = " + " ".join(repr(b) for b in p.beta),
            f"model.delta = {p.delta!r}",
            f"model.n_cells = {p.n_cells}",
            f"model.truncation = {p.truncation.value}",
            f"sim.dt = {s.dt!r}",
            f"sim.t_final = {s.t_final!r}",
            f"sim.record_every = {s.record_every}",
        ]
        if s.snapshot_times:
            lines.append(
                "sim.snapshot_times = " + " ".join(repr(t) for t in s.snapshot_times)
            )
        lines.append(f"sim.method = {s.method.value}")
        lines.append(f"sim.clamp_negatives = {str(s.clamp_negatives).lower()}")
        lines.extend(_init_lines(self.init))
        if s.ml_pairs:
            lines.append(
                "diagnostics.ml_pairs = "
                + " ".join(f"{a:g}:{lam!r}" for a, lam in s.ml_pairs)
            )
        lines.append(
            "diagnostics.moment_orders = " + " ".join(f"{k:g}" for k in s.moment_orders)
        )
        lines.append(f"output.dir = {self.out_dir}")
        if self.stem:
            lines.append(f"output.stem = {self.stem}")
        return "\n".join(lines) + "\n"


def _init_lines(init: InitialDataSpec) -> list[str]:
    if isinstance(init, CosineBump):
        out = ["init.kind = cosine_bump", f"init.l = {init.half_period!r}"]
        if init.cell_average:
            out.append("init.cell_average = true")
        return out
    if isinstance(init, Indicator):
        out = ["init.kind = indicator", f"init.a = {init.a!r}", f"init.b = {init.b!r}"]
        if init.cell_average:
            out.append("init.cell_average = true")
        return out
    if isinstance(init, PointMasses):
        pairs = " ".join(f"{i}:{v!r}" for i, v in init.masses)
        return ["init.kind = point_masses", f"init.masses = {pairs}"]
    if isinstance(init, FromFile):
        return ["init.kind = file", f"init.path = {init.path}"]
    raise ConfigError(f"unserializable init spec {init!r}")


def _parse_float(key, val, lineno):
    try:
        return float(val)
    except ValueError:
        raise ConfigError(f"line {lineno}: key '{key}' expects a number, got {val!r}")


def _parse_int(key, val, lineno):
    try:
        return int(val)
    except ValueError:
        raise ConfigError(f"line {lineno}: key '{key}' expects an integer, got {val!r}")


def _parse_bool(key, val, lineno):
    low = val.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ConfigError(f"line {lineno}: key '{key}' expects true/false, got {val!r}")


def _parse_triple(key, val, lineno):
    parts = val.split()
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise ConfigError(
            f"line {lineno}: key '{key}' expects one or three numbers, got {val!r}"
        )
    return tuple(_parse_float(key, x, lineno) for x in parts)


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text.

    Raises ConfigError with a line number for syntax problems and with the
    offending key named for unknown keys or semantic violations.
    """
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, val = body.partition("=")
        key, val = key.strip(), val.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        raw[key] = (val, lineno)

    missing = [k for k in REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError("missing required keys: " + ", ".join(missing))

    def take(key, default=None):
        return raw.pop(key, (default, 0))

    h = _parse_float("model.h", *take("model.h"))
    alpha = _parse_triple("model.alpha", *take("model.alpha"))
    beta = _parse_triple("model.beta", *take("model.beta"))
    delta = _parse_float("model.delta", *take("model.delta"))
    n_cells = _parse_int("model.n_cells", *take("model.n_cells"))
    trunc_val, trunc_line = take("model.truncation", "leaky")
    try:
        truncation = Truncation(trunc_val)
    except ValueError:
        raise ConfigError(
            f"line {trunc_line}: key 'model.truncation' expects leaky or "
            f"conservative, got {trunc_val!r}"
        )
    try:
        model = ModelParams(
            h=h, alpha=alpha, beta=beta, delta=delta, n_cells=n_cells,
            truncation=truncation,
        )
        validate_params(model)
    except ParameterViolation as exc:
        raise ConfigError(f"key 'model.*': {exc}") from exc

    dt = _parse_float("sim.dt", *take("sim.dt"))
    t_final = _parse_float("sim.t_final", *take("sim.t_final"))
    record_every = _parse_int("sim.record_every", *take("sim.record_every", "1"))
    snap_val, snap_line = take("sim.snapshot_times", "")
    snapshot_times = tuple(
        _parse_float("sim.snapshot_times", x, snap_line) for x in snap_val.split()
    )
    method_val, method_line = take("sim.method", "euler")
    try:
        method = Method(method_val)
    except ValueError:
        raise ConfigError(
            f"line {method_line}: key 'sim.method' expects euler or rk4, got {method_val!r}"
        )
    clamp = _parse_bool("sim.clamp_negatives", *take("sim.clamp_negatives", "false"))

    ml_val, ml_line = take("diagnostics.ml_pairs", "")
    ml_pairs = []
    for token in ml_val.split():
        if ":" not in token:
            raise ConfigError(
                f"line {ml_line}: key 'diagnostics.ml_pairs' expects a:lambda pairs, "
                f"got {token!r}"
            )
        a_str, _, l_str = token.partition(":")
        ml_pairs.append(
            (
                _parse_float("diagnostics.ml_pairs", a_str, ml_line),
                _parse_float("diagnostics.ml_pairs", l_str, ml_line),
            )
        )
    orders_val, orders_line = take("diagnostics.moment_orders", "1 2 3 4")
    moment_orders = tuple(
        _parse_float("diagnostics.moment_orders", x, orders_line)
        for x in orders_val.split()
    )

    try:
        sim = SimConfig(
            dt=dt,
            t_final=t_final,
            record_every=record_every,
            snapshot_times=snapshot_times,
            method=method,
            clamp_negatives=clamp,
            moment_orders=moment_orders,
            ml_pairs=tuple(ml_pairs),
        )
    except ValueError as exc:
        raise ConfigError(f"key 'sim.*': {exc}") from exc

    init = _parse_init(raw, n_cells)
    out_dir, _ = take("output.dir", "out")
    stem, _ = take("output.stem", "")

    leftovers = [k for k in raw if not k.startswith("init.")]
    if leftovers:
        raise ConfigError(f"unknown key '{leftovers[0]}'")
    return RunConfig(model=model, sim=sim, init=init, out_dir=out_dir, stem=stem)


def _parse_init(raw: dict, n_cells: int) -> InitialDataSpec:
    kind, kind_line = raw.pop("init.kind")
    if kind not in _INIT_KEYS:
        raise ConfigError(
            f"line {kind_line}: key 'init.kind' expects one of "
            f"{sorted(_INIT_KEYS)}, got {kind!r}"
        )
    allowed = _INIT_KEYS[kind]
    stray = [k for k in raw if k.startswith("init.") and k not in allowed]
    if stray:
        raise ConfigError(f"key '{stray[0]}' does not apply to init.kind = {kind}")

    if kind == "cosine_bump":
        half_period = _parse_float("init.l", *raw.pop("init.l", ("5.0", 0)))
        cell_avg = _parse_bool(
            "init.cell_average", *raw.pop("init.cell_average", ("false", 0))
        )
        return CosineBump(half_period=half_period, cell_average=cell_avg)
    if kind == "indicator":
        a = _parse_float("init.a", *raw.pop("init.a", ("3.0", 0)))
        b = _parse_float("init.b", *raw.pop("init.b", ("5.0", 0)))
        cell_avg = _parse_bool(
            "init.cell_average", *raw.pop("init.cell_average", ("false", 0))
        )
        if b < a:
            raise ConfigError(f"key 'init.b': empty interval [{a}, {b}]")
        return Indicator(a=a, b=b, cell_average=cell_avg)
    if kind == "point_masses":
        val, lineno = raw.pop("init.masses", (None, 0))
        if val is None:
            raise ConfigError("missing required key 'init.masses'")
        masses = []
        for token in val.split():
            if ":" not in token:
                raise ConfigError(
                    f"line {lineno}: key 'init.masses' expects index:value pairs, "
                    f"got {token!r}"
                )
            i_str, _, v_str = token.partition(":")
            i = _parse_int("init.masses", i_str, lineno)
            v = _parse_float("init.masses", v_str, lineno)
            if not 1 <= i <= n_cells:
                raise ConfigError(
                    f"line {lineno}: key 'init.masses' index {i} outside 1..{n_cells}"
                )
            if v < 0:
                raise ConfigError(
                    f"line {lineno}: key 'init.masses' negative value {v}"
                )
            masses.append((i, v))
        return PointMasses(masses=tuple(masses))
    val, _ = raw.pop("init.path", (None, 0))
    if val is None:
        raise ConfigError("missing required key 'init.path'")
    return FromFile(path=val)
