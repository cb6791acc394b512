"""Command-line entry point: simulate, verify, bounds, repro.

Exit codes: 0 success, 1 verification-check failure, 2 configuration error,
3 runtime or I/O error.  All CSV output carries a header row and fixed
column order; identical config and seed produce bitwise-identical data files
(the verification report's wall-time column is the one excluded quantity).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds
from .config import RunConfig, parse_config
from .errors import ConfigError, WavekinError
from .integrator import Trajectory, integrate
from .model import build_tables
from .presets import PRESETS
from .state import State, init_from_spec, moment
from .verify import run_all


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_timeseries(traj: Trajectory, path: Path) -> None:
    _write_csv(path, traj.columns, ([_fmt(v) for v in row] for row in traj.data))


def write_snapshot(state: State, path: Path, x_max: float | None = None) -> None:
    h = state.params.h
    rows = []
    for i, v in enumerate(state.f, start=1):
        x = i * h
        if x_max is not None and x > x_max * (1 + 1e-12):
            break
        rows.append([str(i), _fmt(x), _fmt(v)])
    _write_csv(path, ["i", "x", "f"], rows)


def _snapshot_name(stem: str, t_req: float, clipped: bool = False) -> str:
    suffix = "_clipped" if clipped else ""
    return f"{stem}snapshot_{t_req:g}{suffix}.csv"


def cmd_simulate(cfg: RunConfig, out_dir: Path) -> Trajectory:
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = build_tables(cfg.model)
    s0 = init_from_spec(cfg.model, cfg.init)
    traj = integrate(cfg.model, tables, s0, cfg.sim)
    write_timeseries(traj, out_dir / f"{cfg.stem}timeseries.csv")
    for t_req, (_, snap) in zip(cfg.sim.snapshot_times, traj.snapshots):
        write_snapshot(snap, out_dir / _snapshot_name(cfg.stem, t_req))
    return traj


def cmd_verify(cfg: RunConfig, out_dir: Path, seed: int) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    s0 = init_from_spec(cfg.model, cfg.init)
    report = run_all(cfg.model, cfg.sim, s0, seed=seed)
    text = report.to_text()
    (out_dir / f"{cfg.stem}report.txt").write_text(text + "\n")
    _write_csv(out_dir / f"{cfg.stem}report.csv", *_split_rows(report.csv_rows()))
    print(text)
    return 1 if report.failed else 0


def _split_rows(rows):
    return rows[0], rows[1:]


def cmd_bounds(cfg: RunConfig, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    p = cfg.model
    s0 = init_from_spec(p, cfg.init)
    m1_0 = moment(s0, 1.0)
    rows: list[tuple[str, str, float]] = [
        ("m1_0", "", m1_0),
        ("decay_rate_h_delta", "", math.exp(p.delta * math.log(p.h))),
    ]
    try:
        rows.append(("young_C", "", bounds.young_constant(p)))
        if m1_0 > 0:
            for a in (1.0, 2.0):
                rows.append((f"lambda_max_a{a:g}", "", bounds.lambda_max_ml(p, a, m1_0)))
    except WavekinError:
        pass  # tail hypotheses fail for these parameters
    for k in sorted({2.0, 3.0, 4.0} | {k for k in cfg.sim.moment_orders if k > 1.0}):
        hypo = max(p.delta, 1.0, 2.0 - p.alpha[0] - p.beta[0])
        if k <= hypo:
            continue
        rows.append(("C_k", f"{k:g}", bounds.c_k(p, k)))
        rows.append(("B_k(m1_0)", f"{k:g}", bounds.b_k(p, k, m1_0)))
        rows.append(("2*B_k(m1_0)", f"{k:g}", 2.0 * bounds.b_k(p, k, m1_0)))

    width = max(len(name) for name, _, _ in rows) + 6
    lines = []
    for name, k, v in rows:
        label = f"{name}[k={k}]" if k else name
        lines.append(f"{label:{width}s} {v:.12e}")
    text = "\n".join(lines)
    (out_dir / f"{cfg.stem}bounds.txt").write_text(text + "\n")
    _write_csv(
        out_dir / f"{cfg.stem}bounds.csv",
        ["name", "k", "value"],
        [[name, k, _fmt(v)] for name, k, v in rows],
    )
    print(text)


def _nice_ceiling(v: float) -> float:
    """Round up to two significant digits for fixed axis limits."""
    if v <= 0.0 or not math.isfinite(v):
        return 1.0
    exp = math.floor(math.log10(v))
    scale = 10.0 ** (exp - 1)
    return math.ceil(v / scale) * scale


def build_manifest(cfg: RunConfig, traj: Trajectory, preset: str) -> dict:
    """Figure manifest for the plotting component: one snapshot figure per
    snapshot time, paired moment panels, one panel per tail-moment column."""
    series_clip = [0.0, min(1.0, cfg.sim.t_final)]
    in_clip = traj.times <= series_clip[1] + 1e-12
    figures = []
    for t_req, (_, snap) in zip(cfg.sim.snapshot_times, traj.snapshots):
        fid = "initial_data" if t_req == 0.0 else f"solution_t{t_req:g}"
        title = "Initial data" if t_req == 0.0 else f"Solution at T={t_req:g}"
        x_hi = min(10.0, cfg.model.n_cells * cfg.model.h)
        mask = cfg.model.grid <= x_hi * (1 + 1e-12)
        figures.append(
            {
                "id": fid,
                "kind": "snapshot",
                "csv": _snapshot_name(cfg.stem, t_req),
                "title": title,
                "xlabel": "x",
                "ylabel": "f",
                "xlim": [0.0, x_hi],
                "ylim": [0.0, _nice_ceiling(1.05 * float(np.max(snap.f[mask], initial=0.0)))],
                "out": f"{fid}.png",
            }
        )
    for pair in (("m1", "m2"), ("m3", "m4")):
        if not all(c in traj.columns for c in pair):
            continue
        top = max(float(np.max(traj.column(c)[in_clip])) for c in pair)
        figures.append(
            {
                "id": f"moments_{pair[0]}_{pair[1]}",
                "kind": "series_pair",
                "csv": f"{cfg.stem}timeseries.csv",
                "columns": list(pair),
                "title": f"Moments {pair[0]} and {pair[1]}",
                "xlabel": "t",
                "ylabel": "moment",
                "xlim": series_clip,
                "ylim": [0.0, _nice_ceiling(1.05 * top)],
                "out": f"moments_{pair[0]}_{pair[1]}.png",
            }
        )
    for a, lam in cfg.sim.ml_pairs:
        col = f"ml_a{a:g}_l{lam:g}"
        top = float(np.max(traj.column(col)[in_clip]))
        figures.append(
            {
                "id": col,
                "kind": "series",
                "csv": f"{cfg.stem}timeseries.csv",
                "columns": [col],
                "title": f"Tail moment a={a:g}, lambda={lam:g}",
                "xlabel": "t",
                "ylabel": col,
                "xlim": series_clip,
                "ylim": [0.0, _nice_ceiling(1.05 * top)],
                "out": f"{col}.png",
            }
        )
    return {"preset": preset, "stem": cfg.stem, "figures": figures}


def cmd_repro(test_id: str, out_dir: Path) -> None:
    cfg = parse_config(PRESETS[test_id])
    out_dir.mkdir(parents=True, exist_ok=True)
    traj = cmd_simulate(cfg, out_dir)
    for t_req, (_, snap) in zip(cfg.sim.snapshot_times, traj.snapshots):
        write_snapshot(
            snap, out_dir / _snapshot_name(cfg.stem, t_req, clipped=True), x_max=10.0
        )
    manifest = build_manifest(cfg, traj, preset=test_id)
    with open(out_dir / f"{cfg.stem}manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_config(path: str) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wavekin",
        description="Finite-volume 3-wave kinetic solver and theorem checker",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("simulate", "verify", "bounds"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="run configuration file")
        sp.add_argument("--out", default=None, help="output directory override")
        if name == "verify":
            sp.add_argument("--seed", type=int, default=0, help="ensemble seed")

    sp = sub.add_parser("repro")
    sp.add_argument("test_id", choices=sorted(PRESETS))
    sp.add_argument("--out", default=None, help="output directory override")

    args = parser.parse_args(argv)
    try:
        if args.command == "repro":
            out = Path(args.out) if args.out else Path("out") / args.test_id
            cmd_repro(args.test_id, out)
            return 0
        cfg = _load_config(args.config)
        out = Path(args.out) if args.out else Path(cfg.out_dir)
        if args.command == "simulate":
            cmd_simulate(cfg, out)
            return 0
        if args.command == "bounds":
            cmd_bounds(cfg, out)
            return 0
        return cmd_verify(cfg, out, seed=args.seed)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (WavekinError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
