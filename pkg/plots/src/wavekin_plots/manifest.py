"""Figure manifest loading and input validation.

A manifest is the JSON file the solver's `repro` command writes next to its
CSV output: a list of figure descriptions, each naming its input CSV, the
columns to draw, fixed axis ranges, and the output image name.  Everything
is validated up front; the renderer never writes a partial figure set.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

KINDS = ("snapshot", "series", "series_pair")


class ManifestError(Exception):
    """Malformed manifest or missing/invalid input CSV."""


@dataclass(frozen=True)
class FigureSpec:
    id: str
    kind: str
    csv: str
    out: str
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    xlim: tuple[float, float] = (0.0, 1.0)
    ylim: tuple[float, float] = (0.0, 1.0)
    columns: tuple[str, ...] = ()


@dataclass(frozen=True)
class PlotManifest:
    base_dir: Path
    figures: tuple[FigureSpec, ...]
    preset: str = ""
    stem: str = ""


def _limits(raw, key: str, fig_id: str) -> tuple[float, float]:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(v, (int, float)) and math.isfinite(v) for v in raw)
    ):
        raise ManifestError(f"figure '{fig_id}': {key} must be two finite numbers")
    lo, hi = float(raw[0]), float(raw[1])
    if not lo < hi:
        raise ManifestError(f"figure '{fig_id}': {key} range is empty ({lo}, {hi})")
    return lo, hi


def load_manifest(path: str | Path) -> PlotManifest:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict) or "figures" not in raw:
        raise ManifestError(f"{path}: expected an object with a 'figures' list")
    figures = []
    seen_ids: set[str] = set()
    for entry in raw["figures"]:
        fig_id = entry.get("id", "")
        if not fig_id:
            raise ManifestError(f"{path}: figure without an id")
        if fig_id in seen_ids:
            raise ManifestError(f"{path}: duplicate figure id '{fig_id}'")
        seen_ids.add(fig_id)
        kind = entry.get("kind", "")
        if kind not in KINDS:
            raise ManifestError(
                f"figure '{fig_id}': kind must be one of {KINDS}, got {kind!r}"
            )
        for key in ("csv", "out"):
            if not entry.get(key):
                raise ManifestError(f"figure '{fig_id}': missing '{key}'")
        columns = tuple(entry.get("columns", ()))
        if kind == "series" and len(columns) != 1:
            raise ManifestError(f"figure '{fig_id}': series needs exactly one column")
        if kind == "series_pair" and len(columns) != 2:
            raise ManifestError(
                f"figure '{fig_id}': series_pair needs exactly two columns"
            )
        figures.append(
            FigureSpec(
                id=fig_id,
                kind=kind,
                csv=entry["csv"],
                out=entry["out"],
                title=entry.get("title", ""),
                xlabel=entry.get("xlabel", ""),
                ylabel=entry.get("ylabel", ""),
                xlim=_limits(entry.get("xlim", (0, 1)), "xlim", fig_id),
                ylim=_limits(entry.get("ylim", (0, 1)), "ylim", fig_id),
                columns=columns,
            )
        )
    return PlotManifest(
        base_dir=path.parent,
        figures=tuple(figures),
        preset=raw.get("preset", ""),
        stem=raw.get("stem", ""),
    )


def read_table(path: Path) -> dict[str, list[float]]:
    """Read a headered CSV into float columns; empty data is an error."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ManifestError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ManifestError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    if not body:
        raise ManifestError(f"{path}: no data rows")
    table: dict[str, list[float]] = {name: [] for name in header}
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise ManifestError(f"{path}:{lineno}: ragged row")
        for name, val in zip(header, row):
            try:
                table[name].append(float(val))
            except ValueError as exc:
                raise ManifestError(f"{path}:{lineno}: {exc}") from exc
    return table


def collect_inputs(manifest: PlotManifest) -> dict[str, dict[str, list[float]]]:
    """Load and validate every referenced CSV before anything is rendered."""
    tables: dict[str, dict[str, list[float]]] = {}
    for fig in manifest.figures:
        if fig.csv not in tables:
            tables[fig.csv] = read_table(manifest.base_dir / fig.csv)
        table = tables[fig.csv]
        needed = ("x", "f") if fig.kind == "snapshot" else ("t", *fig.columns)
        for col in needed:
            if col not in table:
                raise ManifestError(
                    f"figure '{fig.id}': column '{col}' missing from {fig.csv}"
                )
    return tables
