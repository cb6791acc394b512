"""Deterministic figure rendering from validated manifests.

Styling is pinned (Agg backend, fixed figure geometry, explicit axis ranges
from the manifest, fixed PNG metadata) so re-rendering the same inputs is
byte-stable.  No model quantity is recomputed here: the curves are exactly
the CSV columns the solver wrote.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .manifest import FigureSpec, PlotManifest, collect_inputs  # noqa: E402

_RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.6,
}
_PNG_META = {"Software": "wavekin-plots"}


def _clip_series(ts, ys, lim):
    lo, hi = lim
    pairs = [(t, y) for t, y in zip(ts, ys) if lo <= t <= hi * (1 + 1e-12)]
    return [t for t, _ in pairs], [y for _, y in pairs]


def _draw_snapshot(ax, fig_spec: FigureSpec, table):
    ax.plot(table["x"], table["f"], color="C0")
    ax.set_xlabel(fig_spec.xlabel or "x")
    ax.set_ylabel(fig_spec.ylabel or "f")
    ax.set_title(fig_spec.title or fig_spec.id)
    ax.set_xlim(*fig_spec.xlim)
    ax.set_ylim(*fig_spec.ylim)


def _draw_series(ax, fig_spec: FigureSpec, table, column: str, title: str):
    ts, ys = _clip_series(table["t"], table[column], fig_spec.xlim)
    ax.plot(ts, ys, color="C0")
    ax.set_xlabel(fig_spec.xlabel or "t")
    ax.set_ylabel(column)
    ax.set_title(title)
    ax.set_xlim(*fig_spec.xlim)
    ax.set_ylim(*fig_spec.ylim)


def render(manifest: PlotManifest, out_dir: str | Path) -> list[Path]:
    """Render every figure in the manifest; returns the written paths.

    All inputs are validated before the first file is written, so a broken
    CSV produces an error and no partial output.
    """
    tables = collect_inputs(manifest)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    with plt.rc_context(_RC):
        for fig_spec in manifest.figures:
            table = tables[fig_spec.csv]
            if fig_spec.kind == "series_pair":
                fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6))
                for ax, column in zip(axes, fig_spec.columns):
                    _draw_series(ax, fig_spec, table, column, column)
                fig.suptitle(fig_spec.title or fig_spec.id)
                fig.tight_layout()
            else:
                fig, ax = plt.subplots(figsize=(5.0, 3.8))
                if fig_spec.kind == "snapshot":
                    _draw_snapshot(ax, fig_spec, table)
                else:
                    _draw_series(
                        ax, fig_spec, table, fig_spec.columns[0],
                        fig_spec.title or fig_spec.id,
                    )
                fig.tight_layout()
            target = out_dir / fig_spec.out
            fig.savefig(target, metadata=_PNG_META)
            plt.close(fig)
            written.append(target)
    return written
