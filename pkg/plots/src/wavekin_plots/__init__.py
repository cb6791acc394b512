"""Manifest-driven rendering of wavekin CSV output into the reference figure set."""

from .manifest import FigureSpec, ManifestError, PlotManifest, collect_inputs, load_manifest
from .render import render

__version__ = "0.1.0"
