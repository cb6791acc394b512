"""Render figures from a solver manifest: wavekin-render --manifest PATH --out DIR."""

from __future__ import annotations

import argparse
import sys

from .manifest import ManifestError, load_manifest
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wavekin-render",
        description="Render the figure set described by a solver manifest",
    )
    parser.add_argument("--manifest", required=True, help="manifest.json path")
    parser.add_argument("--out", required=True, help="output directory for images")
    args = parser.parse_args(argv)
    try:
        manifest = load_manifest(args.manifest)
        written = render(manifest, args.out)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
