"""Shared generators for randomized checks (seeded, deterministic)."""

from __future__ import annotations

import numpy as np

from wavekin import ModelParams, State, Truncation


def random_params(
    rng: np.random.Generator,
    n_cells: int = 100,
    truncation: Truncation = Truncation.LEAKY,
) -> ModelParams:
    """Random parameter set satisfying both admissibility inequalities."""
    alpha = rng.uniform(0.0, 0.4, size=3)
    beta = rng.uniform(0.0, 0.4, size=3)
    lower = max(
        max(a + b for a, b in zip(alpha, beta)),
        2.0 * alpha[0] + beta[0] - 1.0,
        0.0,
    )
    delta = lower + rng.uniform(0.05, 0.8)
    return ModelParams(
        h=float(rng.uniform(0.05, 0.6)),
        alpha=tuple(float(a) for a in alpha),
        beta=tuple(float(b) for b in beta),
        delta=float(delta),
        n_cells=n_cells,
        truncation=truncation,
    )


def random_state(
    rng: np.random.Generator,
    p: ModelParams,
    max_index: int | None = None,
    max_sites: int = 20,
) -> State:
    """Sparse nonnegative state supported on 1..max_index (default N/2)."""
    n = p.n_cells
    top = max_index if max_index is not None else n // 2
    k = int(rng.integers(1, max_sites + 1))
    idx = rng.choice(np.arange(1, top + 1), size=min(k, top), replace=False)
    f = np.zeros(n)
    f[idx - 1] = rng.uniform(0.1, 2.0, size=idx.size)
    return State(f, p)


def paper_params(n_cells: int = 500, **kw) -> ModelParams:
    """The reference experiment's parameter set (h=0.1, all exponents 0.1, delta 0.4)."""
    return ModelParams(
        h=0.1,
        alpha=(0.1, 0.1, 0.1),
        beta=(0.1, 0.1, 0.1),
        delta=0.4,
        n_cells=n_cells,
        **kw,
    )
