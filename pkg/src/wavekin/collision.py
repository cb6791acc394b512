"""Discrete interaction operators on the truncated grid.

For a state f on cells 1..N the interaction splits into a binary coagulation
channel (kernel K_1) and two structurally identical fragmentation-type
channels (kernels K_2, K_3), plus the dissipation V_i = (ih)^delta f_i:

    S1_i = sum_{j<i} K1(j, i-j) f_j f_{i-j}  -  2 sum_j K1(i, j) f_i f_j
    Sn_i = -sum_{j<i} Kn(i-j, j) f_i f_j
           + sum_{j>i} Kn(j-i, i) f_i f_j
           + sum_{j>i} Kn(i, j-i) f_j f_{j-i},        n = 2, 3

All seven partner sums are direct (non-FFT) convolutions or correlations of
length-N vectors built from the power tables, so one operator application
costs O(N^2) multiply-adds with a fixed, reproducible accumulation order.

Truncation: every partner sum stops at j = N and gain landing beyond N is
dropped (LEAKY); CONSERVATIVE additionally stops the K_1 loss at j = N - i so
the coagulation channel pairs exactly and the interaction part conserves the
first moment on the whole window.

The loss part of every channel carries a factor f_i, giving the entrywise
decomposition O = O+ - O- with O-_i = L_i f_i; ``loss_rate_bound`` returns
L_i, the quantity the explicit integrator's step-size heuristic uses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SupportTooLarge
from .model import ModelParams, PowerTables, Truncation
from .state import State


@dataclass(frozen=True)
class _Primitives:
    """The seven partner sums, as rate or gain vectors over cells 1..N."""

    gain1: np.ndarray   # sum_{j<i} K1(j,i-j) f_j f_{i-j}
    lrate1: np.ndarray  # 2 sum_j K1(i,j) f_j                (K1 loss rate)
    lrate2: np.ndarray  # sum_{j<i} K2(i-j,j) f_j            (K2 loss rate)
    lrate3: np.ndarray
    mrate2: np.ndarray  # sum_{j>i} K2(j-i,i) f_j            (K2 gain rate at i)
    mrate3: np.ndarray
    gain2: np.ndarray   # sum_{j>i} K2(i,j-i) f_j f_{j-i}    (gain at difference)
    gain3: np.ndarray
    gamma: np.ndarray   # (ih)^delta


def _primitives(p: ModelParams, tables: PowerTables, f: np.ndarray) -> _Primitives:
    n = p.n_cells
    a1 = tables.x_alpha[0][1 : n + 1]
    s1 = tables.x_sumpow[0]

    u = a1 * f
    conv_gain = np.convolve(u, u)
    gain1 = np.zeros(n)
    gain1[1:] = s1[2 : n + 1] * conv_gain[: n - 1]  # pair (j, i-j) lands at index i+j-2

    if p.truncation is Truncation.CONSERVATIVE:
        # partner restricted to j <= N - i so the paired gain stays on the window
        conv_loss = np.convolve(s1[1 : n + 1], u[::-1])
        t_sum = np.zeros(n)
        t_sum[: n - 1] = conv_loss[n : 2 * n - 1]
    else:
        conv_loss = np.convolve(s1[2 : 2 * n + 1], u[::-1])
        t_sum = conv_loss[n - 1 : 2 * n - 1]
    lrate1 = 2.0 * a1 * t_sum

    lrates = []
    mrates = []
    gains = []
    for k in (1, 2):
        ak = tables.x_alpha[k][1 : n + 1]
        sk = tables.x_sumpow[k]
        w = ak * f
        w2 = sk[1 : n + 1] * f

        conv_l = np.convolve(ak, w)
        lr = np.zeros(n)
        lr[1:] = sk[2 : n + 1] * conv_l[: n - 1]
        lrates.append(lr)

        conv_m = np.convolve(ak, w2[::-1])  # correlation at positive lag i
        mr = np.zeros(n)
        mr[: n - 1] = conv_m[n - 2 :: -1]
        mrates.append(ak * mr)

        conv_g = np.convolve(w, w2[::-1])
        gd = np.zeros(n)
        gd[: n - 1] = conv_g[n - 2 :: -1]
        gains.append(ak * gd)

    return _Primitives(
        gain1=gain1,
        lrate1=lrate1,
        lrate2=lrates[0],
        lrate3=lrates[1],
        mrate2=mrates[0],
        mrate3=mrates[1],
        gain2=gains[0],
        gain3=gains[1],
        gamma=tables.x_gamma[1 : n + 1],
    )


def apply_s1(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """Coagulation channel: gain at i = j + (i-j) minus twice the pair loss."""
    pr = _primitives(p, tables, s.f)
    return pr.gain1 - s.f * pr.lrate1


def apply_s2(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    pr = _primitives(p, tables, s.f)
    return s.f * pr.mrate2 + pr.gain2 - s.f * pr.lrate2


def apply_s3(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    pr = _primitives(p, tables, s.f)
    return s.f * pr.mrate3 + pr.gain3 - s.f * pr.lrate3


def apply_v(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """Dissipation V_i = (ih)^delta f_i."""
    return tables.x_gamma[1 : p.n_cells + 1] * s.f


def apply_s(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """Interaction part S = S1 + S2 + S3 (one fused evaluation)."""
    pr = _primitives(p, tables, s.f)
    f = s.f
    s1 = pr.gain1 - f * pr.lrate1
    s2 = f * pr.mrate2 + pr.gain2 - f * pr.lrate2
    s3 = f * pr.mrate3 + pr.gain3 - f * pr.lrate3
    return s1 + s2 + s3


def apply_o(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """Full right-hand side O = S1 + S2 + S3 - V."""
    pr = _primitives(p, tables, s.f)
    return _assemble_o(pr, s.f)


def _assemble_o(pr: _Primitives, f: np.ndarray) -> np.ndarray:
    s1 = pr.gain1 - f * pr.lrate1
    s2 = f * pr.mrate2 + pr.gain2 - f * pr.lrate2
    s3 = f * pr.mrate3 + pr.gain3 - f * pr.lrate3
    return s1 + s2 + s3 - pr.gamma * f


def apply_gain(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """O+ : every term is a product of state entries, so it is >= 0 on f >= 0."""
    pr = _primitives(p, tables, s.f)
    f = s.f
    return pr.gain1 + f * pr.mrate2 + pr.gain2 + f * pr.mrate3 + pr.gain3


def apply_loss(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """O- : exactly loss_rate_bound(i) * f_i, entry by entry."""
    return loss_rate_bound(p, tables, s) * s.f


def loss_rate_bound(p: ModelParams, tables: PowerTables, s: State) -> np.ndarray:
    """Per-cell rate L_i with O-[f](i) = L_i f_i.

    L_i = 2 sum_j K1(i,j) f_j + sum_{j<i} (K2+K3)(i-j,j) f_j + (ih)^delta.
    """
    pr = _primitives(p, tables, s.f)
    return pr.lrate1 + pr.lrate2 + pr.lrate3 + pr.gamma


def weak_form_rhs(p: ModelParams, s: State, phi: np.ndarray) -> float:
    """Brute-force pairing sum, the independence oracle for sum_i S_i[f] phi(i).

    Evaluates

        sum_{i,j=1}^{N} [K1(i,j) f_i f_j - (K2+K3)(i,j) f_i f_{i+j}]
                        * (phi(i+j) - phi(i) - phi(j))

    with kernels computed directly from powers (no tables, no convolution),
    so it shares no code path with the operator evaluation it checks.

    Parameters
    ----------
    phi : test function as an array of length >= 2N, phi[i-1] = phi(i).

    Raises
    ------
    SupportTooLarge
        If the state's support goes beyond N/2, where padding would make
        the identity truncation-sensitive.
    """
    n = p.n_cells
    phi = np.asarray(phi, dtype=float)
    if phi.size < 2 * n:
        raise ValueError(f"phi must cover indices 1..{2 * n}, got length {phi.size}")
    support = np.flatnonzero(s.f) + 1
    if support.size and support.max() > n // 2:
        raise SupportTooLarge(
            f"max support index {support.max()} exceeds N/2 = {n // 2}"
        )

    x = p.grid
    f = s.f
    kern = []
    for m in range(3):
        a, b = p.alpha[m], p.beta[m]
        xa = np.power(x, a)
        xs = np.power(x[:, None] + x[None, :], b)
        kern.append(np.outer(xa, xa) * xs)

    ff = np.outer(f, f)
    fpad = np.concatenate([f, np.zeros(n)])
    idx = np.arange(1, n + 1)
    ij = idx[:, None] + idx[None, :]
    f_shift = fpad[ij - 1]  # f_{i+j}, zero beyond the window
    phi_comb = phi[ij - 1] - phi[idx - 1][:, None] - phi[idx - 1][None, :]

    integrand = (kern[0] * ff - (kern[1] + kern[2]) * (f[:, None] * f_shift)) * phi_comb
    return float(np.sum(integrand))
