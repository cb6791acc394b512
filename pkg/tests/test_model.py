import math

import numpy as np
import pytest

from wavekin import (
    ModelParams,
    ParameterViolation,
    build_tables,
    gamma_value,
    kernel_value,
    validate_params,
)
from helpers import paper_params, random_params


def test_validate_accepts_reference_set():
    validate_params(paper_params())


def test_validate_rejects_zero_delta():
    p = ModelParams(h=0.1, alpha=(0, 0, 0), beta=(0, 0, 0), delta=0.0, n_cells=10)
    with pytest.raises(ParameterViolation):
        validate_params(p)


def test_validate_rejects_dominance_violation():
    # 0.2 <= 2*0.5 + 0.5 - 1 = 0.5 (and also fails the pairwise inequality)
    p = ModelParams(h=0.1, alpha=(0.5,) * 3, beta=(0.5,) * 3, delta=0.2, n_cells=10)
    with pytest.raises(ParameterViolation):
        validate_params(p)


def test_validate_rejects_second_inequality_alone():
    # delta > alpha_n + beta_n holds but delta <= 2*alpha_1 + beta_1 - 1
    p = ModelParams(h=0.1, alpha=(1.2, 0, 0), beta=(0, 0, 0), delta=1.3, n_cells=10)
    with pytest.raises(ParameterViolation, match="2\\*alpha_1"):
        validate_params(p)


def test_validate_rejects_equality():
    # inequalities are strict
    p = ModelParams(h=0.1, alpha=(0.1,) * 3, beta=(0.1,) * 3, delta=0.2, n_cells=10)
    with pytest.raises(ParameterViolation):
        validate_params(p)


def test_validate_rejects_bad_sizes():
    with pytest.raises(ParameterViolation):
        validate_params(
            ModelParams(h=0.0, alpha=(0.1,) * 3, beta=(0.1,) * 3, delta=0.4, n_cells=10)
        )
    with pytest.raises(ParameterViolation):
        validate_params(
            ModelParams(h=0.1, alpha=(0.1,) * 3, beta=(0.1,) * 3, delta=0.4, n_cells=1)
        )
    with pytest.raises(ParameterViolation):
        validate_params(
            ModelParams(h=0.1, alpha=(-0.1, 0.1, 0.1), beta=(0.1,) * 3, delta=0.4, n_cells=10)
        )


def test_kernel_constant_when_exponents_zero():
    p = ModelParams(h=0.3, alpha=(0, 0, 0), beta=(0, 0, 0), delta=0.5, n_cells=16)
    for n in (1, 2, 3):
        for i, j in [(1, 1), (2, 7), (16, 16)]:
            assert kernel_value(p, n, i, j) == 1.0


def test_kernel_log_domain_value():
    # independent log-domain evaluation of (0.1)^0.1 (0.1)^0.1 (0.2)^0.1
    p = paper_params(n_cells=10)
    expected = math.exp(
        0.1 * math.log(0.1) + 0.1 * math.log(0.1) + 0.1 * math.log(0.2)
    )
    got = kernel_value(p, 1, 1, 1)
    assert got == pytest.approx(expected, rel=1e-13)
    assert got == pytest.approx(0.53716, rel=1e-4)


def test_kernel_symmetry_exact():
    rng = np.random.default_rng(7)
    for _ in range(50):
        p = random_params(rng, n_cells=40)
        i, j = rng.integers(1, 41, size=2)
        n = int(rng.integers(1, 4))
        assert kernel_value(p, n, int(i), int(j)) == kernel_value(p, n, int(j), int(i))


def test_gamma_values():
    p = paper_params(n_cells=20)
    assert gamma_value(p, 10) == 1.0  # (10 * 0.1)^0.4 = 1
    p1 = ModelParams(h=1.0, alpha=(0.1,) * 3, beta=(0.1,) * 3, delta=0.7, n_cells=10)
    assert gamma_value(p1, 1) == 1.0
    expected = math.exp(0.4 * math.log(0.1))
    assert gamma_value(p, 1) == pytest.approx(expected, rel=1e-13)
    assert gamma_value(p, 1) == pytest.approx(0.39811, rel=1e-4)


def test_gamma_strictly_increasing():
    p = paper_params(n_cells=50)
    vals = [gamma_value(p, i) for i in range(1, 51)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_tables_match_direct_evaluation():
    rng = np.random.default_rng(11)
    for _ in range(5):
        p = random_params(rng, n_cells=30)
        t = build_tables(p)
        for arr in (*t.x_alpha, *t.x_sumpow, t.x_gamma):
            assert arr.shape == (2 * p.n_cells + 1,)
        for i in range(1, 2 * p.n_cells + 1):
            assert t.x_gamma[i] == pytest.approx(
                math.exp(p.delta * math.log(i * p.h)), rel=1e-14
            )
        for n in (1, 2, 3):
            for i in range(1, p.n_cells + 1):
                j = int(rng.integers(1, p.n_cells + 1))
                direct = kernel_value(p, n, i, j)
                from_tables = (
                    t.x_alpha[n - 1][i] * t.x_alpha[n - 1][j] * t.x_sumpow[n - 1][i + j]
                )
                assert from_tables == pytest.approx(direct, rel=1e-13)


def test_tables_constant_for_zero_exponents():
    p = ModelParams(h=0.2, alpha=(0, 0, 0), beta=(0, 0, 0), delta=0.5, n_cells=4)
    t = build_tables(p)
    assert t.x_alpha[0].shape[0] >= 8
    for arr in (*t.x_alpha, *t.x_sumpow):
        assert np.all(arr == 1.0)


def test_tables_are_readonly():
    t = build_tables(paper_params(n_cells=8))
    with pytest.raises(ValueError):
        t.x_gamma[1] = 0.0


def test_grid_point():
    p = paper_params(n_cells=10)
    assert p.grid_point(7) == pytest.approx(0.7)
    assert np.allclose(p.grid, np.arange(1, 11) * 0.1)
