import math

import numpy as np
import pytest

from wavekin import (
    CosineBump,
    DimensionMismatch,
    FileParseError,
    FromFile,
    Indicator,
    ModelParams,
    NegativeValueError,
    PointMasses,
    State,
    init_from_spec,
    l1_distance,
    l1_norm,
    min_value,
    moment,
    support_gcd,
)
from helpers import paper_params, random_params, random_state


@pytest.fixture(scope="module")
def p100():
    return paper_params(n_cells=100)


def test_cosine_bump_pointwise(p100):
    s = init_from_spec(p100, CosineBump(half_period=5.0))
    # x = 2.5: psi = (1 + cos(pi/2)) / 2 = 1/2
    assert s.f[24] == pytest.approx(0.5, abs=1e-12)
    # x = 5.0 sits outside the open support
    assert s.f[49] == 0.0
    assert s.f[50] == 0.0
    # interior value matches the sampled profile
    x = 13 * 0.1
    assert s.f[12] == pytest.approx(0.5 * (1 + math.cos(math.pi * x / 5.0)), rel=1e-12)
    assert np.all(s.f >= 0.0)


def test_cosine_bump_cell_average(p100):
    s = init_from_spec(p100, CosineBump(half_period=5.0, cell_average=True))
    # cell integrals tile (0, 5); total mass is integral of psi = L/2
    assert float(np.sum(s.f)) == pytest.approx(2.5, rel=1e-12)
    assert np.all(s.f >= 0.0)


def test_indicator_membership(p100):
    s = init_from_spec(p100, Indicator(a=3.0, b=5.0))
    assert s.f[29] == 1.0  # x = 3.0
    assert s.f[28] == 0.0  # x = 2.9
    assert s.f[49] == 1.0  # x = 5.0 up to roundoff, closed endpoint
    assert s.f[50] == 0.0
    assert l1_norm(s) == 21.0  # cells i = 30..50


def test_indicator_cell_average(p100):
    s = init_from_spec(p100, Indicator(a=3.0, b=5.0, cell_average=True))
    assert float(np.sum(s.f)) == pytest.approx(2.0, rel=1e-12)


def test_point_masses(p100):
    s = init_from_spec(p100, PointMasses(masses=((20, 1.5), (40, 0.5))))
    assert s.f[19] == 1.5 and s.f[39] == 0.5
    assert np.count_nonzero(s.f) == 2
    with pytest.raises(ValueError):
        init_from_spec(p100, PointMasses(masses=((0, 1.0),)))


def test_file_initial_data(tmp_path, p100):
    path = tmp_path / "init.txt"
    path.write_text("# comment\n1 2.5e-1\n40 1.0e0\n\n")
    s = init_from_spec(p100, FromFile(str(path)))
    assert s.f[0] == 0.25 and s.f[39] == 1.0

    bad = tmp_path / "bad.txt"
    bad.write_text("1 2.5 extra\n")
    with pytest.raises(FileParseError, match="bad.txt:1"):
        init_from_spec(p100, FromFile(str(bad)))

    neg = tmp_path / "neg.txt"
    neg.write_text("3 -1.0\n")
    with pytest.raises(NegativeValueError):
        init_from_spec(p100, FromFile(str(neg)))

    out = tmp_path / "out.txt"
    out.write_text("101 1.0\n")
    with pytest.raises(FileParseError, match="outside"):
        init_from_spec(p100, FromFile(str(out)))


def test_state_rejects_non_finite_entries(p100):
    from wavekin import NonFiniteState

    f = np.zeros(100)
    f[3] = np.inf
    with pytest.raises(NonFiniteState):
        State(f, p100)


def test_moment_zero_state(p100):
    s = State(np.zeros(100), p100)
    for k in (0.0, 1.0, 2.5):
        assert moment(s, k) == 0.0


def test_moment_single_site():
    p = ModelParams(h=0.5, alpha=(0.1,) * 3, beta=(0.1,) * 3, delta=0.5, n_cells=8)
    f = np.zeros(8)
    f[1] = 3.0  # site i = 2, location 1.0
    s = State(f, p)
    assert moment(s, 2.0) == pytest.approx(3.0, rel=1e-14)


def test_moment_zero_order_is_l1_for_nonnegative():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = random_params(rng, n_cells=60)
        s = random_state(rng, p)
        assert moment(s, 0.0) == pytest.approx(l1_norm(s), rel=1e-14)


def test_moment_rejects_negative_order(p100):
    with pytest.raises(ValueError):
        moment(State(np.zeros(100), p100), -0.5)


def test_low_moment_bounded_by_high_moment():
    # m_{k1} <= h^(k1-k2) m_{k2} for k1 < k2
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = random_params(rng, n_cells=80)
        s = random_state(rng, p, max_index=80)
        k1, k2 = np.sort(rng.uniform(0.0, 6.0, size=2))
        if k1 == k2:
            continue
        bound = math.exp((k1 - k2) * math.log(p.h)) * moment(s, k2)
        assert moment(s, k1) <= bound * (1 + 1e-12)


def test_l1_distance_axioms():
    rng = np.random.default_rng(9)
    p = random_params(rng, n_cells=50)
    for _ in range(50):
        s1 = random_state(rng, p, max_index=50)
        s2 = random_state(rng, p, max_index=50)
        s3 = random_state(rng, p, max_index=50)
        assert l1_distance(s1, s1) == 0.0
        d12 = l1_distance(s1, s2)
        assert d12 == pytest.approx(l1_distance(s2, s1), rel=1e-15)
        assert l1_distance(s1, s3) <= d12 + l1_distance(s2, s3) + 1e-12


def test_l1_distance_dimension_mismatch():
    rng = np.random.default_rng(1)
    pa = random_params(rng, n_cells=50)
    pb = random_params(rng, n_cells=60)
    with pytest.raises(DimensionMismatch):
        l1_distance(State(np.zeros(50), pa), State(np.zeros(60), pb))


def test_support_gcd(p100):
    def from_sites(sites):
        f = np.zeros(100)
        for i in sites:
            f[i - 1] = 1.0
        return State(f, p100)

    assert support_gcd(from_sites([2, 4])) == 2
    assert support_gcd(from_sites([2, 3])) == 1
    assert support_gcd(from_sites([6])) == 6
    assert support_gcd(State(np.zeros(100), p100)) == 0


def test_support_gcd_scale_invariant(p100):
    rng = np.random.default_rng(21)
    for _ in range(20):
        s = random_state(rng, p100)
        scaled = State(s.f * float(rng.uniform(0.5, 100.0)), p100)
        assert support_gcd(s) == support_gcd(scaled)


def test_support_gcd_threshold(p100):
    f = np.zeros(100)
    f[1] = 1e-20
    f[3] = 1.0
    s = State(f, p100)
    assert support_gcd(s, threshold=0.0) == 2
    assert support_gcd(s, threshold=1e-10) == 4


def test_min_value(p100):
    assert min_value(State(np.zeros(100), p100)) == 0.0
    f = np.zeros(100)
    f[7] = -1e-9
    assert min_value(State(f, p100)) == -1e-9
    rng = np.random.default_rng(2)
    s = random_state(rng, p100)
    assert min_value(s) >= 0.0


def test_compensated_sums_agree(p100):
    rng = np.random.default_rng(17)
    s = random_state(rng, p100)
    assert moment(s, 2.0, compensated=True) == pytest.approx(moment(s, 2.0), rel=1e-13)
    assert l1_norm(s, compensated=True) == pytest.approx(l1_norm(s), rel=1e-13)
