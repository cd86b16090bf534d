import itertools
import math

import numpy as np
import pytest

from selfsim import (
    SimilaritySystem,
    boundary_anchors,
    cdf_consistency,
    coded_interval,
    coded_interval_mass,
    measure_from_function,
    mesh_code_values,
    sample,
)
from selfsim.errors import BadIndex, NotApplicable
from selfsim.presets import bernoulli, cantor_family, identity2

CANTOR = cantor_family(1.0 / 3.0, 0.0)
BERN = bernoulli(1.0 / 3.0)


def uniform_system():
    # d = a, c = 0, beta_k = alpha_k: the fixed point is x, mu is Lebesgue
    return SimilaritySystem(
        a=(0.5, 0.25, 0.25), c=(0, 0, 0), d=(0.5, 0.25, 0.25), beta=(0.0, 0.5, 0.75)
    )


def test_cantor_rejected_without_collapse():
    with pytest.raises(NotApplicable):
        measure_from_function(CANTOR)


def test_cantor_collapse():
    mu = measure_from_function(CANTOR, collapse_zero_branches=True)
    assert mu.rho == (0.5, 0.5)
    assert mu.letters == (1, 3)
    assert mu.left == pytest.approx((0.0, 2 / 3), abs=1e-15)
    assert coded_interval_mass(mu, (1, 1)) == 0.25
    lo, hi = coded_interval(mu, (1, 1))
    assert (lo, hi) == (0.0, 1 / 9)


def test_bernoulli_weights():
    mu = measure_from_function(BERN)
    assert mu.rho == pytest.approx((1 / 3, 2 / 3), abs=1e-15)


def test_uniform_is_lebesgue():
    mu = measure_from_function(uniform_system())
    for w in itertools.product((1, 2, 3), repeat=3):
        lo, hi = coded_interval(mu, w)
        assert coded_interval_mass(mu, w) == pytest.approx(hi - lo, abs=1e-14)


def test_rejects_nonzero_c():
    with pytest.raises(NotApplicable) as exc:
        measure_from_function(identity2())
    assert "c=0" in exc.value.violated


def test_rejects_non_monotone():
    s = SimilaritySystem(a=(0.5, 0.5), c=(0, 0), d=(1.5 / 2, 0.25), beta=(0.5, 0.0))
    with pytest.raises(NotApplicable):
        measure_from_function(s)


def test_mass_conservation():
    mu = measure_from_function(BERN)
    for m in (1, 3, 6):
        total = math.fsum(
            coded_interval_mass(mu, w)
            for w in itertools.product((1, 2), repeat=m)
        )
        assert abs(total - 1.0) <= m * mu.n * 1e-15


def test_empty_code_mass_one():
    mu = measure_from_function(BERN)
    assert coded_interval_mass(mu, ()) == 1.0


def test_bad_letter():
    mu = measure_from_function(BERN)
    with pytest.raises(BadIndex):
        coded_interval_mass(mu, (3,))


def test_depth1_masses_match_cdf_increments():
    mu = measure_from_function(BERN)
    anc = boundary_anchors(BERN)
    _, vL, _, vR = mesh_code_values(BERN, anc, 1)
    for k in range(mu.n):
        assert mu.rho[k] == pytest.approx(vR[k] - vL[k], abs=1e-14)


def test_cdf_consistency_examples():
    assert cdf_consistency(uniform_system(), measure_from_function(uniform_system()), 6) <= 1e-14
    assert cdf_consistency(BERN, measure_from_function(BERN), 6) <= 1e-12
    mu = measure_from_function(CANTOR, collapse_zero_branches=True)
    assert cdf_consistency(CANTOR, mu, 5) <= 1e-12


def test_sample_deterministic():
    mu = measure_from_function(BERN)
    a = sample(mu, 100, 15, rng_seed=7)
    b = sample(mu, 100, 15, rng_seed=7)
    assert np.array_equal(a, b)
    assert ((a >= 0) & (a <= 1)).all()


def test_sample_uniform_kolmogorov():
    mu = measure_from_function(uniform_system())
    xs = np.sort(sample(mu, 10_000, 20, rng_seed=3))
    ecdf = np.arange(1, xs.size + 1) / xs.size
    assert np.abs(ecdf - xs).max() <= 0.02
