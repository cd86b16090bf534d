import math

import numpy as np
import pytest

from selfsim import (
    PiecewiseLinearFn,
    SimilaritySystem,
    apply_G,
    contraction_factor,
    lp_distance,
    lp_norm,
    solve,
)
from selfsim.errors import BadExponent, NotContractive
from selfsim.presets import cantor_family, identity2, step

from conftest import random_system

CANTOR = cantor_family(1.0 / 3.0, 0.0)
IDENTITY = PiecewiseLinearFn.identity()
ZERO = PiecewiseLinearFn.zero()


# ----------------------------------------------------------------------
# exact L_p integration
# ----------------------------------------------------------------------
def test_distance_of_equal_functions_is_zero():
    f = PiecewiseLinearFn([0, 0.4, 1], [1.0, -2.0, 3.0])
    for p in (1, 2, 2.5, math.inf):
        assert lp_distance(f, f, p) == 0.0


def test_identity_norms():
    assert lp_norm(IDENTITY, 2) == pytest.approx(math.sqrt(1 / 3), rel=1e-15)
    assert lp_norm(IDENTITY, math.inf) == 1.0
    assert lp_norm(IDENTITY, 1) == pytest.approx(0.5, rel=1e-15)


def test_identity_fractional_norm():
    # int_0^1 x^p dx = 1/(p+1)
    for p in (1.5, 2.5, 3.75):
        assert lp_norm(IDENTITY, p) == pytest.approx((1 / (p + 1)) ** (1 / p), rel=1e-12)


def test_step_norm():
    f = PiecewiseLinearFn(
        [0, 1 / 3, 2 / 3, 1], [0, 0, 0.5, 0.5], [0, 0.5, 0.5, 0.5]
    )
    assert lp_norm(f, 1) == pytest.approx(1 / 3, rel=1e-14)


def test_sign_change_piece():
    # f(x) = 2x - 1: int |2x-1| dx = 1/2; int (2x-1)^2 = 1/3
    f = PiecewiseLinearFn([0, 1], [-1.0, 1.0])
    assert lp_distance(f, ZERO, 1) == pytest.approx(0.5, rel=1e-14)
    assert lp_distance(f, ZERO, 2) == pytest.approx(math.sqrt(1 / 3), rel=1e-14)


def test_near_constant_piece_stable():
    # nearly flat piece: closed form would cancel catastrophically
    eps = 1e-12
    f = PiecewiseLinearFn([0, 1], [1.0, 1.0 + eps])
    assert lp_norm(f, 3) == pytest.approx(1.0, rel=1e-12)


def test_bad_exponent():
    with pytest.raises(BadExponent):
        lp_distance(IDENTITY, ZERO, 0.3)


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------
def test_solve_identity_system_immediately_exact():
    res = solve(identity2(), 2, 1e-12)
    assert res.iterations == 1
    assert res.aposteriori_error == 0.0
    assert res.converged
    ts = np.linspace(0, 1, 11)
    assert np.allclose(res.approximant.value_right(ts), ts, atol=1e-15)


def test_solve_step_system():
    s = step([0.0, 1 / 3, 2 / 3, 1.0], [0.0, 0.5, 0.5])
    res = solve(s, 1, 1e-12)
    assert res.iterations == 1 and res.aposteriori_error == 0.0
    assert res.approximant.value_right([0.5])[0] == 0.5
    assert res.approximant.value_right([0.1])[0] == 0.0


def test_solve_cantor_geometric_decay():
    # consecutive L_1 steps shrink by exactly r_1 = 1/3
    f_prev = IDENTITY
    steps = []
    for _ in range(6):
        f_next = apply_G(CANTOR, f_prev)
        steps.append(lp_distance(f_next, f_prev, 1))
        f_prev = f_next
    ratios = [steps[i + 1] / steps[i] for i in range(len(steps) - 1)]
    assert np.allclose(ratios, 1 / 3, rtol=1e-9)


def test_solve_not_contractive():
    s = SimilaritySystem(a=(0.5, 0.5), c=(0, 0), d=(1.2, 1.1), beta=(0, 0))
    with pytest.raises(NotContractive):
        solve(s, 1, 1e-6)


def test_solve_depth_flagged():
    res = solve(CANTOR, 1, 1e-30, max_depth=3)
    assert not res.converged
    assert res.iterations == 3
    assert res.aposteriori_error > 0


def test_contraction_rate_equality(rng):
    # the operator scales L_p distances by exactly r_p^(1/p) for finite p
    for _ in range(10):
        system = random_system(rng, d_max=0.9)
        f = PiecewiseLinearFn([0, 0.3, 1], rng.normal(size=3))
        g = PiecewiseLinearFn([0, 0.7, 1], rng.normal(size=3))
        for p in (1, 2):
            rp = contraction_factor(system, p).r_p
            lhs = lp_distance(apply_G(system, f), apply_G(system, g), p)
            rhs = rp ** (1 / p) * lp_distance(f, g, p)
            assert lhs == pytest.approx(rhs, rel=1e-10)
        r_inf = contraction_factor(system, math.inf).r_p
        lhs = lp_distance(apply_G(system, f), apply_G(system, g), math.inf)
        assert lhs <= r_inf * lp_distance(f, g, math.inf) + 1e-12


def test_seed_independence(rng):
    system = random_system(rng, n=2, d_max=0.5)
    r1 = solve(system, 1, 1e-9, seed=IDENTITY)
    r2 = solve(system, 1, 1e-9, seed=PiecewiseLinearFn([0, 1], [2.0, -1.0]))
    d = lp_distance(r1.approximant, r2.approximant, 1)
    assert d <= r1.aposteriori_error + r2.aposteriori_error


def test_certified_error_honest_on_known_fixed_points():
    # identity and step systems have exactly known fixed points
    res = solve(identity2(), 1, 1e-10)
    assert lp_distance(res.approximant, IDENTITY, 1) <= res.aposteriori_error
    s = step([0.0, 0.5, 1.0], [1.0, -1.0])
    res = solve(s, 1, 1e-10)
    exact = PiecewiseLinearFn([0, 0.5, 1], [1.0, 1.0, -1.0], [1.0, -1.0, -1.0])
    assert lp_distance(res.approximant, exact, 1) <= res.aposteriori_error
