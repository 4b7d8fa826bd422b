import math

import numpy as np
import pytest

from weylkit.constants import TWO_PI, constants, phase_space_integral
from weylkit.errors import ConfigError, ConvergenceError
from weylkit.halfspace import (
    HalfspaceDensity,
    absolute_moment,
    boundary_coefficient,
    boundary_partial_sums,
    cosine_integral,
    density_profile,
    profile_to_csv,
    tail_bound_check,
)


def test_small_t_limit_matches_phase_space_integral():
    for d in (2, 3, 4):
        target = phase_space_integral(d, 1)
        assert cosine_integral(d, 1e-8) == pytest.approx(target, rel=1e-9)


def test_dual_evaluation_grid():
    # the call itself raises if quadrature and Bessel form disagree > 1e-8
    for d in (2, 3, 4):
        for t in (0.1, 1.0, 5.0, 10.0, 50.0):
            cosine_integral(d, t)


def test_oscillation_and_decay():
    ts = np.linspace(0.05, 20.0, 400)
    vals = np.array([cosine_integral(2, t) for t in ts])
    signs = np.sign(vals)
    changes = int(np.sum(signs[:-1] * signs[1:] < 0))
    assert changes >= 5
    # magnitude at t = 10 is well below the t -> 0 value
    assert abs(cosine_integral(2, 10.0)) < 0.02 * phase_space_integral(2, 1)


def test_invalid_arguments():
    with pytest.raises(ConfigError):
        cosine_integral(1, 1.0)
    with pytest.raises(ConfigError):
        cosine_integral(2, 0.0)
    with pytest.raises(ConfigError):
        density_profile(2, -1.0)


def test_profile_wall_and_bulk():
    assert density_profile(2, 0.0) == 0.0
    l2 = constants(2).L_d
    assert abs(density_profile(2, 100.0) - l2) < 1e-3
    assert abs(density_profile(3, 100.0) - constants(3).L_d) < 1e-3


def test_halfspace_density_object():
    hd = HalfspaceDensity(2)
    assert hd.bulk == pytest.approx(constants(2).L_d, rel=1e-15)
    assert hd.profile(0.0) == 0.0
    assert hd.profile(3.0) == pytest.approx(density_profile(2, 3.0), rel=1e-15)
    with pytest.raises(ConfigError):
        HalfspaceDensity(1)


def test_profile_bounds():
    l2 = constants(2).L_d
    for t in np.concatenate([np.linspace(0.01, 10, 60), [25.0, 60.0]]):
        rho = density_profile(2, float(t))
        assert -1e-12 <= rho <= 1.3 * l2


def test_boundary_coefficient_values():
    assert boundary_coefficient(2, 200.0) == pytest.approx(
        1.0 / (6.0 * math.pi), abs=1e-4
    )
    assert boundary_coefficient(3, 200.0) == pytest.approx(
        0.25 * constants(2).L_d, abs=1e-4
    )
    # the identity target is 1/(32 pi) in d = 3
    assert 0.25 * constants(2).L_d == pytest.approx(1.0 / (32.0 * math.pi), rel=1e-13)


def test_boundary_coefficient_converges_in_horizon():
    vals = [boundary_coefficient(2, t) for t in (50.0, 100.0, 200.0)]
    target = 0.25 * constants(1).L_d
    errs = [abs(v - target) for v in vals]
    assert errs[-1] < 1e-6
    assert max(errs) < 1e-4


def test_boundary_partial_sums_bracket():
    ts, partial = boundary_partial_sums(2, 40.0)
    target = 0.25 * constants(1).L_d
    signs = np.sign(partial - target)
    assert np.all(signs[:-1] * signs[1:] < 0)  # alternating around the limit


def test_boundary_coefficient_horizon_too_small():
    with pytest.raises(ConvergenceError):
        boundary_coefficient(2, 4.0)
    with pytest.raises(ConfigError):
        boundary_coefficient(2, -1.0)


def test_profile_integral_reproduces_boundary_coefficient():
    # int_0^T (L_d - rho) dt equals the truncated boundary-coefficient
    # integral; compare the accelerated value against the identity target
    d = 2
    target = 0.25 * constants(1).L_d
    assert boundary_coefficient(d, 120.0) == pytest.approx(target, abs=1e-6)


def test_tail_bound_finite_and_stable():
    for d in (2, 3):
        a = tail_bound_check(d, 100.0)
        b = tail_bound_check(d, 400.0)
        assert math.isfinite(a) and a > 0
        assert abs(a - b) < 1e-3
    # faster decay in d = 3 gives smaller stabilization error
    d2 = abs(tail_bound_check(2, 100.0) - tail_bound_check(2, 400.0))
    d3 = abs(tail_bound_check(3, 100.0) - tail_bound_check(3, 400.0))
    assert d3 < d2


def test_integrand_vanishes_at_origin():
    # t * correction is O(t) near 0: no singularity in the moment integral
    small = absolute_moment(2, 0.9)
    assert small < 0.5 * phase_space_integral(2, 1) / TWO_PI**2


def test_profile_csv(tmp_path):
    path = tmp_path / "profile.csv"
    profile_to_csv(2, [0.0, 1.0, 5.0], path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,rho,bulk"
    assert len(lines) == 4
    first = lines[1].split(",")
    assert float(first[1]) == 0.0
