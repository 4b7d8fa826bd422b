import math

import numpy as np
import pytest

from weylkit.constants import TWO_PI, Constants, constants, gamma, phase_space_integral
from weylkit.errors import ConfigError


def test_gamma_against_stdlib():
    for x in [0.5, 1.0, 1.5, 2.0, 2.5, 3.5, 7.0, 11.0, 15.5, 21.0]:
        assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_d2_closed_forms():
    c = constants(2)
    assert c.omega_d == pytest.approx(math.pi, rel=1e-14)
    assert c.C_d == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-14)
    assert c.L_d == pytest.approx(1.0 / (8.0 * math.pi), rel=1e-14)


def test_d1_closed_forms():
    c = constants(1)
    assert c.omega_d == pytest.approx(2.0, rel=1e-14)
    assert c.C_d == pytest.approx(1.0 / math.pi, rel=1e-14)
    assert c.L_d == pytest.approx(2.0 / (3.0 * math.pi), rel=1e-14)


def test_ratio_is_two_over_d_plus_two():
    for d in range(1, 12):
        c = constants(d)
        assert c.L_d / c.C_d == pytest.approx(2.0 / (d + 2.0), rel=1e-13)


def test_rejects_dimension_zero():
    with pytest.raises(ConfigError):
        constants(0)
    with pytest.raises(ConfigError):
        phase_space_integral(0, 1)
    with pytest.raises(ConfigError):
        phase_space_integral(2, 3)


def test_phase_space_integral_known_values():
    # indicator integrates to the unit-ball volume
    assert phase_space_integral(2, 0) == pytest.approx(math.pi, abs=1e-12)
    # 2 pi * int_0^1 (1 - r^2) r dr = pi / 2
    assert phase_space_integral(2, 1) == pytest.approx(math.pi / 2.0, abs=1e-12)
    # d = 3: (2 pi)^3 L_3 with L_3 = (2/5) C_3 = 1/(15 pi^2)
    assert phase_space_integral(3, 1) == pytest.approx(8.0 * math.pi / 15.0, abs=1e-10)


def test_phase_space_integral_brute_force_2d():
    # independent cartesian-grid check of the radial reduction
    g = np.linspace(-1.0, 1.0, 2001)
    xx, yy = np.meshgrid(g, g)
    f = np.clip(1.0 - xx * xx - yy * yy, 0.0, None)
    brute = np.trapezoid(np.trapezoid(f, g, axis=0), g)
    assert phase_space_integral(2, 1) == pytest.approx(brute, abs=5e-6)


def test_oracle_agreement_d_1_to_10():
    for d in range(1, 11):
        c = constants(d)
        assert abs(c.C_d - phase_space_integral(d, 0) / TWO_PI**d) < 1e-10 * c.C_d
        assert abs(c.L_d - phase_space_integral(d, 1) / TWO_PI**d) < 1e-10 * c.L_d


def test_monotone_after_single_maximum():
    cs = [constants(d).C_d for d in range(1, 21)]
    ls = [constants(d).L_d for d in range(1, 21)]
    for seq in (cs, ls):
        peak = int(np.argmax(seq))
        tail = seq[peak:]
        assert all(a > b for a, b in zip(tail, tail[1:]))
        assert all(v > 0 for v in seq)


def test_l_below_c():
    for d in range(1, 21):
        c = constants(d)
        assert c.L_d < c.C_d


def test_frozen_dataclass():
    c = constants(3)
    assert isinstance(c, Constants)
    with pytest.raises(AttributeError):
        c.C_d = 1.0
