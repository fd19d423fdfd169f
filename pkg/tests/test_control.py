import numpy as np
import pytest
from hypothesis import given, strategies as st

from deorbitsim import (
    ControlConfig,
    FuelMeter,
    StickInput,
    fuel_increment,
    rate_track_step,
    stick_to_rate,
)

CFG = ControlConfig()
axis = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


class TestStickToRate:
    def test_neutral_demands_zero(self):
        assert np.array_equal(stick_to_rate(StickInput(), CFG), np.zeros(3))

    def test_full_deflection_demands_max_rate(self):
        cmd = stick_to_rate(StickInput(1.0, 1.0, 1.0), CFG)
        assert np.allclose(cmd, [3.0, 3.0, 3.0])

    def test_linear_above_deadband(self):
        cmd = stick_to_rate(StickInput(x=0.51), CFG)
        # 3 * (0.51 - 0.02) / 0.98 = 1.5 exactly
        assert cmd[0] == pytest.approx(1.5, abs=1e-12)
        assert cmd[1] == 0.0 and cmd[2] == 0.0

    def test_deadband_suppresses_small_inputs(self):
        assert np.array_equal(stick_to_rate(StickInput(x=0.019, y=-0.02), CFG), np.zeros(3))

    def test_out_of_range_clamped(self):
        cmd = stick_to_rate(StickInput(x=5.0, y=-5.0), CFG)
        assert cmd[0] == pytest.approx(3.0)
        assert cmd[1] == pytest.approx(-3.0)

    @given(x=axis, y=axis, z=axis)
    def test_odd_symmetry(self, x, y, z):
        pos = stick_to_rate(StickInput(x, y, z), CFG)
        neg = stick_to_rate(StickInput(-x, -y, -z), CFG)
        assert np.allclose(pos, -neg, atol=1e-12)

    @given(st.lists(axis, min_size=2, max_size=8))
    def test_monotone_per_axis(self, xs):
        xs = sorted(xs)
        outs = [stick_to_rate(StickInput(x=v), CFG)[0] for v in xs]
        assert all(a <= b + 1e-12 for a, b in zip(outs, outs[1:]))

    def test_never_exceeds_max_rate(self):
        for v in np.linspace(-1, 1, 101):
            assert abs(stick_to_rate(StickInput(x=v), CFG)[0]) <= CFG.max_rate + 1e-12


class TestRateTracking:
    def test_equilibrium(self):
        omega = np.array([1.5, -2.0, 0.3])
        out, alpha = rate_track_step(omega, omega, CFG, 0.02)
        assert np.array_equal(out, omega)
        assert np.array_equal(alpha, np.zeros(3))

    def test_acceleration_clamped(self):
        _, alpha = rate_track_step(np.zeros(3), np.array([3.0, 0, 0]), CFG, 0.02)
        # (3 - 0) / 0.5 = 6 deg/s^2 exceeds the 3 deg/s^2 clamp
        assert alpha[0] == pytest.approx(3.0)

    @pytest.mark.parametrize("dt", [0.02, 0.1])
    def test_step_response_settles_within_3s(self, dt):
        omega = np.zeros(3)
        cmd = np.array([3.0, 0, 0])
        t = 0.0
        while t < 3.0 - 1e-9:
            omega, _ = rate_track_step(omega, cmd, CFG, dt)
            t += dt
        assert abs(omega[0] - 3.0) < 0.01

    def test_rate_limit_invariant(self, rng):
        # With commands inside the limit, omega never exceeds it by more
        # than one acceleration step.
        omega = np.zeros(3)
        dt = 0.02
        for _ in range(3000):
            stick = StickInput(*rng.uniform(-1, 1, size=3))
            cmd = stick_to_rate(stick, CFG)
            omega, _ = rate_track_step(omega, cmd, CFG, dt)
            assert np.all(np.abs(omega) <= CFG.max_rate + CFG.alpha_max * dt + 1e-12)

    def test_rejects_bad_dt(self):
        with pytest.raises(ValueError):
            rate_track_step(np.zeros(3), np.zeros(3), CFG, 0.0)


class TestFuel:
    def test_no_actuation_no_fuel(self):
        assert fuel_increment(np.zeros(3), CFG, 0.1) == 0.0

    def test_direct_formula(self):
        assert fuel_increment(np.array([3.0, 0, 0]), CFG, 1.0) == pytest.approx(3.0)

    def test_meter_monotone(self):
        meter = FuelMeter()
        total = 0.0
        for inc in (0.5, 0.0, 1.25, 0.01):
            meter.add(inc)
            total += inc
            assert meter.consumed == pytest.approx(total)
        with pytest.raises(ValueError):
            meter.add(-0.1)

    @staticmethod
    def _slew_fuel(dt: float) -> float:
        """Fuel for a rest-to-rest single-axis slew of about 102 deg."""
        omega = np.zeros(3)
        fuel = 0.0
        angle = 0.0
        t = 0.0
        while t < 34.0 - 1e-9:
            cmd = stick_to_rate(StickInput(x=1.0), CFG)
            omega, alpha = rate_track_step(omega, cmd, CFG, dt)
            fuel += fuel_increment(alpha, CFG, dt)
            angle += omega[0] * dt
            t += dt
        while abs(omega[0]) > 1e-6:
            omega, alpha = rate_track_step(omega, np.zeros(3), CFG, dt)
            fuel += fuel_increment(alpha, CFG, dt)
            angle += omega[0] * dt
        assert angle > 100.0
        return fuel

    def test_slew_fuel_independent_of_dt(self):
        f_fine = self._slew_fuel(0.02)
        f_coarse = self._slew_fuel(0.1)
        assert abs(f_fine - f_coarse) / f_fine < 0.01


def test_config_validation():
    with pytest.raises(ValueError):
        ControlConfig(max_rate=0.0)
    with pytest.raises(ValueError):
        ControlConfig(deadband=1.0)
    with pytest.raises(ValueError):
        ControlConfig(tau=0.0)
