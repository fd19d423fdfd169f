"""Stick-to-rate-command control law, rate tracking, and fuel accounting.

Stick deflection commands body angular rate linearly up to the rate limit,
with a small deadband around neutral. The actuator is modeled as a
first-order rate tracker with an acceleration clamp; fuel is the integrated
magnitude of applied angular acceleration (a thruster-impulse proxy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StickInput:
    """Pilot stick deflections in [-1, 1]: x roll, y pitch, z yaw."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    t: float = 0.0

    def clamped(self) -> "StickInput":
        return StickInput(
            x=min(1.0, max(-1.0, self.x)),
            y=min(1.0, max(-1.0, self.y)),
            z=min(1.0, max(-1.0, self.z)),
            t=self.t,
        )

    def axes(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class ControlConfig:
    max_rate: float = 3.0      # deg/s at full deflection
    deadband: float = 0.02     # stick units ignored around neutral
    tau: float = 0.5           # s, rate-tracking time constant
    alpha_max: float = 3.0     # deg/s^2 acceleration clamp
    fuel_gain: float = 1.0     # fuel units per deg/s of angular impulse

    def __post_init__(self):
        if self.max_rate <= 0 or not (0 <= self.deadband < 1):
            raise ValueError("invalid max_rate or deadband")
        if self.tau <= 0 or self.alpha_max <= 0:
            raise ValueError("tau and alpha_max must be positive")


@dataclass
class FuelMeter:
    """Monotone fuel counter; never decreases."""

    consumed: float = 0.0

    def add(self, amount: float) -> None:
        if amount < 0:
            raise ValueError("fuel increment must be non-negative")
        self.consumed += amount


def stick_to_rate(stick: StickInput, cfg: ControlConfig) -> np.ndarray:
    """Per-axis rate command in deg/s; zero inside the deadband."""
    s = stick.clamped().axes()
    mag = np.abs(s)
    scaled = cfg.max_rate * (mag - cfg.deadband) / (1.0 - cfg.deadband)
    return np.where(mag <= cfg.deadband, 0.0, np.sign(s) * scaled)


def rate_track_step(
    omega: np.ndarray, cmd: np.ndarray, cfg: ControlConfig, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """First-order rate tracking with acceleration clamp.

    Returns (new omega, applied angular acceleration), both deg-based.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    alpha = np.clip((np.asarray(cmd, float) - np.asarray(omega, float)) / cfg.tau,
                    -cfg.alpha_max, cfg.alpha_max)
    return np.asarray(omega, float) + alpha * dt, alpha


def fuel_increment(alpha_applied: np.ndarray, cfg: ControlConfig, dt: float) -> float:
    """Fuel for one step: gain * sum |alpha| * dt."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return cfg.fuel_gain * float(np.sum(np.abs(alpha_applied))) * dt
