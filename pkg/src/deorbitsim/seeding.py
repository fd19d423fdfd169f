"""Seeded initial-offset randomization.

Uses splitmix64, a named, trivially portable 64-bit PRNG, so the same seed
yields the same trial offsets on any platform or implementation language.
Seed 0 is reserved for the exact task offset used in the study
(yaw 104, pitch 0, roll 102).
"""

from __future__ import annotations

from .simcore import EulerError

_MASK = (1 << 64) - 1

OFFSET_RNG_NAME = "splitmix64"

#: Offset distribution for randomized trials, degrees.
YAW_RANGE = (-120.0, 120.0)
PITCH_RANGE = (-20.0, 20.0)
ROLL_RANGE = (-120.0, 120.0)


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (self.next_u64() / 2.0**64) * (hi - lo)


def offset_for_seed(seed: int) -> EulerError:
    """Initial attitude offset for a trial seed; seed 0 is the study's."""
    if seed == 0:
        return EulerError(yaw=104.0, pitch=0.0, roll=102.0)
    rng = SplitMix64(seed)
    yaw = rng.uniform(*YAW_RANGE)
    pitch = rng.uniform(*PITCH_RANGE)
    roll = rng.uniform(*ROLL_RANGE)
    return EulerError(yaw=yaw, pitch=pitch, roll=roll)
