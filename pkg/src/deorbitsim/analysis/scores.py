"""NASA TLX and SUS subjective-score computation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import DataError

TLX_SUBSCALES = (
    "mental",
    "physical",
    "temporal",
    "performance",
    "effort",
    "frustration",
)


def tlx_score(ratings: Sequence[float]) -> float:
    """Raw (unweighted) TLX: mean of the six 0-100 subscale ratings."""
    vals = list(ratings)
    if len(vals) != 6:
        raise DataError(f"TLX needs 6 subscale ratings, got {len(vals)}")
    for i, v in enumerate(vals):
        if not 0 <= v <= 100:
            raise DataError(f"TLX subscale {TLX_SUBSCALES[i]} out of range 0-100: {v}")
    return sum(vals) / 6.0


def sus_score(items: Sequence[float]) -> float:
    """Standard SUS 0-100 score from ten 1-5 item ratings.

    Odd items contribute (x - 1), even items (5 - x); the total scales by 2.5.
    """
    vals = list(items)
    if len(vals) != 10:
        raise DataError(f"SUS needs 10 item ratings, got {len(vals)}")
    for i, v in enumerate(vals, start=1):
        if not 1 <= v <= 5:
            raise DataError(f"SUS item {i} out of range 1-5: {v}")
    total = 0.0
    for i, v in enumerate(vals, start=1):
        total += (v - 1) if i % 2 == 1 else (5 - v)
    return total * 2.5


@dataclass(frozen=True)
class SubjectiveSheet:
    """One participant's questionnaire answers for one condition."""

    tlx: tuple[float, ...]
    sus: tuple[float, ...]

    def __post_init__(self):
        tlx_score(self.tlx)
        sus_score(self.sus)

    def tlx_total(self) -> float:
        return tlx_score(self.tlx)

    def sus_total(self) -> float:
        return sus_score(self.sus)
