"""Dressed/undressed decision from worn garments and a possibility threshold.

A worn garment contributes the possibility of its category; several garments
sharing one possibility value count once. The user is dressed when the top
value alone reaches the threshold, or when the distinct values accumulate
to it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .fuzzy import PossibilityDistribution


class DecisiveStep(enum.Enum):
    SINGLE_MAX = "single_max"
    ACCUMULATED_SUM = "accumulated_sum"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class GarmentProfile:
    distribution: PossibilityDistribution
    threshold: float

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError(f"dressing threshold must be in (0, 1], got {self.threshold}")


@dataclass(frozen=True)
class DressingResult:
    dressed: bool
    accumulated_sum: float
    distinct_values_used: tuple[float, ...]
    decisive_step: DecisiveStep


def is_dressed(profile: GarmentProfile, worn: Iterable[str]) -> DressingResult:
    """Decide dressing from the worn garments' distinct possibility values.

    Values are taken in non-increasing order; the sum is compared against the
    profile threshold after each step. Raises UnknownItem for garments the
    distribution does not declare.
    """
    values = sorted({profile.distribution.degree(g) for g in worn}, reverse=True)
    threshold = profile.threshold
    if values and values[0] >= threshold:
        return DressingResult(
            dressed=True,
            accumulated_sum=values[0],
            distinct_values_used=(values[0],),
            decisive_step=DecisiveStep.SINGLE_MAX,
        )
    total = 0.0
    used: list[float] = []
    for value in values:
        total += value
        used.append(value)
        if total >= threshold:
            return DressingResult(
                dressed=True,
                accumulated_sum=total,
                distinct_values_used=tuple(used),
                decisive_step=DecisiveStep.ACCUMULATED_SUM,
            )
    return DressingResult(
        dressed=False,
        accumulated_sum=total,
        distinct_values_used=tuple(used),
        decisive_step=DecisiveStep.EXHAUSTED,
    )
