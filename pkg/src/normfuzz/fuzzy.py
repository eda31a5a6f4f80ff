"""Membership functions, linguistic variables, and possibility distributions.

Degrees are plain floats in [0, 1]. All values here are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class InvalidCorners(ValueError):
    """Trapezoid corners violate x1 <= x2 <= x3 <= x4."""


class NegativeAge(ValueError):
    """Age membership evaluated at a negative input."""


class UnknownItem(LookupError):
    """A label was looked up that the distribution does not declare."""


def eval_trapezoid(x: float, corners: tuple[float, float, float, float]) -> float:
    """Trapezoid membership max(min((x-x1)/(x2-x1), 1, (x4-x)/(x4-x3)), 0).

    Infinite outer corners (x1 = -inf, x4 = +inf) encode shoulder shapes:
    the corresponding ramp contributes 1. Equal finite corners give a crisp
    vertical edge, closed on the plateau side.
    """
    x1, x2, x3, x4 = corners
    if not (x1 <= x2 <= x3 <= x4):
        raise InvalidCorners(f"corners must be ordered, got {corners}")
    if math.isinf(x1):
        rising = 1.0
    elif x2 == x1:
        rising = 1.0 if x >= x2 else 0.0
    else:
        rising = (x - x1) / (x2 - x1)
    if math.isinf(x4):
        falling = 1.0
    elif x4 == x3:
        falling = 1.0 if x <= x3 else 0.0
    else:
        falling = (x4 - x) / (x4 - x3)
    return max(min(rising, 1.0, falling), 0.0)


def _age_young(x: float) -> float:
    if x <= 25.0:
        return 1.0
    t = (x - 25.0) / 5.0
    return 1.0 / (1.0 + t * t)


def _age_middle(x: float) -> float:
    if x < 35.0:
        return 0.0
    if x < 45.0:
        t = (x - 45.0) / 4.0
        return 1.0 / (1.0 + (t * t) * (t * t))
    t = (x - 45.0) / 5.0
    return 1.0 / (1.0 + t * t)


def _age_old(x: float) -> float:
    if x <= 50.0:
        return 0.0
    # 1 / (1 + t^-2); written with an explicit reciprocal so that inputs
    # arbitrarily close to 50 underflow to 0 instead of raising.
    inv = 5.0 / (x - 50.0)
    return 1.0 / (1.0 + inv * inv)


_AGE_CURVES = {"young": _age_young, "middle": _age_middle, "old": _age_old}


def eval_age(x: float, term: str) -> float:
    """Degree of an age in years belonging to young / middle / old."""
    if x < 0:
        raise NegativeAge(f"age must be nonnegative, got {x}")
    try:
        curve = _AGE_CURVES[term]
    except KeyError:
        raise ValueError(f"unknown age term {term!r}") from None
    return curve(x)


@dataclass(frozen=True)
class Trapezoid:
    x1: float
    x2: float
    x3: float
    x4: float

    def __post_init__(self) -> None:
        if not (self.x1 <= self.x2 <= self.x3 <= self.x4):
            raise InvalidCorners(
                f"corners must be ordered, got ({self.x1}, {self.x2}, {self.x3}, {self.x4})"
            )

    @property
    def corners(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)

    def __call__(self, x: float) -> float:
        return eval_trapezoid(x, self.corners)


@dataclass(frozen=True)
class ZadehYoung:
    def __call__(self, x: float) -> float:
        return eval_age(x, "young")


@dataclass(frozen=True)
class ZadehMiddle:
    def __call__(self, x: float) -> float:
        return eval_age(x, "middle")


@dataclass(frozen=True)
class ZadehOld:
    def __call__(self, x: float) -> float:
        return eval_age(x, "old")


@dataclass(frozen=True)
class Discrete:
    """Membership over a finite label set, e.g. calm/normal/distressed states."""

    levels: Mapping[str, float]

    def __post_init__(self) -> None:
        for label, degree in self.levels.items():
            if not 0.0 <= degree <= 1.0:
                raise ValueError(f"degree for {label!r} outside [0, 1]: {degree}")

    def __call__(self, label: str) -> float:
        try:
            return self.levels[label]
        except KeyError:
            raise UnknownItem(f"unknown label {label!r}") from None


@dataclass(frozen=True)
class CrispThreshold:
    """Step membership: 1 once the input reaches the threshold, else 0."""

    threshold: float

    def __call__(self, x: float) -> float:
        return 1.0 if x >= self.threshold else 0.0


MembershipFunction = Union[Trapezoid, ZadehYoung, ZadehMiddle, ZadehOld, Discrete, CrispThreshold]


@dataclass(frozen=True)
class LinguisticVariable:
    """A named quantity partitioned into labeled fuzzy terms."""

    name: str
    unit: str
    terms: Mapping[str, MembershipFunction]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError(f"variable {self.name!r} declares no terms")


def fuzzify(var: LinguisticVariable, x: float) -> dict[str, float]:
    """Evaluate every term of the variable at x, in declaration order."""
    return {term: mf(x) for term, mf in var.terms.items()}


@dataclass(frozen=True)
class PossibilityDistribution:
    """Item label -> possibility degree; union possibility is the member max."""

    entries: Mapping[str, float]

    def __post_init__(self) -> None:
        for label, degree in self.entries.items():
            if not 0.0 <= degree <= 1.0:
                raise ValueError(f"possibility for {label!r} outside [0, 1]: {degree}")

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.entries)

    def degree(self, label: str) -> float:
        try:
            return self.entries[label]
        except KeyError:
            raise UnknownItem(f"unknown item {label!r}") from None


def possibility_of_union(dist: PossibilityDistribution, items: Iterable[str]) -> float:
    """Possibility of wearing/holding any of the given items: max over degrees."""
    degrees = [dist.degree(label) for label in items]
    return max(degrees, default=0.0)


def variable_from_bands(
    name: str,
    unit: str,
    low_medium: tuple[float, float],
    medium_high: tuple[float, float],
    terms: tuple[str, str, str] = ("low", "medium", "high"),
) -> LinguisticVariable:
    """Build a three-term variable from crisp bands with named transition zones.

    A reading is crisply low below the first transition, crisply high above
    the second, and the transitions become opposing trapezoid ramps, so
    adjacent degrees sum to 1 inside each transition zone.
    """
    a, b = low_medium
    c, d = medium_high
    if not (a <= b <= c <= d):
        raise InvalidCorners(f"transition zones must be ordered, got {low_medium}, {medium_high}")
    lo, mid, hi = terms
    return LinguisticVariable(
        name=name,
        unit=unit,
        terms={
            lo: Trapezoid(-math.inf, -math.inf, a, b),
            mid: Trapezoid(a, b, c, d),
            hi: Trapezoid(c, d, math.inf, math.inf),
        },
    )
