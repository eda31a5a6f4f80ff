"""Fuzzy distress assessment over age, blood pressure, heart rate, body temperature.

The rule base maps every antecedent combination (3 age terms x 3 levels for
each vital) to a distress level. Firing weight is the min of the four term
memberships; the crisp distress score is the weight-averaged consequent
centroid over all fired rules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .fuzzy import LinguisticVariable, fuzzify

AGE_TERMS = ("young", "middle", "old")
LEVELS = ("low", "medium", "high")


class RuleBaseError(ValueError):
    """Rule base fails validation."""


class MissingCombination(RuleBaseError):
    pass


class DuplicateCombination(RuleBaseError):
    pass


class BadCentroid(RuleBaseError):
    pass


class NoRuleFired(Exception):
    """Every rule weight is zero; the caller decides fallback policy."""


@dataclass(frozen=True)
class VitalReading:
    age: float
    bp: float
    hr: float
    bt: float

    def __post_init__(self) -> None:
        for name, value in (("age", self.age), ("bp", self.bp), ("hr", self.hr), ("bt", self.bt)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and nonnegative, got {value}")


@dataclass(frozen=True)
class FuzzyRule:
    age: str
    bp: str
    hr: str
    bt: str
    distress: str

    def __post_init__(self) -> None:
        if self.age not in AGE_TERMS:
            raise RuleBaseError(f"unknown age term {self.age!r}")
        for name, term in (("bp", self.bp), ("hr", self.hr), ("bt", self.bt)):
            if term not in LEVELS:
                raise RuleBaseError(f"unknown {name} term {term!r}")
        if self.distress not in LEVELS:
            raise RuleBaseError(f"unknown distress term {self.distress!r}")

    @property
    def antecedent(self) -> tuple[str, str, str, str]:
        return (self.age, self.bp, self.hr, self.bt)


def _all_antecedents() -> list[tuple[str, str, str, str]]:
    return list(product(AGE_TERMS, LEVELS, LEVELS, LEVELS))


@dataclass(frozen=True)
class RuleBase:
    """Complete functional rule table: one consequent per antecedent, 81 rows."""

    rules: tuple[FuzzyRule, ...]
    centroids: Mapping[str, float]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        values = [self.centroids.get(level) for level in LEVELS]
        if any(v is None for v in values):
            raise BadCentroid(f"centroids must name {LEVELS}, got {dict(self.centroids)}")
        low, medium, high = values
        if not (0.0 < low < medium < high < 1.0):
            raise BadCentroid(
                f"centroids must be strictly increasing within (0, 1), got "
                f"low={low} medium={medium} high={high}"
            )
        index: dict[tuple[str, str, str, str], FuzzyRule] = {}
        for rule in self.rules:
            if rule.antecedent in index:
                raise DuplicateCombination(f"duplicate antecedent {rule.antecedent}")
            index[rule.antecedent] = rule
        for antecedent in _all_antecedents():
            if antecedent not in index:
                raise MissingCombination(f"missing antecedent {antecedent}")
        object.__setattr__(self, "_index", index)

    def consequent(self, age: str, bp: str, hr: str, bt: str) -> str:
        return self._index[(age, bp, hr, bt)].distress


DEFAULT_CENTROIDS = {"low": 0.2, "medium": 0.5, "high": 0.8}


def _default_consequent(age: str, bp: str, hr: str, bt: str) -> str:
    # Heuristic fill: count off-normal vitals; old age amplifies an existing
    # abnormality by one step.
    s = sum(1 for term in (bp, hr, bt) if term != "medium")
    if age == "old" and s >= 1:
        s += 1
    if s == 0:
        return "low"
    if s == 1:
        return "medium"
    return "high"


def default_rule_base() -> RuleBase:
    rules = tuple(
        FuzzyRule(age, bp, hr, bt, _default_consequent(age, bp, hr, bt))
        for age, bp, hr, bt in _all_antecedents()
    )
    return RuleBase(rules=rules, centroids=dict(DEFAULT_CENTROIDS))


def rule_base_to_dict(base: RuleBase) -> dict:
    return {
        "centroids": {level: base.centroids[level] for level in LEVELS},
        "rules": [
            {"age": r.age, "bp": r.bp, "hr": r.hr, "bt": r.bt, "distress": r.distress}
            for r in base.rules
        ],
    }


def rule_base_from_dict(data: dict) -> RuleBase:
    if not isinstance(data, dict) or "rules" not in data:
        raise RuleBaseError("rule base must be an object with a 'rules' list")
    centroids = data.get("centroids", dict(DEFAULT_CENTROIDS))
    if not isinstance(centroids, dict):
        raise BadCentroid(f"centroids must be an object, got {centroids!r}")
    rows = data["rules"]
    if not isinstance(rows, list):
        raise RuleBaseError("'rules' must be a list")
    rules = []
    for i, row in enumerate(rows):
        try:
            rules.append(
                FuzzyRule(row["age"], row["bp"], row["hr"], row["bt"], row["distress"])
            )
        except (KeyError, TypeError) as exc:
            raise RuleBaseError(f"rule {i} is malformed: {row!r}") from exc
    return RuleBase(rules=tuple(rules), centroids=centroids)


def load_rule_base(source: str) -> RuleBase:
    """Parse and validate a rule base from JSON text."""
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise RuleBaseError(f"rule base is not valid JSON: {exc}") from exc
    return rule_base_from_dict(data)


def dump_rule_base(base: RuleBase) -> str:
    return json.dumps(rule_base_to_dict(base), indent=2) + "\n"


@dataclass(frozen=True)
class VitalVariables:
    age: LinguisticVariable
    bp: LinguisticVariable
    hr: LinguisticVariable
    bt: LinguisticVariable


@dataclass(frozen=True)
class FiringRecord:
    rule: FuzzyRule
    weight: float
    contribution: float


@dataclass(frozen=True)
class DefuzzResult:
    d_star: float
    firings: tuple[FiringRecord, ...]
    numerator: float
    denominator: float
    memberships: Mapping[str, Mapping[str, float]]


def assess_distress(
    vitals: VitalReading, base: RuleBase, variables: VitalVariables
) -> DefuzzResult:
    """Fuzzify the vitals, fire every rule with min-AND, average the centroids.

    All rules are recorded, zero-weight ones with zero contribution. Raises
    NoRuleFired when the weights sum to zero.
    """
    memberships = {
        "age": fuzzify(variables.age, vitals.age),
        "bp": fuzzify(variables.bp, vitals.bp),
        "hr": fuzzify(variables.hr, vitals.hr),
        "bt": fuzzify(variables.bt, vitals.bt),
    }
    firings = []
    numerator = 0.0
    denominator = 0.0
    for rule in base.rules:
        weight = min(
            memberships["age"][rule.age],
            memberships["bp"][rule.bp],
            memberships["hr"][rule.hr],
            memberships["bt"][rule.bt],
        )
        contribution = base.centroids[rule.distress] * weight
        numerator += contribution
        denominator += weight
        firings.append(FiringRecord(rule=rule, weight=weight, contribution=contribution))
    if denominator == 0.0:
        raise NoRuleFired("no rule fired: the variables do not cover this reading")
    return DefuzzResult(
        d_star=numerator / denominator,
        firings=tuple(firings),
        numerator=numerator,
        denominator=denominator,
        memberships=memberships,
    )
