"""Embedded default profile.

Ships a complete configuration so `eval` runs with only a rules file and a
scenario: a garment-category possibility distribution with threshold 0.8,
age curves plus band-derived vital variables, the generated rule base, and
a distress threshold of 0.6. The vital bands are configuration defaults,
not clinical claims; override them in a profile file where they matter.
"""

from __future__ import annotations

from .distress import VitalVariables, default_rule_base
from .dressing import GarmentProfile
from .fuzzy import (
    LinguisticVariable,
    PossibilityDistribution,
    ZadehMiddle,
    ZadehOld,
    ZadehYoung,
    variable_from_bands,
)
from .policy import DistressAboveThreshold, DressingEvaluator, Profile

GARMENT_POSSIBILITIES = {
    "tops": 0.4,
    "bottoms": 0.5,
    "dresses": 1.0,
    "sleepwear": 0.8,
    "accessories": 0.0,
    "others": 0.1,
}

DRESSING_THRESHOLD = 0.8
DISTRESS_THRESHOLD = 0.6

# Transition zones (start, end) between the low/medium and medium/high bands.
HR_BANDS = ((60.0, 90.0), (153.0, 180.0))
BP_BANDS = ((90.0, 110.0), (130.0, 150.0))
BT_BANDS = ((35.5, 36.1), (37.2, 38.0))


def default_age_variable() -> LinguisticVariable:
    return LinguisticVariable(
        name="age",
        unit="years",
        terms={"young": ZadehYoung(), "middle": ZadehMiddle(), "old": ZadehOld()},
    )


def default_variables() -> VitalVariables:
    return VitalVariables(
        age=default_age_variable(),
        bp=variable_from_bands("bp", "mmHg", *BP_BANDS),
        hr=variable_from_bands("hr", "bpm", *HR_BANDS),
        bt=variable_from_bands("bt", "degC", *BT_BANDS),
    )


def default_garments() -> GarmentProfile:
    return GarmentProfile(
        distribution=PossibilityDistribution(dict(GARMENT_POSSIBILITIES)),
        threshold=DRESSING_THRESHOLD,
    )


def default_profile() -> Profile:
    return Profile(
        garments=default_garments(),
        rule_base=default_rule_base(),
        variables=default_variables(),
        bindings={
            "dressed": DressingEvaluator(),
            "highly_distressed": DistressAboveThreshold(),
        },
        events=frozenset({"ask_open"}),
        actions=frozenset({"open_curtains", "do_not_open"}),
        distress_threshold=DISTRESS_THRESHOLD,
    )
