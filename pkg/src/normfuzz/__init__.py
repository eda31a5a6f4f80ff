"""Normative rule compiler and fuzzy inference engine.

Parses trigger/defeater rules, normalizes them to if/else-if/else form, and
evaluates them against scenarios (worn garments, vital signs) with
possibility-theoretic dressing checks and fuzzy distress inference,
producing decisions with full numeric traces.
"""

from .defaults import default_profile
from .distress import (
    AGE_TERMS,
    LEVELS,
    BadCentroid,
    DefuzzResult,
    DuplicateCombination,
    FiringRecord,
    FuzzyRule,
    MissingCombination,
    NoRuleFired,
    RuleBase,
    RuleBaseError,
    VitalReading,
    VitalVariables,
    assess_distress,
    default_rule_base,
    dump_rule_base,
    load_rule_base,
)
from .dressing import DecisiveStep, DressingResult, GarmentProfile, is_dressed
from .fuzzy import (
    CrispThreshold,
    Discrete,
    InvalidCorners,
    LinguisticVariable,
    MembershipFunction,
    NegativeAge,
    PossibilityDistribution,
    Trapezoid,
    UnknownItem,
    ZadehMiddle,
    ZadehOld,
    ZadehYoung,
    eval_age,
    eval_trapezoid,
    fuzzify,
    possibility_of_union,
    variable_from_bands,
)
from .policy import (
    ConditionValue,
    ConstantBoolean,
    DecisionTrace,
    DistressAboveThreshold,
    DressingEvaluator,
    Profile,
    ProfileError,
    Scenario,
    ScenarioError,
    UnboundCondition,
    decide,
    decide_batch,
    evaluate_condition,
    load_profile,
    load_scenarios,
)
from .sleec import (
    Branch,
    ConditionExpr,
    ConflictWarning,
    Defeater,
    LinkError,
    NormalizedRule,
    ParseError,
    RuleAst,
    Vocabulary,
    normalize,
    parse_rule_set,
    pretty_print,
    validate,
)

__version__ = "0.1.0"
