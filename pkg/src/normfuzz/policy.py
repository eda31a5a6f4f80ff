"""Bind condition atoms to evaluators and execute normalized rules.

A profile declares the vocabulary (events, actions, condition bindings) plus
the numeric machinery each binding needs: the garment distribution for the
dressing evaluator and the rule base / linguistic variables for the distress
evaluator. `decide` walks a rule's branches in order, short-circuits at the
first true condition, and returns a trace holding every number it computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Union

from .dressing import DressingResult, GarmentProfile, is_dressed
from .distress import (
    DefuzzResult,
    NoRuleFired,
    RuleBase,
    VitalReading,
    VitalVariables,
    assess_distress,
    rule_base_from_dict,
)
from .fuzzy import (
    LinguisticVariable,
    PossibilityDistribution,
    ZadehMiddle,
    ZadehOld,
    ZadehYoung,
    variable_from_bands,
)
from .sleec import ConditionExpr, NormalizedRule, Vocabulary


class ProfileError(ValueError):
    """Profile file fails validation."""


class ScenarioError(ValueError):
    """Scenario file fails validation."""


class UnboundCondition(LookupError):
    """A rule condition names an atom the profile does not bind."""


@dataclass(frozen=True)
class DressingEvaluator:
    """Condition is true when the worn garments reach the dressing threshold."""


@dataclass(frozen=True)
class DistressAboveThreshold:
    """Condition is true when the defuzzified distress exceeds the threshold.

    With threshold None the profile-wide distress threshold applies, so a
    command-line override reaches the binding.
    """

    threshold: float | None = None

    def __post_init__(self) -> None:
        if self.threshold is not None and not 0.0 < self.threshold < 1.0:
            raise ProfileError(f"distress threshold must be in (0, 1), got {self.threshold}")


@dataclass(frozen=True)
class ConstantBoolean:
    """Fixed condition value; a testing hook."""

    value: bool


EvaluatorSpec = Union[DressingEvaluator, DistressAboveThreshold, ConstantBoolean]


@dataclass(frozen=True)
class Profile:
    garments: GarmentProfile
    rule_base: RuleBase
    variables: VitalVariables
    bindings: Mapping[str, EvaluatorSpec]
    events: frozenset[str]
    actions: frozenset[str]
    distress_threshold: float = 0.6

    def __post_init__(self) -> None:
        if not 0.0 < self.distress_threshold < 1.0:
            raise ProfileError(
                f"distress threshold must be in (0, 1), got {self.distress_threshold}"
            )

    def vocabulary(self) -> Vocabulary:
        return Vocabulary(
            events=frozenset(self.events),
            actions=frozenset(self.actions),
            conditions=frozenset(self.bindings),
        )


@dataclass(frozen=True)
class Scenario:
    event: str
    worn: frozenset[str]
    vitals: VitalReading


@dataclass(frozen=True)
class ConditionValue:
    atom: str
    negated: bool
    value: bool
    degree: float | None


@dataclass(frozen=True)
class DecisionTrace:
    rule: str | None
    event: str
    outcome: str  # "decided", "not_triggered", or "error"
    action: str | None
    branch_taken: int | str | None  # branch index or "default"
    condition_values: tuple[ConditionValue, ...] = ()
    dressing: DressingResult | None = None
    distress: DefuzzResult | None = None
    degraded: bool = False
    error: str | None = None


class _ScenarioState:
    """Per-decision cache so dressing and distress run at most once."""

    def __init__(self, scenario: Scenario, profile: Profile):
        self.scenario = scenario
        self.profile = profile
        self.dressing: DressingResult | None = None
        self.distress: DefuzzResult | None = None
        self.degraded = False

    def eval_atom(self, atom: str) -> tuple[bool, float | None]:
        try:
            spec = self.profile.bindings[atom]
        except KeyError:
            raise UnboundCondition(f"condition {atom!r} is not bound in the profile") from None
        if isinstance(spec, DressingEvaluator):
            if self.dressing is None:
                self.dressing = is_dressed(self.profile.garments, self.scenario.worn)
            return self.dressing.dressed, self.dressing.accumulated_sum
        if isinstance(spec, DistressAboveThreshold):
            threshold = (
                spec.threshold if spec.threshold is not None else self.profile.distress_threshold
            )
            if self.distress is None:
                self.distress = assess_distress(
                    self.scenario.vitals, self.profile.rule_base, self.profile.variables
                )
            return self.distress.d_star > threshold, self.distress.d_star
        assert isinstance(spec, ConstantBoolean)
        return spec.value, 1.0 if spec.value else 0.0


def evaluate_condition(
    condition: ConditionExpr, scenario: Scenario, profile: Profile
) -> tuple[bool, float]:
    """Evaluate one bound condition; negation flips the boolean, not the degree.

    Propagates UnknownItem and NoRuleFired from the underlying evaluators.
    """
    value, degree = _ScenarioState(scenario, profile).eval_atom(condition.atom)
    if condition.negated:
        value = not value
    return value, degree


def decide(rule: NormalizedRule, scenario: Scenario, profile: Profile) -> DecisionTrace:
    """Pick the rule's action for the scenario, recording the full trace.

    Branches are tried in order and evaluation stops at the first true
    condition; unevaluated conditions do not appear in the trace. A distress
    evaluation where no rule fires degrades to a false condition (the
    privacy-preserving reading) and flags the trace.
    """
    if scenario.event != rule.trigger:
        return DecisionTrace(
            rule=rule.name,
            event=scenario.event,
            outcome="not_triggered",
            action=None,
            branch_taken=None,
        )
    state = _ScenarioState(scenario, profile)
    recorded: list[ConditionValue] = []
    chosen_action = rule.default_action
    branch_taken: int | str = "default"
    for i, branch in enumerate(rule.branches):
        try:
            value, degree = state.eval_atom(branch.condition.atom)
        except NoRuleFired:
            state.degraded = True
            value, degree = False, None
        if branch.condition.negated:
            value = not value
        recorded.append(
            ConditionValue(branch.condition.atom, branch.condition.negated, value, degree)
        )
        if value:
            chosen_action = branch.action
            branch_taken = i
            break
    return DecisionTrace(
        rule=rule.name,
        event=scenario.event,
        outcome="decided",
        action=chosen_action,
        branch_taken=branch_taken,
        condition_values=tuple(recorded),
        dressing=state.dressing,
        distress=state.distress,
        degraded=state.degraded,
    )


def decide_batch(
    rules: Iterable[NormalizedRule], scenarios: Iterable[Scenario], profile: Profile
) -> list[DecisionTrace]:
    """Decide each scenario against the first rule matching its event.

    Output order equals input order; per-scenario failures are embedded as
    traces with outcome "error".
    """
    rules = list(rules)
    results: list[DecisionTrace] = []
    for scenario in scenarios:
        if scenario.event not in profile.events:
            results.append(
                DecisionTrace(
                    rule=None,
                    event=scenario.event,
                    outcome="error",
                    action=None,
                    branch_taken=None,
                    error=f"event {scenario.event!r} is not declared in the profile",
                )
            )
            continue
        matching = next((r for r in rules if r.trigger == scenario.event), None)
        if matching is None:
            results.append(
                DecisionTrace(
                    rule=None,
                    event=scenario.event,
                    outcome="not_triggered",
                    action=None,
                    branch_taken=None,
                )
            )
            continue
        try:
            results.append(decide(matching, scenario, profile))
        except (LookupError, ValueError) as exc:
            results.append(
                DecisionTrace(
                    rule=matching.name,
                    event=scenario.event,
                    outcome="error",
                    action=None,
                    branch_taken=None,
                    error=str(exc),
                )
            )
    return results


# ---------------------------------------------------------------------------
# Profile and scenario files (JSON trees)
# ---------------------------------------------------------------------------

_VARIABLE_UNITS = {"age": "years", "bp": "mmHg", "hr": "bpm", "bt": "degC"}


def _variable_from_config(name: str, config: dict) -> LinguisticVariable:
    kind = config.get("kind")
    unit = config.get("unit", _VARIABLE_UNITS.get(name, ""))
    if kind == "age_curves":
        return LinguisticVariable(
            name=name,
            unit=unit,
            terms={"young": ZadehYoung(), "middle": ZadehMiddle(), "old": ZadehOld()},
        )
    if kind == "bands":
        try:
            low_medium = tuple(config["low_medium"])
            medium_high = tuple(config["medium_high"])
        except KeyError as exc:
            raise ProfileError(f"variable {name!r} is missing {exc} for its bands") from None
        terms = tuple(config.get("terms", ("low", "medium", "high")))
        if len(terms) != 3:
            raise ProfileError(f"variable {name!r} must declare exactly three terms")
        return variable_from_bands(name, unit, low_medium, medium_high, terms)
    raise ProfileError(f"variable {name!r} has unknown kind {kind!r}")


def _binding_from_config(atom: str, config: dict) -> EvaluatorSpec:
    kind = config.get("kind")
    if kind == "dressing":
        return DressingEvaluator()
    if kind == "distress_above":
        return DistressAboveThreshold(threshold=config.get("threshold"))
    if kind == "constant":
        if "value" not in config:
            raise ProfileError(f"binding {atom!r} of kind 'constant' needs a value")
        return ConstantBoolean(bool(config["value"]))
    raise ProfileError(f"binding {atom!r} has unknown kind {kind!r}")


def profile_from_dict(data: dict, base: Profile) -> Profile:
    """Build a profile from a JSON tree, falling back to `base` per section."""
    if not isinstance(data, dict):
        raise ProfileError("profile must be a JSON object")
    profile = base
    if "garments" in data:
        section = data["garments"]
        distribution = PossibilityDistribution(dict(section.get(
            "distribution", dict(base.garments.distribution.entries)
        )))
        try:
            garments = GarmentProfile(
                distribution=distribution,
                threshold=section.get("threshold", base.garments.threshold),
            )
        except ValueError as exc:
            raise ProfileError(str(exc)) from exc
        profile = replace(profile, garments=garments)
    if "variables" in data:
        merged = {
            "age": base.variables.age,
            "bp": base.variables.bp,
            "hr": base.variables.hr,
            "bt": base.variables.bt,
        }
        for name, config in data["variables"].items():
            if name not in merged:
                raise ProfileError(f"unknown variable {name!r} (expected age, bp, hr, bt)")
            merged[name] = _variable_from_config(name, config)
        profile = replace(profile, variables=VitalVariables(**merged))
    if "rule_base" in data:
        profile = replace(profile, rule_base=rule_base_from_dict(data["rule_base"]))
    if "bindings" in data:
        bindings = {
            atom: _binding_from_config(atom, config)
            for atom, config in data["bindings"].items()
        }
        profile = replace(profile, bindings=bindings)
    if "events" in data:
        profile = replace(profile, events=frozenset(data["events"]))
    if "actions" in data:
        profile = replace(profile, actions=frozenset(data["actions"]))
    if "distress_threshold" in data:
        profile = replace(profile, distress_threshold=data["distress_threshold"])
    return profile


def load_profile(source: str, base: Profile) -> Profile:
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"profile is not valid JSON: {exc}") from exc
    return profile_from_dict(data, base)


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    try:
        event = data["event"]
        worn = data["worn"]
        vitals = data["vitals"]
    except KeyError as exc:
        raise ScenarioError(f"scenario is missing {exc}") from None
    if not isinstance(worn, list) or not all(isinstance(g, str) for g in worn):
        raise ScenarioError("'worn' must be a list of garment labels")
    try:
        reading = VitalReading(
            age=float(vitals["age"]),
            bp=float(vitals["bp"]),
            hr=float(vitals["hr"]),
            bt=float(vitals["bt"]),
        )
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"vitals must provide numeric age, bp, hr, bt: {exc}") from None
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    return Scenario(event=event, worn=frozenset(worn), vitals=reading)


def load_scenarios(source: str) -> list[Scenario]:
    """Parse one scenario object or a JSON array of them."""
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    if isinstance(data, list):
        return [scenario_from_dict(item) for item in data]
    return [scenario_from_dict(data)]
