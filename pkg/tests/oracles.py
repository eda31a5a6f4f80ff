"""Independent reference implementations used only as test oracles.

Each function here transcribes the corresponding decision procedure as
directly as possible and stays independent of the production code paths it
checks.
"""

from __future__ import annotations

import random

from normfuzz import NormalizedRule, RuleAst
from normfuzz.distress import RuleBase, VitalReading, VitalVariables
from normfuzz.fuzzy import fuzzify
from normfuzz.sleec import ConditionExpr, Defeater


def condition_truth(condition: ConditionExpr, env: dict[str, bool]) -> bool:
    value = env[condition.atom]
    return not value if condition.negated else value


def chain_decision(rule: RuleAst, env: dict[str, bool]) -> str:
    """Nested defeater-chain evaluation: a defeater applies only when all
    earlier ones did, and the last applicable one wins."""
    action = rule.base_action
    for defeater in rule.defeaters:
        if condition_truth(defeater.condition, env):
            action = defeater.action
        else:
            break
    return action


def branch_decision(rule: NormalizedRule, env: dict[str, bool]) -> str:
    """Flat branch walk: first true condition wins, else the default."""
    for branch in rule.branches:
        if condition_truth(branch.condition, env):
            return branch.action
    return rule.default_action


def dressing_literal(values: list[float], threshold: float) -> bool:
    """While-loop transcription of the dressing check over the worn garments'
    per-item possibility values.

    The pseudocode's n-decrement is a termination guard, not semantics: the
    loop runs until the pool is drained. A value already counted is removed
    one occurrence at a time instead of being summed again.
    """
    pool = list(values)
    total = 0.0
    counted: set[float] = set()
    while pool:
        top = max(pool)
        if top >= threshold:
            return True  # dressed on the single largest value
        if top not in counted:
            total += top
            if total >= threshold:
                return True  # dressed on the accumulated distinct values
            counted.add(top)
        else:
            pool.remove(top)
    return False


def cog_naive(
    vitals: VitalReading, base: RuleBase, variables: VitalVariables, rng: random.Random
) -> float:
    """Plain-sum centroid average with the rules visited in random order."""
    memberships = {
        "age": fuzzify(variables.age, vitals.age),
        "bp": fuzzify(variables.bp, vitals.bp),
        "hr": fuzzify(variables.hr, vitals.hr),
        "bt": fuzzify(variables.bt, vitals.bt),
    }
    rules = list(base.rules)
    rng.shuffle(rules)
    numerator = 0.0
    denominator = 0.0
    for rule in rules:
        weight = min(
            memberships["age"][rule.age],
            memberships["bp"][rule.bp],
            memberships["hr"][rule.hr],
            memberships["bt"][rule.bt],
        )
        numerator += base.centroids[rule.distress] * weight
        denominator += weight
    return numerator / denominator


def curtain_literal(dressed: bool, d_star: float, threshold: float = 0.6) -> str:
    """Transcription of the curtain opener: dressed opens; undressed opens
    only above the distress threshold (the tie stays closed)."""
    if dressed:
        return "open_curtains"
    if d_star <= threshold:
        return "do_not_open"
    return "open_curtains"


def random_rule_ast(rng: random.Random, name: str, max_defeaters: int = 6) -> RuleAst:
    atoms = [f"c{i}" for i in range(6)]
    actions = [f"a{i}" for i in range(4)]
    defeaters = tuple(
        Defeater(ConditionExpr(rng.random() < 0.4, rng.choice(atoms)), rng.choice(actions))
        for _ in range(rng.randint(0, max_defeaters))
    )
    return RuleAst(name, "ask_open", rng.choice(actions), defeaters)


def all_assignments(atoms: list[str]) -> list[dict[str, bool]]:
    envs = []
    for bits in range(2 ** len(atoms)):
        envs.append({atom: bool(bits >> i & 1) for i, atom in enumerate(atoms)})
    return envs


def rule_atoms(rule: RuleAst) -> list[str]:
    seen: list[str] = []
    for defeater in rule.defeaters:
        if defeater.condition.atom not in seen:
            seen.append(defeater.condition.atom)
    return seen
