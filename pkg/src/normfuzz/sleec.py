"""Front end for the normative rule DSL.

A rule names a trigger event, a base action, and an ordered chain of
defeaters ("unless C in which case A"). Each defeater overrides the action
established so far, and a later defeater applies only when the earlier ones
did. Normalization rewrites the chain into flat if/else-if/else branches
with negated defeater conditions, which is the form the policy engine
executes and the pretty-printer emits.

Grammar (keywords lowercase, identifiers [a-z_][a-z0-9_]*, '#' comments):

    rule IDENT { when IDENT then IDENT
                 (unless [not] IDENT in which case IDENT)* }
    rule IDENT { on IDENT if [not] IDENT then IDENT
                 (else if [not] IDENT then IDENT)* else IDENT }
    rule IDENT { on IDENT do IDENT }
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

KEYWORDS = frozenset(
    {"rule", "when", "then", "unless", "not", "in", "which", "case", "on", "if", "else", "do"}
)

_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyz_")
_IDENT_BODY = _IDENT_START | frozenset("0123456789")


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        detail = message
        if expected:
            detail += f" (expected {', '.join(sorted(expected))})"
        super().__init__(f"line {line}, column {column}: {detail}")


@dataclass(frozen=True)
class Token:
    kind: str  # a keyword, "ident", "{", "}", or "eof"
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, column = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            column = 1
        elif ch in " \t\r":
            i += 1
            column += 1
        elif ch == "#":
            while i < n and source[i] != "\n":
                i += 1
        elif ch in "{}":
            tokens.append(Token(ch, ch, line, column))
            i += 1
            column += 1
        elif ch in _IDENT_START:
            start, start_col = i, column
            while i < n and source[i] in _IDENT_BODY:
                i += 1
                column += 1
            word = source[start:i]
            kind = word if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, start_col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(Token("eof", "", line, column))
    return tokens


@dataclass(frozen=True)
class SourceSpan:
    start_line: int
    start_column: int
    end_line: int
    end_column: int


@dataclass(frozen=True)
class ConditionExpr:
    negated: bool
    atom: str

    def negate(self) -> "ConditionExpr":
        return ConditionExpr(not self.negated, self.atom)

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else self.atom


@dataclass(frozen=True)
class Defeater:
    condition: ConditionExpr
    action: str


@dataclass(frozen=True)
class RuleAst:
    name: str
    trigger: str
    base_action: str
    defeaters: tuple[Defeater, ...]
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Branch:
    condition: ConditionExpr
    action: str


@dataclass(frozen=True)
class NormalizedRule:
    name: str
    trigger: str
    branches: tuple[Branch, ...]
    default_action: str


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def expect(self, *kinds: str) -> Token:
        token = self.peek()
        if token.kind in kinds:
            return self.advance()
        found = f"'{token.text}'" if token.text else "end of input"
        raise ParseError(
            f"unexpected {found}", token.line, token.column, expected=frozenset(kinds)
        )

    def ident(self) -> str:
        return self.expect("ident").text

    def condition(self) -> ConditionExpr:
        negated = False
        if self.peek().kind == "not":
            self.advance()
            negated = True
        return ConditionExpr(negated, self.ident())

    def rule(self) -> RuleAst:
        start = self.expect("rule")
        name = self.ident()
        self.expect("{")
        head = self.expect("when", "on")
        if head.kind == "when":
            trigger = self.ident()
            self.expect("then")
            base = self.ident()
            defeaters = []
            while self.peek().kind == "unless":
                self.advance()
                condition = self.condition()
                self.expect("in")
                self.expect("which")
                self.expect("case")
                defeaters.append(Defeater(condition, self.ident()))
            ast = RuleAst(name, trigger, base, tuple(defeaters))
        else:
            trigger = self.ident()
            ast = self._direct_body(name, trigger)
        close = self.expect("}")
        span = SourceSpan(start.line, start.column, close.line, close.column)
        return RuleAst(ast.name, ast.trigger, ast.base_action, ast.defeaters, span)

    def _direct_body(self, name: str, trigger: str) -> RuleAst:
        head = self.expect("do", "if")
        if head.kind == "do":
            return RuleAst(name, trigger, self.ident(), ())
        branches = [self._branch()]
        default = None
        while self.peek().kind == "else":
            self.advance()
            if self.peek().kind == "if":
                self.advance()
                branches.append(self._branch())
            else:
                default = self.ident()
                break
        if default is None:
            token = self.peek()
            raise ParseError(
                "if-form rule is missing its final else action",
                token.line,
                token.column,
                expected=frozenset({"else"}),
            )
        # Fold the explicit branch form back into a defeater chain so both
        # surface forms produce the same AST type: branch i's condition is the
        # negation of defeater i's, and actions shift by one position.
        defeaters = []
        for i, branch in enumerate(branches):
            action = branches[i + 1].action if i + 1 < len(branches) else default
            defeaters.append(Defeater(branch.condition.negate(), action))
        return RuleAst(name, trigger, branches[0].action, tuple(defeaters))

    def _branch(self) -> Branch:
        condition = self.condition()
        self.expect("then")
        return Branch(condition, self.ident())


def parse_rule_set(source: str) -> list[RuleAst]:
    """Parse DSL text into one AST per rule block.

    Raises ParseError with position and expected-token set on malformed
    input; a duplicated rule name is also a ParseError.
    """
    parser = _Parser(_tokenize(source))
    rules: list[RuleAst] = []
    seen: dict[str, RuleAst] = {}
    while parser.peek().kind != "eof":
        token = parser.peek()
        if token.kind != "rule":
            found = f"'{token.text}'"
            raise ParseError(
                f"unexpected {found}", token.line, token.column, expected=frozenset({"rule"})
            )
        ast = parser.rule()
        if ast.name in seen:
            assert ast.span is not None
            raise ParseError(
                f"duplicate rule name {ast.name!r}",
                ast.span.start_line,
                ast.span.start_column,
            )
        seen[ast.name] = ast
        rules.append(ast)
    return rules


def normalize(rule: RuleAst) -> NormalizedRule:
    """Rewrite the defeater chain into flat branches.

    Branch i carries the negation of defeater i's condition and the action
    that was in force before defeater i fired; the default is the last
    defeater's action. A rule without defeaters keeps its base action as the
    default with no branches.
    """
    branches = []
    action_in_force = rule.base_action
    for defeater in rule.defeaters:
        branches.append(Branch(defeater.condition.negate(), action_in_force))
        action_in_force = defeater.action
    return NormalizedRule(
        name=rule.name,
        trigger=rule.trigger,
        branches=tuple(branches),
        default_action=action_in_force,
    )


def pretty_print(rule: NormalizedRule) -> str:
    """Emit the canonical if/else-if/else surface form; reparses to an equal rule."""
    lines = [f"rule {rule.name} {{", f"  on {rule.trigger}"]
    if not rule.branches:
        lines.append(f"  do {rule.default_action}")
    else:
        first = rule.branches[0]
        lines.append(f"  if {first.condition} then {first.action}")
        for branch in rule.branches[1:]:
            lines.append(f"  else if {branch.condition} then {branch.action}")
        lines.append(f"  else {rule.default_action}")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Vocabulary:
    events: frozenset[str]
    actions: frozenset[str]
    conditions: frozenset[str]


@dataclass(frozen=True)
class LinkError:
    rule: str
    kind: str  # "event", "action", or "condition"
    atom: str

    def __str__(self) -> str:
        return f"rule {self.rule!r}: undeclared {self.kind} {self.atom!r}"


@dataclass(frozen=True)
class ConflictWarning:
    trigger: str
    rules: tuple[str, ...]

    def __str__(self) -> str:
        names = ", ".join(self.rules)
        return f"trigger {self.trigger!r} is shared by rules {names} (file order applies)"


Diagnostic = Union[LinkError, ConflictWarning]


def validate(rules: Iterable[NormalizedRule], vocabulary: Vocabulary) -> list[Diagnostic]:
    """Resolve every referenced name against the vocabulary.

    Returns one LinkError per unresolved name per rule, plus a
    ConflictWarning for each trigger shared by several rules.
    """
    diagnostics: list[Diagnostic] = []
    by_trigger: dict[str, list[str]] = {}
    for rule in rules:
        seen: set[tuple[str, str]] = set()

        def report(kind: str, atom: str, declared: frozenset[str]) -> None:
            if atom not in declared and (kind, atom) not in seen:
                seen.add((kind, atom))
                diagnostics.append(LinkError(rule.name, kind, atom))

        report("event", rule.trigger, vocabulary.events)
        for branch in rule.branches:
            report("condition", branch.condition.atom, vocabulary.conditions)
            report("action", branch.action, vocabulary.actions)
        report("action", rule.default_action, vocabulary.actions)
        by_trigger.setdefault(rule.trigger, []).append(rule.name)
    for trigger, names in by_trigger.items():
        if len(names) > 1:
            diagnostics.append(ConflictWarning(trigger, tuple(names)))
    return diagnostics


def link_errors(diagnostics: Iterable[Diagnostic]) -> list[LinkError]:
    return [d for d in diagnostics if isinstance(d, LinkError)]
