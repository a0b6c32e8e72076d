"""Deciding assertions against (goal, proof context, induct invocation) triples."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from lifter.context import ProofContext, is_recursive, rules_derived_from
from lifter.errors import InvocationError, LifterError
from lifter.syntax import (
    And,
    Assertion,
    Atom,
    Domain,
    Imply,
    IsFreeVar,
    IsInArbitrary,
    IsNthArgOf,
    IsNthInd,
    IsRecursiveCnst,
    IsRuleOf,
    IsSameAs,
    LVar,
    Not,
    Or,
    Polarity,
    Quant,
    QuantOccOf,
    Truth,
    node_label,
)
from lifter.terms import (
    Free,
    Goal,
    Occurrence,
    Term,
    head_constant,
    iter_occurrences,
    max_arity,
    nth_arg,
    parse_term,
    print_term,
    resolve,
)

Denotation = Union[Term, Occurrence, str, int]
Env = Mapping[LVar, Denotation]


@dataclass(frozen=True)
class InductArgs:
    ind_terms: tuple[Term, ...] = ()
    arbitrary: tuple[Term, ...] = ()
    rules: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.ind_terms)) != len(self.ind_terms):
            raise InvocationError("induction terms must be distinct")
        if len(set(self.arbitrary)) != len(self.arbitrary):
            raise InvocationError("arbitrary variables must be distinct")
        if not all(isinstance(t, Free) for t in self.arbitrary):
            raise InvocationError("arbitrary entries must be free variables")
        if len(set(self.rules)) != len(self.rules):
            raise InvocationError("rule names must be distinct")

    def __str__(self) -> str:
        return format_invocation(self)


def format_invocation(args: InductArgs) -> str:
    parts = ["induct", *map(print_term, args.ind_terms)]
    if args.arbitrary:
        parts += ["arbitrary:", *map(print_term, args.arbitrary)]
    if args.rules:
        parts += ["rule:", *args.rules]
    return " ".join(parts)


_INVOCATION_TOKEN = re.compile(r"\s+|(\()|(\))|([^\s()]+)")


def _split_invocation(text: str) -> list[tuple[str, int]]:
    """Top-level chunks: bare words or whole balanced S-expressions, with offsets."""
    chunks: list[tuple[str, int]] = []
    depth = 0
    start = 0
    pos = 0
    while pos < len(text):
        m = _INVOCATION_TOKEN.match(text, pos)
        if m.group(1):
            if depth == 0:
                start = pos
            depth += 1
        elif m.group(2):
            depth -= 1
            if depth < 0:
                raise InvocationError("unbalanced ')'", 1, pos + 1)
            if depth == 0:
                chunks.append((text[start : m.end()], start))
        elif m.group(3) and depth == 0:
            chunks.append((m.group(3), pos))
        pos = m.end()
    if depth:
        raise InvocationError("unbalanced '('", 1, start + 1)
    return chunks


def parse_invocation(text: str, goal: Goal, ctx: ProofContext) -> InductArgs:
    """``induct <trm>* [arbitrary: <trm>+] [rule: <name>+]``."""
    chunks = _split_invocation(text)
    if not chunks or chunks[0][0] != "induct":
        raise InvocationError("invocation must start with 'induct'", 1, 1)
    sections: dict[str, list[tuple[str, int]]] = {"": [], "arbitrary:": [], "rule:": []}
    current = ""
    for chunk, offset in chunks[1:]:
        if chunk in ("arbitrary:", "rule:"):
            if sections[chunk] or chunk == current:
                raise InvocationError(f"'{chunk}' given twice", 1, offset + 1)
            current = chunk
            continue
        sections[current].append((chunk, offset))
    for key in ("arbitrary:", "rule:"):
        if key in [c for c, _ in chunks] and not sections[key]:
            raise InvocationError(f"'{key}' needs at least one entry")

    def term(chunk: str, offset: int) -> Term:
        try:
            return parse_term(chunk, goal.free_types, ctx.signature, line=1, col=offset + 1)
        except LifterError as exc:
            raise InvocationError(exc.message, exc.line, exc.col) from None

    return InductArgs(
        tuple(term(*c) for c in sections[""]),
        tuple(term(*c) for c in sections["arbitrary:"]),
        tuple(c for c, _ in sections["rule:"]),
    )


def numb_domain(goal: Goal, args: InductArgs) -> range:
    return range(1, max(max_arity(goal.statement), len(args.ind_terms), 1) + 1)


def _show(d: Denotation) -> str:
    if isinstance(d, Term):
        return print_term(d)
    return str(d)


class Evaluator:
    """Evaluation over one triple; domain data is computed once and shared."""

    def __init__(self, goal: Goal, ctx: ProofContext, args: InductArgs):
        self.goal = goal
        self.ctx = ctx
        self.args = args
        self.occurrences: dict[Term, list[Occurrence]] = {}
        for occ, sub in iter_occurrences(goal.statement):
            self.occurrences.setdefault(sub, []).append(occ)
        self.subterms = list(self.occurrences)
        self.numbs = numb_domain(goal, args)

    def domain(self, a: Quant | QuantOccOf, env: Env) -> Sequence[Denotation]:
        if isinstance(a, QuantOccOf):
            return self.occurrences.get(env[a.of_trm], [])
        if a.domain is Domain.TRM:
            return self.subterms
        if a.domain is Domain.RULE:
            return self.args.rules
        if a.domain is Domain.IND:
            return self.args.ind_terms
        if a.domain is Domain.ARB:
            return self.args.arbitrary
        return self.numbs

    def holds(self, a: Assertion, env: Env | None = None) -> bool:
        return self._eval(a, dict(env or {}))

    def _eval(self, a: Assertion, env: dict) -> bool:
        if isinstance(a, Atom):
            return self.atom(a, env)
        if isinstance(a, Truth):
            return a.value
        if isinstance(a, Not):
            return not self._eval(a.body, env)
        if isinstance(a, And):
            return self._eval(a.left, env) and self._eval(a.right, env)
        if isinstance(a, Or):
            return self._eval(a.left, env) or self._eval(a.right, env)
        if isinstance(a, Imply):
            return not self._eval(a.left, env) or self._eval(a.right, env)
        var = a.var if isinstance(a, Quant) else a.occ_var
        values = self.domain(a, env)
        if a.polarity is Polarity.SOME:
            return any(self._eval(a.body, {**env, var: v}) for v in values)
        return all(self._eval(a.body, {**env, var: v}) for v in values)

    def atom(self, a: Atom, env: Env) -> bool:
        goal = self.goal
        if isinstance(a, IsRuleOf):
            c = head_constant(goal, env[a.occ])
            return c is not None and env[a.rule] in rules_derived_from(self.ctx, c)
        if isinstance(a, IsRecursiveCnst):
            c = head_constant(goal, env[a.occ])
            return c is not None and is_recursive(self.ctx, c)
        if isinstance(a, IsNthArgOf):
            return nth_arg(goal, env[a.head_occ], env[a.numb]) == env[a.arg_occ]
        if isinstance(a, IsNthInd):
            n = env[a.numb]
            ind = self.args.ind_terms
            return 1 <= n <= len(ind) and ind[n - 1] == env[a.trm]
        if isinstance(a, IsSameAs):
            return env[a.left] == env[a.right]
        if isinstance(a, IsFreeVar):
            return isinstance(resolve(goal, env[a.occ]), Free)
        if isinstance(a, IsInArbitrary):
            return env[a.trm] in self.args.arbitrary
        raise TypeError(f"unknown atom {a!r}")

    def explain(self, a: Assertion) -> tuple[bool, list[str]]:
        """Result plus a witness/counterexample trace, one line per deciding step."""
        lines: list[str] = []

        def go(a: Assertion, env: dict, level: int) -> bool:
            pad = "  " * level
            value = self._eval(a, env)
            verdict = "true" if value else "false"
            if isinstance(a, (Truth, Atom)):
                lines.append(f"{pad}{node_label(a)}: {verdict}")
                return value
            if isinstance(a, Not):
                lines.append(f"{pad}Not: {verdict}")
                go(a.body, env, level + 1)
                return value
            if isinstance(a, (And, Or, Imply)):
                lines.append(f"{pad}{type(a).__name__}: {verdict}")
                left = self._eval(a.left, env)
                # Explain only the operands that decide the result.
                if isinstance(a, And):
                    show_right = left
                elif isinstance(a, Or):
                    show_right = not left
                else:
                    show_right = left
                go(a.left, env, level + 1)
                if show_right:
                    go(a.right, env, level + 1)
                return value
            var = a.var if isinstance(a, Quant) else a.occ_var
            values = self.domain(a, env)
            head = f"{pad}{a.keyword} {var}"
            some = a.polarity is Polarity.SOME
            if value == some:
                # Some/true has a witness; All/false has a counterexample.
                target = value
                for v in values:
                    if self._eval(a.body, {**env, var: v}) == target:
                        tag = "witness" if some else "counterexample"
                        lines.append(f"{head} := {_show(v)} ({tag})")
                        go(a.body, {**env, var: v}, level + 1)
                        break
            elif some:
                lines.append(f"{head}: no witness among {len(values)} candidates")
            elif not values:
                lines.append(f"{head}: holds vacuously (no candidates)")
            else:
                for k, v in enumerate(values, 1):
                    lines.append(f"{head} := {_show(v)} ({k}/{len(values)})")
                    go(a.body, {**env, var: v}, level + 1)
            return value

        result = go(a, {}, 0)
        return result, lines


def evaluate(a: Assertion, goal: Goal, ctx: ProofContext, args: InductArgs) -> bool:
    return Evaluator(goal, ctx, args).holds(a)


def eval_atom(a: Atom, env: Env, goal: Goal, ctx: ProofContext, args: InductArgs) -> bool:
    return Evaluator(goal, ctx, args).atom(a, env)
