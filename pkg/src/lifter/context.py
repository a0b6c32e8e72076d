"""Definition database standing in for the proof state.

A context document is JSON::

    {"constants": [
        {"name": "itrev", "type": "'a list => 'a list => 'a list",
         "equations": ["(eq (itrev nil ys) ys)", ...],
         "derived_rules": ["itrev.induct"]},
        ...]}

Equation variables are implicit frees. Each gets its type from the first
position where it appears as a direct argument of a declared constant
(the equality constant excepted); an equation may be given as
``{"equation": "...", "vars": {"x": "nat"}}`` to override that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from lifter.errors import ContextError, LifterError
from lifter.terms import (
    LAMBDA,
    Const,
    SimpleType,
    Term,
    _List,
    _read_sexps,
    _Sym,
    flatten_app,
    flatten_type,
    iter_occurrences,
    parse_term,
    parse_type,
)

EQ = "eq"


@dataclass(frozen=True)
class ConstDef:
    name: str
    type: SimpleType
    equations: tuple[Term, ...] = ()
    derived_rules: tuple[str, ...] = ()
    recursive: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "recursive", detect_recursion(self.name, self.equations))

    @property
    def arity(self) -> int:
        return len(flatten_type(self.type)[0])


def split_equation(eq: Term) -> tuple[Term, Term]:
    head, args = flatten_app(eq)
    if not (isinstance(head, Const) and head.name == EQ and len(args) == 2):
        raise ContextError(f"equation is not an '{EQ}' statement with two sides")
    return args


def detect_recursion(name: str, equations: tuple[Term, ...]) -> bool:
    """Syntactic self-reference in some right-hand side; mutual recursion is not seen."""
    for eq in equations:
        _, rhs = split_equation(eq)
        if any(isinstance(s, Const) and s.name == name for _, s in iter_occurrences(rhs)):
            return True
    return False


class ProofContext:
    """Immutable after construction. ``rule_index`` maps rule name to owning constant."""

    def __init__(self, constants: Mapping[str, ConstDef] | list[ConstDef] = ()):
        if not isinstance(constants, Mapping):
            table: dict[str, ConstDef] = {}
            for c in constants:
                if c.name in table:
                    raise ContextError(f"duplicate constant {c.name!r}")
                table[c.name] = c
            constants = table
        index: dict[str, str] = {}
        for c in constants.values():
            for rule in c.derived_rules:
                if rule in index:
                    raise ContextError(f"duplicate rule name {rule!r} ({index[rule]} and {c.name})")
                index[rule] = c.name
        self.constants = MappingProxyType(dict(constants))
        self.rule_index = MappingProxyType(index)
        self.signature = MappingProxyType({n: c.type for n, c in self.constants.items()})

    def __repr__(self) -> str:
        return f"ProofContext({sorted(self.constants)})"


def is_recursive(ctx: ProofContext, name: str) -> bool:
    c = ctx.constants.get(name)
    return c is not None and c.recursive


def rules_derived_from(ctx: ProofContext, name: str) -> list[str]:
    c = ctx.constants.get(name)
    return list(c.derived_rules) if c is not None else []


def _infer_equation_vars(text: str, signature: Mapping[str, SimpleType]) -> dict[str, SimpleType]:
    inferred: dict[str, SimpleType] = {}

    def walk(node: Any) -> None:
        if not isinstance(node, _List) or not node.items:
            return
        head = node.items[0]
        params: list[SimpleType] = []
        if isinstance(head, _Sym) and head.text in signature and head.text != EQ:
            params = flatten_type(signature[head.text])[0]
        for i, arg in enumerate(node.items[1:]):
            if isinstance(arg, _Sym):
                if arg.text not in signature and arg.text not in inferred and i < len(params):
                    inferred[arg.text] = params[i]
            else:
                walk(arg)
        walk(head)

    for node in _read_sexps(text):
        walk(node)
    return inferred


def _unbound_symbols(text: str, known: set[str]) -> list[str]:
    out: list[str] = []

    def walk(node: Any, bound: frozenset[str]) -> None:
        if isinstance(node, _Sym):
            if node.text not in known | bound and node.text not in out and not node.text.startswith("["):
                out.append(node.text)
        elif len(node.items) == 4 and isinstance(node.items[0], _Sym) and node.items[0].text == LAMBDA \
                and isinstance(node.items[1], _Sym):
            walk(node.items[3], bound | {node.items[1].text})
        else:
            for item in node.items:
                walk(item, bound)

    for node in _read_sexps(text):
        walk(node, frozenset())
    return out


def load_context(document: str | Mapping[str, Any]) -> ProofContext:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ContextError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(document, Mapping) or not isinstance(document.get("constants"), list):
        raise ContextError("context document needs a top-level 'constants' list")

    entries = document["constants"]
    signature: dict[str, SimpleType] = {}
    for entry in entries:
        if not isinstance(entry, Mapping) or "name" not in entry or "type" not in entry:
            raise ContextError("each constant needs 'name' and 'type'")
        name = entry["name"]
        if name in signature:
            raise ContextError(f"duplicate constant {name!r}")
        try:
            signature[name] = parse_type(entry["type"])
        except LifterError as exc:
            raise ContextError(f"constant {name!r}: {exc.message}") from None

    defs = []
    for entry in entries:
        name = entry["name"]
        equations = []
        for raw in entry.get("equations", []):
            if isinstance(raw, str):
                text, overrides = raw, {}
            else:
                text, overrides = raw.get("equation", ""), raw.get("vars", {})
            try:
                frees = _infer_equation_vars(text, signature)
                frees.update({v: parse_type(ty) for v, ty in overrides.items()})
                missing = _unbound_symbols(text, set(signature) | set(frees))
                if missing:
                    raise ContextError(f"cannot infer the type of {missing[0]!r}; add a 'vars' override")
                eq = parse_term(text, frees, signature)
                lhs, _ = split_equation(eq)
            except LifterError as exc:
                raise ContextError(f"constant {name!r}, equation {text!r}: {exc.message}") from None
            lhs_head = flatten_app(lhs)[0]
            if not (isinstance(lhs_head, Const) and lhs_head.name == name):
                raise ContextError(f"constant {name!r}, equation {text!r}: left-hand side is not headed by {name!r}")
            equations.append(eq)
        rules = entry.get("derived_rules", [])
        if len(set(rules)) != len(rules):
            raise ContextError(f"constant {name!r} lists a rule twice")
        defs.append(ConstDef(name, signature[name], tuple(equations), tuple(rules)))
    return ProofContext(defs)


def load_context_file(path) -> ProofContext:
    with open(path, encoding="utf-8") as fh:
        return load_context(fh.read())
