"""LiFtEr assertion AST, scope/kind checker and canonical printer.

Three atoms are extensions beyond the published example so that the choice
of induction terms and of generalised variables can be expressed:
``Is_Same_As``, ``Is_Free_Var`` and ``Is_In_Arbitrary``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from typing import ClassVar, Iterator

Pos = tuple[int, int]


class VarKind(enum.Enum):
    TRM = "Trm"
    TRM_OCC = "Trm_Occ"
    RULE = "Rule"
    NUMB = "Numb"


@dataclass(frozen=True)
class LVar:
    kind: VarKind
    id: int

    def __str__(self) -> str:
        return f"{self.kind.value} {self.id}"


def Trm(i: int) -> LVar:
    return LVar(VarKind.TRM, i)


def TrmOcc(i: int) -> LVar:
    return LVar(VarKind.TRM_OCC, i)


def Rule(i: int) -> LVar:
    return LVar(VarKind.RULE, i)


def Numb(i: int) -> LVar:
    return LVar(VarKind.NUMB, i)


class Polarity(enum.Enum):
    SOME = "Some"
    ALL = "All"


class Domain(enum.Enum):
    TRM = "Trm"
    RULE = "Rule"
    IND = "Ind"
    ARB = "Arb"
    NUMB = "Numb"

    @property
    def kind(self) -> VarKind:
        return _DOMAIN_KIND[self]


_DOMAIN_KIND = {
    Domain.TRM: VarKind.TRM,
    Domain.IND: VarKind.TRM,
    Domain.ARB: VarKind.TRM,
    Domain.RULE: VarKind.RULE,
    Domain.NUMB: VarKind.NUMB,
}


class Assertion:
    __slots__ = ()

    def __str__(self) -> str:
        return pretty_print(self)


# Source positions never take part in equality.
def _pos() -> Pos | None:
    return field(default=None, compare=False, repr=False, kw_only=True)  # type: ignore[return-value]


@dataclass(frozen=True)
class Truth(Assertion):
    value: bool
    pos: Pos | None = _pos()


TRUE = Truth(True)
FALSE = Truth(False)


@dataclass(frozen=True)
class Not(Assertion):
    body: Assertion
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class And(Assertion):
    left: Assertion
    right: Assertion
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Or(Assertion):
    left: Assertion
    right: Assertion
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Imply(Assertion):
    left: Assertion
    right: Assertion
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Quant(Assertion):
    polarity: Polarity
    domain: Domain
    var: LVar
    body: Assertion
    pos: Pos | None = _pos()

    @property
    def keyword(self) -> str:
        return f"{self.polarity.value}_{self.domain.value}"


@dataclass(frozen=True)
class QuantOccOf(Assertion):
    polarity: Polarity
    occ_var: LVar
    of_trm: LVar
    body: Assertion
    pos: Pos | None = _pos()

    @property
    def keyword(self) -> str:
        return f"{self.polarity.value}_Trm_Occ_Of"


class Atom(Assertion):
    """Atomic assertion; ``SIGNATURE`` lists the expected kinds of ``args()``."""

    __slots__ = ()
    NAME: ClassVar[str]
    SIGNATURE: ClassVar[tuple[VarKind, ...]]
    INFIX: ClassVar[bool] = False

    def args(self) -> tuple[LVar, ...]:
        return tuple(getattr(self, f.name) for f in fields(self) if f.name != "pos")


@dataclass(frozen=True)
class IsRuleOf(Atom):
    NAME = "Is_Rule_Of"
    SIGNATURE = (VarKind.RULE, VarKind.TRM_OCC)
    INFIX = True
    rule: LVar
    occ: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsRecursiveCnst(Atom):
    NAME = "Is_Recursive_Cnst"
    SIGNATURE = (VarKind.TRM_OCC,)
    occ: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsNthArgOf(Atom):
    NAME = "Is_Nth_Arg_Of"
    SIGNATURE = (VarKind.TRM_OCC, VarKind.NUMB, VarKind.TRM_OCC)
    arg_occ: LVar
    numb: LVar
    head_occ: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsNthInd(Atom):
    NAME = "Is_Nth_Ind"
    SIGNATURE = (VarKind.TRM, VarKind.NUMB)
    INFIX = True
    trm: LVar
    numb: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsSameAs(Atom):
    NAME = "Is_Same_As"
    SIGNATURE = (VarKind.TRM, VarKind.TRM)
    INFIX = True
    left: LVar
    right: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsFreeVar(Atom):
    NAME = "Is_Free_Var"
    SIGNATURE = (VarKind.TRM_OCC,)
    occ: LVar
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class IsInArbitrary(Atom):
    NAME = "Is_In_Arbitrary"
    SIGNATURE = (VarKind.TRM,)
    trm: LVar
    pos: Pos | None = _pos()


ATOMS: dict[str, type[Atom]] = {
    cls.NAME: cls for cls in (IsRuleOf, IsRecursiveCnst, IsNthArgOf, IsNthInd, IsSameAs, IsFreeVar, IsInArbitrary)
}
QUANTIFIERS: dict[str, tuple[Polarity, Domain]] = {
    f"{p.value}_{d.value}": (p, d) for p in Polarity for d in Domain
}
OCC_QUANTIFIERS: dict[str, Polarity] = {f"{p.value}_Trm_Occ_Of": p for p in Polarity}


def iter_nodes(a: Assertion) -> Iterator[Assertion]:
    yield a
    if isinstance(a, (Not, Quant, QuantOccOf)):
        yield from iter_nodes(a.body)
    elif isinstance(a, (And, Or, Imply)):
        yield from iter_nodes(a.left)
        yield from iter_nodes(a.right)


def depth(a: Assertion) -> int:
    if isinstance(a, (Not, Quant, QuantOccOf)):
        return 1 + depth(a.body)
    if isinstance(a, (And, Or, Imply)):
        return 1 + max(depth(a.left), depth(a.right))
    return 1


# ---------------------------------------------------------------------------
# Scope checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScopeError:
    kind: str  # "unbound" | "kind-mismatch" | "shadowing"
    var: LVar
    message: str
    pos: Pos | None = None

    def __str__(self) -> str:
        return self.message


def check_scopes(a: Assertion) -> list[ScopeError]:
    """All violations of the well-scoped invariant; empty means ok."""
    errors: list[ScopeError] = []

    def use(var: LVar, expected: VarKind, where: str, pos: Pos | None, scope: frozenset[LVar]) -> None:
        if var.kind is not expected:
            errors.append(ScopeError("kind-mismatch", var, f"{where} expects a {expected.value} variable, got {var}", pos))
        elif var not in scope:
            errors.append(ScopeError("unbound", var, f"{var} is unbound", pos))

    def bind(var: LVar, expected: VarKind, where: str, pos: Pos | None, scope: frozenset[LVar]) -> frozenset[LVar]:
        if var.kind is not expected:
            errors.append(ScopeError("kind-mismatch", var, f"{where} binds {expected.value} variables, got {var}", pos))
        elif var in scope:
            errors.append(ScopeError("shadowing", var, f"{var} is already bound by an enclosing quantifier", pos))
        return scope | {var}

    def go(a: Assertion, scope: frozenset[LVar]) -> None:
        if isinstance(a, Truth):
            return
        if isinstance(a, Not):
            go(a.body, scope)
        elif isinstance(a, (And, Or, Imply)):
            go(a.left, scope)
            go(a.right, scope)
        elif isinstance(a, Quant):
            go(a.body, bind(a.var, a.domain.kind, a.keyword, a.pos, scope))
        elif isinstance(a, QuantOccOf):
            use(a.of_trm, VarKind.TRM, a.keyword, a.pos, scope)
            go(a.body, bind(a.occ_var, VarKind.TRM_OCC, a.keyword, a.pos, scope))
        elif isinstance(a, Atom):
            for var, kind in zip(a.args(), a.SIGNATURE):
                use(var, kind, a.NAME, a.pos, scope)
        else:
            raise TypeError(f"not an assertion: {a!r}")

    go(a, frozenset())
    return errors


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

# Higher binds tighter.
_PREC_IMPLY, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt(a: Assertion) -> tuple[str, int]:
    if isinstance(a, Truth):
        return ("True" if a.value else "False"), _PREC_ATOM
    if isinstance(a, Not):
        return "Not " + _wrap(a.body, _PREC_NOT), _PREC_NOT
    if isinstance(a, Imply):
        return f"{_wrap(a.left, _PREC_OR)} Imply {_wrap(a.right, _PREC_IMPLY)}", _PREC_IMPLY
    if isinstance(a, Or):
        return f"{_wrap(a.left, _PREC_OR)} Or {_wrap(a.right, _PREC_AND)}", _PREC_OR
    if isinstance(a, And):
        return f"{_wrap(a.left, _PREC_AND)} And {_wrap(a.right, _PREC_NOT)}", _PREC_AND
    if isinstance(a, Quant):
        return f"{a.keyword} ({a.var}, {_fmt(a.body)[0]})", _PREC_ATOM
    if isinstance(a, QuantOccOf):
        return f"{a.keyword} ({a.occ_var}, {a.of_trm}, {_fmt(a.body)[0]})", _PREC_ATOM
    if isinstance(a, Atom):
        args = a.args()
        if a.INFIX:
            return f"{args[0]} {a.NAME} {args[1]}", _PREC_ATOM
        return f"{a.NAME} (" + ", ".join(map(str, args)) + ")", _PREC_ATOM
    raise TypeError(f"not an assertion: {a!r}")


def _wrap(a: Assertion, min_prec: int) -> str:
    text, prec = _fmt(a)
    return text if prec >= min_prec else f"({text})"


def pretty_print(a: Assertion) -> str:
    """Canonical single-line text, terminated by ``;``."""
    return _fmt(a)[0] + ";"


def node_label(a: Assertion) -> str:
    if isinstance(a, Truth):
        return "True" if a.value else "False"
    if isinstance(a, (Not, And, Or, Imply)):
        return type(a).__name__
    if isinstance(a, Quant):
        return f"{a.keyword} {a.var}"
    if isinstance(a, QuantOccOf):
        return f"{a.keyword} {a.occ_var} of {a.of_trm}"
    return _fmt(a)[0]


def format_tree(a: Assertion, indent: str = "  ") -> str:
    lines: list[str] = []

    def go(a: Assertion, level: int) -> None:
        lines.append(indent * level + node_label(a))
        if isinstance(a, (Not, Quant, QuantOccOf)):
            go(a.body, level + 1)
        elif isinstance(a, (And, Or, Imply)):
            go(a.left, level + 1)
            go(a.right, level + 1)

    go(a, 0)
    return "\n".join(lines)
