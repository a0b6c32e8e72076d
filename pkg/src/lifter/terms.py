"""Typed applicative terms, occurrence paths and the goal file format.

Terms are addressed in the *flattened* application view: an application
``((f a) b)`` is a single node with head ``f`` and arguments ``[a, b]``.
At such a node path step 0 selects the head and step ``i`` selects the
``i``-th argument (1-based). At an abstraction step 0 selects the body.
Partial applications such as ``(f a)`` above are therefore not nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from lifter.errors import OccurrenceError, TermSyntaxError, TermTypeError

# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TVar:
    name: str  # includes the leading quote, e.g. "'a"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TCon:
    name: str
    args: tuple["SimpleType", ...] = ()

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Fun:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self) -> str:
        return format_type(self)


SimpleType = Union[TVar, TCon, Fun]


def fun_type(*tys: SimpleType) -> SimpleType:
    """``fun_type(a, b, c)`` is ``a => b => c``."""
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Fun(ty, result)
    return result


def flatten_type(ty: SimpleType) -> tuple[list[SimpleType], SimpleType]:
    """Split ``a1 => ... => an => r`` into ``([a1..an], r)``."""
    params = []
    while isinstance(ty, Fun):
        params.append(ty.dom)
        ty = ty.cod
    return params, ty


def format_type(ty: SimpleType) -> str:
    if isinstance(ty, TVar):
        return ty.name
    if isinstance(ty, Fun):
        dom = format_type(ty.dom)
        if isinstance(ty.dom, Fun):
            dom = f"({dom})"
        return f"{dom} => {format_type(ty.cod)}"
    if not ty.args:
        return ty.name
    if len(ty.args) == 1:
        (arg,) = ty.args
        inner = format_type(arg)
        if isinstance(arg, Fun):
            inner = f"({inner})"
        return f"{inner} {ty.name}"
    return "(" + ", ".join(format_type(a) for a in ty.args) + f") {ty.name}"


_TYPE_TOKEN = re.compile(r"\s*(?:(=>)|('[A-Za-z_][A-Za-z0-9_]*)|([A-Za-z_][A-Za-z0-9_.]*)|([(),]))")


def parse_type(text: str) -> SimpleType:
    """Parse ``'a list => 'a list``-style type syntax (``=>`` is right-associative)."""
    tokens: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"bad character in type {text!r} at offset {pos}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    if not tokens:
        raise TermSyntaxError("empty type")

    i = 0

    def peek() -> str | None:
        return tokens[i] if i < len(tokens) else None

    def take(expected: str | None = None) -> str:
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise TermSyntaxError(f"malformed type {text!r}: expected {expected or 'a type'}")
        i += 1
        return tok

    def is_ident(tok: str | None) -> bool:
        return tok is not None and tok not in ("=>", "(", ")", ",") and not tok.startswith("'")

    def function() -> SimpleType:
        left = postfix()
        if peek() == "=>":
            take()
            return Fun(left, function())
        return left

    def postfix() -> SimpleType:
        tok = take()
        if tok.startswith("'"):
            ty: SimpleType = TVar(tok)
        elif tok == "(":
            items = [function()]
            while peek() == ",":
                take()
                items.append(function())
            take(")")
            if len(items) > 1:
                if not is_ident(peek()):
                    raise TermSyntaxError(f"malformed type {text!r}: tuple of types needs a constructor")
                ty = TCon(take(), tuple(items))
            else:
                ty = items[0]
        elif is_ident(tok):
            ty = TCon(tok)
        else:
            raise TermSyntaxError(f"malformed type {text!r}: unexpected {tok!r}")
        while is_ident(peek()):
            ty = TCon(take(), (ty,))
        return ty

    ty = function()
    if peek() is not None:
        raise TermSyntaxError(f"malformed type {text!r}: trailing {peek()!r}")
    return ty


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Const(Term):
    name: str
    type: SimpleType


@dataclass(frozen=True)
class Free(Term):
    name: str
    type: SimpleType


@dataclass(frozen=True)
class Bound(Term):
    index: int


@dataclass(frozen=True)
class Abs(Term):
    name: str = field(compare=False)
    type: SimpleType
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


def app(head: Term, *args: Term) -> Term:
    """Curried application of ``head`` to ``args``."""
    for a in args:
        head = App(head, a)
    return head


def flatten_app(t: Term) -> tuple[Term, tuple[Term, ...]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return t, tuple(reversed(args))


def children(t: Term) -> tuple[Term, ...]:
    """Children in the flattened view, indexed by path step."""
    if isinstance(t, App):
        head, args = flatten_app(t)
        return (head, *args)
    if isinstance(t, Abs):
        return (t.body,)
    return ()


def free_vars(t: Term) -> list[tuple[str, SimpleType]]:
    seen: dict[tuple[str, SimpleType], None] = {}
    for _, sub in iter_occurrences(t):
        if isinstance(sub, Free):
            seen.setdefault((sub.name, sub.type), None)
    return list(seen)


# ---------------------------------------------------------------------------
# Occurrences
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Occurrence:
    path: tuple[int, ...] = ()

    def child(self, step: int) -> "Occurrence":
        return Occurrence(self.path + (step,))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.path)) + "]"


def iter_occurrences(t: Term) -> Iterator[tuple[Occurrence, Term]]:
    """Pre-order walk; paths come out in lexicographic order."""
    stack: list[tuple[tuple[int, ...], Term]] = [((), t)]
    while stack:
        path, sub = stack.pop()
        yield Occurrence(path), sub
        kids = children(sub)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


@dataclass(frozen=True)
class Goal:
    """A statement plus its free-variable table (declaration order kept)."""

    statement: Term
    frees: tuple[tuple[str, SimpleType], ...] = ()

    def __post_init__(self) -> None:
        table = dict(self.frees)
        if len(table) != len(self.frees):
            raise TermSyntaxError("duplicate free-variable declaration")
        for name, ty in free_vars(self.statement):
            if table.get(name) != ty:
                raise TermTypeError(f"free variable {name} :: {format_type(ty)} is not declared with that type")

    @property
    def free_types(self) -> dict[str, SimpleType]:
        return dict(self.frees)


def subterms(goal: Goal) -> list[Term]:
    """Distinct subterms in first-occurrence pre-order."""
    seen: dict[Term, None] = {}
    for _, sub in iter_occurrences(goal.statement):
        seen.setdefault(sub, None)
    return list(seen)


def occurrences_of(goal: Goal, t: Term) -> list[Occurrence]:
    return [occ for occ, sub in iter_occurrences(goal.statement) if sub == t]


def resolve(goal: Goal, occ: Occurrence) -> Term:
    t = goal.statement
    for depth, step in enumerate(occ.path):
        kids = children(t)
        if not 0 <= step < len(kids):
            raise OccurrenceError(f"occurrence {occ} is out of range at step {depth}")
        t = kids[step]
    return t


def nth_arg(goal: Goal, head_occ: Occurrence, n: int) -> Occurrence | None:
    """The ``n``-th argument of the application whose head is at ``head_occ``."""
    if n < 1 or not head_occ.path or head_occ.path[-1] != 0:
        return None
    parent = Occurrence(head_occ.path[:-1])
    node = resolve(goal, parent)
    if not isinstance(node, App):
        return None
    _, args = flatten_app(node)
    if n > len(args):
        return None
    return parent.child(n)


def head_constant(goal: Goal, occ: Occurrence) -> str | None:
    t = resolve(goal, occ)
    return t.name if isinstance(t, Const) else None


# ---------------------------------------------------------------------------
# S-expression reading
# ---------------------------------------------------------------------------

LAMBDA = "fn"

_SEXP_TOKEN = re.compile(r"(\s+)|(\()|(\))|(\[[^\]\n]*\])|([^\s()\[\]]+)")


@dataclass
class _Sym:
    text: str
    line: int
    col: int


@dataclass
class _List:
    items: list
    line: int
    col: int


def _read_sexps(text: str, line: int = 1, col: int = 1) -> list:
    """Read all S-expressions in ``text``; the ``[...]`` token carries a type."""
    stack: list[_List] = [_List([], line, col)]
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        tok = m.group(0)
        if m.group(2):
            stack.append(_List([], line, col))
        elif m.group(3):
            if len(stack) == 1:
                raise TermSyntaxError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        elif m.group(4) or m.group(5):
            stack[-1].items.append(_Sym(tok, line, col))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    if len(stack) > 1:
        opened = stack[-1]
        raise TermSyntaxError("unbalanced '(': missing ')'", opened.line, opened.col)
    return stack[0].items


class _Unifier:
    """First-order unification over types; only ``?n`` variables are flexible."""

    def __init__(self) -> None:
        self.subst: dict[str, SimpleType] = {}
        self.counter = 0

    def instantiate(self, ty: SimpleType) -> SimpleType:
        mapping: dict[str, TVar] = {}

        def go(t: SimpleType) -> SimpleType:
            if isinstance(t, TVar):
                if t.name not in mapping:
                    self.counter += 1
                    mapping[t.name] = TVar(f"?{self.counter}")
                return mapping[t.name]
            if isinstance(t, Fun):
                return Fun(go(t.dom), go(t.cod))
            return TCon(t.name, tuple(go(a) for a in t.args))

        return go(ty)

    def walk(self, ty: SimpleType) -> SimpleType:
        while isinstance(ty, TVar) and ty.name in self.subst:
            ty = self.subst[ty.name]
        return ty

    def _occurs(self, name: str, ty: SimpleType) -> bool:
        ty = self.walk(ty)
        if isinstance(ty, TVar):
            return ty.name == name
        if isinstance(ty, Fun):
            return self._occurs(name, ty.dom) or self._occurs(name, ty.cod)
        return any(self._occurs(name, a) for a in ty.args)

    def unify(self, a: SimpleType, b: SimpleType) -> bool:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return True
        for x, y in ((a, b), (b, a)):
            if isinstance(x, TVar) and x.name.startswith("?"):
                if self._occurs(x.name, y):
                    return False
                self.subst[x.name] = y
                return True
        if isinstance(a, Fun) and isinstance(b, Fun):
            return self.unify(a.dom, b.dom) and self.unify(a.cod, b.cod)
        if isinstance(a, TCon) and isinstance(b, TCon):
            return (
                a.name == b.name
                and len(a.args) == len(b.args)
                and all(self.unify(x, y) for x, y in zip(a.args, b.args))
            )
        return False


def _build_term(
    node, frees: Mapping[str, SimpleType], consts: Mapping[str, SimpleType], binders: list[tuple[str, SimpleType]]
) -> Term:
    if isinstance(node, _Sym):
        name = node.text
        if name.startswith("["):
            raise TermSyntaxError("a type annotation is only allowed after a binder", node.line, node.col)
        for depth, (bname, _) in enumerate(reversed(binders)):
            if bname == name:
                return Bound(depth)
        if name in frees:
            return Free(name, frees[name])
        if name in consts:
            return Const(name, consts[name])
        if name == LAMBDA:
            raise TermSyntaxError(f"'{LAMBDA}' must start an abstraction", node.line, node.col)
        raise TermSyntaxError(f"unknown symbol {name!r}", node.line, node.col)
    items = node.items
    if items and isinstance(items[0], _Sym) and items[0].text == LAMBDA:
        if len(items) != 4 or not isinstance(items[1], _Sym) or not isinstance(items[2], _Sym) \
                or not items[2].text.startswith("["):
            raise TermSyntaxError(f"abstraction must read ({LAMBDA} x [type] body)", node.line, node.col)
        bname = items[1].text
        try:
            bty = parse_type(items[2].text[1:-1])
        except TermSyntaxError as exc:
            raise TermSyntaxError(exc.message, items[2].line, items[2].col) from None
        body = _build_term(items[3], frees, consts, binders + [(bname, bty)])
        return Abs(bname, bty, body)
    if len(items) < 2:
        raise TermSyntaxError("an application needs a head and at least one argument", node.line, node.col)
    head = _build_term(items[0], frees, consts, binders)
    return app(head, *(_build_term(i, frees, consts, binders) for i in items[1:]))


def type_check(t: Term) -> SimpleType:
    """Check arities and argument types; polymorphic constants are instantiated per occurrence."""
    u = _Unifier()

    def infer(t: Term, binders: list[SimpleType]) -> SimpleType:
        if isinstance(t, Const):
            return u.instantiate(t.type)
        if isinstance(t, Free):
            return t.type
        if isinstance(t, Bound):
            if t.index >= len(binders):
                raise TermTypeError(f"dangling bound variable #{t.index}")
            return binders[-1 - t.index]
        if isinstance(t, Abs):
            return Fun(t.type, infer(t.body, binders + [t.type]))
        head, args = flatten_app(t)
        ty = infer(head, binders)
        for i, a in enumerate(args, 1):
            aty = infer(a, binders)
            fty = u.walk(ty)
            if isinstance(fty, TVar) and fty.name.startswith("?"):
                res = TVar(f"?r{u.counter}")
                u.counter += 1
                u.unify(fty, Fun(aty, res))
                fty = u.walk(fty)
            if not isinstance(fty, Fun):
                raise TermTypeError(f"{print_term(head)} is applied to {len(args)} arguments but takes fewer")
            if not u.unify(fty.dom, aty):
                raise TermTypeError(
                    f"argument {i} of {print_term(head)} has type {format_type(_resolve(u, aty))}, "
                    f"expected {format_type(_resolve(u, fty.dom))}"
                )
            ty = fty.cod
        return ty

    return _resolve(u, infer(t, []))


def _resolve(u: _Unifier, ty: SimpleType) -> SimpleType:
    ty = u.walk(ty)
    if isinstance(ty, Fun):
        return Fun(_resolve(u, ty.dom), _resolve(u, ty.cod))
    if isinstance(ty, TCon):
        return TCon(ty.name, tuple(_resolve(u, a) for a in ty.args))
    return ty


def parse_term(
    text: str,
    frees: Mapping[str, SimpleType],
    consts: Mapping[str, SimpleType] | None = None,
    *,
    line: int = 1,
    col: int = 1,
) -> Term:
    """Parse one S-expression; ``(h a1 ... ak)`` is rebuilt left-associated."""
    consts = consts or {}
    clash = sorted(set(frees) & set(consts))
    if clash:
        raise TermSyntaxError(f"free variable {clash[0]!r} clashes with a constant", line, col)
    nodes = _read_sexps(text, line, col)
    if len(nodes) != 1:
        raise TermSyntaxError(f"expected exactly one term, found {len(nodes)}", line, col)
    t = _build_term(nodes[0], frees, consts, [])
    type_check(t)
    return t


def print_term(t: Term) -> str:
    def names_in(t: Term) -> set[str]:
        return {s.name for _, s in iter_occurrences(t) if isinstance(s, (Const, Free))}

    def go(t: Term, binders: list[str]) -> str:
        if isinstance(t, (Const, Free)):
            return t.name
        if isinstance(t, Bound):
            if t.index < len(binders):
                return binders[-1 - t.index]
            return f"#{t.index}"
        if isinstance(t, Abs):
            taken = names_in(t.body) | set(binders) | {LAMBDA}
            name, k = t.name, 0
            while name in taken:
                k += 1
                name = f"{t.name}{k}"
            return f"({LAMBDA} {name} [{format_type(t.type)}] {go(t.body, binders + [name])})"
        head, args = flatten_app(t)
        return "(" + " ".join(go(x, binders) for x in (head, *args)) + ")"

    return go(t, [])


# ---------------------------------------------------------------------------
# Goal files
# ---------------------------------------------------------------------------

_FREE_LINE = re.compile(r"free\s+(\S+)\s*::\s*(.+?)\s*$")


def load_goal(text: str, consts: Mapping[str, SimpleType] | None = None) -> Goal:
    """Read the goal format: ``free <name> :: <type>`` lines, then ``goal <s-expression>``."""
    frees: list[tuple[str, SimpleType]] = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("free"):
            m = _FREE_LINE.match(stripped)
            if not m:
                raise TermSyntaxError("expected 'free <name> :: <type>'", lineno, indent + 1)
            try:
                frees.append((m.group(1), parse_type(m.group(2))))
            except TermSyntaxError as exc:
                raise TermSyntaxError(exc.message, lineno, indent + m.start(2) + 1) from None
        elif stripped.startswith("goal"):
            start = indent + len("goal")
            rest = "\n".join([raw[start:]] + lines[lineno:])
            names = [n for n, _ in frees]
            if len(set(names)) != len(names):
                raise TermSyntaxError("duplicate free-variable declaration", lineno, 1)
            statement = parse_term(rest, dict(frees), consts, line=lineno, col=start + 1)
            return Goal(statement, tuple(frees))
        else:
            raise TermSyntaxError(f"unexpected line {stripped.split()[0]!r}", lineno, indent + 1)
    raise TermSyntaxError("missing 'goal' line")


def print_goal(goal: Goal) -> str:
    lines = [f"free {name} :: {format_type(ty)}" for name, ty in goal.frees]
    lines.append(f"goal {print_term(goal.statement)}")
    return "\n".join(lines) + "\n"


def node_count(t: Term) -> int:
    return sum(1 for _ in iter_occurrences(t))


def max_arity(t: Term) -> int:
    """Largest flattened argument count over all nodes of ``t``."""
    return max((len(flatten_app(s)[1]) for _, s in iter_occurrences(t) if isinstance(s, App)), default=0)


__all__ = [
    "TVar", "TCon", "Fun", "SimpleType", "fun_type", "flatten_type", "format_type", "parse_type",
    "Term", "Const", "Free", "Bound", "Abs", "App", "app", "flatten_app", "children", "free_vars",
    "Occurrence", "iter_occurrences", "Goal", "subterms", "occurrences_of", "resolve", "nth_arg",
    "head_constant", "parse_term", "print_term", "type_check", "load_goal", "print_goal",
    "node_count", "max_arity", "LAMBDA",
]
