"""Recursive-descent parser for LiFtEr assertions.

Precedence, loosest first: ``Imply`` (right-assoc), ``Or``, ``And``
(both left-assoc), ``Not``. Comments are ``(* ... *)`` and do not nest.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from lifter.errors import AssertionSyntaxError
from lifter.syntax import (
    ATOMS,
    OCC_QUANTIFIERS,
    QUANTIFIERS,
    And,
    Assertion,
    Imply,
    LVar,
    Not,
    Or,
    Pos,
    Quant,
    QuantOccOf,
    Truth,
    VarKind,
    check_scopes,
)

_VAR_KINDS = {k.value: k for k in VarKind}
_TOKEN = re.compile(r"\s+|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([(),;])")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "num" | "punct" | "eof"
    text: str
    line: int
    col: int

    @property
    def pos(self) -> Pos:
        return (self.line, self.col)


def strip_comments(text: str) -> str:
    """Blank out ``(* ... *)`` while keeping line/column positions intact."""
    out = []
    i = 0
    while True:
        start = text.find("(*", i)
        if start < 0:
            out.append(text[i:])
            return "".join(out)
        end = text.find("*)", start + 2)
        if end < 0:
            line = text.count("\n", 0, start) + 1
            col = start - text.rfind("\n", 0, start)
            raise AssertionSyntaxError("unterminated comment", line, col)
        out.append(text[i:start])
        out.append(re.sub(r"[^\n]", " ", text[start : end + 2]))
        i = end + 2


def tokenize(text: str) -> list[Token]:
    text = strip_comments(text)
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise AssertionSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        if m.group(1):
            tokens.append(Token("ident", m.group(1), line, col))
        elif m.group(2):
            tokens.append(Token("num", m.group(2), line, col))
        elif m.group(3):
            tokens.append(Token("punct", m.group(3), line, col))
        chunk = m.group(0)
        if "\n" in chunk:
            line += chunk.count("\n")
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> AssertionSyntaxError:
        tok = tok or self.tok
        return AssertionSyntaxError(message, tok.line, tok.col)

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("punct", "ident"):
            raise self.error(f"expected {text!r}, found {self.describe(self.tok)}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    # assertion ::= expr ';'
    def assertion(self) -> Assertion:
        a = self.imply()
        self.expect(";")
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.describe(self.tok)} after ';'")
        return a

    def imply(self) -> Assertion:
        left = self.disjunction()
        if self.at("Imply"):
            tok = self.advance()
            return Imply(left, self.imply(), pos=tok.pos)
        return left

    def disjunction(self) -> Assertion:
        left = self.conjunction()
        while self.at("Or"):
            tok = self.advance()
            left = Or(left, self.conjunction(), pos=tok.pos)
        return left

    def conjunction(self) -> Assertion:
        left = self.negation()
        while self.at("And"):
            tok = self.advance()
            left = And(left, self.negation(), pos=tok.pos)
        return left

    def negation(self) -> Assertion:
        if self.at("Not"):
            tok = self.advance()
            return Not(self.negation(), pos=tok.pos)
        return self.primary()

    def var(self, expected: VarKind | None = None, where: str = "") -> LVar:
        tok = self.tok
        if tok.kind != "ident" or tok.text not in _VAR_KINDS:
            raise self.error(f"expected a variable (Trm/Trm_Occ/Rule/Numb n), found {self.describe(tok)}")
        self.advance()
        if self.tok.kind != "num":
            raise self.error(f"expected a numeral after {tok.text!r}")
        var = LVar(_VAR_KINDS[tok.text], int(self.advance().text))
        if expected is not None and var.kind is not expected:
            raise self.error(f"{where} expects a {expected.value} variable, got {var}", tok)
        return var

    def primary(self) -> Assertion:
        tok = self.tok
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            a = self.imply()
            self.expect(")")
            return a
        if tok.kind != "ident":
            raise self.error(f"expected an assertion, found {self.describe(tok)}")
        if tok.text in ("True", "False"):
            self.advance()
            return Truth(tok.text == "True", pos=tok.pos)
        if tok.text in QUANTIFIERS:
            polarity, domain = QUANTIFIERS[tok.text]
            self.advance()
            self.expect("(")
            var = self.var(domain.kind, tok.text)
            self.expect(",")
            body = self.imply()
            self.expect(")")
            return Quant(polarity, domain, var, body, pos=tok.pos)
        if tok.text in OCC_QUANTIFIERS:
            self.advance()
            self.expect("(")
            occ = self.var(VarKind.TRM_OCC, tok.text)
            self.expect(",")
            of = self.var(VarKind.TRM, tok.text)
            self.expect(",")
            body = self.imply()
            self.expect(")")
            return QuantOccOf(OCC_QUANTIFIERS[tok.text], occ, of, body, pos=tok.pos)
        cls = ATOMS.get(tok.text)
        if cls is not None and not cls.INFIX:
            self.advance()
            self.expect("(")
            args = []
            for n, kind in enumerate(cls.SIGNATURE):
                if n:
                    self.expect(",")
                args.append(self.var(kind, cls.NAME))
            self.expect(")")
            return cls(*args, pos=tok.pos)
        if tok.text in _VAR_KINDS:
            left_tok = tok
            left = self.var()
            op = self.tok
            infix = ATOMS.get(op.text) if op.kind == "ident" else None
            if infix is None or not infix.INFIX:
                raise self.error(f"expected an infix atom after {left}, found {self.describe(op)}")
            self.advance()
            if left.kind is not infix.SIGNATURE[0]:
                raise self.error(f"{infix.NAME} expects a {infix.SIGNATURE[0].value} variable, got {left}", left_tok)
            right = self.var(infix.SIGNATURE[1], infix.NAME)
            return infix(left, right, pos=left_tok.pos)
        if cls is not None:
            raise self.error(f"{cls.NAME} is an infix atom: write '<var> {cls.NAME} <var>'")
        raise self.error(f"unknown quantifier or atom {tok.text!r}")


def parse_assertion(text: str) -> Assertion:
    """Parse one ``;``-terminated assertion and reject ill-scoped ones."""
    a = _Parser(text).assertion()
    errors = check_scopes(a)
    if errors:
        first = errors[0]
        line, col = first.pos if first.pos else (None, None)
        raise AssertionSyntaxError(first.message, line, col)
    return a


def load_assertion_file(path) -> Assertion:
    with open(path, encoding="utf-8") as fh:
        return parse_assertion(fh.read())
