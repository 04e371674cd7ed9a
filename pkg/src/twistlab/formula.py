"""Propositional formulas: AST, parser, and minimal-parentheses printer.

Grammar (lowest to highest precedence)::

    formula := imp
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | atom
    atom    := var | const | "(" formula ")"

Constants are ``T`` (top), ``B`` (bot), ``0`` (zero) and ``1`` (one).  A
binary token may carry an attached qualifier naming a specific table, e.g.
``->ol``, ``->f``, ``->df``, ``&k``, ``&ol``, ``|k``, ``|ol``; such tokens
have the precedence of their base connective.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; ``offset`` is a byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    op: str


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Formula"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Const, Unary, Binary]

CONST_TOKENS = {"T": "top", "B": "bot", "0": "zero", "1": "one"}
CONST_NAMES = {v: k for k, v in CONST_TOKENS.items()}

BASE_BINARY = {"&": "and", "|": "or", "->": "imp"}
QUALIFIERS = {
    "->": ("ol", "f", "df"),
    "&": ("k", "ol"),
    "|": ("k", "ol"),
}
PRECEDENCE = {"imp": 1, "or": 2, "and": 3}


def _base(op: str) -> str:
    return op.split("_", 1)[0]


def binary_token(op: str) -> str:
    base = _base(op)
    sym = {v: k for k, v in BASE_BINARY.items()}[base]
    if "_" in op:
        sym += op.split("_", 1)[1]
    return sym


_VAR_RE = re.compile(r"[a-z][a-z0-9_]*")
_SPACE_RE = re.compile(r"\s+")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, char_position) tuples; kinds: var, const, neg,
    bin, lpar, rpar, end."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        m = _SPACE_RE.match(text, i)
        if m:
            i = m.end()
            continue
        ch = text[i]
        if ch == "(":
            tokens.append(("lpar", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(("rpar", ch, i))
            i += 1
        elif ch == "~":
            tokens.append(("neg", "neg", i))
            i += 1
        elif ch in CONST_TOKENS:
            tokens.append(("const", CONST_TOKENS[ch], i))
            i += 1
        elif text.startswith("->", i) or ch in "&|":
            sym = "->" if ch == "-" else ch
            j = i + len(sym)
            op = BASE_BINARY[sym]
            # a qualifier is glued to the symbol; "p -> f" keeps f a variable
            m = _VAR_RE.match(text, j)
            if m and m.group() in QUALIFIERS[sym]:
                op = f"{op}_{m.group()}"
                j = m.end()
            tokens.append(("bin", op, i))
            i = j
        else:
            m = _VAR_RE.match(text, i)
            if not m:
                raise FormulaSyntaxError(f"unknown token {ch!r}", _byte(text, i))
            tokens.append(("var", m.group(), i))
            i = m.end()
    tokens.append(("end", "", n))
    return tokens


def _byte(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, _byte(self.text, tok[2]))

    def parse(self) -> Formula:
        f = self.imp()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1] or tok[0]!r}", tok)
        return f

    def imp(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok[0] == "bin" and _base(tok[1]) == "imp":
            self.take()
            return Binary(tok[1], left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "bin" and _base(self.peek()[1]) == "or":
            op = self.take()[1]
            f = Binary(op, f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "bin" and _base(self.peek()[1]) == "and":
            op = self.take()[1]
            f = Binary(op, f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek()[0] == "neg":
            self.take()
            return Unary("neg", self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.take()
        kind = tok[0]
        if kind == "var":
            return Var(tok[1])
        if kind == "const":
            return Const(tok[1])
        if kind == "lpar":
            f = self.imp()
            close = self.take()
            if close[0] != "rpar":
                raise self.error("expected ')'", close)
            return f
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok[1]!r}", tok)


def parse(text: str) -> Formula:
    """Parse formula text into an AST."""
    return _Parser(text).parse()


def _prec(f: Formula) -> int:
    if isinstance(f, Binary):
        return PRECEDENCE[_base(f.op)]
    return 4


def render(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses that reparse to the same tree."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return CONST_NAMES[f.op]
    if isinstance(f, Unary):
        inner = render(f.child)
        if isinstance(f.child, Binary):
            inner = f"({inner})"
        return "~" + inner
    p = PRECEDENCE[_base(f.op)]
    if _base(f.op) == "imp":
        left_min, right_min = p + 1, p
    else:
        left_min, right_min = p, p + 1
    left, right = render(f.left), render(f.right)
    if _prec(f.left) < left_min:
        left = f"({left})"
    if _prec(f.right) < right_min:
        right = f"({right})"
    return f"{left} {binary_token(f.op)} {right}"


def variables(f: Formula) -> list[str]:
    """Sorted list of distinct variable names in ``f``."""
    seen: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            seen.add(g.name)
        elif isinstance(g, Unary):
            stack.append(g.child)
        elif isinstance(g, Binary):
            stack.extend((g.left, g.right))
    return sorted(seen)


def operations(f: Formula) -> set[str]:
    """Names of all connectives and constants used in ``f``."""
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Const):
            out.add(g.op)
        elif isinstance(g, Unary):
            out.add(g.op)
            stack.append(g.child)
        elif isinstance(g, Binary):
            out.add(g.op)
            stack.extend((g.left, g.right))
    return out


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Replace variables by formulas simultaneously."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, Const):
        return f
    if isinstance(f, Unary):
        return Unary(f.op, substitute(f.child, mapping))
    return Binary(f.op, substitute(f.left, mapping), substitute(f.right, mapping))


def depth(f: Formula) -> int:
    if isinstance(f, (Var, Const)):
        return 0
    if isinstance(f, Unary):
        return 1 + depth(f.child)
    return 1 + max(depth(f.left), depth(f.right))


def as_formula(item: "Formula | str") -> Formula:
    return parse(item) if isinstance(item, str) else item
