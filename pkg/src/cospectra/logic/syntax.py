"""Text syntax for counting formulas.

Grammar (loosest binding first)::

    formula  := disj ('->' formula)?
    disj     := conj ('|' conj)*
    conj     := unary ('&' unary)*
    unary    := '~' unary | quant VAR unary | atom | '(' formula ')'
    quant    := 'All' | 'Ex' | 'Ex^' INT | 'Ex^=' INT
    atom     := 'E' '(' VAR ',' VAR ')' | VAR '=' VAR | 'true' | 'false'

Variables are identifiers starting with a lower-case letter or underscore.
``All v f`` is read as ``~Ex v ~f`` and ``Ex^=i v f`` as
``Ex^i v f & ~Ex^(i+1) v f``; the printer folds both patterns back.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .formula import (
    FALSE,
    TRUE,
    And,
    Const,
    Edge,
    Eq,
    Exists,
    Formula,
    Not,
    Or,
    exists_exactly,
    forall,
    implies,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<quant>Ex\^=\d+|Ex\^\d+|Ex\b|All\b)
  | (?P<arrow>->)
  | (?P<punct>[~&|(),=])
  | (?P<const>true\b|false\b)
  | (?P<edge>E(?=\s*\())
  | (?P<var>[a-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.take("->")
            return implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.take("|")
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(parts)

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[1] == "&":
            self.take("&")
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(parts)

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if value == "~":
            self.take()
            return Not(self.unary())
        if kind == "quant":
            self.take()
            var = self.take(kind="var")[1]
            body = self.unary()
            if value == "All":
                return forall(var, body)
            if value == "Ex":
                return Exists(1, var, body)
            if value.startswith("Ex^="):
                return exists_exactly(int(value[4:]), var, body)
            threshold = int(value[3:])
            if threshold < 1:
                raise ParseError("counting threshold must be at least 1", pos)
            return Exists(threshold, var, body)
        if value == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        if kind == "const":
            self.take()
            return TRUE if value == "true" else FALSE
        if kind == "edge":
            self.take()
            self.take("(")
            a = self.take(kind="var")[1]
            self.take(",")
            b = self.take(kind="var")[1]
            self.take(")")
            return Edge(a, b)
        if kind == "var":
            self.take()
            self.take("=")
            b = self.take(kind="var")[1]
            return Eq(value, b)
        got = repr(value) if kind != "end" else "end of input"
        raise ParseError(f"unexpected {got}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.take(kind="end")
    return f


def same(f: Formula, g: Formula, _memo: dict | None = None) -> bool:
    """Structural equality of two formula DAGs."""
    memo = {} if _memo is None else _memo
    key = (id(f), id(g))
    if f is g:
        return True
    if key in memo:
        return memo[key]
    if type(f) is not type(g):
        result = False
    elif isinstance(f, Const):
        result = f.value == g.value
    elif isinstance(f, (Edge, Eq)):
        result = (f.a, f.b) == (g.a, g.b)
    elif isinstance(f, Not):
        result = same(f.body, g.body, memo)
    elif isinstance(f, (And, Or)):
        result = len(f.parts) == len(g.parts) and all(
            same(a, b, memo) for a, b in zip(f.parts, g.parts)
        )
    elif isinstance(f, Exists):
        result = (f.threshold, f.var) == (g.threshold, g.var) and same(f.body, g.body, memo)
    else:
        result = False
    memo[key] = result
    return result


_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _as_forall(f: Formula):
    if isinstance(f, Not) and isinstance(f.body, Exists) and f.body.threshold == 1:
        inner = f.body.body
        if isinstance(inner, Not):
            return f.body.var, inner.body
    return None


def _as_exactly(f: Formula):
    if isinstance(f, And) and len(f.parts) == 2:
        lo, hi = f.parts
        if (
            isinstance(lo, Exists)
            and isinstance(hi, Not)
            and isinstance(hi.body, Exists)
            and hi.body.threshold == lo.threshold + 1
            and hi.body.var == lo.var
            and same(lo.body, hi.body.body)
        ):
            return lo.threshold, lo.var, lo.body
    return None


def format_formula(f: Formula) -> str:
    """Render f in the text syntax; ``parse_formula`` inverts this."""

    def show(node: Formula, need: int) -> str:
        text, prec = render(node)
        return f"({text})" if prec < need else text

    def render(node: Formula) -> tuple[str, int]:
        fa = _as_forall(node)
        if fa is not None:
            return f"All {fa[0]} {show(fa[1], _UNARY)}", _UNARY
        ex = _as_exactly(node)
        if ex is not None:
            return f"Ex^={ex[0]} {ex[1]} {show(ex[2], _UNARY)}", _UNARY
        if isinstance(node, Const):
            return ("true" if node.value else "false"), _UNARY
        if isinstance(node, Edge):
            return f"E({node.a},{node.b})", _UNARY
        if isinstance(node, Eq):
            return f"{node.a}={node.b}", _UNARY
        if isinstance(node, Not):
            return "~" + show(node.body, _UNARY), _UNARY
        if isinstance(node, Exists):
            q = "Ex" if node.threshold == 1 else f"Ex^{node.threshold}"
            return f"{q} {node.var} {show(node.body, _UNARY)}", _UNARY
        if isinstance(node, And):
            if len(node.parts) < 2:
                return render(node.parts[0]) if node.parts else ("true", _UNARY)
            return " & ".join(show(p, _UNARY) for p in node.parts), _AND
        if isinstance(node, Or):
            if len(node.parts) < 2:
                return render(node.parts[0]) if node.parts else ("false", _UNARY)
            return " | ".join(show(p, _AND) for p in node.parts), _OR
        raise TypeError(f"unknown formula node {node!r}")

    return show(f, _IMP)
