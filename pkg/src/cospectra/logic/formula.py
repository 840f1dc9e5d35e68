"""Counting first-order formulas over the graph signature {E}.

Nodes are immutable and compared by identity; builders share subformulas,
so a formula is a DAG whose tree expansion can be exponentially larger.
Every node caches its free variables and its variable set on construction.

The core evaluator understands only atoms, negation, n-ary conjunction and
disjunction, constants, and the counting quantifier ``Exists(i, v, body)``
(at least i witnesses).  Universal and exactly-i quantifiers are sugar.
"""

from __future__ import annotations

from typing import Mapping

from ..errors import InputError
from ..graph import Graph


class Formula:
    __slots__ = ("free", "variables")

    free: frozenset[str]
    variables: frozenset[str]

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return Not(self)


class Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value
        self.free = self.variables = frozenset()

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


class Edge(Formula):
    __slots__ = ("a", "b")

    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        self.free = self.variables = frozenset((a, b))

    def __repr__(self):
        return f"E({self.a},{self.b})"


class Eq(Formula):
    __slots__ = ("a", "b")

    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        self.free = self.variables = frozenset((a, b))

    def __repr__(self):
        return f"{self.a}={self.b}"


class Not(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula):
        self.body = body
        self.free, self.variables = body.free, body.variables

    def __repr__(self):
        return f"~{self.body!r}"


class _NAry(Formula):
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)
        self.free = frozenset().union(*(p.free for p in self.parts))
        self.variables = frozenset().union(*(p.variables for p in self.parts))


class And(_NAry):
    __slots__ = ()

    def __repr__(self):
        return "(" + " & ".join(map(repr, self.parts)) + ")"


class Or(_NAry):
    __slots__ = ()

    def __repr__(self):
        return "(" + " | ".join(map(repr, self.parts)) + ")"


class Exists(Formula):
    """At least ``threshold`` vertices can be substituted for ``var``."""

    __slots__ = ("threshold", "var", "body")

    def __init__(self, threshold: int, var: str, body: Formula):
        if threshold < 1:
            raise InputError("counting thresholds start at 1")
        self.threshold, self.var, self.body = threshold, var, body
        self.free = body.free - {var}
        self.variables = body.variables | {var}

    def __repr__(self):
        return f"Ex^{self.threshold} {self.var} {self.body!r}"


def forall(var: str, body: Formula) -> Formula:
    return Not(Exists(1, var, Not(body)))


def exists_exactly(i: int, var: str, body: Formula) -> Formula:
    if i == 0:
        return Not(Exists(1, var, body))
    return And((Exists(i, var, body), Not(Exists(i + 1, var, body))))


def implies(a: Formula, b: Formula) -> Formula:
    return Or((Not(a), b))


def width(f: Formula) -> int:
    """Number of distinct variable names used anywhere in f."""
    return len(f.variables)


def dag_size(f: Formula) -> int:
    """Number of distinct nodes reachable from f."""
    seen: set[int] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.extend(_children(node))
    return len(seen)


def _children(node: Formula) -> tuple[Formula, ...]:
    if isinstance(node, _NAry):
        return node.parts
    if isinstance(node, (Not, Exists)):
        return (node.body,)
    return ()


def evaluate(g: Graph, f: Formula, assignment: Mapping[str, int] | None = None) -> bool:
    """Decide g |= f[assignment].

    Results are memoised per (node, values of the node's free variables), so
    shared subformulas are evaluated once per relevant assignment.
    """
    assignment = dict(assignment or {})
    missing = f.free - assignment.keys()
    if missing:
        raise InputError(f"unassigned free variables: {sorted(missing)}")
    for var, v in assignment.items():
        if not 0 <= v < g.n:
            raise InputError(f"{var} -> {v} is not a vertex")
    order: dict[int, tuple[str, ...]] = {}
    memo: dict[tuple, bool] = {}
    rows = g.rows
    n = g.n

    def ev(node: Formula, env: dict[str, int]) -> bool:
        key_vars = order.get(id(node))
        if key_vars is None:
            key_vars = order[id(node)] = tuple(sorted(node.free))
        key = (id(node),) + tuple(env[v] for v in key_vars)
        hit = memo.get(key)
        if hit is not None:
            return hit
        cls = type(node)
        if cls is Edge:
            result = bool(rows[env[node.a]] >> env[node.b] & 1)
        elif cls is Eq:
            result = env[node.a] == env[node.b]
        elif cls is Not:
            result = not ev(node.body, env)
        elif cls is And:
            result = all(ev(p, env) for p in node.parts)
        elif cls is Or:
            result = any(ev(p, env) for p in node.parts)
        elif cls is Exists:
            need, var, body = node.threshold, node.var, node.body
            saved = env.get(var)
            found = 0
            result = False
            for v in range(n):
                if n - v < need - found:
                    break
                env[var] = v
                if ev(body, env):
                    found += 1
                    if found >= need:
                        result = True
                        break
            if saved is None:
                env.pop(var, None)
            else:
                env[var] = saved
        elif cls is Const:
            result = node.value
        else:
            raise TypeError(f"unknown formula node {node!r}")
        memo[key] = result
        return result

    return ev(f, assignment)
