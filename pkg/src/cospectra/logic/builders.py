"""Three-variable counting sentences for walk counts, and extension axioms.

``psi(l, k)`` has free variables x, y and holds at (v, u) iff exactly k
walks of length l run from v to u.  The inductive step splits the
neighbours z of x by their walk count to y: an indexed partition
((i_1, k_1), ..., (i_r, k_r)) of k says exactly i_j neighbours contribute
k_j walks each.  Part values are positive; the remaining neighbours must
contribute nothing, which is pinned by requiring exactly d = sum(i_j)
neighbours with a nonzero count.  ``phi(l, k)`` applies the same counting
to the diagonal to fix tr(A^l).

Subformulas are interned, so every (l, k, orientation) is built once and
the result is a DAG; ``max_nodes`` bounds the number of distinct nodes.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..errors import InputError, ResourceError
from ..graph import Graph
from ..spectral import trace_powers
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
    forall,
    implies,
)

DEFAULT_MAX_NODES = 10**6


def indexed_partitions(k: int, bound: int | None = None) -> list[tuple[tuple[int, int], ...]]:
    """All ((i_1, k_1), ..., (i_r, k_r)) with distinct k_j >= 1, sum i_j*k_j = k.

    Pairs are sorted by part value; ``bound`` caps the total multiplicity
    sum(i_j).  For k = 0 the only partition is the empty one.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    return list(_partitions(k, k if bound is None else bound))


@lru_cache(maxsize=4096)
def _partitions(k: int, cap: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(remaining: int, largest: int, used: int, acc: list[tuple[int, int]]):
        if remaining == 0:
            out.append(tuple(reversed(acc)))
            return
        for part in range(min(largest, remaining), 0, -1):
            for mult in range(remaining // part, 0, -1):
                if used + mult > cap:
                    continue
                acc.append((mult, part))
                rec(remaining - mult * part, part - 1, used + mult, acc)
                acc.pop()

    rec(k, k, 0, [])
    return tuple(out)


class FormulaBuilder:
    """Interning factory for the walk-count formulas."""

    def __init__(self, max_nodes: int = DEFAULT_MAX_NODES):
        self.max_nodes = max_nodes
        self._nodes: dict[tuple, Formula] = {}
        self._psi: dict[tuple[int, int, bool], Formula] = {}
        self._phi: dict[tuple[int, int], Formula] = {}

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    def _intern(self, key: tuple, make) -> Formula:
        node = self._nodes.get(key)
        if node is None:
            if len(self._nodes) >= self.max_nodes:
                raise ResourceError(
                    f"formula exceeds the size guard of {self.max_nodes} nodes"
                )
            node = self._nodes[key] = make()
        return node

    # node constructors ------------------------------------------------

    def edge(self, a: str, b: str) -> Formula:
        return self._intern(("E", a, b), lambda: Edge(a, b))

    def eq(self, a: str, b: str) -> Formula:
        return self._intern(("=", a, b), lambda: Eq(a, b))

    def neg(self, f: Formula) -> Formula:
        if isinstance(f, Const):
            return FALSE if f.value else TRUE
        return self._intern(("~", id(f)), lambda: Not(f))

    def conj(self, parts: list[Formula]) -> Formula:
        if any(p is FALSE for p in parts):
            return FALSE
        parts = [p for p in parts if p is not TRUE]
        if not parts:
            return TRUE
        if len(parts) == 1:
            return parts[0]
        return self._intern(("&",) + tuple(map(id, parts)), lambda: And(parts))

    def disj(self, parts: list[Formula]) -> Formula:
        if any(p is TRUE for p in parts):
            return TRUE
        parts = [p for p in parts if p is not FALSE]
        if not parts:
            return FALSE
        if len(parts) == 1:
            return parts[0]
        return self._intern(("|",) + tuple(map(id, parts)), lambda: Or(parts))

    def exists(self, i: int, var: str, body: Formula) -> Formula:
        if body is FALSE:
            return FALSE
        return self._intern(("Ex", i, var, id(body)), lambda: Exists(i, var, body))

    def exactly(self, i: int, var: str, body: Formula) -> Formula:
        if i == 0:
            return self.neg(self.exists(1, var, body))
        if body is FALSE:
            return FALSE
        return self.conj([self.exists(i, var, body), self.neg(self.exists(i + 1, var, body))])

    def forall(self, var: str, body: Formula) -> Formula:
        return self.neg(self.exists(1, var, self.neg(body)))

    # walk-count formulas ----------------------------------------------

    def psi(self, length: int, k: int, swapped: bool = False) -> Formula:
        """psi^length_k(x, y); with ``swapped`` the roles of x and z are exchanged."""
        if length < 1 or k < 0:
            raise InputError("psi needs length >= 1 and k >= 0")
        key = (length, k, swapped)
        hit = self._psi.get(key)
        if hit is not None:
            return hit
        x, z = ("z", "x") if swapped else ("x", "z")
        y = "y"
        if length == 1:
            f = {0: lambda: self.neg(self.edge(x, y)), 1: lambda: self.edge(x, y)}.get(k, lambda: FALSE)()
        elif k == 0:
            # every neighbour z of x has no walk of length-1 to y
            inner = self.psi(length - 1, 0, not swapped)
            f = self.forall(z, self.disj([self.neg(self.edge(x, z)), inner]))
        else:
            zero = self.psi(length - 1, 0, not swapped)
            nonzero_nbr = self.conj([self.edge(x, z), self.neg(zero)])
            disjuncts = []
            for part in indexed_partitions(k):
                pieces = []
                for mult, value in part:
                    sub = self.psi(length - 1, value, not swapped)
                    if sub is FALSE:
                        break
                    pieces.append(self.exactly(mult, z, self.conj([self.edge(x, z), sub])))
                else:
                    d = sum(mult for mult, _ in part)
                    # the cheap, selective conjunct goes first for short-circuiting
                    disjuncts.append(self.conj([self.exactly(d, z, nonzero_nbr)] + pieces))
            f = self.disj(disjuncts)
        self._psi[key] = f
        return f

    def phi(self, length: int, k: int) -> Formula:
        """Sentence true iff tr(A^length) == k."""
        if length < 1 or k < 0:
            raise InputError("phi needs length >= 1 and k >= 0")
        key = (length, k)
        hit = self._phi.get(key)
        if hit is not None:
            return hit

        def diagonal(body: Formula) -> Formula:
            return self.exists(1, "y", self.conj([self.eq("x", "y"), body]))

        positive = diagonal(self.neg(self.psi(length, 0)))
        if k == 0:
            f = self.neg(self.exists(1, "x", positive))
        else:
            disjuncts = []
            for part in indexed_partitions(k):
                pieces = []
                for mult, value in part:
                    sub = self.psi(length, value)
                    if sub is FALSE:
                        break
                    pieces.append(self.exactly(mult, "x", diagonal(sub)))
                else:
                    d = sum(mult for mult, _ in part)
                    disjuncts.append(self.conj([self.exactly(d, "x", positive)] + pieces))
            f = self.disj(disjuncts)
        self._phi[key] = f
        return f

    def phi_graph(self, g: Graph) -> Formula:
        """Conjunction of phi(l, tr(A_g^l)) for l = 1..n."""
        if g.n == 0:
            return TRUE
        traces = trace_powers(g, g.n)
        return self.conj([self.phi(l, t) for l, t in enumerate(traces, start=1)])


def build_psi(length: int, k: int, max_nodes: int = DEFAULT_MAX_NODES) -> Formula:
    return FormulaBuilder(max_nodes).psi(length, k)


def build_phi(length: int, k: int, max_nodes: int = DEFAULT_MAX_NODES) -> Formula:
    return FormulaBuilder(max_nodes).phi(length, k)


def build_phi_graph(g: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> Formula:
    return FormulaBuilder(max_nodes).phi_graph(g)


def extension_axiom(r: int, s: int) -> Formula:
    """eta_{r,s}: any r+s distinct vertices have a common witness y adjacent to
    the first r and non-adjacent to, and different from, the last s."""
    if r < 0 or s < 0 or r + s < 1:
        raise InputError("extension axiom needs r, s >= 0 and r + s >= 1")
    xs = [f"x{i}" for i in range(1, r + s + 1)]
    distinct = [Not(Eq(a, b)) for a, b in combinations(xs, 2)]
    witness = [Edge(xs[i], "y") for i in range(r)]
    for i in range(r, r + s):
        witness += [Not(Edge(xs[i], "y")), Not(Eq(xs[i], "y"))]
    body = Exists(1, "y", witness[0] if len(witness) == 1 else And(witness))
    if distinct:
        hypothesis = distinct[0] if len(distinct) == 1 else And(distinct)
        body = implies(hypothesis, body)
    for var in reversed(xs):
        body = forall(var, body)
    return body


def satisfies_extension_axiom(g: Graph, r: int, s: int) -> bool:
    """Direct combinatorial check of eta_{r,s} over distinct vertex sets."""
    if r < 0 or s < 0 or r + s < 1:
        raise InputError("extension axiom needs r, s >= 0 and r + s >= 1")
    everyone = (1 << g.n) - 1
    for adj_set in combinations(range(g.n), r):
        base = everyone
        for v in adj_set:
            base &= g.rows[v]
        rest = [v for v in range(g.n) if v not in adj_set]
        for non_set in combinations(rest, s):
            cand = base
            for v in non_set:
                cand &= ~g.rows[v] & ~(1 << v)
            if not cand:
                return False
    return True


def has_extension_property(g: Graph, k: int) -> bool:
    """True iff g satisfies eta_{r,s} for every r + s = k."""
    if k < 1:
        raise InputError("extension property needs k >= 1")
    return all(satisfies_extension_axiom(g, r, k - r) for r in range(k + 1))
