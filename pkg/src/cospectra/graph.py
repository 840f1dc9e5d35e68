"""Simple undirected graphs, the named families, and structural queries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InputError, InvariantError, ParseError
from .gf import GaloisField, prime_power


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``rows[v]`` is a bitmask of the neighbours of ``v``.  Construct through
    :func:`from_edges` or the generators; the constructor checks symmetry
    and irreflexivity.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise InputError("row count must equal vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise InputError(f"row {v} is out of range or has a loop")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise InputError(f"adjacency not symmetric at ({v},{u})")
                r ^= low

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        row, out = self.rows[v], []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, v

    @property
    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def matrix(self) -> list[list[int]]:
        return [[(row >> v) & 1 for v in range(self.n)] for row in self.rows]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of this graph under the vertex map v -> perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabel needs a permutation of 0..n-1")
        return from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise InputError("vertex count must be non-negative")
    rows = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_matrix(a) -> Graph:
    a = np.asarray(a)
    n = a.shape[0]
    if a.shape != (n, n) or (a != a.T).any() or np.diag(a).any():
        raise InputError("adjacency matrix must be square, symmetric, zero-diagonal")
    return from_edges(n, zip(*np.nonzero(np.triu(a))))


def edgeless(n: int) -> Graph:
    return from_edges(n, [])


def complete(n: int) -> Graph:
    return from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InputError("both sides of K_{a,b} need at least one vertex")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.n
    return from_edges(g.n + h.n, list(g.edges()) + [(u + off, v + off) for u, v in h.edges()])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def _residue_graph(q: int, exponent: int) -> Graph:
    field = GaloisField(q)
    residues = field.powers(exponent)
    edges = [(i, j) for i, j in combinations(field.elements(), 2) if field.sub(i, j) in residues]
    return from_edges(q, edges)


def paley(q: int) -> Graph:
    """Paley graph on GF(q): i ~ j iff i - j is a nonzero square."""
    pr = prime_power(q)
    if pr is None or pr[0] == 2 or q % 4 != 1:
        raise InputError(f"paley({q}) needs an odd prime power q = 1 mod 4")
    return _residue_graph(q, 2)


def cubic_paley(q: int) -> Graph:
    """Cubic Paley graph on GF(q): i ~ j iff i - j is a nonzero cube."""
    pr = prime_power(q)
    if pr is None or pr[0] == 2 or q % 3 != 1:
        raise InputError(f"cubic_paley({q}) needs an odd prime power q = 1 mod 3")
    return _residue_graph(q, 3)


def _cayley_z4z4(connection: set[tuple[int, int]]) -> Graph:
    def idx(a, b):
        return 4 * (a % 4) + (b % 4)

    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in connection:
                u, v = idx(a, b), idx(a + da, b + db)
                edges.add((min(u, v), max(u, v)))
    return from_edges(16, sorted(edges))


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    return _cayley_z4z4({(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)})


def rook_4x4() -> Graph:
    """The 4x4 rook's graph (K4 x K4) as a Cayley graph of Z4 x Z4."""
    return _cayley_z4z4({(i, 0) for i in (1, 2, 3)} | {(0, i) for i in (1, 2, 3)})


def degree_sequence(g: Graph) -> list[int]:
    """Degrees sorted in non-increasing order."""
    return sorted((g.degree(v) for v in range(g.n)), reverse=True)


def is_regular(g: Graph) -> int | None:
    degrees = set(degree_sequence(g))
    if len(degrees) == 1:
        return degrees.pop()
    return 0 if g.n == 0 else None


class SrgParams(NamedTuple):
    n: int
    r: int
    lam: int
    mu: int


def srg_params(g: Graph) -> SrgParams | None:
    """(n, r, lambda, mu) if g is strongly regular; complete/edgeless give None."""
    r = is_regular(g)
    if r is None or g.n < 2 or r == 0 or r == g.n - 1:
        return None
    adj_counts, non_counts = set(), set()
    for u, v in combinations(range(g.n), 2):
        common = bin(g.rows[u] & g.rows[v]).count("1")
        (adj_counts if g.adjacent(u, v) else non_counts).add(common)
        if len(adj_counts) > 1 or len(non_counts) > 1:
            return None
    params = SrgParams(g.n, r, adj_counts.pop(), non_counts.pop())
    if params.r * (params.r - params.lam - 1) != (params.n - params.r - 1) * params.mu:
        raise InvariantError(f"srg feasibility identity fails for {params}")
    return params


def count_triangles(g: Graph) -> int:
    return sum(
        bin(g.rows[u] & g.rows[v] & ~((1 << (v + 1)) - 1)).count("1")
        for u, v in g.edges()
    )


def degree_histogram(g: Graph) -> Counter:
    return Counter(g.degree(v) for v in range(g.n))


def parse_edge_list(text: str) -> Graph:
    """Parse the "n\\nu v\\nu v..." edge-list format (blank lines and #-comments ignored)."""
    lines = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((offset, body))
        offset += len(raw)
    if not lines:
        raise ParseError("empty edge list", 0)
    first_off, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected a vertex count, got {first!r}", first_off) from None
    edges = []
    for off, body in lines[1:]:
        parts = body.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'u v', got {body!r}", off)
        edges.append((int(parts[0]), int(parts[1])))
    return from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    return "".join([f"{g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges()])
