"""Symmetric powers G^{k} and closed k-walk counts."""

from __future__ import annotations

from math import comb

from .errors import InputError, ResourceError
from .graph import Graph, from_edges

DEFAULT_VERTEX_CAP = 10**5


class SubsetIndex:
    """Colexicographic ranking of the k-subsets of range(n).

    rank(S) = sum_i C(s_i, i+1) for the sorted elements s_0 < ... < s_{k-1}.
    """

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise InputError(f"need 0 <= k <= n, got n={n}, k={k}")
        self.n, self.k = n, k

    def __len__(self) -> int:
        return comb(self.n, self.k)

    def rank(self, subset) -> int:
        elems = sorted(subset)
        if len(elems) != self.k or len(set(elems)) != self.k:
            raise InputError(f"expected {self.k} distinct elements")
        if elems and not (0 <= elems[0] and elems[-1] < self.n):
            raise InputError("subset element out of range")
        return sum(comb(s, i + 1) for i, s in enumerate(elems))

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < len(self):
            raise InputError(f"rank {r} out of range")
        out = []
        for i in range(self.k, 0, -1):
            s = i - 1
            while comb(s + 1, i) <= r:
                s += 1
            out.append(s)
            r -= comb(s, i)
        return tuple(reversed(out))

    def subsets(self) -> list[tuple[int, ...]]:
        return [self.unrank(r) for r in range(len(self))]


def _check(g: Graph, k: int, cap: int):
    if not 1 <= k <= g.n:
        raise InputError(f"symmetric power needs 1 <= k <= n, got k={k}, n={g.n}")
    size = comb(g.n, k)
    if size > cap:
        raise ResourceError(f"C({g.n},{k}) = {size} vertices exceeds the cap of {cap}")


def symmetric_power(g: Graph, k: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """k-subsets adjacent iff their symmetric difference is an edge of g."""
    _check(g, k, cap)
    idx = SubsetIndex(g.n, k)
    masks = [sum(1 << v for v in s) for s in idx.subsets()]
    where = {m: r for r, m in enumerate(masks)}
    edges = []
    for r, m in enumerate(masks):
        # swap one member v for a non-member u adjacent to v
        for v in range(g.n):
            if not m >> v & 1:
                continue
            outside = g.rows[v] & ~m
            while outside:
                low = outside & -outside
                other = where[(m ^ (1 << v)) | low]
                if r < other:
                    edges.append((r, other))
                outside ^= low
    return from_edges(len(masks), edges)


def k_walk_count_dp(g: Graph, k: int, length: int, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Number of closed k-walks of the given length (walks in G^{k} with V_0 = V_l).

    Counts by dynamic programming over bitmask subsets, one start at a time;
    a step toggles both endpoints of an edge with exactly one endpoint inside.
    """
    _check(g, k, cap)
    if length < 0:
        raise InputError("walk length must be non-negative")
    edges = list(g.edges())
    starts = [m for m in range(1 << g.n) if bin(m).count("1") == k]
    total = 0
    for start in starts:
        layer = {start: 1}
        for _ in range(length):
            nxt: dict[int, int] = {}
            for m, ways in layer.items():
                for a, b in edges:
                    if (m >> a & 1) != (m >> b & 1):
                        t = m ^ (1 << a) ^ (1 << b)
                        nxt[t] = nxt.get(t, 0) + ways
            layer = nxt
        total += layer.get(start, 0)
    return total
