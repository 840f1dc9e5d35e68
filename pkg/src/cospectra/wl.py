"""Colour refinement (1-WL) and folklore k-dimensional Weisfeiler-Leman.

Colour ids are canonical: each round, the distinct signatures present are
sorted and a colour is the rank of its signature.  Refining several graphs
jointly therefore uses one shared palette without ever mixing tuples of
different graphs, and two single-graph runs can be compared through their
per-round signature tables (see :func:`wl_fingerprint`).
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import InputError, ResourceError
from .graph import Graph

DEFAULT_TUPLE_CAP = 10**7


@dataclass(frozen=True)
class Coloring:
    """Stable colouring of the k-tuples of one graph.

    ``colors[t]`` is the colour of the tuple whose row-major index is t,
    i.e. (v_1, ..., v_k) -> sum v_i * n**(k-i).
    """

    k: int
    n: int
    colors: tuple[int, ...]
    rounds: int
    class_counts: tuple[int, ...] = field(default=())

    def color(self, *tup: int) -> int:
        if len(tup) != self.k:
            raise InputError(f"expected a {self.k}-tuple")
        idx = 0
        for v in tup:
            idx = idx * self.n + v
        return self.colors[idx]

    @property
    def histogram(self) -> tuple[tuple[int, int], ...]:
        """Sorted (colour, class size) pairs."""
        return tuple(sorted(Counter(self.colors).items()))

    @property
    def num_classes(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for t, c in enumerate(self.colors):
            out.setdefault(c, []).append(t)
        return out


def _rank_rows(rows: np.ndarray) -> np.ndarray:
    """Rank of each row among the sorted distinct rows (lexicographic)."""
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    _, inverse = np.unique(rows, axis=0, return_inverse=True)
    return inverse.reshape(-1).astype(np.int64)


def atomic_types(g: Graph, k: int) -> np.ndarray:
    """Integer code of the atomic type (equality + adjacency pattern) of every k-tuple."""
    n = g.n
    a = g.adjacency().astype(bool)
    grids = np.indices((n,) * k).reshape(k, -1)
    code = np.zeros(grids.shape[1], dtype=np.int64)
    for i, j in combinations(range(k), 2):
        code = code * 3 + np.where(
            grids[i] == grids[j], 2, a[grids[i], grids[j]].astype(np.int64)
        )
    return code


def _substitution_tables(n: int, k: int) -> list[np.ndarray]:
    """For each position i, an (n^k, n) table of indices of v with v_i := u."""
    grids = np.indices((n,) * k).reshape(k, -1)
    index = np.arange(n**k, dtype=np.int64)
    tables = []
    for i in range(k):
        w = n ** (k - 1 - i)
        base = index - grids[i] * w
        tables.append(base[:, None] + np.arange(n, dtype=np.int64)[None, :] * w)
    return tables


def _check_budget(n: int, k: int, cap: int, graphs: int = 1):
    if k < 1:
        raise InputError("WL dimension must be at least 1")
    if graphs * n**k > cap:
        raise ResourceError(f"{graphs} x {n}^{k} tuples exceeds the tuple cap of {cap}")


class _Refiner:
    """Synchronous refinement of the tuples of several equal-order graphs."""

    def __init__(self, graphs: Sequence[Graph], k: int):
        self.graphs = list(graphs)
        self.k = k
        n = self.n = graphs[0].n
        self.size = n**k
        if k == 1:
            self.neighbours = [
                [np.array(g.neighbors(v), dtype=np.int64) for v in range(n)] for g in graphs
            ]
        else:
            self.tables = _substitution_tables(n, k)

    def initial(self) -> np.ndarray:
        if self.k == 1:
            codes = np.concatenate(
                [np.array([g.degree(v) for v in range(g.n)], dtype=np.int64) for g in self.graphs]
            )
        else:
            codes = np.concatenate([atomic_types(g, self.k) for g in self.graphs])
        return _rank_rows(codes[:, None])

    def signatures(self, colors: np.ndarray) -> np.ndarray:
        """Rows (old colour, sorted multiset) for every tuple of every graph."""
        m = int(colors.max()) + 1 if colors.size else 1
        blocks = []
        for gi in range(len(self.graphs)):
            c = colors[gi * self.size:(gi + 1) * self.size]
            if self.k == 1:
                width = max((len(nb) for nb in self.neighbours[gi]), default=0)
                # pad with -1 so that rows of different degree never coincide
                multi = np.full((self.n, width), -1, dtype=np.int64)
                for v, nb in enumerate(self.neighbours[gi]):
                    if len(nb):
                        multi[v, : len(nb)] = np.sort(c[nb])[::-1]
                blocks.append((c, multi))
            else:
                if m ** self.k < 2**62:
                    code = np.zeros((self.size, self.n), dtype=np.int64)
                    for table in self.tables:
                        code = code * m + c[table]
                else:
                    vectors = np.stack([c[table] for table in self.tables], axis=-1)
                    code = _rank_rows(vectors.reshape(-1, self.k)).reshape(self.size, self.n)
                blocks.append((c, np.sort(code, axis=1)))
        width = max(b[1].shape[1] for b in blocks)
        rows = []
        for c, multi in blocks:
            if multi.shape[1] < width:
                pad = np.full((multi.shape[0], width - multi.shape[1]), -1, dtype=np.int64)
                multi = np.hstack([multi, pad])
            rows.append(np.hstack([c[:, None], multi]))
        return np.vstack(rows)

    def run(self, max_rounds: int | None = None):
        """Refine to the fixpoint; return (colours, rounds, colour history, last rows)."""
        colors = self.initial()
        history = [colors]
        rounds = 0
        while max_rounds is None or rounds < max_rounds:
            rows = self.signatures(colors)
            new = _rank_rows(rows)
            rounds += 1
            if new.max(initial=-1) == colors.max(initial=-1):
                # new partition refines the old one, so equal class counts mean equal partitions
                return colors, rounds, history, rows
            colors = new
            history.append(colors)
        return colors, rounds, history, None

    def split(self, colors: np.ndarray) -> list[np.ndarray]:
        return [colors[i * self.size:(i + 1) * self.size] for i in range(len(self.graphs))]


def _coloring(g: Graph, k: int, colors: np.ndarray, rounds: int, history) -> Coloring:
    counts = tuple(len(np.unique(h)) for h in history)
    return Coloring(k, g.n, tuple(int(c) for c in colors), rounds, counts)


def wl1_stable(g: Graph) -> Coloring:
    """Stable colour refinement starting from vertex degrees."""
    if g.n == 0:
        return Coloring(1, 0, (), 0, ())
    colors, rounds, history, _ = _Refiner([g], 1).run()
    return _coloring(g, 1, colors, rounds, history)


def wlk_stable(g: Graph, k: int, tuple_cap: int = DEFAULT_TUPLE_CAP) -> Coloring:
    """Stable folklore k-WL colouring of V^k, initialised by atomic types."""
    if k == 1:
        return wl1_stable(g)
    _check_budget(g.n, k, tuple_cap)
    if g.n == 0:
        return Coloring(k, 0, (), 0, ())
    colors, rounds, history, _ = _Refiner([g], k).run()
    return _coloring(g, k, colors, rounds, history)


@dataclass(frozen=True)
class JointResult:
    equivalent: bool
    rounds: int
    colorings: tuple[Coloring, Coloring]


def joint_refinement(g: Graph, h: Graph, k: int, tuple_cap: int = DEFAULT_TUPLE_CAP) -> JointResult:
    """Refine g and h together with one canonical palette.

    Stops at the joint fixpoint or as soon as the per-graph histograms
    differ (at which point the graphs are already distinguished).
    """
    _check_budget(max(g.n, h.n), k, tuple_cap, graphs=2)
    if g.n != h.n:
        empty = Coloring(k, 0, (), 0, ())
        return JointResult(False, 0, (empty, empty))
    if g.n == 0:
        empty = Coloring(k, 0, (), 0, ())
        return JointResult(True, 0, (empty, empty))
    ref = _Refiner([g, h], k)
    colors = ref.initial()
    history = [colors]
    rounds = 0
    equivalent = True
    while True:
        cg, ch = ref.split(colors)
        if not np.array_equal(np.bincount(cg, minlength=colors.max() + 1),
                              np.bincount(ch, minlength=colors.max() + 1)):
            equivalent = False
            break
        new = _rank_rows(ref.signatures(colors))
        rounds += 1
        if new.max() == colors.max():
            break
        colors = new
        history.append(colors)
    cg, ch = ref.split(colors)
    hist_g = [ref.split(x)[0] for x in history]
    hist_h = [ref.split(x)[1] for x in history]
    return JointResult(
        equivalent,
        rounds,
        (_coloring(g, k, cg, rounds, hist_g), _coloring(h, k, ch, rounds, hist_h)),
    )


def wl_equivalent(g: Graph, h: Graph, k: int, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """k-WL equivalence by joint refinement (k = 1 is colour refinement)."""
    return joint_refinement(g, h, k, tuple_cap).equivalent


def c_equivalent(g: Graph, h: Graph, m: int, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """C^m-equivalence, decided as (m-1)-WL equivalence."""
    if m < 2:
        raise InputError("C^m equivalence is decided for m >= 2")
    return wl_equivalent(g, h, m - 1, tuple_cap)


def wl_fingerprint(g: Graph, k: int, tuple_cap: int = DEFAULT_TUPLE_CAP) -> str:
    """Digest of the per-round sorted signature tables of a single-graph run.

    Two graphs have equal tables at every round through their fixpoints iff
    they are k-WL equivalent, so equal digests identify candidate pairs and
    different digests certify inequivalence (up to hash collisions, which
    callers rule out by confirming with :func:`wl_equivalent`).
    """
    if k > 1:
        _check_budget(g.n, k, tuple_cap)
    digest = hashlib.sha256(f"n={g.n};k={k};".encode())
    if g.n == 0:
        return digest.hexdigest()
    ref = _Refiner([g], k)
    colors = ref.initial()
    init_codes = (
        np.array([g.degree(v) for v in range(g.n)], dtype=np.int64)
        if k == 1
        else atomic_types(g, k)
    )
    _table(digest, init_codes[:, None])
    while True:
        rows = ref.signatures(colors)
        _table(digest, rows)
        new = _rank_rows(rows)
        if new.max() == colors.max():
            break
        colors = new
    return digest.hexdigest()


def _table(digest, rows: np.ndarray):
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    digest.update(repr(uniq.shape).encode())
    digest.update(np.ascontiguousarray(uniq, dtype=np.int64).tobytes())
    digest.update(np.ascontiguousarray(counts, dtype=np.int64).tobytes())
    digest.update(b"|")
