"""Small-graph census: enumeration up to isomorphism, spectral classes, pair scans."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, InvariantError, ResourceError
from .graph import Graph, from_edges, is_regular, srg_params
from .graph6 import parse_graph6, write_graph6
from .spectral import CharPoly, charpoly, cospectral
from .wl import joint_refinement, wl1_stable, wl_equivalent, wl_fingerprint

BUILTIN_MAX_N = 7
CANON_MAX_N = 8

Mapper = Callable[[Callable, Sequence], list]


def _serial_map(fn, items):
    return [fn(x) for x in items]


# canonical form ------------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_tables(n: int):
    if n > CANON_MAX_N:
        raise ResourceError(f"canonical form by permutation scan is limited to n <= {CANON_MAX_N}")
    perms = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    # graph6 bit order: column j = 1..n-1, row i < j
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    rows = np.array([i for i, _ in pairs], dtype=np.intp)
    cols = np.array([j for _, j in pairs], dtype=np.intp)
    flat = perms[:, rows] * n + perms[:, cols]
    m = len(pairs)
    weights = np.array([1 << (m - 1 - t) for t in range(m)], dtype=np.int64) if m < 63 else None
    return flat, weights


def _code_to_graph(n: int, code: int) -> Graph:
    m = n * (n - 1) // 2
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if code >> (m - 1 - t) & 1:
                edges.append((i, j))
            t += 1
    return from_edges(n, edges)


def canonical_code(g: Graph) -> int:
    """Minimum over relabellings of the graph6 upper-triangle bit word read as an integer."""
    n = g.n
    if n < 2:
        return 0
    flat, weights = _perm_tables(n)
    bits = g.adjacency().reshape(-1)[flat]
    return int((bits @ weights).min())


def canonical_form(g: Graph) -> Graph:
    """The relabelling of g whose graph6 string is lexicographically least."""
    return _code_to_graph(g.n, canonical_code(g))


def canonical_graph6(g: Graph) -> str:
    return write_graph6(canonical_form(g))


# isomorphism -----------------------------------------------------------------


def isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test by backtracking over colour-preserving bijections."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if g.n == 0:
        return True
    joint = joint_refinement(g, h, 1)
    if not joint.equivalent:
        return False
    cg, ch = (c.colors for c in joint.colorings)
    by_color: dict[int, list[int]] = defaultdict(list)
    for u, c in enumerate(ch):
        by_color[c].append(u)
    # small classes first, then neighbours of already placed vertices
    order: list[int] = []
    left = set(range(g.n))
    while left:
        placed = 0
        for v in order:
            placed |= g.rows[v]
        v = min(left, key=lambda x: (not placed >> x & 1, len(by_color[cg[x]]), x))
        order.append(v)
        left.remove(v)
    image = [-1] * g.n
    used = [False] * h.n

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for u in by_color[cg[v]]:
            if used[u]:
                continue
            if all(
                (g.rows[w] >> v & 1) == (h.rows[image[w]] >> u & 1)
                for w in order[:pos]
            ):
                image[v], used[u] = u, True
                if extend(pos + 1):
                    return True
                image[v], used[u] = -1, False
        return False

    return extend(0)


def isomorphic_bruteforce(g: Graph, h: Graph) -> bool:
    """All n! bijections, no pruning.  Reference for tests."""
    if g.n != h.n:
        return False
    hn = h.adjacency()
    ga = g.adjacency()
    return any(np.array_equal(ga, hn[np.ix_(p, p)]) for p in permutations(range(g.n)))


# enumeration -----------------------------------------------------------------


def _augment(codes_prev: Iterable[int], n: int) -> list[int]:
    """Canonical codes of all n-vertex graphs obtained by adding a vertex."""
    seen: set[int] = set()
    for code in codes_prev:
        base = _code_to_graph(n - 1, code) if n > 1 else Graph(0, ())
        for mask in range(1 << (n - 1)):
            rows = list(base.rows) + [mask]
            for v in range(n - 1):
                if mask >> v & 1:
                    rows[v] |= 1 << (n - 1)
            seen.add(canonical_code(Graph(n, tuple(rows))))
    return sorted(seen)


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[int, ...]:
    if n <= 1:
        return (0,)
    return tuple(_augment(_codes(n - 1), n))


def enumerate_graphs(n: int, import_path: str | None = None) -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices.

    Built in up to n = 7; beyond that, pass a file of graph6 lines covering
    every class (e.g. produced by an external generator).
    """
    if n < 0:
        raise InputError("n must be non-negative")
    if import_path is not None:
        return import_graphs(import_path, n)
    if n > BUILTIN_MAX_N:
        raise ResourceError(
            f"built-in enumeration stops at n = {BUILTIN_MAX_N}; import a graph6 file for n = {n}"
        )
    if n == 0:
        return [Graph(0, ())]
    return [_code_to_graph(n, c) for c in _codes(n)]


def import_graphs(path: str, n: int | None = None) -> list[Graph]:
    """Read graph6 lines and keep one graph per isomorphism class.

    Small orders are canonicalised and sorted by canonical code.  Beyond
    CANON_MAX_N the first representative of each class is kept in file
    order, with classes separated by 1-WL fingerprint and backtracking.
    """
    codes: dict[int, set[int]] = defaultdict(set)
    buckets: dict[tuple[int, str], list[Graph]] = defaultdict(list)
    large: dict[int, list[Graph]] = defaultdict(list)
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            g = parse_graph6(line)
            if n is not None and g.n != n:
                continue
            if g.n <= CANON_MAX_N:
                codes[g.n].add(canonical_code(g))
                continue
            bucket = buckets[g.n, wl_fingerprint(g, 1)]
            if not any(isomorphic(g, h) for h in bucket):
                bucket.append(g)
                large[g.n].append(g)
    out = [_code_to_graph(m, c) for m in sorted(codes) for c in sorted(codes[m])]
    for m in sorted(large):
        out += large[m]
    return out


def count_graphs_burnside(n: int) -> int:
    """Number of isomorphism classes via Burnside's lemma on vertex pairs."""
    if n < 2:
        return 1
    total = 0
    pairs = list(combinations(range(n), 2))
    for p in permutations(range(n)):
        seen = set()
        orbits = 0
        for e in pairs:
            if e in seen:
                continue
            orbits += 1
            cur = e
            while cur not in seen:
                seen.add(cur)
                a, b = p[cur[0]], p[cur[1]]
                cur = (a, b) if a < b else (b, a)
        total += 2**orbits
    count, rem = divmod(total, factorial(n))
    if rem:
        raise InvariantError("Burnside sum is not divisible by n!")
    return count


# census records ------------------------------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    graph6: str
    charpoly: CharPoly
    wl1_histogram: tuple[tuple[int, int], ...]
    regular: int | None
    srg: tuple[int, int, int, int] | None
    is_ds: bool = False

    @property
    def graph(self) -> Graph:
        return parse_graph6(self.graph6)

    def flags(self) -> str:
        srg = "-" if self.srg is None else ":".join(map(str, self.srg))
        reg = "-" if self.regular is None else str(self.regular)
        return f"regular={reg};srg={srg};ds={int(self.is_ds)}"


@dataclass(frozen=True)
class SpectralClass:
    charpoly: CharPoly
    members: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class SpectralSummary:
    n: int
    graphs: int
    ds: int
    classes: int
    cospectral_class_sizes: list[int] = field(default_factory=list)

    @property
    def ds_fraction(self) -> float:
        return self.ds / self.graphs if self.graphs else 1.0


def _entry(g: Graph) -> CensusEntry:
    p = srg_params(g)
    return CensusEntry(
        write_graph6(g),
        charpoly(g),
        wl1_stable(g).histogram,
        is_regular(g),
        None if p is None else tuple(p),
    )


def census_entries(graphs: Sequence[Graph], pmap: Mapper = _serial_map) -> list[CensusEntry]:
    """Entries with DS flags decided within the given (fixed-order) population."""
    raw = pmap(_entry, list(graphs))
    sizes: dict[tuple[int, ...], int] = defaultdict(int)
    for e in raw:
        sizes[e.charpoly.coeffs] += 1
    out = [
        CensusEntry(e.graph6, e.charpoly, e.wl1_histogram, e.regular, e.srg, sizes[e.charpoly.coeffs] == 1)
        for e in raw
    ]
    return sorted(out, key=lambda e: e.graph6)


def spectral_classes(entries: Sequence[CensusEntry]) -> list[SpectralClass]:
    groups: dict[tuple[int, ...], list[str]] = defaultdict(list)
    for e in entries:
        groups[e.charpoly.coeffs].append(e.graph6)
    return sorted(
        (SpectralClass(CharPoly(k), tuple(sorted(v))) for k, v in groups.items()),
        key=lambda c: (-c.size, c.members),
    )


def spectral_census(
    n: int, import_path: str | None = None, pmap: Mapper = _serial_map
) -> tuple[list[SpectralClass], SpectralSummary]:
    entries = census_entries(enumerate_graphs(n, import_path), pmap)
    classes = spectral_classes(entries)
    multi = [c.size for c in classes if c.size > 1]
    summary = SpectralSummary(n, len(entries), sum(e.is_ds for e in entries), len(classes), multi)
    return classes, summary


# persistence ---------------------------------------------------------------


def write_census(entries: Iterable[CensusEntry]) -> str:
    lines = []
    for e in entries:
        coeffs = ",".join(map(str, e.charpoly.coeffs))
        lines.append(f"{e.graph6}\t{coeffs}\t{e.flags()}\n")
    return "".join(lines)


def read_census(text: str) -> list[CensusEntry]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 3 tab-separated fields")
        g6, coeffs, flags = parts
        g = parse_graph6(g6)
        try:
            kv = dict(item.split("=", 1) for item in flags.split(";"))
            cp = CharPoly(tuple(int(c) for c in coeffs.split(",")))
            regular = None if kv["regular"] == "-" else int(kv["regular"])
            srg = None if kv["srg"] == "-" else tuple(int(x) for x in kv["srg"].split(":"))
            ds = kv["ds"] == "1"
        except (KeyError, ValueError) as exc:
            raise InputError(f"line {lineno}: malformed record ({exc})") from None
        out.append(CensusEntry(g6, cp, wl1_stable(g).histogram, regular, srg, ds))
    return out


# cross-invariant scan ------------------------------------------------------


@dataclass(frozen=True)
class PairRecord:
    first: str
    second: str
    cospectral: bool
    wl1: bool
    wl2: bool
    isomorphic: bool


@dataclass
class ScanReport:
    n: int
    graphs: int
    pairs: int
    regions: dict[str, int]
    cospectral_not_wl1: list[tuple[str, str]]
    wl1_not_cospectral: list[tuple[str, str]]
    wl2_not_cospectral: list[tuple[str, str]]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "pairs": self.pairs,
            "regions": dict(sorted(self.regions.items())),
            "witnesses": {
                "cospectral_not_wl1": [list(p) for p in self.cospectral_not_wl1],
                "wl1_not_cospectral": [list(p) for p in self.wl1_not_cospectral],
                "wl2_not_cospectral": [list(p) for p in self.wl2_not_cospectral],
            },
        }


def _region(cospec: bool, wl1: bool, wl2: bool, iso: bool) -> str:
    return f"cospectral={int(cospec)},wl1={int(wl1)},wl2={int(wl2)},iso={int(iso)}"


def _fingerprints(g6: str) -> tuple[str, str]:
    g = parse_graph6(g6)
    return wl_fingerprint(g, 1), wl_fingerprint(g, 2)


def pair_flags(g: Graph, h: Graph) -> tuple[bool, bool, bool, bool]:
    """(cospectral, 1-WL equivalent, 2-WL equivalent, isomorphic) computed directly."""
    return cospectral(g, h), wl_equivalent(g, h, 1), wl_equivalent(g, h, 2), isomorphic(g, h)


def cross_invariant_scan(
    n: int,
    import_path: str | None = None,
    pmap: Mapper = _serial_map,
    max_witnesses: int = 10,
) -> ScanReport:
    """Classify every unordered pair of census graphs by the four relations.

    Only pairs sharing a characteristic polynomial or a 1-WL fingerprint can
    have any relation hold (2-WL and isomorphism both imply 1-WL), so those
    candidates are checked exactly and the remaining pairs are counted as
    all-false.  Equal fingerprints are confirmed by joint refinement.
    """
    entries = census_entries(enumerate_graphs(n, import_path), pmap)
    names = [e.graph6 for e in entries]
    prints = pmap(_fingerprints, names)
    by_poly: dict[tuple[int, ...], list[int]] = defaultdict(list)
    by_wl1: dict[str, list[int]] = defaultdict(list)
    for i, e in enumerate(entries):
        by_poly[e.charpoly.coeffs].append(i)
        by_wl1[prints[i][0]].append(i)
    candidates: set[tuple[int, int]] = set()
    for group in list(by_poly.values()) + list(by_wl1.values()):
        candidates.update(combinations(group, 2))

    graphs = [parse_graph6(s) for s in names]
    total = comb(len(entries), 2)
    regions: dict[str, int] = defaultdict(int)
    witnesses: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for i, j in sorted(candidates):
        cos = entries[i].charpoly == entries[j].charpoly
        wl1 = prints[i][0] == prints[j][0] and wl_equivalent(graphs[i], graphs[j], 1)
        wl2 = wl1 and prints[i][1] == prints[j][1] and wl_equivalent(graphs[i], graphs[j], 2)
        iso = names[i] == names[j]  # census entries are pairwise non-isomorphic
        if iso and not (cos and wl1 and wl2):
            raise InvariantError(f"isomorphic pair fails an invariant: {names[i]} {names[j]}")
        regions[_region(cos, wl1, wl2, iso)] += 1
        pair = (names[i], names[j])
        if wl2 and not cos:
            witnesses["wl2"].append(pair)
        if cos and not wl1 and len(witnesses["cos"]) < max_witnesses:
            witnesses["cos"].append(pair)
        if wl1 and not cos and len(witnesses["wl1"]) < max_witnesses:
            witnesses["wl1"].append(pair)
    none = total - len(candidates)
    if none:
        regions[_region(False, False, False, False)] += none
    report = ScanReport(
        n, len(entries), total, dict(regions), witnesses["cos"], witnesses["wl1"], witnesses["wl2"]
    )
    if report.wl2_not_cospectral:
        a, b = report.wl2_not_cospectral[0]
        raise InvariantError(f"2-WL equivalent but not co-spectral: {a} {b}")
    return report
