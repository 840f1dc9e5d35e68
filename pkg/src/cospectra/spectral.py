"""Exact spectral invariants of adjacency matrices.

Every equality decision goes through integer characteristic polynomials.
There are two independent routes to them: closed-walk traces fed through
Newton's identities, and the Faddeev-LeVerrier recurrence.  Floating-point
spectra exist only for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, InvariantError, NumericalError
from .graph import Graph, is_regular

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CharPoly:
    """Coefficients c_0..c_n of det(xI - A), lowest degree first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int | Fraction) -> int | Fraction:
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = mono if mag == 1 and mono else f"{mag}{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) if terms else "0"


def walk_count(g: Graph, v: int, u: int, length: int) -> int:
    """Number of walks of the given length from v to u (exact)."""
    if not (0 <= v < g.n and 0 <= u < g.n):
        raise InputError("vertex out of range")
    if length < 0:
        raise InputError("walk length must be non-negative")
    nbrs = [g.neighbors(w) for w in range(g.n)]
    counts = [0] * g.n
    counts[v] = 1
    for _ in range(length):
        nxt = [0] * g.n
        for w, c in enumerate(counts):
            if c:
                for x in nbrs[w]:
                    nxt[x] += c
        counts = nxt
    return counts[u]


def _matrix_powers(a: np.ndarray, top: int):
    """Yield A^1..A^top exactly, int64 while entries provably fit, Python ints after."""
    n = a.shape[0]
    dmax = int(a.sum(axis=1).max()) if n else 0
    power = a.copy()
    fast = True
    for l in range(1, top + 1):
        if l > 1:
            # entries of A^l are bounded by dmax**l and partial sums never exceed them
            if fast and dmax ** l >= _INT64_SAFE:
                fast = False
                power = power.astype(object)
            power = power @ (a if fast else a.astype(object))
        yield power


def trace_powers(g: Graph, top: int) -> list[int]:
    """[tr(A), tr(A^2), ..., tr(A^top)] as Python integers."""
    if top < 1:
        raise InputError("need at least one trace")
    if g.n == 0:
        return [0] * top
    return [int(sum(int(x) for x in np.diagonal(p))) for p in _matrix_powers(g.adjacency(), top)]


def charpoly_from_traces(traces: Sequence[int]) -> CharPoly:
    """Recover det(xI - A) of an n x n matrix from tr(A^1..A^n) by Newton's identities."""
    n = len(traces)
    e = [Fraction(1)]
    for k in range(1, n + 1):
        total = sum((-1) ** (j - 1) * e[k - j] * traces[j - 1] for j in range(1, k + 1))
        ek = total / k
        if ek.denominator != 1:
            raise InvariantError(f"e_{k} = {ek} is not integral; trace sequence is inconsistent")
        e.append(ek)
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = (-1) ** k * int(e[k])
    return CharPoly(tuple(coeffs))


def charpoly_direct(g: Graph) -> CharPoly:
    """Faddeev-LeVerrier over the integers; every division is exact."""
    n = g.n
    a = g.matrix()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        m = [
            [sum(a[i][t] * m[t][j] for t in range(n) if a[i][t]) + (c_prev if i == j else 0)
             for j in range(n)]
            for i in range(n)
        ]
        tr_am = sum(a[i][t] * m[t][i] for i in range(n) for t in range(n) if a[i][t])
        q, rem = divmod(-tr_am, k)
        if rem:
            raise InvariantError(f"Faddeev-LeVerrier division by {k} not exact")
        coeffs[n - k] = q
    return CharPoly(tuple(coeffs))


def charpoly(g: Graph) -> CharPoly:
    return charpoly_from_traces(trace_powers(g, g.n)) if g.n else CharPoly((1,))


def cospectral(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    return charpoly(g) == charpoly(h)


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending."""
    m = np.array(a, dtype=float)
    n = m.shape[0]
    if n == 0:
        return []
    scale = max(np.abs(m).max(), 1.0)
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = math.sqrt(float((m[offdiag] ** 2).sum()))
        if off <= tol * scale:
            return sorted((float(x) for x in np.diag(m)), reverse=True)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (m[q, q] - m[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = m[p, :].copy(), m[q, :].copy()
                m[p, :] = c * rp - s * rq
                m[q, :] = s * rp + c * rq
                cp, cq = m[:, p].copy(), m[:, q].copy()
                m[:, p] = c * cp - s * cq
                m[:, q] = s * cp + c * cq
    raise NumericalError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def spectrum_float(g: Graph) -> list[float]:
    return jacobi_eigenvalues(g.adjacency())


def regular_eigen_bounds_check(g: Graph, slack: float = 1e-9) -> bool:
    """For d-regular g: p(d) == 0 exactly and every eigenvalue has |theta| <= d."""
    d = is_regular(g)
    if d is None:
        raise InputError("graph is not regular")
    if charpoly_direct(g)(d) != 0:
        return False
    return all(abs(theta) <= d + slack for theta in spectrum_float(g))
