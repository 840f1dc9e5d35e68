from __future__ import annotations

import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospectra import graph as gr
from cospectra.census import enumerate_graphs
from cospectra.errors import InputError
from cospectra.spectral import (
    CharPoly,
    charpoly,
    charpoly_direct,
    charpoly_from_traces,
    cospectral,
    jacobi_eigenvalues,
    regular_eigen_bounds_check,
    spectrum_float,
    trace_powers,
    walk_count,
)

from conftest import graph_and_perm, graphs

C4K1 = gr.disjoint_union(gr.cycle(4), gr.complete(1))
K14 = gr.complete_bipartite(1, 4)


def _matrix_power_entry(g, v, u, l):
    a = np.array(g.matrix(), dtype=object)
    m = np.identity(g.n, dtype=object)
    for _ in range(l):
        m = m.dot(a)
    return int(m[v, u])


def test_walk_count_examples():
    assert walk_count(gr.cycle(4), 0, 0, 2) == 2
    assert walk_count(K14, 0, 0, 2) == 4
    assert walk_count(gr.path(4), 1, 1, 0) == 1
    assert walk_count(gr.path(4), 1, 2, 0) == 0


@given(graphs(1, 7), st.integers(0, 7), st.data())
def test_walk_count_matches_matrix_power(g, l, data):
    v = data.draw(st.integers(0, g.n - 1))
    u = data.draw(st.integers(0, g.n - 1))
    assert walk_count(g, v, u, l) == _matrix_power_entry(g, v, u, l)


def test_trace_examples():
    assert trace_powers(C4K1, 5) == [0, 8, 0, 32, 0]
    assert trace_powers(K14, 5) == [0, 8, 0, 32, 0]
    assert trace_powers(gr.edgeless(4), 6) == [0] * 6


@given(graphs(1, 9))
def test_trace_invariants(g):
    t = trace_powers(g, 4)
    assert t[0] == 0
    assert t[1] == 2 * g.num_edges
    assert t[2] == 6 * gr.count_triangles(g)
    assert all(x >= 0 for x in t)


def test_traces_exact_beyond_int64():
    # K_30 has tr(A^30) = 29^30 + 29 * (-1)^30, far beyond 2^63
    t = trace_powers(gr.complete(30), 30)
    assert t[-1] == 29**30 + 29


def test_charpoly_examples():
    k3 = CharPoly((-2, -3, 0, 1))
    assert charpoly_from_traces([0, 6, 6]) == k3
    assert charpoly_direct(gr.complete(3)) == k3
    assert charpoly_from_traces(trace_powers(K14, 5)) == CharPoly((0, 0, 0, -4, 0, 1))
    assert charpoly_from_traces([0, 0, 0, 0]) == CharPoly((0, 0, 0, 0, 1))
    assert charpoly_direct(gr.cycle(4)) == CharPoly((0, 0, -4, 0, 1))
    assert charpoly_direct(gr.complete(1)) == CharPoly((0, 1))
    assert str(charpoly(K14)) == "x^5 - 4x^3"


def test_charpoly_rejects_impossible_traces():
    from cospectra.errors import InvariantError

    with pytest.raises(InvariantError):
        charpoly_from_traces([0, 1])


@given(graphs(0, 10))
def test_charpoly_shape(g):
    p = charpoly(g)
    assert p.degree == g.n and p.coeffs[-1] == 1
    if g.n >= 2:
        assert p.coeffs[-2] == 0 and p.coeffs[-3] == -g.num_edges


@given(graphs(1, 11))
def test_two_routes_agree(g):
    assert charpoly_from_traces(trace_powers(g, g.n)) == charpoly_direct(g)


def test_two_routes_agree_on_census():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert charpoly_from_traces(trace_powers(g, g.n)) == charpoly_direct(g)


@given(graphs(1, 9))
def test_charpoly_matches_numpy_roots(g):
    """Float cross-check: the exact polynomial vanishes near numpy's eigenvalues."""
    eig = np.linalg.eigvalsh(g.adjacency().astype(float))
    expected = np.poly(eig)[::-1]  # lowest degree first
    assert np.allclose(expected, charpoly(g).coeffs, atol=1e-6)


def test_cospectral_examples():
    assert cospectral(C4K1, K14)
    assert cospectral(K14, K14)
    assert not cospectral(gr.paley(13), gr.cubic_paley(13))
    assert not cospectral(gr.complete(3), gr.complete(4))


@given(graph_and_perm(1, 9))
def test_isomorphic_graphs_are_cospectral(gp):
    g, perm = gp
    assert cospectral(g, g.relabel(perm))


def test_cospectral_is_an_equivalence_relation():
    rng = random.Random(3)
    pool = enumerate_graphs(6)
    for _ in range(300):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert cospectral(a, a)
        assert cospectral(a, b) == cospectral(b, a)
        if cospectral(a, b) and cospectral(b, c):
            assert cospectral(a, c)


def test_spectrum_examples():
    assert np.allclose(spectrum_float(K14), [2, 0, 0, 0, -2], atol=1e-9)
    assert np.allclose(spectrum_float(gr.complete(4)), [3, -1, -1, -1], atol=1e-9)
    assert np.allclose(spectrum_float(gr.edgeless(3)), [0, 0, 0], atol=1e-9)
    assert spectrum_float(gr.edgeless(0)) == []


@given(graphs(1, 10))
def test_jacobi_matches_numpy(g):
    ours = spectrum_float(g)
    ref = sorted(np.linalg.eigvalsh(g.adjacency().astype(float)), reverse=True)
    assert np.allclose(ours, ref, atol=1e-9)
    assert abs(sum(ours)) <= 1e-9 * max(g.n, 1)


def test_jacobi_general_symmetric():
    rng = np.random.default_rng(0)
    m = rng.normal(size=(7, 7))
    m = m + m.T
    assert np.allclose(jacobi_eigenvalues(m), sorted(np.linalg.eigvalsh(m), reverse=True), atol=1e-9)


def test_regular_bounds_examples():
    assert regular_eigen_bounds_check(gr.cycle(5))
    assert regular_eigen_bounds_check(gr.complete(4))
    with pytest.raises(InputError):
        regular_eigen_bounds_check(K14)


def test_regular_census_graphs():
    for n in range(1, 8):
        regular = [(g, gr.is_regular(g)) for g in enumerate_graphs(n)]
        regular = [(g, d) for g, d in regular if d is not None]
        for g, d in regular:
            assert charpoly(g)(d) == 0
            assert regular_eigen_bounds_check(g)
            assert abs(spectrum_float(g)[0] - d) <= 1e-9
        for (g, d), (h, e) in combinations(regular, 2):
            if d != e:
                assert not cospectral(g, h)
