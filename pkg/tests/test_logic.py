from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospectra import graph as gr
from cospectra.census import enumerate_graphs
from cospectra.errors import InputError, ParseError, ResourceError
from cospectra.logic import (
    FALSE,
    TRUE,
    And,
    Edge,
    Eq,
    Exists,
    FormulaBuilder,
    Not,
    Or,
    build_phi,
    build_phi_graph,
    build_psi,
    dag_size,
    evaluate,
    exists_exactly,
    extension_axiom,
    format_formula,
    has_extension_property,
    indexed_partitions,
    parse_formula,
    same,
    satisfies_extension_axiom,
    width,
)
from cospectra.spectral import cospectral, trace_powers, walk_count

from conftest import graphs, labelled_graphs

C4K1 = gr.disjoint_union(gr.cycle(4), gr.complete(1))
K14 = gr.complete_bipartite(1, 4)
PSI = "Ex x All y ~E(x,y)"


# evaluation ------------------------------------------------------------------

def test_eval_examples():
    f = parse_formula(PSI)
    assert not evaluate(K14, f)
    assert evaluate(C4K1, f)
    assert evaluate(gr.path(3), TRUE)
    assert evaluate(gr.cycle(4), parse_formula("Ex^=2 y E(x,y)"), {"x": 0})
    assert cospectral(C4K1, K14) and width(f) == 2


def test_eval_errors():
    with pytest.raises(InputError):
        evaluate(gr.path(3), parse_formula("E(x,y)"), {"x": 0})
    with pytest.raises(InputError):
        evaluate(gr.path(3), parse_formula("E(x,y)"), {"x": 0, "y": 5})
    with pytest.raises(InputError):
        Exists(0, "x", TRUE)


def _brute(g, f, env):
    """Unmemoised reference semantics."""
    if f is TRUE or f is FALSE:
        return f.value
    if isinstance(f, Edge):
        return g.adjacent(env[f.a], env[f.b])
    if isinstance(f, Eq):
        return env[f.a] == env[f.b]
    if isinstance(f, Not):
        return not _brute(g, f.body, env)
    if isinstance(f, And):
        return all(_brute(g, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_brute(g, p, env) for p in f.parts)
    count = sum(_brute(g, f.body, {**env, f.var: v}) for v in range(g.n))
    return count >= f.threshold


VARS = ["x", "y", "z"]


def _formulas():
    atoms = st.one_of(
        st.builds(Edge, st.sampled_from(VARS), st.sampled_from(VARS)),
        st.builds(Eq, st.sampled_from(VARS), st.sampled_from(VARS)),
        st.sampled_from([TRUE, FALSE]),
    )

    def extend(inner):
        return st.one_of(
            st.builds(Not, inner),
            st.builds(lambda a, b: And((a, b)), inner, inner),
            st.builds(lambda a, b: Or((a, b)), inner, inner),
            st.builds(Exists, st.integers(1, 4), st.sampled_from(VARS), inner),
            st.builds(lambda i, v, b: exists_exactly(i, v, b), st.integers(0, 3), st.sampled_from(VARS), inner),
        )

    return st.recursive(atoms, extend, max_leaves=8)


@given(graphs(1, 5), _formulas(), st.data())
def test_eval_matches_reference(g, f, data):
    env = {v: data.draw(st.integers(0, g.n - 1)) for v in VARS}
    assert evaluate(g, f, env) == _brute(g, f, env)


@given(graphs(1, 5), _formulas(), st.integers(0, 3), st.data())
def test_exactly_desugaring(g, body, i, data):
    env = {v: data.draw(st.integers(0, g.n - 1)) for v in VARS}
    count = sum(_brute(g, body, {**env, "z": v}) for v in range(g.n))
    assert evaluate(g, exists_exactly(i, "z", body), env) == (count == i)


# syntax ----------------------------------------------------------------------

def test_parser_examples():
    f = parse_formula("E(x,y)")
    assert isinstance(f, Edge) and f.free == {"x", "y"}
    g = parse_formula("Ex^3 z (E(x,z) & x=z)")
    assert isinstance(g, Exists) and g.threshold == 3
    h = parse_formula(PSI)
    assert h.free == set() and width(h) == 2
    assert format_formula(h) == PSI
    imp = parse_formula("a=b -> b=c | true")
    assert same(imp, Or((Not(Eq("a", "b")), Or((Eq("b", "c"), TRUE)))))


@pytest.mark.parametrize("text,offset", [
    ("E(x,", 4), ("Ex^0 x true", 0), ("x = ", 4), ("E(x,y) &", 8), ("(true", 5), ("x # y", 2), ("", 0),
])
def test_parser_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.offset == offset


@given(_formulas())
def test_print_parse_round_trip(f):
    text = format_formula(f)
    assert same(parse_formula(text), f) or format_formula(parse_formula(text)) == text


@given(_formulas(), graphs(1, 4), st.data())
def test_round_trip_preserves_meaning(f, g, data):
    env = {v: data.draw(st.integers(0, g.n - 1)) for v in VARS}
    assert evaluate(g, parse_formula(format_formula(f)), env) == evaluate(g, f, env)


def test_round_trip_modulo_whitespace():
    text = "All x (Ex^=2 y (E(x,y) & ~x=y) -> Ex^3 z E(z,x))"
    f = parse_formula(text)
    assert format_formula(parse_formula(format_formula(f))) == format_formula(f)
    assert same(parse_formula(format_formula(f)), f)


# indexed partitions ----------------------------------------------------------

def _partitions_brute(k, bound):
    out = set()

    def rec(rem, parts):
        if rem == 0:
            out.add(tuple(sorted(parts)))
            return
        for p in range(1, rem + 1):
            if not parts or p >= parts[-1]:
                rec(rem - p, parts + [p])

    rec(k, [])
    result = set()
    for parts in out:
        if len(parts) <= bound:
            result.add(tuple(sorted((parts.count(v), v) for v in set(parts)), ))
    return {tuple(sorted(r, key=lambda mv: mv[1])) for r in result}


def test_partition_examples():
    assert set(indexed_partitions(2)) == {((1, 2),), ((2, 1),)}
    assert indexed_partitions(1) == [((1, 1),)]
    assert set(indexed_partitions(3)) == {((1, 3),), ((1, 1), (1, 2)), ((3, 1),)}
    assert indexed_partitions(0) == [()]
    with pytest.raises(InputError):
        indexed_partitions(-1)


@pytest.mark.parametrize("k", range(1, 13))
def test_partitions_match_brute_force(k):
    for bound in (1, 2, 3, k):
        got = indexed_partitions(k, bound)
        assert len(got) == len(set(got))
        assert set(got) == _partitions_brute(k, bound)
        for part in got:
            assert sum(m * v for m, v in part) == k
            assert [v for _, v in part] == sorted({v for _, v in part})


# psi / phi ---------------------------------------------------------------------

def test_psi_examples():
    f = build_psi(1, 1)
    assert isinstance(f, Edge) and evaluate(gr.complete(2), f, {"x": 0, "y": 1})
    assert build_psi(1, 5) is FALSE
    assert isinstance(build_psi(1, 0), Not)


def test_phi_examples():
    assert evaluate(gr.cycle(3), build_phi(3, 6))
    assert evaluate(gr.edgeless(3), build_phi(2, 0))
    assert evaluate(gr.cycle(4), build_phi(2, 8))
    assert not evaluate(gr.cycle(4), build_phi(2, 6))


def test_phi_graph_examples():
    assert evaluate(gr.complete(2), build_phi_graph(gr.complete(2)))
    phi = build_phi_graph(C4K1)
    assert evaluate(K14, phi) and evaluate(C4K1, phi)
    assert not evaluate(gr.cycle(5), phi)
    assert width(phi) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_psi_semantics_exhaustive(n):
    b = FormulaBuilder()
    for g in labelled_graphs(n):
        for l in range(1, 4):
            for k in range(9):
                f = b.psi(l, k)
                for v in range(n):
                    for u in range(n):
                        assert evaluate(g, f, {"x": v, "y": u}) == (walk_count(g, v, u, l) == k)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_phi_semantics_exhaustive(n):
    b = FormulaBuilder()
    for g in labelled_graphs(n):
        t = trace_powers(g, 3)
        for l in range(1, 4):
            for k in range(9):
                assert evaluate(g, b.phi(l, k), {}) == (t[l - 1] == k)


def test_zero_walk_neighbours_regression():
    # x=1 on the path 0-1-2-3 has neighbour 0 with no 1-walk to y=3 and
    # neighbour 2 with exactly one; a bare degree count would reject this
    p4 = gr.path(4)
    assert walk_count(p4, 1, 3, 2) == 1
    assert evaluate(p4, build_psi(2, 1), {"x": 1, "y": 3})


def test_widths():
    b = FormulaBuilder()
    for l in range(2, 5):
        for k in range(7):
            assert width(b.psi(l, k)) == 3
            assert b.psi(l, k).free <= {"x", "y"}
            assert width(b.phi(l, k)) == 3 and not b.phi(l, k).free
    assert width(b.psi(1, 0)) == width(b.psi(1, 1)) == 2
    for g in enumerate_graphs(4):
        if g.num_edges and max(trace_powers(g, 4)) <= 20:
            assert width(build_phi_graph(g)) == 3


def test_phi_distinguishes_trace_differences():
    """Whenever traces differ, the matching three-variable sentence separates the graphs."""
    b = FormulaBuilder()
    pool = enumerate_graphs(4)
    for g, h in combinations(pool, 2):
        tg, th = trace_powers(g, 4), trace_powers(h, 4)
        for l in range(1, 5):
            if tg[l - 1] != th[l - 1] and tg[l - 1] <= 40:
                f = b.phi(l, tg[l - 1])
                assert evaluate(g, f) and not evaluate(h, f)
                break


def test_size_guard():
    with pytest.raises(ResourceError, match="100 nodes"):
        build_psi(4, 12, max_nodes=100)
    b = FormulaBuilder(max_nodes=10**6)
    f = b.psi(3, 8)
    assert dag_size(f) <= b.node_count + 2


def test_builder_rejects_bad_args():
    with pytest.raises(InputError):
        build_psi(0, 1)
    with pytest.raises(InputError):
        build_phi(1, -1)


# extension axioms ------------------------------------------------------------

def test_extension_axiom_examples():
    k2 = gr.complete(2)
    assert evaluate(k2, extension_axiom(1, 0)) and satisfies_extension_axiom(k2, 1, 0)
    for n in (2, 3, 5):
        assert not evaluate(gr.complete(n), extension_axiom(0, 1))
    assert evaluate(gr.cycle(5), extension_axiom(1, 1))
    assert width(extension_axiom(2, 1)) == 4
    assert not extension_axiom(1, 2).free


def test_extension_property_examples():
    assert has_extension_property(gr.paley(17), 1)
    assert not has_extension_property(gr.complete(3), 1)
    assert not has_extension_property(gr.edgeless(2), 1)
    with pytest.raises(InputError):
        has_extension_property(gr.paley(5), 0)
    with pytest.raises(InputError):
        extension_axiom(0, 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_extension_direct_matches_eval(n):
    axioms = {(r, s): extension_axiom(r, s) for k in (1, 2) for r in range(k + 1) for s in [k - r]}
    for g in enumerate_graphs(n):
        for (r, s), f in axioms.items():
            assert satisfies_extension_axiom(g, r, s) == evaluate(g, f)
