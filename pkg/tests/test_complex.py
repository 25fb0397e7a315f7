import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from eightloc.complex import (
    UNREACHABLE,
    ComplexFormatError,
    NotFlagError,
    SimplicialComplex,
    ball,
    diameter,
    distance,
    distance_matrix,
    dumps,
    from_edges,
    is_flag,
    is_full,
    link,
    loads,
    read_complex,
    require_flag,
    span,
    sphere,
)
from eightloc.generators import generate
from eightloc.loops import Cycle

OCT = generate("octahedron")
EQUATOR = (1, 2, 4, 5)  # antipodes of pole 0 and 3 removed


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimplicialComplex(n, [p for p, k in zip(pairs, keep) if k])


def test_triangle_is_a_two_simplex():
    X = from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert X.simplices(2) == [(0, 1, 2)]
    assert X.is_simplex((0, 1, 2))


def test_single_vertex():
    X = from_edges(1, [])
    assert X.n_vertices == 1 and X.n_edges == 0 and X.is_connected()


def test_octahedron_counts():
    assert OCT.n_edges == 12
    assert len(OCT.simplices(2)) == 8
    non_edges = [p for p in combinations(range(6), 2) if not OCT.adjacent(*p)]
    assert non_edges == [(0, 3), (1, 4), (2, 5)]
    assert {c for c in OCT.cliques() if len(c) == 3} == {c for c in oracles.brute_cliques(OCT) if len(c) == 3}


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 0)])
    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 2)])


def test_is_flag():
    assert is_flag(OCT)
    hollow = SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)], declared_simplices=[(0, 1), (1, 2), (0, 2)])
    assert not is_flag(hollow)
    with pytest.raises(NotFlagError):
        require_flag(hollow)
    declared = SimplicialComplex(6, OCT.edges(), declared_simplices=OCT.simplices(2))
    assert is_flag(declared)


def test_span():
    assert span(OCT, range(6)).as_complex()[0] == OCT
    edge = span(OCT, {0, 1})
    assert edge.edges() == [(0, 1)]
    eq = span(OCT, EQUATOR)
    assert len(eq.edges()) == 4


def test_is_full():
    tri = generate("simplex(2)")
    assert not is_full(tri, Cycle.from_sequence((0, 1, 2)))
    assert is_full(OCT, Cycle.from_sequence((1, 2, 4, 5)))
    W = generate("wheel(6)")
    assert is_full(W, Cycle.from_sequence(range(1, 7)))
    assert not is_full(OCT, Cycle.from_sequence((0, 1, 2, 4)))  # chord 0-2


def test_link():
    assert set(link(OCT, (0,))) == set(EQUATOR)
    assert set(link(from_edges(2, [(0, 1)]), (0,))) == {1}
    W = generate("wheel(6)")
    assert set(link(W, (0, 1))) == {2, 6}
    with pytest.raises(ValueError):
        link(OCT, (0, 3))


def test_distance():
    assert distance(OCT, 2, 2) == 0
    assert distance(OCT, 0, 3) == 2
    two = from_edges(4, [(0, 1), (2, 3)])
    assert distance(two, 0, 3) == UNREACHABLE and math.isinf(distance(two, 0, 3))
    assert distance_matrix(two)[0, 3] == -1
    assert math.isinf(diameter(two))


def test_ball_and_sphere():
    W = generate("wheel(6)")
    assert set(ball(W, 3, 0)) == {3}
    rim = sphere(W, 0, 1)
    assert set(rim) == set(range(1, 7))
    assert is_full(W, Cycle.from_sequence(range(1, 7)))
    assert set(ball(OCT, 0, diameter(OCT))) == set(range(6))


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_flag_closure_matches_brute_force(X):
    assert set(X.cliques()) == oracles.brute_cliques(X)
    assert is_flag(X)


@settings(max_examples=40, deadline=None)
@given(graphs(), st.data())
def test_span_idempotent_and_monotone(X, data):
    A = set(data.draw(st.sets(st.integers(0, X.n_vertices - 1))))
    B = A | set(data.draw(st.sets(st.integers(0, X.n_vertices - 1))))
    SA = span(X, A)
    assert set(span(X, set(SA)).edges()) == set(SA.edges())
    assert set(SA.edges()) <= set(span(X, B).edges())


@pytest.mark.parametrize("spec", ["octahedron", "icosahedron", "wheel(7)", "triangular_lattice_disk(2)", "annulus(5)", "random_flag(9, 0.4, 1)"])
def test_link_is_unit_sphere_and_triangle_inequality(spec):
    X = generate(spec)
    for v in X.vertices:
        assert set(link(X, (v,))) == set(sphere(X, v, 1))
    D = oracles.floyd_warshall(X)
    assert (np.where(distance_matrix(X) < 0, np.inf, distance_matrix(X)) == np.array(D)).all()
    n = X.n_vertices
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert D[a][c] <= D[a][b] + D[b][c]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.data())
def test_is_full_matches_induced_cycle_check(X, data):
    k = data.draw(st.integers(3, max(3, X.n_vertices)))
    if k > X.n_vertices:
        return
    seq = data.draw(st.permutations(range(X.n_vertices)))[:k]
    cyc = Cycle.from_sequence(seq)
    if not cyc.is_cycle_of(X):
        return
    adj = oracles.adjacency(X)
    induced = sum(1 for a, b in combinations(seq, 2) if b in adj[a])
    assert is_full(X, cyc) == (induced == k and k > 3)


def test_text_roundtrip(tmp_path):
    text = dumps(OCT)
    assert loads(text) == OCT
    assert dumps(loads(text)) == text
    p = tmp_path / "x.cx"
    p.write_text("# comment\ncomplex 3\ne 0 1\ne 1 2\n\n")
    assert read_complex(p).edges() == ((0, 1), (1, 2))


@pytest.mark.parametrize("bad", ["", "complex x", "complex 2\ne 0 5", "complex 2\nq 0 1", "e 0 1", "complex 2\ne 0"])
def test_malformed_text(bad):
    with pytest.raises(ComplexFormatError):
        loads(bad)
