import random

import pytest

import oracles
from eightloc.complex import diameter, is_flag
from eightloc.generators import FAMILIES, GeneratorSpec, corpus, generate, parse_spec
from eightloc.loops import contained_in_one_ball, enumerate_full_cycles


def test_parse_spec():
    s = parse_spec("cone_over(cycle(5))")
    assert s == GeneratorSpec("cone_over", (GeneratorSpec("cycle", (5,)),))
    assert str(s) == "cone_over(cycle(5))"
    assert str(parse_spec("octahedron")) == "octahedron"
    assert str(parse_spec("random_flag(9, 0.5, 3)")) == "random_flag(9, 0.5, 3)"
    for bad in ("1+", "cycle(x=3)", "cycle('a')"):
        with pytest.raises(ValueError):
            generate(bad)


@pytest.mark.parametrize("bad", ["cycle(3)", "wheel(3)", "nothing", "join(cycle(4))", "cycle(cycle(4))", "random_flag(5, 1.5, 0)", "cycle(4.0)"])
def test_rejects(bad):
    with pytest.raises(ValueError):
        generate(bad)


def test_wheel():
    W = generate("wheel(6)")
    assert (W.n_vertices, W.n_edges) == (7, 12)
    assert W.neighbors(0) == frozenset(range(1, 7))


def test_lattice_disk_two():
    X = generate("triangular_lattice_disk(2)")
    assert X.n_vertices == 19 and is_flag(X)
    assert oracles.h1_rank_and_torsion(X) == (0, [])
    assert diameter(X) == 4


def test_icosahedron_shape():
    X = generate("icosahedron")
    assert (X.n_vertices, X.n_edges, len(X.simplices(2))) == (12, 30, 20)
    assert all(X.degree(v) == 5 for v in X.vertices)
    assert oracles.h1_rank_and_torsion(X) == (0, [])


def test_annulus_and_join():
    A = generate("annulus(6)")
    assert (A.n_vertices, A.n_edges, len(A.simplices(2))) == (12, 24, 12)
    J = generate("join(cycle(4), path(2))")
    assert J.n_edges == 4 + 1 + 8
    C = generate("cone_over(cycle(5))")
    assert C.neighbors(0) == frozenset(range(1, 6))


@pytest.mark.parametrize("n", range(4, 10))
def test_cycle_and_wheel_properties(n):
    C = generate(f"cycle({n})")
    assert [c.vertices for c in enumerate_full_cycles(C, 3, n)] == [tuple(range(n))]
    W = generate(f"wheel({n})")
    rim = next(c for c in enumerate_full_cycles(W, n, n))
    assert set(rim.vertices) == set(range(1, n + 1))
    assert contained_in_one_ball(W, rim) == 0


def test_seeded_reproducible():
    assert generate("random_flag(9, 0.5, 7)") == generate("random_flag(9, 0.5, 7)")
    assert generate("random_flag(9, 0.5, 7)") != generate("random_flag(9, 0.5, 8)")
    rng = random.Random(0)
    expected = sorted((rng.randrange(k), k) for k in range(1, 6))
    assert list(generate("random_tree(6, 0)").edges()) == expected
    rng = random.Random(3)
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    assert list(generate("random_flag(5, 0.5, 3)").edges()) == [p for p in pairs if rng.random() < 0.5]


def test_every_family_is_flag():
    samples = ["cycle(5)", "path(3)", "star(3)", "wheel(5)", "point", "simplex(3)", "diamond", "octahedron",
               "icosahedron", "triangular_lattice_disk(2)", "annulus(4)", "join(path(2), cycle(4))",
               "cone_over(point)", "random_flag(7, 0.5, 1)", "random_tree(7, 1)"]
    assert {parse_spec(s).name for s in samples} == set(FAMILIES)
    assert all(is_flag(generate(s)) for s in samples)


def test_corpus_profiles():
    smoke = {str(s): e["location"] for s, e in corpus("smoke")}
    assert smoke == {"octahedron": "LOCATED", "cycle(6)": "LOCATED", "wheel(6)": "LOCATED",
                     "triangular_lattice_disk(3)": "NOT_LOCATED"}
    assert corpus("empty") == []
    full = corpus("full")
    assert len(full) > len(smoke) and {str(s) for s, _ in full} >= set(smoke)
    with pytest.raises(ValueError):
        corpus("huge")


@pytest.mark.parametrize("spec,e", corpus("full"))
def test_manifest_counts(spec, e):
    X = generate(spec)
    assert (X.n_vertices, X.n_edges, X.is_connected()) == (e["n_vertices"], e["n_edges"], e["connected"])
