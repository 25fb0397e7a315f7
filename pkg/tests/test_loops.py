import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from eightloc.generators import corpus, generate
from eightloc.loops import (
    Cycle,
    HomotopyStatus,
    apply_move,
    canonical_walk,
    contained_in_one_ball,
    enumerate_full_cycles,
    is_wheel,
    null_homotopy_status,
    replay_moves,
    verify_verdict,
)

OCT = generate("octahedron")
W6 = generate("wheel(6)")
C6 = generate("cycle(6)")


def cycles(X, lo=3, hi=8):
    return sorted(c.vertices for c in enumerate_full_cycles(X, lo, hi))


def test_canonical_form():
    assert canonical_walk((3, 1, 2)) == (1, 2, 3)
    assert canonical_walk((2, 5, 1, 4)) == (1, 4, 2, 5)
    assert Cycle.from_sequence((4, 3, 2, 1)) == Cycle.from_sequence((1, 2, 3, 4))
    with pytest.raises(ValueError):
        Cycle.from_sequence((1, 2, 1))


def test_octahedron_equators():
    assert cycles(OCT, 4, 8) == [(0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5)]


def test_simplex_and_single_cycle():
    assert cycles(generate("simplex(2)")) == []
    assert cycles(C6) == [(0, 1, 2, 3, 4, 5)]


def test_one_ball():
    assert contained_in_one_ball(OCT, Cycle.from_sequence((1, 2, 4, 5))) == 0
    assert contained_in_one_ball(W6, Cycle.from_sequence(range(1, 7))) == 0
    assert contained_in_one_ball(C6, Cycle.from_sequence(range(6))) is None
    # centre on the loop is allowed
    assert contained_in_one_ball(generate("wheel(4)"), (0, 1, 2)) == 0


def test_is_wheel():
    assert is_wheel(W6, 0, Cycle.from_sequence(range(1, 7)))
    assert is_wheel(OCT, 0, Cycle.from_sequence((1, 2, 4, 5)))
    assert not is_wheel(OCT, 1, Cycle.from_sequence((0, 1, 3, 4)))


def test_rim_of_wheel_is_trivial():
    v = null_homotopy_status(W6, Cycle.from_sequence(range(1, 7)))
    assert v.status is HomotopyStatus.TRIVIAL
    assert verify_verdict(W6, v)
    assert oracles.replay_filling(W6, v.loop, v.certificate["moves"])


def test_hexagon_is_nontrivial():
    v = null_homotopy_status(C6, Cycle.from_sequence(range(6)))
    assert v.status is HomotopyStatus.NONTRIVIAL
    assert verify_verdict(C6, v)
    assert v.certificate["homology"]["modulus"] == 0


@pytest.mark.parametrize("spec", ["octahedron", "wheel(5)", "triangular_lattice_disk(2)", "icosahedron", "cone_over(cycle(6))", "join(cycle(4), cycle(4))"])
def test_four_cycles_in_simply_connected_complexes_are_trivial(spec):
    X = generate(spec)
    assert oracles.h1_rank_and_torsion(X) == (0, [])
    for c in enumerate_full_cycles(X, 4, 4):
        v = null_homotopy_status(X, c, budget=500)
        assert v.status is HomotopyStatus.TRIVIAL
        assert oracles.replay_filling(X, v.loop, v.certificate["moves"])


def test_budget_monotone_and_consistent():
    X = generate("triangular_lattice_disk(2)")
    loop = (0, 1, 8, 9, 11, 13, 15, 6)
    seen = set()
    trivial_from = None
    for b in (1, 5, 20, 100, 1000, 10000):
        s = null_homotopy_status(X, loop, budget=b).status
        seen.add(s)
        if s is HomotopyStatus.TRIVIAL and trivial_from is None:
            trivial_from = b
        if trivial_from is not None:
            assert s is HomotopyStatus.TRIVIAL
    assert HomotopyStatus.NONTRIVIAL not in seen
    assert trivial_from is not None


def test_unknown_when_budget_tiny():
    X = generate("triangular_lattice_disk(2)")
    v = null_homotopy_status(X, (0, 1, 8, 9, 11, 13, 15, 6), budget=1)
    assert v.status is HomotopyStatus.UNKNOWN
    assert verify_verdict(X, v)


def test_moves_validate():
    with pytest.raises(ValueError):
        apply_move(C6, (0, 1, 2, 3, 4, 5), {"op": "shortcut", "at": 1})
    assert replay_moves(W6, (0, 1), [{"op": "cancel", "at": 0}]) == (1,)
    assert apply_move(W6, (1, 2, 0), {"op": "shortcut", "at": 1}) == (1, 0)
    with pytest.raises(ValueError):
        null_homotopy_status(C6, (0, 2, 4))


def test_forged_certificate_rejected():
    v = null_homotopy_status(C6, Cycle.from_sequence(range(6)))
    forged = type(v)(HomotopyStatus.TRIVIAL, v.loop, {"moves": [{"op": "shortcut", "at": 1}]})
    assert not verify_verdict(C6, forged)


@pytest.mark.parametrize("spec,e", [(s, e) for s, e in corpus("full") if e["n_vertices"] <= 10])
def test_enumeration_matches_brute_force_on_corpus(spec, e):
    X = generate(spec)
    assert set(cycles(X)) == oracles.brute_full_cycles(X, 3, 8)
    assert len(cycles(X)) == e["full_cycles_le_8"]


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 10), st.floats(0.2, 0.7), st.integers(0, 10**6))
def test_enumeration_matches_brute_force_random(n, p, seed):
    X = generate(f"random_flag({n}, {p!r}, {seed})")
    assert set(cycles(X, 3, n)) == oracles.brute_full_cycles(X, 3, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10**6))
def test_certificates_replay(n, seed):
    X = generate(f"random_flag({n}, 0.5, {seed})")
    for c in enumerate_full_cycles(X, 4, 6):
        v = null_homotopy_status(X, c, budget=300)
        assert verify_verdict(X, v)
        if v.status is HomotopyStatus.TRIVIAL:
            assert oracles.replay_filling(X, v.loop, v.certificate["moves"])
        if contained_in_one_ball(X, c) is not None:
            assert v.status is HomotopyStatus.TRIVIAL
