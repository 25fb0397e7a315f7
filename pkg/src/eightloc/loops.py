"""Full cycles, 1-ball containment and a semi-decision for null-homotopy.

Loops are handled as closed edge walks ``(v0, ..., v_{L-1})`` with
``v_{L-1} ~ v0``; a walk of a single vertex is the constant loop.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .complex import SimplicialComplex, is_full
from .homology import check_witness, homology_witness

__all__ = [
    "Cycle",
    "HomotopyStatus",
    "HomotopyVerdict",
    "enumerate_full_cycles",
    "contained_in_one_ball",
    "is_wheel",
    "null_homotopy_status",
    "apply_move",
    "replay_moves",
    "verify_verdict",
    "canonical_walk",
    "DEFAULT_BUDGET",
    "DEFAULT_SLACK",
    "MAX_LOOP_LENGTH",
]

DEFAULT_BUDGET = 10_000
DEFAULT_SLACK = 4
MAX_LOOP_LENGTH = 12


def canonical_walk(walk: Sequence[int]) -> tuple[int, ...]:
    """Least tuple among all rotations and reversals of a cyclic sequence."""
    w = tuple(walk)
    k = len(w)
    if k <= 1:
        return w
    r = tuple(reversed(w))
    return min(min(s[i:] + s[:i] for i in range(k)) for s in (w, r))


@dataclass(frozen=True, order=True)
class Cycle:
    """Cycle of distinct vertices, stored in canonical form.

    Build with :meth:`from_sequence`; the constructor assumes the tuple is
    already canonical.
    """

    vertices: tuple[int, ...]

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> Cycle:
        vs = tuple(int(v) for v in seq)
        if len(vs) < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise ValueError(f"cycle vertices must be distinct: {vs}")
        return cls(canonical_walk(vs))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_cycle_of(self, X: SimplicialComplex) -> bool:
        return all(X.adjacent(a, b) for a, b in self.edges())

    def to_list(self) -> list[int]:
        return list(self.vertices)


class HomotopyStatus(str, enum.Enum):
    TRIVIAL = "TRIVIAL"
    NONTRIVIAL = "NONTRIVIAL"
    UNKNOWN = "UNKNOWN"


@dataclass
class HomotopyVerdict:
    """Tri-state null-homotopy answer with a replayable certificate.

    ``certificate`` holds ``{"moves": [...]}`` for TRIVIAL,
    ``{"homology": {...}}`` for NONTRIVIAL and ``{"expanded": n}`` for
    UNKNOWN (the budget that ran out).
    """

    status: HomotopyStatus
    loop: tuple[int, ...]
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status.value, "loop": list(self.loop), "certificate": self.certificate}


# -- enumeration ----------------------------------------------------------


def enumerate_full_cycles(X: SimplicialComplex, min_len: int = 3, max_len: int = 8) -> Iterator[Cycle]:
    """Yield every full cycle with ``min_len <= length <= max_len`` once.

    Each cycle is grown from its least vertex ``s`` as an induced path whose
    second vertex is smaller than its last; order is deterministic (by
    ``s``, then lexicographic DFS).
    """
    if not 3 <= min_len <= max_len:
        raise ValueError("need 3 <= min_len <= max_len")
    nbrs = [sorted(X.neighbors(v)) for v in range(X.n_vertices)]

    for s in range(X.n_vertices):
        out: list[Cycle] = []

        def dfs(path: list[int], onpath: set[int]):
            last = path[-1]
            inner = path[1:-1]
            for x in nbrs[last]:
                if x <= s or x in onpath:
                    continue
                if any(X.adjacent(x, p) for p in inner):
                    continue
                if X.adjacent(x, s):
                    k = len(path) + 1
                    if path[1] < x and min_len <= k <= max_len:
                        if k > 3 or not X.is_simplex((s, path[1], x)):
                            out.append(Cycle(tuple(path) + (x,)))
                    continue
                if len(path) + 1 < max_len:
                    path.append(x)
                    onpath.add(x)
                    dfs(path, onpath)
                    path.pop()
                    onpath.discard(x)

        for v1 in nbrs[s]:
            if v1 > s:
                dfs([s, v1], {s, v1})
        yield from out


def contained_in_one_ball(X: SimplicialComplex, gamma: Cycle | Sequence[int]) -> int | None:
    """Least vertex ``c`` whose closed neighbourhood contains every loop vertex."""
    vs = gamma.vertices if isinstance(gamma, Cycle) else tuple(gamma)
    common = None
    for v in vs:
        closed = X.neighbors(v) | {v}
        common = closed if common is None else common & closed
        if not common:
            return None
    return min(common) if common else None


def is_wheel(X: SimplicialComplex, hub: int, gamma: Cycle) -> bool:
    """``gamma`` is full, ``hub`` is off it and adjacent to all its vertices."""
    if hub in gamma.vertices:
        return False
    if not gamma.is_cycle_of(X) or not is_full(X, gamma):
        return False
    return all(X.adjacent(hub, v) for v in gamma.vertices)


# -- null-homotopy search -------------------------------------------------


def _triangle(X: SimplicialComplex, a: int, b: int, c: int) -> bool:
    return len({a, b, c}) == 3 and X.is_simplex((a, b, c))


def apply_move(X: SimplicialComplex, walk: Sequence[int], move: dict) -> tuple[int, ...]:
    """Apply one elementary move to a closed walk, validating it against ``X``.

    Moves (``at`` is an index into the walk):

    * ``cancel``: remove a backtrack ``a b a`` centred at ``at``.
    * ``shortcut``: drop vertex ``at`` when it and its two neighbours span a
      triangle.
    * ``expand``: insert ``vertex`` after ``at`` so that the edge is pushed
      across a triangle.
    * ``spur``: insert the backtrack ``vertex, walk[at]`` after ``at``.
    """
    w = tuple(walk)
    L = len(w)
    op, i = move["op"], move["at"]
    if not 0 <= i < L or L < 2 and op != "spur":
        raise ValueError(f"move {move} out of range for walk of length {L}")
    if op == "cancel":
        if w[i - 1] != w[(i + 1) % L]:
            raise ValueError(f"no backtrack at {i}")
        if L == 2:
            return (w[1 - i],)
        drop = {i, (i + 1) % L}
        return tuple(w[j] for j in range(L) if j not in drop)
    if op == "shortcut":
        a, b, c = w[i - 1], w[i], w[(i + 1) % L]
        if L < 3 or not _triangle(X, a, b, c):
            raise ValueError(f"no triangle at {i}")
        return w[:i] + w[i + 1 :]
    if op == "expand":
        x = move["vertex"]
        if L < 2 or not _triangle(X, w[i], x, w[(i + 1) % L]):
            raise ValueError(f"cannot push edge {i} across {x}")
        return w[: i + 1] + (x,) + w[i + 1 :]
    if op == "spur":
        x = move["vertex"]
        if not X.adjacent(w[i], x):
            raise ValueError(f"{x} is not adjacent to {w[i]}")
        return w[: i + 1] + (x, w[i]) + w[i + 1 :]
    raise ValueError(f"unknown move {op!r}")


def replay_moves(X: SimplicialComplex, walk: Sequence[int], moves: Iterable[dict]) -> tuple[int, ...]:
    w = tuple(walk)
    for m in moves:
        w = apply_move(X, w, m)
    return w


def _successors(X: SimplicialComplex, w: tuple[int, ...], cap: int):
    L = len(w)
    for i in range(L):
        if w[i - 1] == w[(i + 1) % L]:
            yield {"op": "cancel", "at": i}
    if L >= 3:
        for i in range(L):
            if _triangle(X, w[i - 1], w[i], w[(i + 1) % L]):
                yield {"op": "shortcut", "at": i}
    if L + 1 <= cap:
        for i in range(L):
            a, b = w[i], w[(i + 1) % L]
            for x in sorted(X.neighbors(a) & X.neighbors(b)):
                if _triangle(X, a, x, b):
                    yield {"op": "expand", "at": i, "vertex": x}
    if L + 2 <= cap:
        for i in range(L):
            for x in sorted(X.neighbors(w[i])):
                yield {"op": "spur", "at": i, "vertex": x}


def _search_filling(X: SimplicialComplex, start: tuple[int, ...], budget: int, cap: int):
    """Best-first search (shortest walk first) for a move script to a point."""
    parent: dict[tuple[int, ...], tuple[tuple[int, ...] | None, dict | None]] = {}
    key0 = canonical_walk(start)
    parent[key0] = (None, None)
    rep = {key0: start}
    heap = [(len(start), 0, key0)]
    counter = 1
    expanded = 0
    while heap and expanded < budget:
        _, _, key = heapq.heappop(heap)
        w = rep[key]
        expanded += 1
        for move in _successors(X, w, cap):
            nxt = apply_move(X, w, move)
            k = canonical_walk(nxt)
            if k in parent:
                continue
            parent[k] = (key, move)
            rep[k] = nxt
            if len(nxt) == 1:
                moves = []
                cur = k
                while parent[cur][0] is not None:
                    prev, mv = parent[cur]
                    moves.append(mv)
                    cur = prev
                return moves[::-1], expanded
            heapq.heappush(heap, (len(nxt), counter, k))
            counter += 1
    return None, expanded


def null_homotopy_status(
    X: SimplicialComplex,
    gamma: Cycle | Sequence[int],
    budget: int = DEFAULT_BUDGET,
    slack: int = DEFAULT_SLACK,
) -> HomotopyVerdict:
    """Semi-decide whether a closed walk bounds a disc.

    Returns NONTRIVIAL when the loop's integer homology class is nonzero,
    TRIVIAL with a move script when a bounded best-first search over
    elementary moves (walk length capped at ``len(gamma) + slack``) reaches
    a constant loop, and UNKNOWN when ``budget`` expansions run out.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    walk = gamma.vertices if isinstance(gamma, Cycle) else tuple(int(v) for v in gamma)
    if len(walk) > MAX_LOOP_LENGTH:
        raise ValueError(f"loops longer than {MAX_LOOP_LENGTH} are not supported")
    L = len(walk)
    for i in range(L if L > 1 else 0):
        if not X.adjacent(walk[i], walk[(i + 1) % L]):
            raise ValueError(f"{walk} is not a closed edge walk")
    if L <= 1:
        return HomotopyVerdict(HomotopyStatus.TRIVIAL, walk, {"moves": []})
    witness = homology_witness(X, walk)
    if witness is not None:
        return HomotopyVerdict(HomotopyStatus.NONTRIVIAL, walk, {"homology": witness})
    moves, expanded = _search_filling(X, walk, budget, L + slack)
    if moves is not None:
        return HomotopyVerdict(HomotopyStatus.TRIVIAL, walk, {"moves": moves, "expanded": expanded})
    return HomotopyVerdict(HomotopyStatus.UNKNOWN, walk, {"expanded": expanded})


def verify_verdict(X: SimplicialComplex, verdict: HomotopyVerdict) -> bool:
    """Replay a verdict's certificate independently of the search."""
    if verdict.status is HomotopyStatus.TRIVIAL:
        try:
            end = replay_moves(X, verdict.loop, verdict.certificate["moves"])
        except ValueError:
            return False
        return len(end) == 1
    if verdict.status is HomotopyStatus.NONTRIVIAL:
        return check_witness(X, verdict.loop, verdict.certificate["homology"])
    return True
