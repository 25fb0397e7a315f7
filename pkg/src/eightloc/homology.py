"""Integer first homology of small complexes, used to certify essential loops.

The boundary map from triangles to edges is brought into Smith normal form
``P @ B @ Q = D`` with unimodular ``P`` and ``Q``. An edge cycle ``z`` is a
boundary over the integers iff ``(P z)_k`` is divisible by ``d_k`` for every
row ``k`` (with ``d_k = 0`` past the rank). A row where this fails is an
integer functional on edges that vanishes on all boundaries modulo ``d_k``
and pairs nontrivially with ``z``: a replayable witness that the loop is
not null-homotopic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .complex import SimplicialComplex

__all__ = [
    "smith_normal_form",
    "BoundaryData",
    "boundary_data",
    "loop_chain",
    "homology_witness",
    "check_witness",
]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(D, P, Q)`` as lists of lists with ``P @ A @ Q == D``, ``P`` and
    ``Q`` unimodular, ``D`` diagonal with non-negative entries each dividing
    the next.
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            Md, Ms = M[dst], M[src]
            for k in range(n):
                if Ms[k]:
                    Md[k] += c * Ms[k]
            Pd, Ps = P[dst], P[src]
            for k in range(m):
                if Ps[k]:
                    Pd[k] += c * Ps[k]

    def add_col(dst, src, c):
        if c:
            for row in M:
                if row[src]:
                    row[dst] += c * row[src]
            for row in Q:
                if row[src]:
                    row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                Mi = M[i]
                for j in range(t, n):
                    if Mi[j] and (best is None or abs(Mi[j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return M, P, Q
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // piv))
                    dirty = dirty or M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // piv))
                    dirty = dirty or M[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(M[i][j] % piv for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            P[t] = [-x for x in P[t]]
    return M, P, Q


@dataclass
class BoundaryData:
    """Triangle-to-edge boundary of one connected component, in Smith form."""

    edges: list[tuple[int, int]]
    edge_index: dict[tuple[int, int], int]
    triangles: list[tuple[int, int, int]]
    diagonal: list[int]  # d_k for every edge row; 0 past the rank
    P: list[list[int]]


def boundary_data(X: SimplicialComplex, component: Sequence[int]) -> BoundaryData:
    """Smith form of the boundary matrix restricted to ``component``.

    Cached on ``X`` per component; ``X`` is immutable.
    """
    key = min(component)
    cache = X.__dict__.setdefault("_boundary_cache", {})
    if key in cache:
        return cache[key]
    comp = set(component)
    edges = [e for e in X.edges() if e[0] in comp]
    edge_index = {e: i for i, e in enumerate(edges)}
    tris = []
    for u, v in edges:
        for w in sorted(X.neighbors(u) & X.neighbors(v)):
            if w > v and X.is_simplex((u, v, w)):
                tris.append((u, v, w))
    B = [[0] * len(tris) for _ in edges]
    for j, (a, b, c) in enumerate(tris):
        B[edge_index[(b, c)]][j] += 1
        B[edge_index[(a, c)]][j] -= 1
        B[edge_index[(a, b)]][j] += 1
    if tris:
        D, P, _ = smith_normal_form(B)
        diag = [D[k][k] if k < len(tris) else 0 for k in range(len(edges))]
    else:
        P = [[int(i == j) for j in range(len(edges))] for i in range(len(edges))]
        diag = [0] * len(edges)
    data = BoundaryData(edges, edge_index, tris, diag, P)
    cache[key] = data
    return data


def loop_chain(walk: Sequence[int]) -> dict[tuple[int, int], int]:
    """Edge 1-chain of a closed walk, keyed by sorted edge."""
    chain: dict[tuple[int, int], int] = {}
    k = len(walk)
    for i in range(k):
        a, b = walk[i], walk[(i + 1) % k]
        if a == b:
            continue
        e, s = ((a, b), 1) if a < b else ((b, a), -1)
        chain[e] = chain.get(e, 0) + s
    return {e: c for e, c in chain.items() if c}


def homology_witness(X: SimplicialComplex, walk: Sequence[int]) -> dict | None:
    """Functional proving the closed walk is not a boundary, or ``None``.

    The witness is ``{"functional": [[u, v, coeff], ...], "modulus": d}``;
    ``modulus == 0`` means the pairing is nonzero over the integers.
    """
    if len(walk) < 3:
        return None
    comp = next(c for c in X.components() if walk[0] in c)
    data = boundary_data(X, comp)
    z = [0] * len(data.edges)
    for e, c in loop_chain(walk).items():
        z[data.edge_index[e]] += c
    for k, d in enumerate(data.diagonal):
        if d == 1:
            continue
        row = data.P[k]
        val = sum(r * x for r, x in zip(row, z) if r and x)
        if (d == 0 and val != 0) or (d > 1 and val % d):
            functional = [[u, v, c] for (u, v), c in zip(data.edges, row) if c]
            return {"functional": functional, "modulus": d}
    return None


def check_witness(X: SimplicialComplex, walk: Sequence[int], witness: dict) -> bool:
    """Independently re-verify a homology witness against ``X``.

    Checks that the functional vanishes on every triangle boundary (modulo
    the modulus) and pairs nontrivially with the loop.
    """
    d = witness["modulus"]
    phi = {(u, v): c for u, v, c in witness["functional"]}

    def reduce(x):
        return x % d if d else x

    comp = next(c for c in X.components() if walk[0] in c)
    compset = set(comp)
    for u, v, w in combinations(sorted(compset), 3):
        if X.adjacent(u, v) and X.adjacent(v, w) and X.adjacent(u, w) and X.is_simplex((u, v, w)):
            if reduce(phi.get((v, w), 0) - phi.get((u, w), 0) + phi.get((u, v), 0)):
                return False
    pairing = sum(phi.get(e, 0) * c for e, c in loop_chain(walk).items())
    return reduce(pairing) != 0
