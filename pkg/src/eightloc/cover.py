"""Radius-truncated universal covers grown one combinatorial sphere at a time.

Stage ``i`` holds a flag complex ``btilde`` whose vertices at layer ``<= j``
form the ``j``-ball around the base vertex ``0``, together with a map ``f``
to the input complex ``X``. Growing to stage ``i + 1``:

1. ``Z`` is the set of pairs ``(w, z)`` with ``w`` on the outer sphere and
   ``z`` a neighbour of ``f(w)`` in ``X`` not yet seen from ``w`` (not the
   image of any neighbour of ``w``).
2. Pairs with the same ``z`` whose ``w`` are adjacent are glued; the
   classes of the transitive closure become the new vertices, with
   ``f([w, z]) = z``.
3. ``w`` is joined to ``[w, z]``; two new vertices are joined when a single
   ``w`` carries both and their images are adjacent in ``X``. Higher
   simplices follow by flagness.

After every step the ball structure, SD'_{i}(0) on the cover, and the
local-isomorphism property of ``f`` are re-verified; any failure halts the
build with the offending configuration.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from itertools import combinations

from scipy.cluster.hierarchy import DisjointSet

from .complex import SimplicialComplex, distances_from, require_flag
from .conditions import LocationStatus, check_sd_prime, is_m_located

__all__ = [
    "CoverInvariantError",
    "CoverState",
    "CoveringReport",
    "init_cover",
    "frontier",
    "e_classes",
    "grow",
    "pentagon_check",
    "verify_covering",
    "build_cover",
    "is_isomorphism",
]

log = logging.getLogger(__name__)


class CoverInvariantError(RuntimeError):
    """A stage invariant failed; ``kind`` is one of P, Q, R, pentagon."""

    def __init__(self, kind: str, stage: int, detail):
        self.kind = kind
        self.stage = stage
        self.detail = detail
        super().__init__(f"{kind} violated at stage {stage}: {detail}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "stage": self.stage, "detail": self.detail}


@dataclass
class CoverState:
    X: SimplicialComplex
    base: int
    stage: int
    btilde: SimplicialComplex
    layer_of: list[int]
    f: list[int]
    provenance: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return self.btilde.n_vertices

    def sphere(self, j: int | None = None) -> list[int]:
        j = self.stage if j is None else j
        return [v for v, lay in enumerate(self.layer_of) if lay == j]

    def summary(self) -> dict:
        sizes = [0] * (self.stage + 1)
        for lay in self.layer_of:
            sizes[lay] += 1
        return {
            "base": self.base,
            "stage": self.stage,
            "n_vertices": self.btilde.n_vertices,
            "n_edges": self.btilde.n_edges,
            "sphere_sizes": sizes,
        }


def init_cover(X: SimplicialComplex, O: int) -> CoverState:
    """Stage 1: the 1-ball of ``O``, with ``O`` relabelled to cover vertex 0."""
    require_flag(X)
    if not X.is_connected():
        raise ValueError("cover construction needs a connected complex")
    if not 0 <= O < X.n_vertices:
        raise ValueError(f"base vertex {O} out of range")
    verts = [O] + sorted(X.neighbors(O))
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u in verts for v in X.neighbors(u) if v in index and index[u] < index[v]]
    return CoverState(
        X=X,
        base=O,
        stage=1,
        btilde=SimplicialComplex(len(verts), edges),
        layer_of=[0] + [1] * (len(verts) - 1),
        f=verts,
    )


def frontier(state: CoverState) -> list[tuple[int, int]]:
    """The pairs ``(w, z)`` of ``Z``, sorted."""
    X, B, f = state.X, state.btilde, state.f
    Z = []
    for w in state.sphere():
        seen = {f[x] for x in B.neighbors(w)}
        Z.extend((w, z) for z in sorted(X.neighbors(f[w]) - seen))
    return Z


def e_classes(state: CoverState, Z: list[tuple[int, int]] | None = None) -> list[list[tuple[int, int]]]:
    """Classes of the transitive closure of the gluing relation on ``Z``.

    Members are sorted; classes are ordered by their least member.
    """
    if Z is None:
        Z = frontier(state)
    members = set(Z)
    ds = DisjointSet(Z)
    B = state.btilde
    for w, z in Z:
        for x in B.neighbors(w):
            if x > w and (x, z) in members:
                ds.merge((w, z), (x, z))
    return sorted(sorted(s) for s in ds.subsets())


def _e_related(state: CoverState, a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[1] == b[1] and state.btilde.adjacent(a[0], b[0])


def pentagon_check(state: CoverState, w1: int, w2: int, w3: int, w4: int, z: int) -> int | None:
    """Given an e-chain ``(w1,z) ~ (w2,z) ~ (w3,z) ~ (w4,z)``, find the least
    ``x`` with ``(x, z)`` in ``Z`` and ``x`` equal or adjacent to both ``w1``
    and ``w4``. ``None`` means the shortcut is missing."""
    chain = [(w, z) for w in (w1, w2, w3, w4)]
    Zset = set(frontier(state))
    for a in chain:
        if a not in Zset:
            raise ValueError(f"{a} is not in Z")
    for a, b in zip(chain, chain[1:]):
        if a != b and not _e_related(state, a, b):
            raise ValueError(f"{a} and {b} are not e-related")
    return _common_member(state, Zset, z, w1, w4)


def _common_member(state: CoverState, Zset, z: int, u: int, w: int) -> int | None:
    B = state.btilde
    for x, zz in sorted(Zset):
        if zz == z and B.sim(x, u) and B.sim(x, w):
            return x
    return None


EDGE_RULES = ("literal", "closure")


def grow(state: CoverState, check: bool = True, edge_rule: str = "literal") -> CoverState:
    """Build stage ``i + 1`` from stage ``i``; verify it unless ``check`` is False.

    ``edge_rule="literal"`` joins two new vertices only through a common
    ``w``. ``"closure"`` additionally joins new vertices ``a, b`` whenever
    some vertex adjacent to both has ``f(a) ~ f(b)``, repeated to a fixed
    point; any covering extending the stage must contain those edges.
    """
    if edge_rule not in EDGE_RULES:
        raise ValueError(f"unknown edge rule {edge_rule!r}")
    X, B, f = state.X, state.btilde, state.f
    Z = frontier(state)
    classes = e_classes(state, Z)
    if check:
        _check_pentagons(state, Z, classes)

    n_old = B.n_vertices
    class_of = {}
    for k, cls in enumerate(classes):
        for pair in cls:
            class_of[pair] = n_old + k
    edges = list(B.edges())
    by_w: dict[int, list[tuple[int, int]]] = {}
    for w, z in Z:
        edges.append((w, class_of[(w, z)]))
        by_w.setdefault(w, []).append((w, z))
    new_edges = set()
    for w, pairs in by_w.items():
        for (_, z1), (_, z2) in combinations(pairs, 2):
            if X.adjacent(z1, z2):
                a, b = sorted((class_of[(w, z1)], class_of[(w, z2)]))
                new_edges.add((a, b))
    if edge_rule == "closure":
        new_edges |= _forced_edges(X, edges, new_edges, f + [cls[0][1] for cls in classes], n_old)
    edges.extend(sorted(new_edges))

    provenance = dict(state.provenance)
    for k, cls in enumerate(classes):
        provenance[n_old + k] = [tuple(p) for p in cls]
    new = CoverState(
        X=X,
        base=state.base,
        stage=state.stage + 1,
        btilde=SimplicialComplex(n_old + len(classes), edges),
        layer_of=state.layer_of + [state.stage + 1] * len(classes),
        f=f + [cls[0][1] for cls in classes],
        provenance=provenance,
    )
    log.debug("stage %d: |Z|=%d, %d new vertices", new.stage, len(Z), len(classes))
    if check:
        check_stage(new)
    return new


def _forced_edges(X, edges, new_edges, f, n_old) -> set[tuple[int, int]]:
    nbrs: dict[int, set[int]] = {}
    for a, b in list(edges) + list(new_edges):
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    added: set[tuple[int, int]] = set()
    changed = True
    while changed:
        changed = False
        for c in sorted(nbrs):
            fresh = sorted(x for x in nbrs[c] if x >= n_old)
            for a, b in combinations(fresh, 2):
                if b not in nbrs[a] and X.adjacent(f[a], f[b]):
                    nbrs[a].add(b)
                    nbrs[b].add(a)
                    added.add((a, b))
                    changed = True
    return added


def _check_pentagons(state, Z, classes):
    Zset = set(Z)
    for cls in classes:
        if len(cls) < 3:
            continue
        z = cls[0][1]
        for (u, _), (w, _) in combinations(cls, 2):
            if _common_member(state, Zset, z, u, w) is None:
                raise CoverInvariantError(
                    "pentagon", state.stage, {"z": z, "members": [u, w], "class": [list(p) for p in cls]}
                )


def check_stage(state: CoverState) -> None:
    """Raise :class:`CoverInvariantError` unless P, Q and R hold at this stage."""
    B, i = state.btilde, state.stage
    dist = distances_from(B, 0)
    bad = [v for v in range(B.n_vertices) if dist[v] != state.layer_of[v]]
    if bad:
        raise CoverInvariantError(
            "P", i, {"vertices": bad, "layer": [state.layer_of[v] for v in bad], "distance": [dist[v] for v in bad]}
        )
    if i >= 2:
        rep = check_sd_prime(B, 0, i - 1)
        if not rep.ok:
            raise CoverInvariantError("Q", i, [fl.to_dict() for fl in rep.failures])
    violations = _ball_violations(state, range(B.n_vertices), interior_layer=i - 1)
    if violations:
        raise CoverInvariantError("R", i, violations)


def _ball_violations(state: CoverState, vertices, interior_layer: int) -> list[dict]:
    """Local-isomorphism defects of ``f`` on closed 1-balls.

    Every ball must map injectively with adjacency preserved and reflected;
    balls of vertices at layer ``<= interior_layer`` must in addition map
    onto the full 1-ball of the image.
    """
    X, B, f = state.X, state.btilde, state.f
    out = []
    for w in vertices:
        ball = [w] + sorted(B.neighbors(w))
        images = [f[x] for x in ball]
        if len(set(images)) != len(images):
            out.append({"vertex": w, "kind": "not_injective"})
            continue
        for a, b in combinations(ball, 2):
            if B.adjacent(a, b) != X.adjacent(f[a], f[b]):
                out.append({"vertex": w, "kind": "adjacency", "pair": [a, b]})
                break
        if state.layer_of[w] <= interior_layer:
            target = X.neighbors(f[w]) | {f[w]}
            if set(images) != target:
                missing = sorted(target - set(images))
                out.append({"vertex": w, "kind": "image_mismatch", "missing": missing})
    return out


@dataclass
class CoveringReport:
    ok: bool
    n_interior: int
    violations: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "interior_vertices": self.n_interior, "violations": self.violations}


def verify_covering(state: CoverState, X: SimplicialComplex | None = None) -> CoveringReport:
    """Check ``f`` is simplicial and a 1-ball isomorphism at interior vertices.

    Interior means layer ``<= stage - 1``; the outermost sphere has
    truncated links by construction.
    """
    if X is not None and X is not state.X:
        state = CoverState(X, state.base, state.stage, state.btilde, state.layer_of, state.f, state.provenance)
    X, B, f = state.X, state.btilde, state.f
    violations = []
    for a, b in B.edges():
        if not X.sim(f[a], f[b]):
            violations.append({"edge": [a, b], "kind": "not_simplicial"})
    interior = [w for w in range(B.n_vertices) if state.layer_of[w] <= state.stage - 1]
    violations += _ball_violations(state, interior, interior_layer=state.stage - 1)
    return CoveringReport(not violations, len(interior), violations)


def build_cover(
    X: SimplicialComplex,
    O: int,
    R: int,
    check: bool = True,
    check_location: bool = True,
    on_stage=None,
    edge_rule: str = "literal",
) -> CoverState:
    """Grow the cover to stage ``R``.

    When ``check_location`` is set and ``X`` is not verified 8-located a
    warning is issued and the build relies on the runtime invariants.
    ``on_stage`` is called with every intermediate state. ``edge_rule`` is
    passed to :func:`grow`.
    """
    if R < 1:
        raise ValueError("radius must be at least 1")
    state = init_cover(X, O)
    if check_location:
        verdict = is_m_located(X, 8)
        if verdict.status is not LocationStatus.LOCATED:
            warnings.warn(f"input is {verdict.status.value}, not verified 8-located", stacklevel=2)
    if check:
        check_stage(state)
    if on_stage is not None:
        on_stage(state)
    while state.stage < R:
        state = grow(state, check=check, edge_rule=edge_rule)
        if on_stage is not None:
            on_stage(state)
    return state


def is_isomorphism(state: CoverState) -> bool:
    """``f`` is a bijection onto the vertices of ``X`` matching edges exactly."""
    X, B, f = state.X, state.btilde, state.f
    if sorted(f) != list(range(X.n_vertices)):
        return False
    mapped = sorted(tuple(sorted((f[a], f[b]))) for a, b in B.edges())
    return mapped == list(X.edges())
