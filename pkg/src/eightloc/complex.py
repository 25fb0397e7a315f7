"""Finite flag simplicial complexes stored as graphs.

A complex is its 1-skeleton plus, optionally, an explicit list of declared
maximal simplices. Without declared simplices the complex is the flag
completion of its graph: every clique spans a simplex. All metric notions
(distance, balls, spheres) use the hop metric of the 1-skeleton.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

__all__ = [
    "UNREACHABLE",
    "ComplexFormatError",
    "NotFlagError",
    "SimplicialComplex",
    "SubcomplexView",
    "from_edges",
    "is_flag",
    "require_flag",
    "span",
    "is_full",
    "link",
    "distance",
    "distances_from",
    "distance_matrix",
    "eccentricity",
    "diameter",
    "ball",
    "sphere",
    "loads",
    "dumps",
    "read_complex",
    "write_complex",
]

#: Value returned by :func:`distance` for vertices in different components.
UNREACHABLE = math.inf


class ComplexFormatError(ValueError):
    """Raised for malformed complex files or invalid construction data."""


class NotFlagError(ValueError):
    """Raised when a checker that presupposes flagness gets a non-flag complex."""


class SimplicialComplex:
    """Immutable simplicial complex on vertices ``0..n_vertices-1``.

    Parameters
    ----------
    n_vertices : int
        Number of vertices.
    edges : iterable of pairs
        Edges of the 1-skeleton. Duplicates are merged.
    declared_simplices : iterable of vertex collections, optional
        Maximal simplices. When omitted the complex is the flag completion
        of the graph. When given, every pair inside a declared simplex must
        already be an edge.
    """

    def __init__(
        self,
        n_vertices: int,
        edges: Iterable[Sequence[int]] = (),
        declared_simplices: Iterable[Iterable[int]] | None = None,
    ):
        if n_vertices < 0:
            raise ComplexFormatError("n_vertices must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n_vertices)]
        for e in edges:
            u, v = (int(x) for x in e)
            for x in (u, v):
                if not 0 <= x < n_vertices:
                    raise ComplexFormatError(f"edge endpoint {x} out of range 0..{n_vertices - 1}")
            if u == v:
                raise ComplexFormatError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n_vertices = n_vertices
        self._nbrs = tuple(frozenset(s) for s in nbrs)

        if declared_simplices is None:
            self.declared_simplices = None
        else:
            declared = set()
            for s in declared_simplices:
                verts = tuple(sorted(set(int(x) for x in s)))
                if not verts:
                    raise ComplexFormatError("empty declared simplex")
                for x in verts:
                    if not 0 <= x < n_vertices:
                        raise ComplexFormatError(f"simplex vertex {x} out of range")
                for a, b in combinations(verts, 2):
                    if b not in self._nbrs[a]:
                        raise ComplexFormatError(
                            f"declared simplex {list(verts)} uses non-edge ({a}, {b})"
                        )
                declared.add(verts)
            self.declared_simplices = tuple(sorted(declared))

    # -- graph access -----------------------------------------------------

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def adjacent(self, u: int, v: int) -> bool:
        """Strict adjacency: ``uv`` is an edge (never true for ``u == v``)."""
        return v in self._nbrs[u]

    def sim(self, u: int, v: int) -> bool:
        """``u == v`` or ``uv`` is an edge."""
        return u == v or v in self._nbrs[u]

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @cached_property
    def _edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n_vertices) for v in sorted(self._nbrs[u]) if u < v)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted pairs, in lexicographic order."""
        return self._edge_list

    @property
    def n_edges(self) -> int:
        return len(self._edge_list)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        g.add_edges_from(self._edge_list)
        return g

    # -- simplices --------------------------------------------------------

    @cached_property
    def _declared_faces(self) -> frozenset[tuple[int, ...]] | None:
        if self.declared_simplices is None:
            return None
        faces = set()
        for s in self.declared_simplices:
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        faces.update(self._edge_list)
        faces.update((v,) for v in range(self.n_vertices))
        return frozenset(faces)

    def is_simplex(self, vertices: Iterable[int]) -> bool:
        verts = tuple(sorted(set(vertices)))
        if not verts or not all(0 <= v < self.n_vertices for v in verts):
            return False
        if self._declared_faces is not None:
            return verts in self._declared_faces
        return all(b in self._nbrs[a] for a, b in combinations(verts, 2))

    def cliques(self, max_size: int | None = None) -> Iterator[tuple[int, ...]]:
        """Cliques of the 1-skeleton in order of size, each as a sorted tuple."""
        for c in nx.enumerate_all_cliques(self.to_networkx()):
            if max_size is not None and len(c) > max_size:
                return
            yield tuple(sorted(c))

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        """All simplices of dimension ``dim``, sorted lexicographically.

        Materialized lazily; exponential in general, cheap for ``dim <= 2``.
        """
        if dim < 0:
            return []
        if dim == 0:
            return [(v,) for v in range(self.n_vertices)]
        if dim == 1:
            return list(self._edge_list)
        if self._declared_faces is not None:
            return sorted(s for s in self._declared_faces if len(s) == dim + 1)
        out = []
        k = dim + 1

        def extend(clique: tuple[int, ...], cand: frozenset[int]):
            if len(clique) == k:
                out.append(clique)
                return
            for x in sorted(cand):
                extend(clique + (x,), cand & {y for y in self._nbrs[x] if y > x})

        for v in range(self.n_vertices):
            extend((v,), frozenset(y for y in self._nbrs[v] if y > v))
        return out

    def induced(self, vertices: Iterable[int]) -> tuple[SimplicialComplex, list[int]]:
        """Induced complex relabelled to ``0..k-1`` plus the label list."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[u], index[v]) for u in labels for v in self._nbrs[u] if v in index and u < v]
        declared = None
        if self.declared_simplices is not None:
            declared = [[index[v] for v in s if v in index] for s in self.declared_simplices]
            declared = [s for s in declared if s]
        return SimplicialComplex(len(labels), edges, declared), labels

    def components(self) -> list[list[int]]:
        seen = [False] * self.n_vertices
        comps = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self._nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and self._nbrs == other._nbrs
            and self.declared_simplices == other.declared_simplices
        )

    def __hash__(self):
        return hash((self.n_vertices, self._edge_list, self.declared_simplices))

    def __repr__(self):
        extra = "" if self.declared_simplices is None else f", declared={len(self.declared_simplices)}"
        return f"SimplicialComplex(n_vertices={self.n_vertices}, n_edges={self.n_edges}{extra})"


@dataclass(frozen=True)
class SubcomplexView:
    """Full subcomplex of ``parent`` spanned by ``vertex_set``."""

    parent: SimplicialComplex
    vertex_set: frozenset[int]

    def __post_init__(self):
        for v in self.vertex_set:
            if not 0 <= v < self.parent.n_vertices:
                raise ValueError(f"vertex {v} out of range")

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    def __iter__(self):
        return iter(sorted(self.vertex_set))

    def __len__(self):
        return len(self.vertex_set)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertex_set
        return [(u, v) for u in sorted(vs) for v in sorted(self.parent.neighbors(u) & vs) if u < v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.parent.neighbors(v) & self.vertex_set

    def as_complex(self) -> tuple[SimplicialComplex, list[int]]:
        return self.parent.induced(self.vertex_set)


def from_edges(n: int, edges: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Flag complex on the graph with ``n`` vertices and the given edges."""
    return SimplicialComplex(n, edges)


def is_flag(X: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton spans a simplex of ``X``."""
    if X.declared_simplices is None:
        return True
    for clique in nx.find_cliques(X.to_networkx()):
        if len(clique) >= 3 and not X.is_simplex(clique):
            return False
    return True


def require_flag(X: SimplicialComplex) -> None:
    if not is_flag(X):
        raise NotFlagError("complex is not flag")


def _check_vertices(X: SimplicialComplex, vertices: Iterable[int]) -> frozenset[int]:
    vs = frozenset(int(v) for v in vertices)
    for v in vs:
        if not 0 <= v < X.n_vertices:
            raise ValueError(f"vertex {v} out of range 0..{X.n_vertices - 1}")
    return vs


def span(X: SimplicialComplex, A: Iterable[int]) -> SubcomplexView:
    """Smallest full subcomplex containing ``A``, i.e. the induced subcomplex."""
    return SubcomplexView(X, _check_vertices(X, A))


def is_full(X: SimplicialComplex, obj) -> bool:
    """Fullness of a cycle, a vertex set, or a subcomplex given by simplices.

    * A :class:`~eightloc.loops.Cycle` (or any object with a ``vertices``
      sequence) is full iff the only edges among its vertices are the
      consecutive ones.
    * A set / frozenset of vertices is always full: it stands for its span.
    * Any other iterable is read as a list of simplices; the subcomplex is
      their downward closure, and it is full iff every simplex of ``X`` on
      its vertices is one of its faces.
    """
    cyc = getattr(obj, "vertices", None)
    if cyc is not None:
        vs = list(cyc)
        k = len(vs)
        if k < 3 or len(set(vs)) != k:
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if X.adjacent(vs[i], vs[j]) != consecutive:
                    return False
        # a 3-cycle is full only when its vertices do not span a triangle
        return k > 3 or not X.is_simplex(vs)
    if isinstance(obj, (set, frozenset)):
        _check_vertices(X, obj)
        return True
    faces = set()
    for s in obj:
        s = tuple(sorted(set(s)))
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    verts = sorted({v for f in faces for v in f})
    sub, labels = X.induced(verts)
    for k in range(2, len(verts) + 1):
        ks = sub.simplices(k - 1)
        if not ks:
            break
        for s in ks:
            if tuple(labels[i] for i in s) not in faces:
                return False
    return True


def link(X: SimplicialComplex, s: Iterable[int]) -> SubcomplexView:
    """Link of simplex ``s``: vertices outside ``s`` adjacent to all of ``s``.

    For flag complexes this spans exactly the simplices disjoint from ``s``
    that together with ``s`` span a simplex.
    """
    verts = tuple(sorted(set(s)))
    if not X.is_simplex(verts):
        raise ValueError(f"{list(verts)} is not a simplex")
    common = set(X.neighbors(verts[0]))
    for v in verts[1:]:
        common &= X.neighbors(v)
    if X.declared_simplices is not None:
        common = {v for v in common if X.is_simplex(verts + (v,))}
    return SubcomplexView(X, frozenset(common))


def distances_from(X: SimplicialComplex, source: int) -> list[int]:
    """BFS hop distances from ``source``; ``-1`` marks unreachable vertices."""
    dist = [-1] * X.n_vertices
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in X.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(X: SimplicialComplex, u: int, v: int) -> int | float:
    """Hop distance, or :data:`UNREACHABLE` across components."""
    d = distances_from(X, u)[v]
    return UNREACHABLE if d < 0 else d


def distance_matrix(X: SimplicialComplex) -> np.ndarray:
    """All-pairs hop distances by repeated BFS; ``-1`` marks unreachable."""
    D = np.empty((X.n_vertices, X.n_vertices), dtype=np.int64)
    for v in range(X.n_vertices):
        D[v] = distances_from(X, v)
    return D


def eccentricity(X: SimplicialComplex, v: int) -> int:
    """Largest distance from ``v`` within its component."""
    return max(distances_from(X, v))


def diameter(X: SimplicialComplex) -> int | float:
    if X.n_vertices == 0:
        return 0
    if not X.is_connected():
        return UNREACHABLE
    return max(eccentricity(X, v) for v in range(X.n_vertices))


def ball(X: SimplicialComplex, v: int, i: int) -> SubcomplexView:
    """Span of the vertices at distance at most ``i`` from ``v``."""
    if i < 0:
        raise ValueError("radius must be non-negative")
    d = distances_from(X, v)
    return SubcomplexView(X, frozenset(u for u, du in enumerate(d) if 0 <= du <= i))


def sphere(X: SimplicialComplex, v: int, i: int) -> SubcomplexView:
    """Span of the vertices at distance exactly ``i`` from ``v``."""
    if i < 0:
        raise ValueError("radius must be non-negative")
    d = distances_from(X, v)
    return SubcomplexView(X, frozenset(u for u, du in enumerate(d) if du == i))


# -- text format ----------------------------------------------------------


def loads(text: str) -> SimplicialComplex:
    """Parse the line-oriented complex format.

    ``complex <n>`` header, ``e u v`` edge lines, optional ``s v1 ... vk``
    declared maximal simplices, ``#`` comments and blank lines ignored.
    """
    n = None
    edges, simplices = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if n is None:
                if tok[0] != "complex" or len(tok) != 2:
                    raise ComplexFormatError(f"line {lineno}: expected 'complex <n>' header")
                n = int(tok[1])
            elif tok[0] == "e":
                if len(tok) != 3:
                    raise ComplexFormatError(f"line {lineno}: edge needs two endpoints")
                edges.append((int(tok[1]), int(tok[2])))
            elif tok[0] == "s":
                if len(tok) < 2:
                    raise ComplexFormatError(f"line {lineno}: empty simplex")
                simplices.append([int(t) for t in tok[1:]])
            else:
                raise ComplexFormatError(f"line {lineno}: unknown record {tok[0]!r}")
        except ValueError as exc:
            if isinstance(exc, ComplexFormatError):
                raise
            raise ComplexFormatError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ComplexFormatError("missing 'complex <n>' header")
    return SimplicialComplex(n, edges, simplices if simplices else None)


def dumps(X: SimplicialComplex) -> str:
    """Canonical serialization: edges and simplices sorted lexicographically."""
    lines = [f"complex {X.n_vertices}"]
    lines += [f"e {u} {v}" for u, v in X.edges()]
    if X.declared_simplices is not None:
        lines += ["s " + " ".join(map(str, s)) for s in X.declared_simplices]
    return "\n".join(lines) + "\n"


def read_complex(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_complex(X: SimplicialComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(X))
