"""Deterministic families of flag complexes used as fixtures.

Specs are written as call expressions, e.g. ``cycle(6)``,
``cone_over(triangular_lattice_disk(2))`` or ``random_flag(9, 0.5, 3)``.

Vertex numbering per family:

* ``cycle(n)``: ``i ~ i+1 mod n``.
* ``path(n)``: ``i ~ i+1``.
* ``star(n)``: centre ``0``, leaves ``1..n``.
* ``wheel(n)``: hub ``0``, rim ``1..n`` in cyclic order.
* ``octahedron``: antipode of ``i`` is ``(i + 3) % 6``.
* ``icosahedron``: top ``0``, upper ring ``1..5``, lower ring ``6..10``,
  bottom ``11``; upper ``1+k`` meets lower ``6+k`` and ``6+(k-1)%5``.
* ``triangular_lattice_disk(r)``: lattice points in axial coordinates with
  hexagonal norm ``<= r``, sorted by (norm, q, s); the centre is ``0``.
* ``annulus(k)``: triangulated band, inner ring ``0..k-1``, outer ring
  ``k..2k-1``; inner ``i`` meets outer ``k+i`` and ``k+(i+1)%k``.
* ``diamond``: two triangles ``012`` and ``123`` glued along ``12``.
* ``join(A, B)``: ``A`` first, then ``B`` shifted by ``|A|``; every
  ``A``-vertex meets every ``B``-vertex. ``cone_over(A)`` is
  ``join(point, A)`` so the apex is ``0``.
* ``random_flag(n, p, seed)``: pairs ``i < j`` in lexicographic order, each
  kept when ``random.Random(seed).random() < p`` (Mersenne Twister, the
  Python ``random`` module's documented generator).
* ``random_tree(n, seed)``: vertex ``k >= 1`` attaches to
  ``random.Random(seed).randrange(k)``.
"""

from __future__ import annotations

import ast
import json
import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from .complex import SimplicialComplex

__all__ = ["GeneratorSpec", "parse_spec", "generate", "corpus", "FAMILIES"]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    params: tuple = ()

    def __str__(self) -> str:
        if not self.params and self.name in _NULLARY:
            return self.name
        return f"{self.name}({', '.join(_fmt(p) for p in self.params)})"


def _fmt(p) -> str:
    return str(p) if isinstance(p, GeneratorSpec) else repr(p)


def parse_spec(text: str | GeneratorSpec) -> GeneratorSpec:
    """Parse ``name`` or ``name(arg, ...)``; nested specs are allowed."""
    if isinstance(text, GeneratorSpec):
        return text
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse generator spec {text!r}") from exc
    return _from_ast(node, text)


def _from_ast(node, text) -> GeneratorSpec:
    if isinstance(node, ast.Name):
        return GeneratorSpec(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        args = []
        for a in node.args:
            if isinstance(a, ast.Constant) and isinstance(a.value, (int, float)):
                args.append(a.value)
            else:
                args.append(_from_ast(a, text))
        return GeneratorSpec(node.func.id, tuple(args))
    raise ValueError(f"cannot parse generator spec {text!r}")


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _int(p, name) -> int:
    _need(isinstance(p, int) and not isinstance(p, bool), f"{name} must be an integer")
    return p


def cycle(n: int) -> SimplicialComplex:
    # cycle(3) would be a filled triangle under flag completion
    _need(_int(n, "n") >= 4, "cycle(n) needs n >= 4")
    return SimplicialComplex(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> SimplicialComplex:
    _need(_int(n, "n") >= 1, "path(n) needs n >= 1")
    return SimplicialComplex(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> SimplicialComplex:
    _need(_int(n, "n") >= 1, "star(n) needs n >= 1")
    return SimplicialComplex(n + 1, [(0, i) for i in range(1, n + 1)])


def wheel(n: int) -> SimplicialComplex:
    _need(_int(n, "n") >= 4, "wheel(n) needs n >= 4")
    rim = [(1 + i, 1 + (i + 1) % n) for i in range(n)]
    return SimplicialComplex(n + 1, rim + [(0, i) for i in range(1, n + 1)])


def point() -> SimplicialComplex:
    return SimplicialComplex(1)


def simplex(d: int) -> SimplicialComplex:
    _need(_int(d, "d") >= 0, "simplex(d) needs d >= 0")
    return SimplicialComplex(d + 1, combinations(range(d + 1), 2))


def diamond() -> SimplicialComplex:
    return SimplicialComplex(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def octahedron() -> SimplicialComplex:
    return SimplicialComplex(6, [(i, j) for i, j in combinations(range(6), 2) if j - i != 3])


def icosahedron() -> SimplicialComplex:
    edges = []
    for k in range(5):
        up, up_next = 1 + k, 1 + (k + 1) % 5
        lo, lo_next, lo_prev = 6 + k, 6 + (k + 1) % 5, 6 + (k - 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (lo, 11), (up, lo), (up, lo_prev)]
    return SimplicialComplex(12, edges)


def _hexnorm(q: int, s: int) -> int:
    return max(abs(q), abs(s), abs(q + s))


def triangular_lattice_disk(r: int) -> SimplicialComplex:
    _need(_int(r, "r") >= 1, "triangular_lattice_disk(r) needs r >= 1")
    pts = [(q, s) for q in range(-r, r + 1) for s in range(-r, r + 1) if _hexnorm(q, s) <= r]
    pts.sort(key=lambda p: (_hexnorm(*p), p))
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for (q, s), i in index.items():
        for dq, ds in ((1, 0), (0, 1), (-1, 1)):
            j = index.get((q + dq, s + ds))
            if j is not None:
                edges.append((i, j))
    return SimplicialComplex(len(pts), edges)


def annulus(k: int) -> SimplicialComplex:
    _need(_int(k, "k") >= 4, "annulus(k) needs k >= 4")
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i), (i, k + (i + 1) % k)]
    return SimplicialComplex(2 * k, edges)


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    a = A.n_vertices
    edges = list(A.edges()) + [(u + a, v + a) for u, v in B.edges()]
    edges += [(u, a + v) for u in range(a) for v in range(B.n_vertices)]
    return SimplicialComplex(a + B.n_vertices, edges)


def cone_over(A: SimplicialComplex) -> SimplicialComplex:
    return join(point(), A)


def random_flag(n: int, p: float, seed: int) -> SimplicialComplex:
    _need(_int(n, "n") >= 1, "random_flag needs n >= 1")
    _need(0 <= p <= 1, "random_flag needs 0 <= p <= 1")
    rng = random.Random(_int(seed, "seed"))
    return SimplicialComplex(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


def random_tree(n: int, seed: int) -> SimplicialComplex:
    _need(_int(n, "n") >= 1, "random_tree needs n >= 1")
    rng = random.Random(_int(seed, "seed"))
    return SimplicialComplex(n, [(rng.randrange(k), k) for k in range(1, n)])


FAMILIES = {
    "cycle": cycle,
    "path": path,
    "star": star,
    "wheel": wheel,
    "point": point,
    "simplex": simplex,
    "diamond": diamond,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "triangular_lattice_disk": triangular_lattice_disk,
    "annulus": annulus,
    "join": join,
    "cone_over": cone_over,
    "random_flag": random_flag,
    "random_tree": random_tree,
}
_NULLARY = {"point", "diamond", "octahedron", "icosahedron"}
_NESTED = {"join", "cone_over"}


def generate(spec: str | GeneratorSpec) -> SimplicialComplex:
    """Build the complex named by ``spec``."""
    spec = parse_spec(spec)
    fn = FAMILIES.get(spec.name)
    if fn is None:
        raise ValueError(f"unknown generator {spec.name!r}")
    args = spec.params
    if spec.name in _NESTED:
        _need(all(isinstance(a, GeneratorSpec) for a in args), f"{spec.name} takes complexes")
        args = tuple(generate(a) for a in args)
    else:
        _need(not any(isinstance(a, GeneratorSpec) for a in args), f"{spec.name} takes numbers")
    try:
        return fn(*args)
    except TypeError as exc:
        raise ValueError(f"bad arguments for {spec.name}: {exc}") from None


def _load_manifest() -> dict:
    text = resources.files("eightloc").joinpath("data/corpus.json").read_text(encoding="utf-8")
    return json.loads(text)


def corpus(profile: str = "smoke") -> list[tuple[GeneratorSpec, dict]]:
    """Fixture instances with their expected properties.

    ``profile`` is ``"smoke"``, ``"full"`` (smoke plus the rest) or
    ``"empty"``.
    """
    if profile == "empty":
        return []
    if profile not in ("smoke", "full"):
        raise ValueError(f"unknown corpus profile {profile!r}")
    entries = _load_manifest()["instances"]
    if profile == "smoke":
        entries = [e for e in entries if e["profile"] == "smoke"]
    return [(parse_spec(e["spec"]), e["expected"]) for e in entries]
