"""Local curvature conditions: m-location, k-largeness and SD'_n(O)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .complex import SimplicialComplex, distances_from, eccentricity, link, require_flag
from .loops import (
    DEFAULT_BUDGET,
    Cycle,
    HomotopyStatus,
    HomotopyVerdict,
    contained_in_one_ball,
    enumerate_full_cycles,
    null_homotopy_status,
)

__all__ = [
    "LocationStatus",
    "LocationVerdict",
    "LargenessResult",
    "SdFailure",
    "SdReport",
    "is_m_located",
    "is_k_large",
    "is_locally_k_large",
    "check_sd_prime",
    "check_sd_prime_all",
]


class LocationStatus(str, enum.Enum):
    LOCATED = "LOCATED"
    NOT_LOCATED = "NOT_LOCATED"
    UNKNOWN = "UNKNOWN"


@dataclass
class LocationVerdict:
    status: LocationStatus
    m: int
    witness: tuple[Cycle, HomotopyVerdict] | None = None
    unknowns: list[Cycle] = field(default_factory=list)
    n_full_cycles: int = 0

    def to_dict(self) -> dict:
        witnesses = []
        if self.witness is not None:
            cyc, verdict = self.witness
            witnesses.append({"cycle": cyc.to_list(), "homotopy": verdict.to_dict()})
        return {
            "condition": f"{self.m}-located",
            "status": self.status.value,
            "witnesses": witnesses,
            "unknowns": [c.to_list() for c in self.unknowns],
            "full_cycles_checked": self.n_full_cycles,
        }


def is_m_located(
    X: SimplicialComplex, m: int = 8, budget: int = DEFAULT_BUDGET
) -> LocationVerdict:
    """Decide whether every full null-homotopic loop of length <= m lies in a 1-ball.

    Full cycles are scanned by increasing length, then canonical order, so a
    NOT_LOCATED witness is the least such cycle. Escapees whose homotopy
    search runs out of budget are reported as UNKNOWN, never guessed.
    """
    require_flag(X)
    if m < 3:
        raise ValueError("m must be at least 3")
    cycles = sorted(enumerate_full_cycles(X, 3, m), key=lambda c: (len(c), c.vertices))
    unknowns = []
    for cyc in cycles:
        if contained_in_one_ball(X, cyc) is not None:
            continue
        verdict = null_homotopy_status(X, cyc, budget)
        if verdict.status is HomotopyStatus.TRIVIAL:
            return LocationVerdict(LocationStatus.NOT_LOCATED, m, (cyc, verdict), unknowns, len(cycles))
        if verdict.status is HomotopyStatus.UNKNOWN:
            unknowns.append(cyc)
    status = LocationStatus.UNKNOWN if unknowns else LocationStatus.LOCATED
    return LocationVerdict(status, m, None, unknowns, len(cycles))


@dataclass
class LargenessResult:
    holds: bool
    k: int
    witness: Cycle | None = None
    link_vertex: int | None = None
    local: bool = False

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        w = []
        if self.witness is not None:
            w.append({"cycle": self.witness.to_list(), "link_vertex": self.link_vertex})
        return {
            "condition": f"{'locally ' if self.local else ''}{self.k}-large",
            "status": "HOLDS" if self.holds else "FAILS",
            "witnesses": w,
        }


def is_k_large(X: SimplicialComplex, k: int) -> LargenessResult:
    """No full cycle of length ``< k``; the witness is the least offender."""
    require_flag(X)
    if k <= 3:
        return LargenessResult(True, k)
    cycles = sorted(enumerate_full_cycles(X, 3, k - 1), key=lambda c: (len(c), c.vertices))
    if cycles:
        return LargenessResult(False, k, cycles[0])
    return LargenessResult(True, k)


def is_locally_k_large(X: SimplicialComplex, k: int) -> LargenessResult:
    """Every vertex link is k-large. Vertex links suffice in a flag complex:
    the link of a larger simplex is a full subcomplex of a vertex link."""
    require_flag(X)
    for v in range(X.n_vertices):
        sub, labels = link(X, (v,)).as_complex()
        res = is_k_large(sub, k)
        if not res.holds:
            cyc = Cycle.from_sequence(labels[i] for i in res.witness.vertices)
            return LargenessResult(False, k, cyc, v, local=True)
    return LargenessResult(True, k, local=True)


@dataclass(frozen=True, order=True)
class SdFailure:
    """A violated instance of the triangle (T) or vertex (V) condition.

    ``i`` is the inner radius: the failing edge or vertex lies in the sphere
    of radius ``i + 1`` and looks into the ball of radius ``i``. ``data`` is
    the edge ``(a, b)`` for T and ``(v, u, w)`` for V.
    """

    i: int
    kind: str
    data: tuple[int, ...]

    def to_dict(self) -> dict:
        if self.kind == "T":
            return {"kind": "T", "i": self.i, "edge": list(self.data)}
        v, u, w = self.data
        return {"kind": "V", "i": self.i, "v": v, "u": u, "w": w}


@dataclass
class SdReport:
    ok: bool
    base: int
    radius_checked: int
    failures: list[SdFailure] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "condition": f"SD'_{self.radius_checked}({self.base})",
            "status": "OK" if self.ok else "FAIL",
            "witnesses": [f.to_dict() for f in self.failures],
        }


def check_sd_prime(X: SimplicialComplex, O: int, n: int | None = None) -> SdReport:
    """Check SD'_n(O), reporting every failure sorted by (i, kind, data).

    For each ``i`` in ``1..n``: (T) every edge of the ``(i+1)``-sphere has a
    common neighbour in the ``i``-ball; (V) for every vertex ``v`` of the
    ``(i+1)``-sphere, any two distinct ``u, w`` among its neighbours in the
    ``i``-ball have some ``t`` in that same set with ``t ~ u`` and ``t ~ w``
    (``t`` may equal ``u`` or ``w``). ``n`` defaults to the eccentricity of
    ``O``; larger values add only empty spheres.
    """
    require_flag(X)
    if not 0 <= O < X.n_vertices:
        raise ValueError(f"base vertex {O} out of range")
    if n is None:
        n = max(eccentricity(X, O), 1)
    if n < 1:
        raise ValueError("n must be at least 1")
    dist = distances_from(X, O)
    layers: dict[int, list[int]] = {}
    for v, d in enumerate(dist):
        if d >= 0:
            layers.setdefault(d, []).append(v)
    failures = []
    for i in range(1, n + 1):
        outer = layers.get(i + 1, [])
        if not outer:
            continue
        for a in outer:
            for b in X.neighbors(a):
                if b > a and dist[b] == i + 1:
                    common = X.neighbors(a) & X.neighbors(b)
                    if not any(0 <= dist[t] <= i for t in common):
                        failures.append(SdFailure(i, "T", (a, b)))
        for v in outer:
            inner = sorted(t for t in X.neighbors(v) if 0 <= dist[t] <= i)
            for u, w in combinations(inner, 2):
                if X.adjacent(u, w):
                    continue
                if not any(X.sim(t, u) and X.sim(t, w) for t in inner):
                    failures.append(SdFailure(i, "V", (v, u, w)))
    failures.sort()
    return SdReport(not failures, O, n, failures)


def check_sd_prime_all(X: SimplicialComplex, n: int | None = None) -> dict[int, SdReport]:
    """SD'_n(O) for every base vertex ``O`` (``n`` defaults per base)."""
    require_flag(X)
    return {O: check_sd_prime(X, O, n) for O in range(X.n_vertices)}
