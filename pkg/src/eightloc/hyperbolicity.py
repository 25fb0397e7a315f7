"""Interval thinness and exact four-point Gromov delta on 1-skeletons."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex, distance_matrix

__all__ = [
    "IntervalLayer",
    "DeltaReport",
    "interval_layers",
    "max_interval_diameter",
    "four_point_delta",
    "connected_distances",
]


@dataclass
class IntervalLayer:
    """Vertices on geodesics from ``source`` to ``target`` at distance ``k`` from ``source``."""

    source: int
    target: int
    k: int
    vertices: list[int]
    diameter: int

    def to_dict(self) -> dict:
        return {"k": self.k, "vertices": self.vertices, "diameter": self.diameter}


@dataclass
class DeltaReport:
    four_point_delta: float
    quadruple: tuple[int, int, int, int] | None
    max_interval_diameter: int | None = None
    interval_witness: dict | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "delta": self.four_point_delta,
            "max_interval_diameter": self.max_interval_diameter,
            "witness": {
                "quadruple": list(self.quadruple) if self.quadruple is not None else None,
                "interval": self.interval_witness,
            },
        }


def connected_distances(X: SimplicialComplex) -> np.ndarray:
    """All-pairs distances; raises ``ValueError`` on a disconnected complex."""
    if X.n_vertices == 0:
        raise ValueError("empty complex")
    D = distance_matrix(X)
    if (D < 0).any():
        raise ValueError("complex is disconnected")
    return D


def interval_layers(X: SimplicialComplex, O: int, O2: int, D: np.ndarray | None = None) -> list[IntervalLayer]:
    """Layers ``0..d(O, O2)`` of the geodesic interval between ``O`` and ``O2``.

    Diameters are measured with the metric of all of ``X``.
    """
    if D is None:
        D = distance_matrix(X)
    n = int(D[O, O2])
    if n < 0:
        raise ValueError(f"vertices {O} and {O2} are in different components")
    on_geodesic = (D[O] >= 0) & (D[O] + D[O2] == n)
    layers = []
    for k in range(n + 1):
        verts = np.flatnonzero(on_geodesic & (D[O] == k))
        diam = int(D[np.ix_(verts, verts)].max()) if len(verts) else 0
        layers.append(IntervalLayer(O, O2, k, verts.tolist(), diam))
    return layers


def max_interval_diameter(X: SimplicialComplex, D: np.ndarray | None = None) -> tuple[int, dict | None]:
    """Largest layer diameter over all endpoint pairs, with the first witness.

    Endpoint pairs are scanned with ``source < target`` in lexicographic
    order; the witness is the first pair attaining the maximum, with the
    layer index and a farthest pair inside that layer.
    """
    if D is None:
        D = connected_distances(X)
    n = D.shape[0]
    best, witness = 0, None
    for a in range(n):
        Da = D[a]
        for b in range(a + 1, n):
            mask = Da + D[b] == D[a, b]
            idx = np.flatnonzero(mask)
            levels = Da[idx]
            same = levels[:, None] == levels[None, :]
            sub = np.where(same, D[np.ix_(idx, idx)], -1)
            m = int(sub.max())
            if m > best:
                i, j = np.unravel_index(int(sub.argmax()), sub.shape)
                best = m
                witness = {
                    "source": a,
                    "target": b,
                    "k": int(levels[i]),
                    "pair": [int(idx[i]), int(idx[j])],
                    "diameter": m,
                }
    return best, witness


def _delta_row(D: np.ndarray, x: int) -> tuple[int, tuple | None]:
    # twice the four-point defect for quadruples starting at x
    n = D.shape[0]
    best, arg = -1, None
    Dx = D[x]
    for y in range(x, n):
        s1 = Dx[y] + D  # d(x,y) + d(z,w)
        s2 = Dx[:, None] + D[y][None, :]  # d(x,z) + d(y,w)
        s3 = Dx[None, :] + D[y][:, None]  # d(x,w) + d(y,z)
        hi = np.maximum(np.maximum(s1, s2), s3)
        lo = np.minimum(np.minimum(s1, s2), s3)
        mid = s1 + s2 + s3 - hi - lo
        defect = hi - mid
        m = int(defect.max())
        if m > best:
            z, w = np.unravel_index(int(defect.argmax()), defect.shape)
            best, arg = m, (x, y, int(z), int(w))
    return best, arg


def four_point_delta(X: SimplicialComplex, threads: int | None = 1, with_intervals: bool = True) -> DeltaReport:
    """Exact four-point delta: max over quadruples of half the gap between the
    largest and middle of the three pair-sums.

    Rows are split by first coordinate across ``threads`` workers (``None``
    means all cores); the reduction keeps the least row on ties, so the
    result does not depend on the thread count.
    """
    D = connected_distances(X)
    n = D.shape[0]
    workers = (os.cpu_count() or 1) if threads is None else max(1, threads)
    if workers == 1:
        rows = [_delta_row(D, x) for x in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda x: _delta_row(D, x), range(n)))
    best, quad = -1, None
    for m, arg in rows:
        if m > best:
            best, quad = m, arg
    report = DeltaReport(max(best, 0) / 2, quad)
    if with_intervals:
        report.max_interval_diameter, report.interval_witness = max_interval_diameter(X, D)
    return report
