"""Regenerate src/eightloc/data/corpus.json.

Expected values are recomputed here by the library and then re-derived by
the brute-force oracles in tests/oracles.py during the test run; a manifest
that drifts from either fails the suite.
"""

import json
import warnings
from pathlib import Path

from eightloc import (
    CoverInvariantError,
    build_cover,
    check_sd_prime,
    check_sd_prime_all,
    enumerate_full_cycles,
    four_point_delta,
    generate,
    is_m_located,
)

SMOKE = ["octahedron", "cycle(6)", "wheel(6)", "triangular_lattice_disk(3)"]
FULL = (
    ["icosahedron"]
    + [f"cycle({n})" for n in (4, 5, 7, 8)]
    + [f"wheel({n})" for n in (4, 5, 7, 8)]
    + ["triangular_lattice_disk(1)", "triangular_lattice_disk(2)", "diamond"]
    + [f"annulus({k})" for k in (4, 5, 6)]
    + ["cone_over(cycle(5))", "cone_over(triangular_lattice_disk(2))", "join(cycle(4), cycle(4))"]
    + ["star(5)", "path(5)", "simplex(3)"]
    + [f"random_flag(8, 0.5, {s})" for s in range(5)]
    + [f"random_tree(9, {s})" for s in range(3)]
    # covers of these contain configurations of the two-step lemma
    + [
        "random_flag(8, 0.5, 18)",
        "random_flag(8, 0.6, 18)",
        "random_flag(9, 0.4, 4)",
        "random_flag(9, 0.5, 4)",
        "random_flag(10, 0.5, 42)",
        "random_flag(10, 0.5, 49)",
        "random_flag(12, 0.5, 30)",
    ]
    # 8-located, yet the literal cover construction breaks at stage 5
    + ["random_flag(8, 0.5, 8)"]
)
COVER_RADIUS = 6


def expected(spec):
    X = generate(spec)
    loc = is_m_located(X, 8)
    e = {
        "n_vertices": X.n_vertices,
        "n_edges": X.n_edges,
        "full_cycles_le_8": sum(1 for _ in enumerate_full_cycles(X, 3, 8)),
        "location": loc.status.value,
        "sd_prime_all": all(r.ok for r in check_sd_prime_all(X).values()),
        "connected": X.is_connected(),
    }
    if loc.witness is not None:
        e["location_witness"] = loc.witness[0].to_list()
    if X.is_connected():
        r = four_point_delta(X)
        e["sd_prime_failures_base0"] = [[f.i, f.kind, list(f.data)] for f in check_sd_prime(X, 0).failures]
        e["delta"] = r.four_point_delta
        e["max_interval_diameter"] = r.max_interval_diameter
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                st = build_cover(X, 0, COVER_RADIUS, check_location=False)
                e["cover"] = {"radius": COVER_RADIUS, "status": "OK", "n_vertices": st.n_vertices}
            except CoverInvariantError as exc:
                e["cover"] = {"radius": COVER_RADIUS, "status": "INVARIANT_VIOLATION", "kind": exc.kind, "stage": exc.stage}
    return e


def main():
    out = [{"spec": s, "profile": p, "expected": expected(s)} for p, specs in (("smoke", SMOKE), ("full", FULL)) for s in specs]
    manifest = {
        "basis": "cycle sets, distances and delta are re-derived by brute force in tests/oracles.py; "
        "location verdicts carry replayable certificates",
        "instances": out,
    }
    path = Path(__file__).resolve().parents[1] / "src" / "eightloc" / "data" / "corpus.json"
    path.write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(out)} instances to {path}")


if __name__ == "__main__":
    main()
