"""Local curvature conditions on flag simplicial complexes and their truncated universal covers."""

__version__ = "0.1.0"

from .complex import SimplicialComplex, from_edges, is_flag, loads, dumps, read_complex, write_complex
from .loops import Cycle, HomotopyStatus, enumerate_full_cycles, null_homotopy_status
from .conditions import (
    LocationStatus,
    is_m_located,
    is_k_large,
    is_locally_k_large,
    check_sd_prime,
    check_sd_prime_all,
)
from .cover import CoverInvariantError, build_cover, verify_covering, is_isomorphism
from .hyperbolicity import four_point_delta, interval_layers, max_interval_diameter
from .generators import generate, corpus

__all__ = [
    "__version__",
    "SimplicialComplex",
    "from_edges",
    "is_flag",
    "loads",
    "dumps",
    "read_complex",
    "write_complex",
    "Cycle",
    "HomotopyStatus",
    "enumerate_full_cycles",
    "null_homotopy_status",
    "LocationStatus",
    "is_m_located",
    "is_k_large",
    "is_locally_k_large",
    "check_sd_prime",
    "check_sd_prime_all",
    "CoverInvariantError",
    "build_cover",
    "verify_covering",
    "is_isomorphism",
    "four_point_delta",
    "interval_layers",
    "max_interval_diameter",
    "generate",
    "corpus",
]
