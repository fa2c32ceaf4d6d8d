"""Independent matrix-level validation over explicit finite fields."""

from .checks import (
    brute_force_central_torus,
    edge_rho_check,
    oracle_vs_symbolic,
    random_conjugation_samples,
    standard_pair_generates_sl3,
    torus_conjugation_check,
)
from .field import GF, gf
from .matrices import embed_edge

__all__ = [
    "GF",
    "gf",
    "embed_edge",
    "brute_force_central_torus",
    "edge_rho_check",
    "oracle_vs_symbolic",
    "random_conjugation_samples",
    "standard_pair_generates_sl3",
    "torus_conjugation_check",
]
