"""Python access to the entangled coherent state simulator core."""

from ._core import (
    GhzSign,
    bm_parity,
    bm_threshold,
    bm_w_closed,
    bm_w_generic,
    ghz_fidelity,
    maximize_bell,
    w_branch_probabilities,
    w_effective_alpha,
)

__all__ = [
    "GhzSign",
    "bm_parity",
    "bm_threshold",
    "bm_w_closed",
    "bm_w_generic",
    "ghz_fidelity",
    "maximize_bell",
    "w_branch_probabilities",
    "w_effective_alpha",
]
