"""Sampled functions on uniform grids: norms, transforms, sets, spacetime norms."""

from .grid import MAX_POINTS, TAIL_TOLERANCE, GridFunction, TruncationWarning
from .io import load_grid, save_grid
from .norms import (NormSpec, h0_ratio, h1_ratio, lattice_zeta, lp_norm, refined_max,
                    weighted_norm)
from .sets import IndicatorSet, restrict
from .spacetime import spacetime_norm, window_weights
from .transform import (bump, check_dyadic, fourier, fourier_multiplier, frequencies,
                        frequency_norm, inverse_fourier, lp_project, lp_symbol)

__all__ = [
    "MAX_POINTS", "TAIL_TOLERANCE", "GridFunction", "TruncationWarning",
    "load_grid", "save_grid",
    "NormSpec", "h0_ratio", "h1_ratio", "lattice_zeta", "lp_norm", "refined_max",
    "weighted_norm",
    "IndicatorSet", "restrict",
    "spacetime_norm", "window_weights",
    "bump", "check_dyadic", "fourier", "fourier_multiplier", "frequencies",
    "frequency_norm", "inverse_fourier", "lp_project", "lp_symbol",
]
