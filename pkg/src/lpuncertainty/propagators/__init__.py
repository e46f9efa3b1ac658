"""Spectral evolution operators and nonlinear Schrodinger integrators."""

from .linear import (half_wave_evolve, heat_evolve, linear_trace, schrodinger_evolve,
                     schrodinger_multiplier)
from .nls import (BlowUpError, DuhamelResult, NonContractionError, PotentialSpec,
                  WindowEdgeWarning, duhamel_picard, nls_split_step, xp_norm)
from .trace import EvolutionTrace, load_trace, save_trace
from .wave import (WaveState, projected_energy, projected_energy_density, projected_state,
                   wave_energy, wave_solve)

__all__ = [
    "half_wave_evolve", "heat_evolve", "linear_trace", "schrodinger_evolve",
    "schrodinger_multiplier",
    "BlowUpError", "DuhamelResult", "NonContractionError", "PotentialSpec",
    "WindowEdgeWarning", "duhamel_picard", "nls_split_step", "xp_norm",
    "EvolutionTrace", "load_trace", "save_trace",
    "WaveState", "projected_energy", "projected_energy_density", "projected_state",
    "wave_energy", "wave_solve",
]
