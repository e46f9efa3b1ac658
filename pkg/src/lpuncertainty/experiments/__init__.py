"""Experiment harnesses turning the inequalities into measurable records."""

from .corpus import PacketFamily, corpus_functions, random_corpus, sum_packets
from .growth import (GrowthFit, WaveGrowth, geometric_times, loglog_slope, moment_growth_fit,
                     predicted_growth, wave_energy_growth)
from .nonlinear import NLSRun, lemma_time_power, nls_growth
from .observability import (HeatObservability, band_limit, heat_observability,
                            observability_infimum, schrodinger_observability,
                            thickness_check)
from .products import (MinimizerResult, UPResult, half_mass_check, lemma1_bound,
                       lemma1_check, lemma1_constant, lemma1_threshold, lemma2_check,
                       product_minimizer, thm5_product, up_product)
from .records import ExperimentRecord, dumps, predicted
from .runner import EXPERIMENTS, ConfigError, run_experiment, validate

__all__ = [
    "PacketFamily", "corpus_functions", "random_corpus", "sum_packets",
    "GrowthFit", "WaveGrowth", "geometric_times", "loglog_slope", "moment_growth_fit",
    "predicted_growth", "wave_energy_growth",
    "NLSRun", "lemma_time_power", "nls_growth",
    "HeatObservability", "band_limit", "heat_observability", "observability_infimum",
    "schrodinger_observability", "thickness_check",
    "MinimizerResult", "UPResult", "half_mass_check", "lemma1_bound", "lemma1_check",
    "lemma1_constant", "lemma1_threshold", "lemma2_check", "product_minimizer",
    "thm5_product", "up_product",
    "ExperimentRecord", "dumps", "predicted",
    "EXPERIMENTS", "ConfigError", "run_experiment", "validate",
]
