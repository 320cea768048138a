"""Hamiltonian cycles of rectangular grid graphs P_m x P_n.

Exact counting through the column automaton and its transfer matrix,
rational generating functions, per-row weight enumerators, moment
statistics, and exactly-uniform random sampling.
"""

from .automaton import Automaton, State, automaton
from .counting import (count_cycles, count_series, gf_count, gf_weighted,
                       monomial_coefficient, normalize_weight_spec,
                       series_of_weighted_gf, weight_enumerator)
from .errors import (DomainError, EmptyEnsembleError, FitError,
                     InvalidCycleError, ResourceLimitError)
from .geometry import (RenderOptions, cycle_to_matrix, matrix_from_columns,
                       matrix_to_columns, matrix_to_cycle, render_ascii,
                       render_svg)
from .oracle import (enumerate_cycles_bruteforce, enumerate_valid_matrices,
                     validate_matrix_global)
from .sampling import (CompletionTable, SampleConfig, SampleResult,
                       completion_table, sample_cycle, sample_many)
from .stats import (StatReport, asymptotic_moments, correlation, moments,
                    moments_via_enumerator)

__version__ = "0.1.0"

__all__ = [
    "Automaton", "State", "automaton",
    "count_cycles", "count_series", "gf_count", "gf_weighted",
    "monomial_coefficient", "normalize_weight_spec",
    "series_of_weighted_gf", "weight_enumerator",
    "DomainError", "EmptyEnsembleError", "FitError", "InvalidCycleError",
    "ResourceLimitError",
    "RenderOptions", "cycle_to_matrix", "matrix_from_columns",
    "matrix_to_columns", "matrix_to_cycle", "render_ascii", "render_svg",
    "enumerate_cycles_bruteforce", "enumerate_valid_matrices",
    "validate_matrix_global",
    "CompletionTable", "SampleConfig", "SampleResult", "completion_table",
    "sample_cycle", "sample_many",
    "StatReport", "asymptotic_moments", "correlation", "moments",
    "moments_via_enumerator",
    "__version__",
]
