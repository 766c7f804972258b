"""Non-Hermitian (anti-)PT-symmetric dynamics: HSS, trace distance and QFI.

The submodules follow the data flow: :mod:`~eptool.linalg` and
:mod:`~eptool.hamiltonians` build the generator, :mod:`~eptool.evolution`
propagates states, :mod:`~eptool.measures` evaluates the phase-sensitivity
and distinguishability measures, and :mod:`~eptool.analysis` turns time
series of those measures into phase verdicts, EP locations and
contractivity audits.
"""

from .analysis import (
    GridPolicy,
    TimeGrid,
    TimeSeries,
    classify_oscillation,
    contractivity_audit,
    estimate_period,
    hss_qfi_correspondence,
    locate_ep,
    random_pair_scan,
    sample_series,
)
from .evolution import evolve_density, evolve_state, propagator
from .hamiltonians import AntiPTQubit, Custom, PhaseLabel, PTQubit, PTQudit, build_matrix
from .measures import hs_distance, hss, qfi, trace_distance
from .states import phase_superposition, td_pair

__version__ = "0.1.0"

__all__ = [
    "AntiPTQubit",
    "Custom",
    "GridPolicy",
    "PTQubit",
    "PTQudit",
    "PhaseLabel",
    "TimeGrid",
    "TimeSeries",
    "build_matrix",
    "classify_oscillation",
    "contractivity_audit",
    "estimate_period",
    "evolve_density",
    "evolve_state",
    "hs_distance",
    "hss",
    "hss_qfi_correspondence",
    "locate_ep",
    "phase_superposition",
    "propagator",
    "qfi",
    "random_pair_scan",
    "sample_series",
    "td_pair",
    "trace_distance",
]
