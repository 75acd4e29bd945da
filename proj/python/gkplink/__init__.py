"""GKP-qudit repeater link toolkit.

Thin package around the compiled core: entanglement rates for dual-homodyne
swaps of GKP-encoded qudits, low-loss asymptotics, cavity-mediated gate
fidelity, and seeded Monte Carlo validation of the shift statistics.
"""

from ._core import (
    AmpMode,
    AsymptoticProbs,
    CavityParams,
    CombineMode,
    EntanglingGate,
    GkpCode,
    Lattice,
    RConvention,
    RatePoint,
    ReflectionCoeffs,
    SwapResult,
    TwirledBellState,
    XiOptimum,
    asymptotic_gap,
    asymptotic_probs,
    asymptotic_rate,
    capacity,
    csum_fidelity_point,
    hashing_rate,
    heralded_label,
    link_rate,
    optimize_xi,
    pulse_length_check,
    reflection_coeffs,
    run_swap_trials,
    shift_distribution,
    shift_index_max,
    shift_index_min,
    squeezing_db_to_variance,
    swap_update,
    transform_variance,
    twirled_bell,
    variance_to_squeezing_db,
)

__version__ = "0.1.0"

__all__ = [
    "AmpMode",
    "AsymptoticProbs",
    "CavityParams",
    "CombineMode",
    "EntanglingGate",
    "GkpCode",
    "Lattice",
    "RConvention",
    "RatePoint",
    "ReflectionCoeffs",
    "SwapResult",
    "TwirledBellState",
    "XiOptimum",
    "asymptotic_gap",
    "asymptotic_probs",
    "asymptotic_rate",
    "capacity",
    "csum_fidelity_point",
    "hashing_rate",
    "heralded_label",
    "link_rate",
    "optimize_xi",
    "pulse_length_check",
    "reflection_coeffs",
    "run_swap_trials",
    "shift_distribution",
    "shift_index_max",
    "shift_index_min",
    "squeezing_db_to_variance",
    "swap_update",
    "transform_variance",
    "twirled_bell",
    "variance_to_squeezing_db",
]
