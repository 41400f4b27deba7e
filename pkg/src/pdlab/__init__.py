"""pdlab: single-photon temporal wave functions under chromatic dispersion.

The package models how group-velocity dispersion reshapes analytic temporal
modes (generalized Gaussian, chirped Gaussian, hyperbolic secant, time-bin
qubit) and derives communication figures of merit: pulse broadening, symbol
rate and the BB84 key-generation bound.
"""

from .dispersion import (
    Medium,
    PropagationSpec,
    media_catalog,
    medium_by_label,
    propagate_gaussian_closed_form,
    propagate_quadrature_oracle,
    propagate_spectral,
    transfer_function,
)
from .errors import (
    AccuracyError,
    ConfigError,
    ParameterDomainError,
    PdlabError,
    ResolutionError,
)
from .metrics import (
    BroadeningResult,
    ChirpOptimum,
    SymbolRateResult,
    chirp_optimum,
    gamma_gaussian,
    gamma_numeric,
    gamma_numeric_sweep,
    symbol_rate,
    symbol_rate_asymptotic,
    symbol_rate_gaussian,
)
from .modes import (
    ChirpedGaussianMode,
    GeneralizedGaussianMode,
    SechMode,
    TemporalMode,
    TimeBinQubitMode,
    evaluate,
    exact_overlap_norm,
    pdf,
)
from .qkd import (
    McEstimate,
    QkdLinkParams,
    QkdRateResult,
    WindowOptimum,
    binary_entropy,
    effective_detection_sd,
    key_rate,
    monte_carlo_oracle,
    optimize_window,
    p_error_neighbors,
    p_signal,
    transmittance,
)
from .runner import (
    SweepConfig,
    SweepResult,
    load_preset,
    preset_names,
    resolve_config,
    run_sweep,
    write_csv,
)
from .sampling import (
    GridSpec,
    MomentReport,
    SampledWaveFunction,
    moments,
    plan_grid,
    predicted_sd,
    sample,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
