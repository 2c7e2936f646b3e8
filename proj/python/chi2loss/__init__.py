"""Classical and quantum chi(2) waveguide processes with scattering loss."""

from ._core import (
    ConfigError,
    ConvergenceFailure,
    Scenario,
    UndefinedRatio,
    __version__,
    alpha_from_beta,
    delta_pm,
    figure2_curve,
    fock_coherent_mean,
    fock_pair_expectation,
)

__all__ = [
    "ConfigError",
    "ConvergenceFailure",
    "Scenario",
    "UndefinedRatio",
    "__version__",
    "alpha_from_beta",
    "delta_pm",
    "figure2_curve",
    "fock_coherent_mean",
    "fock_pair_expectation",
]
