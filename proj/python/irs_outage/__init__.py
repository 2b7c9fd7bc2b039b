# SPDX-License-Identifier: Apache-2.0
"""Outage probability of IRS-assisted links under correlated Rayleigh fading."""

from ._core import (
    ContractViolation,
    DegenerateScenarioError,
    DomainError,
    InternalConsistencyError,
    ScenarioError,
    __version__,
    element_position,
    exponential_correlation,
    gamma_params,
    materialize,
    matrix_sqrt,
    moments_general,
    outage_probability,
    outage_sensitivity_wa,
    parse_scenario,
    preset_names,
    random_phase_moments,
    regularized_lower_gamma,
    regularized_upper_gamma,
    run_criterion,
    run_curve,
    run_surface,
    sample_gains,
    scenario_json,
    sinc_correlation,
    snr_threshold,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
