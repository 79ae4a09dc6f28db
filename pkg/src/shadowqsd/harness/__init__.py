"""Experiment harness: configs, built-in models, scaling studies and CLI."""

from shadowqsd.harness.config import ConfigError, ExperimentConfig, load_config, parse_config_text
from shadowqsd.harness.models import he6_random_model, pairing_model, resolve_model
from shadowqsd.harness.runner import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, run_config, write_manifest
from shadowqsd.harness.studies import (
    ScalingResult,
    fit_loglog_slope,
    run_bias_variance_study,
    run_shots_scaling,
    run_subspace_scaling,
)

__all__ = [
    "EXIT_CONFIG",
    "EXIT_NUMERIC",
    "EXIT_OK",
    "ConfigError",
    "ExperimentConfig",
    "ScalingResult",
    "fit_loglog_slope",
    "he6_random_model",
    "load_config",
    "pairing_model",
    "parse_config_text",
    "resolve_model",
    "run_bias_variance_study",
    "run_config",
    "run_shots_scaling",
    "run_subspace_scaling",
    "write_manifest",
]
