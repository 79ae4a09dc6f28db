"""Study dispatch, result files and the run manifest."""

import math
import sys
from pathlib import Path

import numpy as np
import scipy

import shadowqsd
from shadowqsd.harness.config import ConfigError, ExperimentConfig, load_config
from shadowqsd.harness.studies import (
    ScalingResult,
    run_bias_variance_study,
    run_shots_scaling,
    run_subspace_scaling,
)
from shadowqsd.subspace import NoFiniteMnesError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _format_meta_value(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        return f"{value:.12g}"
    return str(value)


def write_manifest(path, config: ExperimentConfig, results: list[ScalingResult]) -> None:
    # the [config] block is itself a valid config file, so any results.csv
    # can be regenerated from its manifest alone
    lines = ["[config]"]
    for key in sorted(config.raw):
        value = config.raw[key]
        if isinstance(value, tuple):
            value = " ".join(str(v) for v in value)
        lines.append(f"{'out' if key == 'out_dir' else key} = {value}")
    lines.append("")
    lines.append("[environment]")
    lines.append(f"shadowqsd = {shadowqsd.__version__}")
    lines.append(f"numpy = {np.__version__}")
    lines.append(f"scipy = {scipy.__version__}")
    for result in results:
        lines.append("")
        lines.append(f"[{result.study}]")
        lines.append(f"slope = {_format_meta_value(result.slope)}")
        lines.append(f"intercept = {_format_meta_value(result.intercept)}")
        lines.append(f"slope_stderr = {_format_meta_value(result.slope_stderr)}")
        for key in sorted(result.meta):
            lines.append(f"{key} = {_format_meta_value(result.meta[key])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_bias_csv(path, bias: ScalingResult, variance: ScalingResult) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("shots_per_state,abs_bias_mev,bias_stderr_mev,deviation_variance,repeats\n")
        for brow, vrow in zip(bias.rows, variance.rows):
            cells = [brow[0], brow[1], brow[2], vrow[1], brow[3]]
            fh.write(",".join(_cell(v) for v in cells) + "\n")


def _cell(value: float) -> str:
    return f"{int(value)}" if float(value).is_integer() and abs(value) < 1e15 else f"{value:.12g}"


def run_config(config_path) -> int:
    """Execute the study described by a config file; returns an exit code."""
    try:
        config = load_config(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if config.study == "shots":
            results = [run_shots_scaling(config)]
            results[0].to_csv(out_dir / "results.csv")
        elif config.study == "subspace":
            results = [run_subspace_scaling(config)]
            results[0].to_csv(out_dir / "results.csv")
        else:
            bias, variance = run_bias_variance_study(config)
            results = [bias, variance]
            _write_bias_csv(out_dir / "results.csv", bias, variance)
        write_manifest(out_dir / "manifest.txt", config, results)
    except (NoFiniteMnesError, np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for result in results:
        print(f"{result.study}: slope = {_format_meta_value(result.slope)}")
        margin = result.meta.get("lower_bound_margin_mev")
        if margin is not None:
            print(f"{result.study}: lower-bound margin = {margin:.3g} MeV")
    print(f"wrote {out_dir / 'results.csv'} and {out_dir / 'manifest.txt'}")
    return EXIT_OK
