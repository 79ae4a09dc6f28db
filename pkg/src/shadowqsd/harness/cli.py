"""Command-line entry points.

    shadowqsd run <config>     execute the configured study
    shadowqsd mnes <config>    print the minimum evolved-state count
    shadowqsd exact <config>   print the exact ground-state energy

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

import argparse
import sys

import numpy as np

from shadowqsd.harness.config import ConfigError, load_config
from shadowqsd.harness.models import resolve_model
from shadowqsd.harness.runner import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, run_config
from shadowqsd.shadows import StateVector
from shadowqsd.subspace import NoFiniteMnesError, compute_mnes, exact_ground_energy


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowqsd",
        description="Shadow-subspace ground-state studies for shell-model Hamiltonians",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("run", "execute the study described by a config file"),
        ("mnes", "print the minimum evolved-state count for the configured model"),
        ("exact", "print the exact ground-state energy of the configured model"),
    ):
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("config", help="path to a key = value config file")
    return parser


def _model_from_config(path):
    config = load_config(path)
    h = resolve_model(config.model, config.protons, config.neutrons, config.twice_jz)
    return config, h


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return run_config(args.config)
    try:
        config, h = _model_from_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "mnes":
            initial = StateVector.basis_state(h.n_qubits, config.initial)
            value = compute_mnes(h, initial, config.dt, config.mnes_tol)
            print(f"mnes = {value}")
        else:
            e0, _ = exact_ground_energy(h)
            print(f"e0 = {e0:.12g} MeV  (physical dimension {h.dim_physical}, {h.n_qubits} qubits)")
    except NoFiniteMnesError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except np.linalg.LinAlgError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
