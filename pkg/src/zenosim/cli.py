"""Command-line runner: sweeps, cross-model check, config linting.

Exit codes: 0 on success, 1 for configuration (or output I/O) problems,
2 for numeric or integration failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import RunConfig, parse_config, parse_n_list
from .dynamics import IonConfig
from .errors import BoundViolationError, ConfigError, IntegrationError
from .ion import LINDBLAD_AGREEMENT_TOL, p2_closed_form
from .sweep import emit, lindblad_p2, run_ion_sweep, run_neutron_sweep

_DEFAULT_CHECK_COUNTS = (2, 4, 8)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenosim",
        description="Quantum Zeno sweeps: closed forms, decoherence limits, "
        "and the dissipative three-level model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to the config file")
    common.add_argument(
        "--n-list", help="override the sweep counts, e.g. '1,2,4,8'", default=None
    )

    table = argparse.ArgumentParser(add_help=False, parents=[common])
    table.add_argument(
        "--format", choices=("csv", "json"), default=None, help="override [output] format"
    )
    table.add_argument("--out", default=None, help="override [output] path ('-' = stdout)")

    sub.add_parser("ion", parents=[table], help="sweep the ion models over n")
    sub.add_parser("neutron", parents=[table], help="sweep the neutron-spin models over n")
    sub.add_parser(
        "lindblad-check",
        parents=[common],
        help="compare the three-level simulation against the projection closed form",
    )
    validate = sub.add_parser("validate", help="lint a config file and exit")
    validate.add_argument("--config", required=True, help="path to the config file")
    return parser


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    if getattr(args, "n_list", None) is not None:
        updates["n_list"] = parse_n_list(args.n_list, field_name="--n-list")
    if getattr(args, "format", None) is not None:
        updates["out_format"] = args.format
    if getattr(args, "out", None) is not None:
        updates["out_path"] = args.out
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _run_table(cfg: RunConfig, runner) -> int:
    result = runner(cfg)
    emit(result, format=cfg.out_format, destination=cfg.out_path)
    return 0


def _run_lindblad_check(cfg: RunConfig) -> int:
    omega, tau_sp = cfg.require_ion()
    counts = cfg.n_list or _DEFAULT_CHECK_COUNTS
    worst = 0.0
    print("n,p2_projection,p2_lindblad,abs_deviation")
    for n in counts:
        ion = IonConfig(omega, tau_sp, n)
        closed = p2_closed_form(n)
        full = lindblad_p2(ion, cfg)
        dev = abs(full - closed)
        worst = max(worst, dev)
        print(f"{n},{closed:.12g},{full:.12g},{dev:.3e}")
    print(f"max deviation: {worst:.3e} (tolerance {LINDBLAD_AGREEMENT_TOL})")
    return 0 if worst <= LINDBLAD_AGREEMENT_TOL else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        if args.command == "validate":
            print(f"{args.config}: OK")
            return 0
        cfg = _apply_overrides(cfg, args)
        if args.command == "ion":
            return _run_table(cfg, run_ion_sweep)
        if args.command == "neutron":
            return _run_table(cfg, run_neutron_sweep)
        return _run_lindblad_check(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationError, BoundViolationError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
