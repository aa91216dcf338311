"""Command-line entry point.

Subcommands:

* ``sim run <experiment> [--config F] [--topology F] [--seeds N] [--out D]
  [--snr-sweep a:b:step] [--k-sweep a:b:step] [--agent quantum|egreedy]``
* ``sim validate-config <path>``
* ``sim curve-check <curve-file>``

Exit codes: 0 success, 1 usage, 2 validation, 3 runtime failure.
"""

import argparse
import sys

from ..chain.curve import load_curve_file, scalar_mul
from ..errors import SimError, UsageError, ValidationError
from .config import default_config, load_config, parse_sweep
from .experiments import ALIASES, EXPERIMENTS, run_experiment
from .report import emit_report
from .topology import bundled_topology, load_topology

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="sim", description="UAV metaverse logistics simulation suite")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run a named experiment")
    run.add_argument(
        "experiment",
        help="one of: %s (aliases: %s)"
        % (", ".join(sorted(EXPERIMENTS)), ", ".join(sorted(ALIASES))),
    )
    run.add_argument("--config", help="experiment config file (INI)")
    run.add_argument("--topology", help="topology file")
    run.add_argument("--seeds", type=int, help="number of replicate seeds")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument("--snr-sweep", help="override SNR sweep as start:stop:step (dB)")
    run.add_argument("--k-sweep", help="override committee sweep as start:stop:step")
    run.add_argument(
        "--agent",
        choices=("quantum", "egreedy"),
        default="quantum",
        help="agent kind for the offload experiment",
    )

    val = sub.add_parser("validate-config", help="parse and validate a config file")
    val.add_argument("path")

    curve = sub.add_parser("curve-check", help="validate a curve parameter file")
    curve.add_argument("path")
    return parser


def _cmd_run(args):
    config = load_config(args.config) if args.config else default_config()
    if args.seeds is not None:
        config = config.override(experiment__replicates=args.seeds)
    if args.snr_sweep:
        parse_sweep(args.snr_sweep)  # fail fast on bad specs
        config = config.override(semcom__snr_sweep=args.snr_sweep)
    if args.k_sweep:
        lo, hi, step = (int(v) for v in args.k_sweep.split(":"))
        config = config.override(chain__k_min=lo, chain__k_max=hi, chain__k_step=step)
    topology = load_topology(args.topology) if args.topology else bundled_topology()
    kwargs = {}
    if ALIASES.get(args.experiment, args.experiment) == "offload":
        kwargs["agent_kind"] = args.agent
    summary = run_experiment(args.experiment, config, topology=topology, **kwargs)
    paths = emit_report([summary], args.out)
    for path in paths:
        print(path)
    return EXIT_OK


def _cmd_validate_config(args):
    config = load_config(args.path)
    print(f"ok: {len(config.values)} keys, hash {config.config_hash()}")
    return EXIT_OK


def _cmd_curve_check(args):
    curve = load_curve_file(args.path)
    order_ok = scalar_mul(curve.n, curve.g, curve) is None
    cofactor = ""
    if curve.p <= 10_000:
        cofactor = ", cofactor verified" if curve.verify_cofactor() else ", COFACTOR MISMATCH"
        if "MISMATCH" in cofactor:
            raise ValidationError("cofactor does not match the enumerated point count")
    print(
        f"ok: {curve.p.bit_length()}-bit curve, n*G at infinity: {order_ok}{cofactor}"
    )
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "validate-config":
            return _cmd_validate_config(args)
        if args.command == "curve-check":
            return _cmd_curve_check(args)
        parser.print_help()
        return EXIT_USAGE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, FileNotFoundError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SimError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
