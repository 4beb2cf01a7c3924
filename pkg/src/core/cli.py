"""Command-line surface: ``simulate``, ``bounds``, ``adversarial``, ``experiment`` and ``audit``.

Results go to stdout as ``key=value`` text so repeated runs are byte-identical;
diagnostics go to the log. Every library error maps to its exit code here.
"""
import argparse
import logging
from pathlib import Path
from typing import Optional, Sequence
import settings
from core.adversarial import Family, generate, make_spec, run_adversarial
from core.bench import run_sweep
from core.bounds import BOUNDS_CSV_HEADER, compute_bounds
from core.config import grid_from_config, load_config
from core.engine import audit, cost_of, simulate
from core.errors import DvbpError
from core.log import init_logger
from core.model import render_scalar, span_of
from core.policies import PolicyKind
from core.utils.formats import read_instance, read_trace, write_instance, write_trace


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=settings.APP_NAME, description=settings.APP_NAME_FULL)
    parser.add_argument("--debug", action="store_true", help="Enable debug logging.")
    parser.add_argument("--log-file", nargs="?", const=settings.DEFAULT_LOG_FILENAME, default=None,
                        help=f"Also write diagnostics to a rotating log file ({settings.DEFAULT_LOG_FILENAME} if no path is given).")
    parser.add_argument("--version", action="version", version=f"{settings.APP_NAME} {settings.BUILD_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    sim = commands.add_parser("simulate", help="Pack an instance online with one policy.")
    sim.add_argument("--instance", required=True, help="Instance CSV file.")
    sim.add_argument("--policy", required=True, choices=PolicyKind.names(), help="Any Fit policy.")
    sim.add_argument("--seed", type=_seed, default=settings.DEFAULT_SEED, help="Seed for Random Fit.")
    sim.add_argument("--trace", default=None, help="Write the packing trace to this file.")
    sim.set_defaults(handler=cmd_simulate)

    bounds = commands.add_parser("bounds", help="Lower bounds on OPT and optionally OPT itself.")
    bounds.add_argument("--instance", required=True, help="Instance CSV file.")
    bounds.add_argument("--exact", action="store_true", help="Compute the exact optimum for small instances.")
    bounds.add_argument("--oracle-limit", type=_positive, default=settings.DEFAULT_ORACLE_LIMIT,
                        help="Most simultaneously active items the exact oracle accepts.")
    bounds.add_argument("--csv", action="store_true", help="Print a CSV header and one row instead of key=value lines.")
    bounds.set_defaults(handler=cmd_bounds)

    adv = commands.add_parser("adversarial", help="Generate and replay a lower-bound instance.")
    adv.add_argument("--family", required=True, choices=Family.names())
    adv.add_argument("--d", type=_positive, default=1, help="Dimension.")
    adv.add_argument("--k", type=_positive, required=True, help="Group size (n for the mtf family).")
    adv.add_argument("--mu", required=True, help="Duration ratio, integer, decimal or p/q.")
    adv.add_argument("--epsilon", default=None)
    adv.add_argument("--epsilon-prime", default=None)
    adv.add_argument("--policy", default=None, choices=PolicyKind.names(),
                     help="Policy to replay; defaults to the one the family targets.")
    adv.add_argument("--seed", type=_seed, default=settings.DEFAULT_SEED)
    adv.add_argument("--exact", action="store_true", help="Also compute the exact optimum.")
    adv.add_argument("--oracle-limit", type=_positive, default=settings.DEFAULT_ORACLE_LIMIT)
    adv.add_argument("--emit", default=None, help="Write the generated instance to this file.")
    adv.set_defaults(handler=cmd_adversarial)

    exp = commands.add_parser("experiment", help="Run the random-instance experiment grid.")
    exp.add_argument("--config", default=None, help=f"Experiment config, defaults to {settings.DEFAULT_CONFIG_FILENAME}.")
    exp.add_argument("--out", required=True, help="Directory for results and plot data.")
    exp.set_defaults(handler=cmd_experiment)

    aud = commands.add_parser("audit", help="Check a packing trace against the instance.")
    aud.add_argument("--instance", required=True, help="Instance CSV file.")
    aud.add_argument("--trace", required=True, help="Trace file as written by simulate.")
    aud.set_defaults(handler=cmd_audit)
    return parser


def cmd_simulate(args: argparse.Namespace) -> int:
    instance = read_instance(args.instance)
    trace = simulate(instance, PolicyKind(args.policy), args.seed)
    if args.trace:
        write_trace(trace, args.trace)
    print(f"cost={render_scalar(cost_of(trace))} bins={trace.bin_count} span={render_scalar(span_of(instance.items))}")
    return settings.EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    instance = read_instance(args.instance)
    report = compute_bounds(instance, args.exact, args.oracle_limit)
    if args.csv:
        print(BOUNDS_CSV_HEADER)
        print(report.csv_row(Path(args.instance).stem))
    else:
        print(report.render_block())
    return settings.EXIT_OK


def cmd_adversarial(args: argparse.Namespace) -> int:
    spec = make_spec(args.family, args.d, args.k, args.mu, args.epsilon, args.epsilon_prime)
    if args.emit:
        write_instance(generate(spec), args.emit)
    report = run_adversarial(spec, args.policy, args.seed, args.exact, args.oracle_limit)
    print(report.render())
    return settings.EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if config['debug']:
        logging.getLogger().setLevel(logging.DEBUG)
    if config['log_file'] and not args.log_file:
        init_logger(logging.getLogger().level, config['log_file'])
    batches = run_sweep(grid_from_config(config), args.out)
    for batch in batches:
        for s in batch.summary:
            print(f"d={batch.config.d} mu={batch.config.mu} policy={s.policy} mean={s.mean:.6f} stddev={s.stddev:.6f}")
    return settings.EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    instance = read_instance(args.instance)
    report = audit(read_trace(args.trace, instance))
    if report.ok:
        print("ok")
        return settings.EXIT_OK
    print(report.render())
    return settings.EXIT_AUDIT_VIOLATION


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.debug:
        settings.DEBUG = True
    init_logger(logging.DEBUG if args.debug else logging.WARNING, args.log_file)
    try:
        return args.handler(args)
    except DvbpError as e:
        logging.error(str(e))
        return e.exit_code
