import argparse
import logging
import sys
import time
from datetime import datetime
from typing import Any, Optional

from batch_enum import enumerate_all
from bench import BenchManifest, load_manifest, run_suite
from colgen import ColgenResult
from config import SolverSettings, default_config_path, load_settings
from constants import FORMULATIONS, INSTANCE_SETS, METHODS
from exceptions import (
    EC_ARG_GENERAL,
    MESSAGE_ARG_GENERAL,
    ArgumentException,
    ExpectedException,
    FailedToReadException,
    NoFeasibleFoundException,
)
from formulations import FORMULATION_BUILDERS, SPF, build_spf
from generator import GenSpec, generate
from instance import Instance
from linear_model import LinearModel
from logger import add_file_handler, get_logger, set_console_level
from mip_engine import MipResult, solve_mip
from mps import read_mps_file, write_mps
from preprocess import PreprocessResult, compute_bounds, trivial_bounds
from solve import SolveOutcome, compute_bound, solve
from utils import Limits, write_text_file

DEFAULT_SIZES: str = "1,10"
DEFAULT_SEED: int = 0
DEFAULT_VERBOSE: bool = False

logger: logging.Logger = get_logger()


def str2bool(value: Any) -> bool:
    """
    Helper function to convert argument to boolean.

    Args:
        value (Any): The value to convert to boolean.

    Returns:
        Parsed argument as boolean.
    """
    if isinstance(value, bool):
        return value
    if value.lower() in ("yes", "true", "t", "1"):
        return True
    elif value.lower() in ("no", "false", "f", "0"):
        return False
    else:
        raise ArgumentException(f"{MESSAGE_ARG_GENERAL} Boolean value expected.")


def size_range(value: str) -> tuple[int, int]:
    """
    Parses "low,high" into an inclusive size range.

    Args:
        value (str): Two comma separated integers.

    Returns:
        Size range.
    """
    try:
        low, high = (int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected two comma separated integers, got '{value}'.")
    return low, high


def set_arguments(parser: argparse.ArgumentParser, names: list, required_output: bool = True) -> None:
    """
    Set arguments for the parser based on the provided names and options.

    Args:
        parser (argparse.ArgumentParser): The argument parser to set arguments for.
        names (list): List of argument names to set.
        required_output (bool): Whether the output argument is required. Defaults to True.
    """
    for name in names:
        match name:
            case "config":
                parser.add_argument("--config", type=str, help="JSON file overriding config.json values")
            case "formulation":
                parser.add_argument("--formulation", type=str, choices=FORMULATIONS, required=True)
            case "input":
                parser.add_argument("--in", "-i", dest="input", type=str, help="Instance JSON file")
            case "m":
                parser.add_argument("--m", type=int, required=True, help="Number of families")
            case "manifest":
                parser.add_argument("--manifest", type=str, required=True, help="Benchmark manifest (TOML)")
            case "method":
                parser.add_argument("--method", type=str, choices=METHODS, default="bnp", help="Solution method")
            case "model":
                parser.add_argument("--model", type=str, help="Solve an MPS file with the embedded MIP engine")
            case "n":
                parser.add_argument("--n", type=int, required=True, help="Number of jobs")
            case "node-limit":
                parser.add_argument("--node-limit", type=int, help="Search node budget")
            case "no-preprocess":
                parser.add_argument(
                    "--no-preprocess",
                    action="store_true",
                    help="One slot per job and the full horizon instead of the batch-count bounds",
                )
            case "output":
                parser.add_argument(
                    "--out", "-o", dest="output", type=str, required=required_output, help="Output file"
                )
            case "runs-out":
                parser.add_argument("--runs-out", type=str, help="Optional CSV with one row per instance and method")
            case "log-file":
                parser.add_argument("--log-file", type=str, help="Also write the log into this file")
            case "seed":
                parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed")
            case "set":
                parser.add_argument("--set", dest="set_name", type=str, choices=INSTANCE_SETS, required=True)
            case "sizes":
                parser.add_argument("--sizes", type=size_range, default=DEFAULT_SIZES, help="Job size range low,high")
            case "strict":
                parser.add_argument(
                    "--strict", type=str2bool, default=False, help="Require n and m to be values listed for the set"
                )
            case "time-limit":
                parser.add_argument("--time-limit", type=float, help="Wall-clock limit in seconds")
            case "verbose":
                parser.add_argument("-v", "--verbose", type=str2bool, default=DEFAULT_VERBOSE, help="Verbose output")


def _settings(args) -> SolverSettings:
    return load_settings(getattr(args, "config", None))


def _instance(args) -> Instance:
    if not getattr(args, "input", None):
        raise ArgumentException(f"{MESSAGE_ARG_GENERAL} --in is required.")
    return Instance.load(args.input)


def run_config_subcommand(args) -> None:
    get_config(args.output)


def get_config(path: Optional[str]) -> None:
    """
    If Path is not provided, output content of config.
    If Path is provided, copy config to destination path.

    Args:
        path (string): Destination path for config.json file
    """
    try:
        with open(default_config_path(), "r", encoding="utf-8") as file:
            content: str = file.read()
    except OSError as e:
        raise FailedToReadException(str(default_config_path()), str(e))
    if path is None:
        print(content)
    else:
        write_text_file(path, content)


def run_generate_subcommand(args) -> None:
    spec: GenSpec = GenSpec(args.set_name, args.n, args.m, args.sizes, args.seed, args.strict)
    inst: Instance = generate(spec)
    inst.save(args.output)
    logger.info(f"Instance with {inst.n} jobs in {inst.m} families written to {args.output}.")


def run_emit_subcommand(args) -> None:
    settings: SolverSettings = _settings(args)
    inst: Instance = _instance(args)
    prep: PreprocessResult = trivial_bounds(inst) if args.no_preprocess else compute_bounds(inst)
    logger.debug(f"Batch bounds {list(prep.B)}, horizon {prep.H_max}.")
    if args.formulation == SPF:
        batches = enumerate_all(inst, settings.caps.batch_enumeration)
        model: LinearModel = build_spf(inst, prep, batches, settings.caps.spf_variables)
    else:
        model = FORMULATION_BUILDERS[args.formulation](inst, prep)
    write_mps(model, args.output)
    logger.info(f"{args.formulation.upper()}: {model.stats()}. Written to {args.output}.")


def run_bound_subcommand(args) -> None:
    inst: Instance = _instance(args)
    result: ColgenResult = compute_bound(inst, _settings(args), args.time_limit)
    print(f"LBLP: {result.lp_value:.6f}")
    print(f"Rounds: {result.rounds}")
    print(f"Columns: {len(result.columns)}")
    print(f"Converged: {result.converged}")


def run_solve_subcommand(args) -> None:
    settings: SolverSettings = _settings(args)
    limits: Limits = Limits(time_limit=args.time_limit, node_limit=args.node_limit)
    if args.model:
        return solve_model_file(args.model, limits, settings)

    inst: Instance = _instance(args)
    outcome: SolveOutcome = solve(
        inst, args.method, limits, settings, preprocess=not args.no_preprocess, show_progress=True
    )
    print(outcome.schedule.describe(inst))
    print(f"Status: {outcome.status}")
    print(f"Objective: {outcome.objective}")
    if outcome.lower_bound is not None:
        print(f"Bound: {outcome.lower_bound:.6f}")
    print(f"Nodes: {outcome.nodes}")
    print(f"Time: {outcome.seconds:.2f} s")
    if args.output:
        outcome.schedule.save(args.output, inst)
        logger.info(f"Schedule written to {args.output}.")


def solve_model_file(path: str, limits: Limits, settings: SolverSettings) -> None:
    """
    Solves an arbitrary MPS model with the embedded branch and bound.

    Args:
        path (str): MPS file.
        limits (Limits): Search limits.
        settings (SolverSettings): Solver settings.
    """
    model: LinearModel = read_mps_file(path)
    logger.info(f"{model.name}: {model.stats()}")
    result: MipResult = solve_mip(model, limits, settings=settings)
    if result.best_solution is None:
        raise NoFeasibleFoundException(f"{path} ended with status {result.status}.")
    print(f"Status: {result.status}")
    print(f"Objective: {result.objective:.6f}")
    print(f"Bound: {result.best_bound:.6f}")
    print(f"Nodes: {result.node_count}")


def run_bench_subcommand(args) -> None:
    manifest: BenchManifest = load_manifest(args.manifest)
    if args.log_file:
        add_file_handler(args.log_file)
    run_suite(manifest, args.output, _settings(args), args.runs_out)


def run_subcommand(args) -> None:
    # Print everything into console
    if args.verbose:
        set_console_level(logging.DEBUG)
    args.subcommand(args)


def main():
    parser = argparse.ArgumentParser(
        description="Single batching machine scheduling with incompatible families and non-identical job sizes"
    )
    subparsers = parser.add_subparsers(title="Commands", dest="command", required=True)

    # Generate instance subparser
    parser_generate = subparsers.add_parser("generate", help="Generate a random instance of a benchmark set.")
    set_arguments(parser_generate, ["set", "n", "m", "sizes", "seed", "strict", "output", "verbose"])
    parser_generate.set_defaults(func=run_subcommand, subcommand=run_generate_subcommand)

    # Emit model subparser
    parser_emit = subparsers.add_parser("emit", help="Write one of the integer models of an instance as MPS.")
    set_arguments(parser_emit, ["formulation", "input", "output", "no-preprocess", "config", "verbose"])
    parser_emit.set_defaults(func=run_subcommand, subcommand=run_emit_subcommand)

    # Lower bound subparser
    parser_bound = subparsers.add_parser("bound", help="Compute the column generation lower bound.")
    set_arguments(parser_bound, ["input", "time-limit", "config", "verbose"])
    parser_bound.set_defaults(func=run_subcommand, subcommand=run_bound_subcommand)

    # Solve subparser
    parser_solve = subparsers.add_parser("solve", help="Solve an instance, or an MPS model with --model.")
    set_arguments(
        parser_solve,
        ["method", "input", "model", "output", "time-limit", "node-limit", "no-preprocess", "config", "verbose"],
        False,
    )
    parser_solve.set_defaults(func=run_subcommand, subcommand=run_solve_subcommand)

    # Benchmark subparser
    parser_bench = subparsers.add_parser("bench", help="Run a benchmark manifest and write the summary CSV.")
    set_arguments(parser_bench, ["manifest", "output", "runs-out", "log-file", "config", "verbose"])
    parser_bench.set_defaults(func=run_subcommand, subcommand=run_bench_subcommand)

    # Config subparser
    parser_generate_config = subparsers.add_parser("config", help="Save the default configuration file.")
    set_arguments(parser_generate_config, ["output"], False)
    parser_generate_config.set_defaults(func=run_config_subcommand)

    # Parse arguments
    try:
        args = parser.parse_args()
    except ExpectedException as e:
        logger.exception(e.message)
        sys.exit(e.error_code)
    except SystemExit as e:
        if e.code != 0:
            logger.exception(MESSAGE_ARG_GENERAL)
            sys.exit(EC_ARG_GENERAL)
        # This happens when --help is used, exit gracefully
        sys.exit(0)
    except Exception as e:
        logger.exception(f"Failed to run the program:{e}")
        sys.exit(1)

    if hasattr(args, "func"):
        start_time = time.time()
        current_time = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        logger.info(f"Processing started at: {current_time}")

        # Run subcommand
        try:
            args.func(args)
        except ExpectedException as e:
            logger.exception(e.message)
            sys.exit(e.error_code)
        except KeyboardInterrupt:
            logger.warning("Interrupted.")
            sys.exit(130)
        except Exception as e:
            logger.exception(f"Failed to run the program: {e}")
            sys.exit(1)
        finally:
            elapsed_time = time.time() - start_time
            current_time = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
            logger.info(f"Processing finished at: {current_time}. Elapsed time: {elapsed_time:.2f} seconds")
    else:
        parser.print_help()


if __name__ == "__main__":
    main()
