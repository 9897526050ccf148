import argparse
import sys
from importlib.resources import files

import tomli

from scaffold_assign.cli.utils_cli import (
    emit_instance,
    format_record,
    format_solution,
    height_tsv,
    parse_instance,
    rhythm_instance,
    save_height_plot,
    to_json,
)
from scaffold_assign.eval.bench import run_bench
from scaffold_assign.eval.oracle import dp_optimal_assignment, dp_optimal_cost, exhaustive_optimal
from scaffold_assign.eval.utils_eval import generate_instance
from scaffold_assign.model.errors import InfeasibleInstance, InternalError, ScaffoldError
from scaffold_assign.model.profile import height_profile
from scaffold_assign.model.solver import solve


DEFAULT_CONFIG = str(files("scaffold_assign").joinpath("cli/examples/basic/basic.toml"))

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_INTERNAL = 3


class ArgumentParser(argparse.ArgumentParser):
    # usage errors share exit code 1 with parse errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_config(path=None) -> dict:
    """
    Packaged defaults, overlaid table by table with the file at `path`.
    """
    with open(DEFAULT_CONFIG, "rb") as f:
        config = tomli.load(f)
    if path is not None:
        with open(path, "rb") as f:
            user = tomli.load(f)
        for key, value in user.items():
            if isinstance(value, dict) and isinstance(config.get(key), dict):
                config[key] = {**config[key], **value}
            else:
                config[key] = value
    return config


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="scaffold-assign",
        description="Minimum-cost many-to-one assignment of S onto T on a line.",
        epilog="Specify options to override one or more settings from config.",
    )
    # options every subcommand takes
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "-c",
        "--config",
        help="Configuration file. Default=cli/examples/basic/basic.toml",
    )
    common.add_argument("-o", "--output", help="Write the result here instead of stdout.")
    common.add_argument("--format", choices=["json", "tsv"], help="Output format.")
    common.add_argument("--quiet", action="store_true", help="No progress bars or status lines.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def instance_command(name, help):
        p = add_command(name, help)
        p.add_argument("instance", help="Instance file, '-' for stdin.")
        p.add_argument("--presorted", action="store_true", help="Input is sorted already, skip sorting.")
        p.add_argument("--check", action=argparse.BooleanOptionalAction, default=None, help="Verify results.")
        return p

    instance_command("solve", "Optimal assignment by the sweep algorithm.")

    p = instance_command("oracle", "Optimal cost by the quadratic dynamic program.")
    p.add_argument("--guard", type=int, help="Largest instance the dp accepts, in points.")
    p.add_argument("--exhaustive", action="store_true", help="Also enumerate every surjection (tiny inputs).")

    p = instance_command("compare", "Sweep solver against the dp oracle, PASS or FAIL.")
    p.add_argument("--guard", type=int, help="Largest instance the dp accepts, in points.")

    p = instance_command("height", "Height function as TSV.")
    p.add_argument("--plot", help="Also render the staircase to this image file.")

    p = add_command("gen", "Seeded random instance.")
    p.add_argument("--seed", type=int)
    p.add_argument("--size-s", type=int)
    p.add_argument("--size-t", type=int)
    p.add_argument("--low", type=int)
    p.add_argument("--high", type=int)
    p.add_argument("--dist", choices=["uniform", "clustered"])
    p.add_argument("--clusters", type=int)

    p = add_command("bench", "Timing table of solve, presorted solve and the dp oracle.")
    p.add_argument("--sizes", help="Comma separated total point counts, e.g. 1024,16384.")
    p.add_argument("--seed", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--dp", action=argparse.BooleanOptionalAction, default=None, help="Time the dp oracle too.")
    p.add_argument("--guard", type=int)
    p.add_argument("--dist", choices=["uniform", "clustered"])
    p.add_argument("--t-share", type=float)

    p = add_command("rhythm", "Directed swap distance between two box-notation rhythms.")
    p.add_argument("a", help="Rhythm moved, e.g. x.x.x")
    p.add_argument("b", help="Rhythm matched onto, e.g. x..x.")
    p.add_argument("--swap", action=argparse.BooleanOptionalAction, default=None, help="Reverse the roles.")

    return parser


def read_text(path) -> str:
    if path == "-":
        return sys.stdin.buffer.read().decode("utf-8")
    with open(path, "rb") as f:
        return f.read().decode("utf-8")


def pick(flag, value):
    return flag if flag is not None else value


def run_command(args, config) -> tuple[str, int]:
    fmt = pick(args.format, config["format"])
    command = args.command

    if command in ("solve", "oracle", "compare", "height"):
        check = pick(args.check, config["check"])
        inst = parse_instance(read_text(args.instance), presorted=args.presorted, verify=check)

    if command == "solve":
        return format_solution(inst, solve(inst, check=check), fmt), EXIT_OK

    if command == "oracle":
        guard = pick(args.guard, config["guard"])
        backtrace_guard = min(guard, config["backtrace_guard"])
        if inst.n <= backtrace_guard:
            cost, a = dp_optimal_assignment(inst, guard=backtrace_guard)
            record = {"cost": cost, "edges": [list(pair) for pair in a.pairs(inst)]}
        else:
            if not args.quiet:
                print(f"{inst.n} points above {backtrace_guard}, reporting the cost only", file=sys.stderr)
            record = {"cost": dp_optimal_cost(inst, guard=guard)}
        if args.exhaustive:
            record["exhaustive_cost"] = exhaustive_optimal(inst)
        if fmt == "tsv":
            record = {k: v for k, v in record.items() if k != "edges"}
            return format_record(record, fmt), EXIT_OK
        return to_json(record), EXIT_OK

    if command == "compare":
        guard = pick(args.guard, config["guard"])
        if not args.quiet:
            print("Using dp oracle...", file=sys.stderr)
        cost = solve(inst, check=check).total_cost
        dp_cost = dp_optimal_cost(inst, guard=guard)
        status = "PASS" if cost == dp_cost else "FAIL"
        record = {"cost": cost, "dp_cost": dp_cost, "status": status}
        return format_record(record, fmt), EXIT_OK if status == "PASS" else EXIT_INTERNAL

    if command == "height":
        p = height_profile(inst)
        if args.plot:
            save_height_plot(p, args.plot, inst)
            if not args.quiet:
                print(f"Saved plot to {args.plot}", file=sys.stderr)
        return height_tsv(p), EXIT_OK

    if command == "gen":
        gen = config["gen"]
        inst = generate_instance(
            seed=pick(args.seed, config["seed"]),
            size_s=pick(args.size_s, gen["size_s"]),
            size_t=pick(args.size_t, gen["size_t"]),
            low=pick(args.low, gen["low"]),
            high=pick(args.high, gen["high"]),
            distribution=pick(args.dist, gen["distribution"]),
            clusters=pick(args.clusters, gen["clusters"]),
        )
        return emit_instance(inst), EXIT_OK

    if command == "bench":
        bench = config["bench"]
        sizes = [int(v) for v in args.sizes.split(",") if v.strip()] if args.sizes is not None else bench["sizes"]
        report = run_bench(
            sizes,
            seed=pick(args.seed, config["seed"]),
            reps=pick(args.reps, config["reps"]),
            include_dp=pick(args.dp, bench["dp"]),
            guard=pick(args.guard, config["guard"]),
            dist=pick(args.dist, bench["dist"]),
            t_share=pick(args.t_share, bench["t_share"]),
            quiet=args.quiet,
        )
        if fmt == "json":
            return to_json([vars(row) for row in report.rows]), EXIT_OK
        return report.to_tsv(), EXIT_OK

    if command == "rhythm":
        inst = rhythm_instance(args.a, args.b, swap=pick(args.swap, config["rhythm"]["swap"]))
        return format_record({"cost": solve(inst).total_cost}, fmt), EXIT_OK

    raise ValueError(f"unknown command {command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out, code = run_command(args, config)
    except InfeasibleInstance as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InternalError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ScaffoldError, ValueError, TypeError, OSError, KeyError, tomli.TOMLDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
