import argparse
import sys

import numpy as np
from tqdm import tqdm

from scaffold_assign.eval.oracle import dp_optimal_cost, exhaustive_optimal, karp_li_identity_check, profit_direct
from scaffold_assign.eval.utils_eval import exhaustive_grid, height_respecting_sets, random_suite
from scaffold_assign.model.profile import height_profile, nearest_neighbors
from scaffold_assign.model.solver import profit_sweep, solve


# every suite returns a list of failure messages, empty when it passes


def suite_oracle(seed, count, progress):
    failures = []
    for i, inst in enumerate(progress(random_suite(seed, count), total=count, desc="oracle")):
        # check=True also runs the structural postconditions
        cost = solve(inst, check=True).total_cost
        dp = dp_optimal_cost(inst)
        if cost != dp:
            failures.append(f"#{i} {inst}: solve {cost} != dp {dp}")
    return failures


def suite_ground_truth(seed, count, progress):
    grid = exhaustive_grid(limit=5 * count)
    instances = grid + list(random_suite(seed, count, max_t=5, max_s=9))
    failures = []
    for i, inst in enumerate(progress(instances, desc="ground truth")):
        truth = exhaustive_optimal(inst)
        dp = dp_optimal_cost(inst)
        cost = solve(inst).total_cost
        if not truth == dp == cost:
            failures.append(f"#{i} {inst}: exhaustive {truth}, dp {dp}, solve {cost}")
    return failures


def suite_profit(seed, count, progress):
    failures = []
    # n <= 500
    instances = random_suite(seed, count, max_t=200, max_s=300, high=1000)
    for i, inst in enumerate(progress(instances, total=count, desc="profit")):
        if inst.delta == 0:
            continue
        table = profit_sweep(inst, height_profile(inst), nearest_neighbors(inst), record=True)
        for s_index, profit in table.profits().items():
            direct = profit_direct(inst, s_index)
            if profit != direct:
                failures.append(f"#{i} s[{s_index}]: sweep {profit} != direct {direct}")
    return failures


def suite_karp_li(seed, count, progress, limit=200):
    failures = []
    for i, inst in enumerate(progress(random_suite(seed, count, max_t=8, max_s=12), total=count, desc="karp-li")):
        for removed in height_respecting_sets(inst, limit=limit):
            lhs, rhs = karp_li_identity_check(inst, removed)
            if lhs != rhs:
                failures.append(f"#{i} {inst} R={removed}: {lhs} != {rhs}")
    return failures


def suite_upper_limit(seed, count, progress):
    failures = []
    for i, inst in enumerate(progress(random_suite(seed, count), total=count, desc="upper limit")):
        if inst.delta == 0:
            continue
        p, nn = height_profile(inst), nearest_neighbors(inst)
        full = profit_sweep(inst, p, nn)
        s_only = profit_sweep(inst, p, nn, upper=int(inst.s_coords[-1]))
        if not np.array_equal(full.best_index, s_only.best_index):
            failures.append(f"#{i} {inst}: {full.best_index[1:].tolist()} != {s_only.best_index[1:].tolist()}")
    return failures


SUITES = {
    "oracle": (suite_oracle, 10_000),
    "ground-truth": (suite_ground_truth, 10_000),
    "profit": (suite_profit, 1_000),
    "karp-li": (suite_karp_li, 500),
    "upper-limit": (suite_upper_limit, 1_000),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description="solver against the reference oracles")
    parser.add_argument("-s", "--seed", default=0, type=int)
    parser.add_argument("--suite", action="append", choices=list(SUITES), help="Run only these suites.")
    parser.add_argument("--scale", default=1.0, type=float, help="Multiply every instance count.")
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args(argv)

    def progress(it, **kwargs):
        return tqdm(it, file=sys.stderr, disable=args.quiet, **kwargs)

    ok = True
    for name in args.suite or list(SUITES):
        fn, count = SUITES[name]
        count = max(1, int(count * args.scale))
        failures = fn(args.seed, count, progress)
        print(f"{'PASS' if not failures else 'FAIL'} {name} ({count} instances)")
        for line in failures[:10]:
            print(f"  {line}")
        ok = ok and not failures
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
