"""PRESORTED SCALING: t(2n) / t(n) from a bench table"""

import argparse
import sys

from scaffold_assign.eval.bench import parse_bench_tsv


RATIO_BOUND = 2.6
LARGEST_SECONDS = 5.0
DP_SPEEDUP = 100


def scaling_ratios(report, column="t_presorted_ns"):
    """
    (n, t(2n) / t(n)) for every row whose total size is twice that of another row.
    """
    times = {row.n: getattr(row, column) for row in report}
    return [(n, times[2 * n] / times[n]) for n in sorted(times) if 2 * n in times and times[n] > 0]


def main(argv=None):
    parser = argparse.ArgumentParser(description="check the presorted path scales linearly")
    parser.add_argument("table", help="bench TSV, '-' for stdin")
    parser.add_argument("--bound", default=RATIO_BOUND, type=float)
    parser.add_argument("--column", default="t_presorted_ns", choices=["t_presorted_ns", "t_solve_ns"])
    args = parser.parse_args(argv)

    text = sys.stdin.read() if args.table == "-" else open(args.table, encoding="utf-8").read()
    report = parse_bench_tsv(text)

    ok = True
    for n, ratio in scaling_ratios(report, args.column):
        passed = ratio <= args.bound
        ok = ok and passed
        print(f"n={n:>9} -> {2 * n:>9}: ratio {ratio:.2f} {'ok' if passed else f'> {args.bound}'}")

    if report.rows:
        largest = max(report.rows, key=lambda row: row.n)
        seconds = largest.t_presorted_ns / 1e9
        print(f"largest n={largest.n}: presorted solve {seconds:.3f} s (limit {LARGEST_SECONDS} s)")
        ok = ok and seconds < LARGEST_SECONDS

    for row in report:
        if row.t_dp_ns is not None and row.t_solve_ns > 0:
            print(f"n={row.n}: dp / solve = {row.t_dp_ns / row.t_solve_ns:.0f}x (want >= {DP_SPEEDUP}x)")

    print("PASS" if ok else "FAIL")
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
