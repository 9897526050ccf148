from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from scaffold_assign.eval.oracle import DEFAULT_GUARD, dp_optimal_cost
from scaffold_assign.eval.utils_eval import draw_coordinates
from scaffold_assign.model.core import make_instance
from scaffold_assign.model.errors import GeneratorConfigError, InvariantViolation
from scaffold_assign.model.solver import solve, solve_presorted
from scaffold_assign.model.utils import MAX_POINTS


BENCH_COLUMNS = ("n_s", "n_t", "dist", "seed", "t_solve_ns", "t_presorted_ns", "t_dp_ns", "cost", "dp_cost")


@dataclass(frozen=True)
class BenchRow:
    n_s: int
    n_t: int
    dist: str
    seed: int
    t_solve_ns: int
    t_presorted_ns: int
    t_dp_ns: int | None
    cost: int
    dp_cost: int | None

    @property
    def n(self) -> int:
        return self.n_s + self.n_t

    def to_tsv(self) -> str:
        return "\t".join("" if getattr(self, c) is None else str(getattr(self, c)) for c in BENCH_COLUMNS)


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_tsv(self) -> str:
        lines = ["\t".join(BENCH_COLUMNS)] + [row.to_tsv() for row in self.rows]
        return "\n".join(lines) + "\n"


def parse_bench_tsv(text: str) -> BenchReport:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or tuple(lines[0].split("\t")) != BENCH_COLUMNS:
        raise ValueError(f"bench table must start with the header {chr(9).join(BENCH_COLUMNS)!r}")
    report = BenchReport()
    for line in lines[1:]:
        cells = dict(zip(BENCH_COLUMNS, line.split("\t")))
        optional = lambda c: int(cells[c]) if cells.get(c) else None  # noqa: E731
        report.rows.append(
            BenchRow(
                n_s=int(cells["n_s"]),
                n_t=int(cells["n_t"]),
                dist=cells["dist"],
                seed=int(cells["seed"]),
                t_solve_ns=int(cells["t_solve_ns"]),
                t_presorted_ns=int(cells["t_presorted_ns"]),
                t_dp_ns=optional("t_dp_ns"),
                cost=int(cells["cost"]),
                dp_cost=optional("dp_cost"),
            )
        )
    return report


def median_ns(fn, reps: int) -> tuple[int, object]:
    times = []
    result = None
    for _ in range(reps):
        start = time.perf_counter_ns()
        result = fn()
        times.append(time.perf_counter_ns() - start)
    return int(np.median(times)), result


def split_size(n: int, t_share: float) -> tuple[int, int]:
    """
    n total points as (|S|, |T|) with |T| = round(n * t_share), kept within 1 <= |T| <= |S|.
    """
    n_t = min(max(1, round(n * t_share)), n // 2)
    return n - n_t, n_t


def run_bench(
    sizes,
    seed: int = 0,
    reps: int = 3,
    include_dp: bool = False,
    guard: int = DEFAULT_GUARD,
    dist: str = "uniform",
    t_share: float = 0.4,
    high: int | None = None,
    quiet: bool = False,
) -> BenchReport:
    """
    One row per total size n: generate, time solve and solve_presorted (median of `reps`), optionally time the dp
    oracle and require equal costs. Rows above the dp guard keep empty dp cells, sizes outside [2, MAX_POINTS] are
    skipped with a note on stderr, and the run continues.
    Coordinates default to [0, 4n].
    """
    if reps < 1:
        raise GeneratorConfigError(f"reps must be >= 1, got {reps}")
    if not 0 < t_share <= 0.5:
        raise GeneratorConfigError(f"t_share must be in (0, 0.5], got {t_share}")
    report = BenchReport()
    for n in tqdm(list(sizes), desc="bench", file=sys.stderr, disable=quiet):
        if not 2 <= n <= MAX_POINTS:
            print(f"skip n={n}: outside [2, {MAX_POINTS}]", file=sys.stderr)
            continue
        n_s, n_t = split_size(n, t_share)
        s_raw, t_raw = draw_coordinates(seed, n_s, n_t, 0, high if high is not None else 4 * n, dist)
        inst = make_instance(s_raw, t_raw)
        s_sorted, t_sorted = inst.s_coords, inst.t_coords

        # the solve path sorts the raw draw, the presorted path gets sorted coordinates
        t_solve, sol = median_ns(lambda: solve(make_instance(s_raw, t_raw)), reps)
        t_presorted, _ = median_ns(lambda: solve_presorted(s_sorted, t_sorted, verify=False), reps)

        t_dp = dp_cost = None
        if include_dp:
            if inst.n > guard:
                print(f"skip dp for n={inst.n}: above guard {guard}", file=sys.stderr)
            else:
                t_dp, dp_cost = median_ns(lambda: dp_optimal_cost(inst, guard=guard), reps)
                if dp_cost != sol.total_cost:
                    raise InvariantViolation(
                        f"n={inst.n} seed={seed}: solve cost {sol.total_cost} != dp cost {dp_cost}"
                    )

        report.rows.append(
            BenchRow(
                n_s=n_s,
                n_t=n_t,
                dist=dist,
                seed=seed,
                t_solve_ns=t_solve,
                t_presorted_ns=t_presorted,
                t_dp_ns=t_dp,
                cost=sol.total_cost,
                dp_cost=dp_cost,
            )
        )
    return report
