# I/O and formatting helpers for the command line

from __future__ import annotations

import json
import re

import matplotlib

matplotlib.use("Agg")

import matplotlib.pylab as plt  # noqa: E402
import numpy as np  # noqa: E402

from scaffold_assign.model.core import Instance, instance_from_sorted, make_instance  # noqa: E402
from scaffold_assign.model.errors import (  # noqa: E402
    BadSymbol,
    InfeasibleCardinality,
    InstanceSyntaxError,
    RangeExceeded,
)
from scaffold_assign.model.profile import HeightProfile, profile_rows  # noqa: E402
from scaffold_assign.model.solver import Solution, solve  # noqa: E402
from scaffold_assign.model.utils import COORD_MAX, COORD_MIN  # noqa: E402


# instance files
#   S 0 3 4 6
#   T 1 2
# '#' starts a comment line, blank lines are skipped, LF or CRLF

_INTEGER = re.compile(r"[+-]?[0-9]+", re.ASCII)


def read_instance_lines(text: str) -> tuple[list[int], list[int]]:
    rows = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, *tokens = line.split()
        if label not in ("S", "T"):
            raise InstanceSyntaxError(f"expected a line starting with 'S' or 'T', got {label!r}", number)
        if label in rows:
            raise InstanceSyntaxError(f"second {label} line, the first one is on line {rows[label][0]}", number)
        values = []
        for token in tokens:
            if not _INTEGER.fullmatch(token):
                raise InstanceSyntaxError(f"{token!r} is not an integer", number)
            v = int(token)
            if not COORD_MIN <= v <= COORD_MAX:
                raise RangeExceeded(f"line {number}: coordinate {v} outside [{COORD_MIN}, {COORD_MAX}]")
            values.append(v)
        rows[label] = (number, values)
    for label in ("S", "T"):
        if label not in rows:
            raise InstanceSyntaxError(f"missing {label} line")
    return rows["S"][1], rows["T"][1]


def parse_instance(text: str, presorted: bool = False, verify: bool = True) -> Instance:
    """
    presorted=True builds the instance without sorting; verify then decides whether the order is checked.
    """
    s, t = read_instance_lines(text)
    if presorted:
        return instance_from_sorted(s, t, verify=verify)
    return make_instance(s, t)


def emit_instance(inst: Instance) -> str:
    def line(label, coords):
        return " ".join([label] + [str(v) for v in coords.tolist()])

    return line("S", inst.s_coords) + "\n" + line("T", inst.t_coords) + "\n"


# rhythms in box notation, 'x' an onset and '.' a rest


def parse_box_notation(pattern: str) -> list[int]:
    onsets = []
    for i, symbol in enumerate(pattern):
        if symbol in "xX":
            onsets.append(i)
        elif symbol != ".":
            raise BadSymbol(symbol, i)
    return onsets


def rhythm_instance(a: str, b: str, swap: bool = False) -> Instance:
    if swap:
        a, b = b, a
    s, t = parse_box_notation(a), parse_box_notation(b)
    try:
        return make_instance(s, t)
    except InfeasibleCardinality:
        raise InfeasibleCardinality(
            f"{a!r} has {len(s)} onsets but {b!r} has {len(t)}: the directed swap distance only moves the rhythm "
            "with more onsets onto the one with fewer, use --swap to reverse the roles"
        ) from None


def rhythm_distance(a: str, b: str, swap: bool = False) -> int:
    return solve(rhythm_instance(a, b, swap)).total_cost


# output


def solution_record(inst: Instance, sol: Solution) -> dict:
    return {
        "cost": sol.total_cost,
        "edges": [list(pair) for pair in sol.assignment.pairs(inst)],
        "removed": inst.s_coords[list(sol.removed)].tolist(),
        "decomposition": {"neighbor_sum": sol.neighbor_sum, "reduced_area": sol.reduced_area},
    }


def to_json(record) -> str:
    return json.dumps(record, separators=(", ", ": ")) + "\n"


def solution_tsv(inst: Instance, sol: Solution) -> str:
    record = solution_record(inst, sol)
    lines = [
        f"# cost\t{record['cost']}",
        "# removed\t" + " ".join(str(r) for r in record["removed"]),
        f"# neighbor_sum\t{sol.neighbor_sum}",
        f"# reduced_area\t{sol.reduced_area}",
        "s\tt",
    ]
    lines += [f"{s}\t{t}" for s, t in record["edges"]]
    return "\n".join(lines) + "\n"


def format_solution(inst: Instance, sol: Solution, fmt: str = "json") -> str:
    if fmt == "tsv":
        return solution_tsv(inst, sol)
    return to_json(solution_record(inst, sol))


def format_record(record: dict, fmt: str = "json") -> str:
    """
    Flat records: one JSON object, or a header row and a value row.
    """
    if fmt == "tsv":
        keys = list(record)
        return "\t".join(keys) + "\n" + "\t".join(str(record[k]) for k in keys) + "\n"
    return to_json(record)


def height_tsv(p: HeightProfile) -> str:
    lines = ["# x\tH", "-inf\t0"] + [f"{x}\t{h}" for x, h in profile_rows(p)]
    return "\n".join(lines) + "\n"


def save_height_plot(p: HeightProfile, path, inst: Instance | None = None):
    xs = np.concatenate([[p.min_point - 1], p.breakpoints, [p.max_point + 1]])
    hs = np.concatenate([[0], p.levels, [p.levels[-1]]])
    plt.figure(figsize=(12, 4))
    plt.step(xs, hs, where="post")
    plt.axhline(0, color="grey", linewidth=0.5)
    if inst is not None:
        plt.plot(inst.s_coords, np.zeros(inst.s_coords.size), "o", label="S")
        plt.plot(inst.t_coords, np.zeros(inst.t_coords.size), "s", label="T")
        plt.legend()
    plt.xlabel("x")
    plt.ylabel("H(x)")
    plt.savefig(path)
    plt.close()
