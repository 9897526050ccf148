"""
Minimum-cost many-to-one assignment of S onto T on a line, in O(n log n) (O(n) on presorted input).

Outline:
1. heights of all points in one sweep, nearest neighbours in one merge
2. profit of every S point of height k in 1..delta, in one right-to-left sweep
3. per height, the leftmost maximum-profit point joins the removal set R
4. R goes to nearest neighbours, S \\ R is matched in order onto T
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scaffold_assign.model.core import (
    Assignment,
    Instance,
    count_crossings,
    instance_from_sorted,
    validate_assignment,
    without_sources,
)
from scaffold_assign.model.errors import (
    CardinalityMismatch,
    InvariantViolation,
    MalformedRemovalSet,
    MissingHeightLevel,
    NoRemovalNeeded,
)
from scaffold_assign.model.profile import (
    HeightProfile,
    NeighborTable,
    abs_area,
    height_profile,
    nearest_neighbors,
)
from scaffold_assign.model.utils import default, exists, frozen, index_array


@dataclass(frozen=True, eq=False)
class ProfitTable:
    """
    best_index[k], best_coord[k], best_profit[k] for k in 1..delta (slot 0 unused, index -1 when no point was seen).
    With record=True the sweep also keeps every candidate as parallel arrays, in sweep order from right to left.
    """

    delta: int
    upper: int
    best_index: np.ndarray
    best_coord: np.ndarray
    best_profit: np.ndarray
    candidate_index: np.ndarray | None = None
    candidate_height: np.ndarray | None = None
    candidate_profit: np.ndarray | None = None

    def profits(self) -> dict[int, int]:
        """
        Profit of every recorded candidate, keyed by S index.
        """
        if not exists(self.candidate_index):
            raise ValueError("profit table was built without record=True")
        return dict(zip(self.candidate_index.tolist(), self.candidate_profit.tolist()))


@dataclass(frozen=True, eq=False)
class Solution:
    assignment: Assignment
    total_cost: int
    removed: tuple[int, ...]  # S indices of R, in increasing order
    removed_heights: tuple[int, ...]
    one_to_one_part: Assignment
    neighbor_sum: int  # sum over R of |r - N(r)|
    reduced_area: int  # integral of |H_R|, the cost of the one-to-one part

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return (
            self.total_cost == other.total_cost
            and self.removed == other.removed
            and self.removed_heights == other.removed_heights
            and self.neighbor_sum == other.neighbor_sum
            and self.reduced_area == other.reduced_area
            and np.array_equal(self.assignment.s_index, other.assignment.s_index)
            and np.array_equal(self.assignment.t_index, other.assignment.t_index)
        )

    __hash__ = None


def one_to_one_sorted(inst: Instance) -> Assignment:
    ns, nt = inst.s_coords.size, inst.t_coords.size
    if ns != nt:
        raise CardinalityMismatch(f"sorted matching needs |S| = |T|, got {ns} and {nt}")
    k = np.arange(ns)
    return Assignment.build(inst, k, k)


def profit_sweep(
    inst: Instance,
    p: HeightProfile,
    nn: NeighborTable,
    upper: int | None = None,
    record: bool = False,
) -> ProfitTable:
    """
    P(s) = integral from s to m of h^k - |s - N(s)| for every S point s of height k in 1..delta, where h^k is +1
    where H >= k and -1 elsewhere, and m defaults to the largest point of S and T.

    Right to left, per level k the sweep keeps the integral of the last height-k S point seen and the coordinate of
    the last T point where H drops from k to k - 1. Between two consecutive height-k S points s' < s there is exactly
    one such T point t, with h^k = +1 on [s', t) and -1 on [t, s), so
        integral(s') = integral(s) + (t - s') - (s - t)
    and the rightmost height-k point starts at m - s_r, since H stays >= k after it.
    Equal profits keep the leftmost point, so the incumbent is replaced on >=.
    """
    delta = p.delta
    if delta <= 0:
        raise NoRemovalNeeded("|S| = |T|, nothing to remove; use the sorted one-to-one matching")
    m = int(default(upper, p.max_point))

    levels = p.levels
    # S points at levels 1..delta and T points dropping from a level in 1..delta
    relevant = np.where(p.is_source, (levels >= 1) & (levels <= delta), (levels >= 0) & (levels < delta))
    positions = np.flatnonzero(relevant)[::-1]

    owner = np.full(levels.size, -1, dtype=np.int64)
    owner[p.s_position] = np.arange(p.s_position.size)

    xs = p.breakpoints[positions].tolist()
    ks = levels[positions].tolist()
    owners = owner[positions].tolist()
    dist = nn.distance.tolist()

    integral = [0] * (delta + 1)
    anchor = [None] * (delta + 1)
    crossing = [0] * (delta + 1)
    best_index = [-1] * (delta + 1)
    best_coord = [0] * (delta + 1)
    best_profit = [0] * (delta + 1)
    rec_index, rec_height, rec_profit = [], [], []

    for x, k, i in zip(xs, ks, owners):
        if i < 0:
            # T point, H drops from k + 1 to k
            crossing[k + 1] = x
            continue
        s = anchor[k]
        if s is None:
            integral[k] = m - x
        else:
            t = crossing[k]
            integral[k] += (t - x) - (s - t)
        anchor[k] = x
        profit = integral[k] - dist[i]
        if best_index[k] < 0 or profit >= best_profit[k]:
            best_index[k] = i
            best_coord[k] = x
            best_profit[k] = profit
        if record:
            rec_index.append(i)
            rec_height.append(k)
            rec_profit.append(profit)

    as_array = lambda v: frozen(np.asarray(v, dtype=np.int64))  # noqa: E731
    return ProfitTable(
        delta=delta,
        upper=m,
        best_index=as_array(best_index),
        best_coord=as_array(best_coord),
        best_profit=as_array(best_profit),
        candidate_index=as_array(rec_index) if record else None,
        candidate_height=as_array(rec_height) if record else None,
        candidate_profit=as_array(rec_profit) if record else None,
    )


def select_r(pt: ProfitTable) -> tuple[int, ...]:
    """
    r_1, ..., r_delta. They come out strictly increasing in sweep order for any correct profit table; anything else
    is a bug and aborts.
    """
    missing = [k for k in range(1, pt.delta + 1) if pt.best_index[k] < 0]
    if missing:
        raise MissingHeightLevel(f"no S point of height {missing[0]} (of 1..{pt.delta})")
    removed = pt.best_index[1:]
    coords = pt.best_coord[1:]
    # S index order is sweep order among S points
    if np.any(removed[1:] <= removed[:-1]) or np.any(coords[1:] < coords[:-1]):
        k = int(np.flatnonzero((removed[1:] <= removed[:-1]) | (coords[1:] < coords[:-1]))[0]) + 1
        raise InvariantViolation(
            f"removal set not increasing: r_{k} = s[{int(removed[k - 1])}] at {int(coords[k - 1])}, "
            f"r_{k + 1} = s[{int(removed[k])}] at {int(coords[k])}"
        )
    return tuple(removed.tolist())


def assign_with_removal(inst: Instance, removed, nn: NeighborTable | None = None) -> Assignment:
    """
    A_R: every r in R goes to its nearest neighbour, S \\ R is matched in order onto T.
    """
    removed = index_array(removed)
    ns, nt = inst.s_coords.size, inst.t_coords.size
    if removed.size != ns - nt or np.unique(removed).size != removed.size:
        raise MalformedRemovalSet(f"need {ns - nt} distinct S indices, got {removed.tolist()}")
    if removed.size and (removed.min() < 0 or removed.max() >= ns):
        raise MalformedRemovalSet(f"S index out of range [0, {ns}) in {removed.tolist()}")
    nn = default(nn, nearest_neighbors(inst))

    keep = np.ones(ns, dtype=bool)
    keep[removed] = False
    targets = np.empty(ns, dtype=np.int64)
    targets[keep] = np.arange(nt)
    targets[removed] = nn.index[removed]
    return Assignment.from_targets(inst, targets)


def _solution(inst: Instance, a: Assignment, removed, heights, nn: NeighborTable | None) -> Solution:
    removed = index_array(removed)
    keep = np.ones(inst.s_coords.size, dtype=bool)
    keep[removed] = False
    kept = np.flatnonzero(keep)
    one_to_one = Assignment(kept, a.t_index[kept], a.cost[kept])
    neighbor_sum = int(nn.distance[removed].sum()) if exists(nn) else 0
    return Solution(
        assignment=a,
        total_cost=a.total_cost,
        removed=tuple(removed.tolist()),
        removed_heights=tuple(heights),
        one_to_one_part=one_to_one,
        neighbor_sum=neighbor_sum,
        reduced_area=one_to_one.total_cost,
    )


def solve(inst: Instance, check: bool = False) -> Solution:
    if inst.delta == 0:
        sol = _solution(inst, one_to_one_sorted(inst), (), (), None)
    else:
        profile = height_profile(inst)
        nn = nearest_neighbors(inst)
        table = profit_sweep(inst, profile, nn)
        removed = select_r(table)
        a = assign_with_removal(inst, removed, nn)
        heights = profile.s_height[list(removed)].tolist()
        sol = _solution(inst, a, removed, heights, nn)
    if check:
        verify_solution(inst, sol)
    return sol


def solve_presorted(s, t, verify: bool = True, check: bool = False) -> Solution:
    """
    Same result as solve on inputs already sorted non-decreasing; no sort is performed. verify=False trusts the order.
    """
    return solve(instance_from_sorted(s, t, verify=verify), check=check)


def verify_solution(inst: Instance, sol: Solution):
    """
    Debug-mode postconditions of solve. Raises InvariantViolation on the first broken one.
    """
    a = sol.assignment
    report = validate_assignment(inst, a)
    if not report.ok:
        raise InvariantViolation(f"invalid assignment:\n{report}")
    if a.total_cost != sol.total_cost:
        raise InvariantViolation(f"total_cost {sol.total_cost} != sum of edge costs {a.total_cost}")
    crossings = count_crossings(inst, a)
    if crossings:
        raise InvariantViolation(f"{crossings} crossing edge pairs")

    delta = inst.delta
    removed = np.asarray(sol.removed, dtype=np.int64)
    if removed.size != delta:
        raise InvariantViolation(f"|R| = {removed.size} but |S| - |T| = {delta}")
    profile = height_profile(inst)
    heights = profile.s_height[removed].tolist()
    if heights != list(range(1, delta + 1)) or list(sol.removed_heights) != heights:
        raise InvariantViolation(f"removed heights {heights} are not 1..{delta}")
    if removed.size > 1 and np.any(removed[1:] <= removed[:-1]):
        raise InvariantViolation(f"removed indices {removed.tolist()} not increasing")

    reduced = abs_area(height_profile(without_sources(inst, removed)))
    if sol.neighbor_sum + reduced != sol.total_cost:
        raise InvariantViolation(
            f"decomposition broken: {sol.neighbor_sum} + {reduced} != total cost {sol.total_cost}"
        )

    # every source of a multi-assigned target sits at nearest-neighbour distance with no target in between
    nn = nearest_neighbors(inst)
    shared = np.bincount(a.t_index, minlength=inst.t_coords.size) >= 2
    mask = shared[a.t_index]
    s = inst.s_coords[a.s_index[mask]]
    t = inst.t_coords[a.t_index[mask]]
    far = np.abs(s - t) != nn.distance[a.s_index[mask]]
    between = np.searchsorted(inst.t_coords, np.maximum(s, t), side="left") - np.searchsorted(
        inst.t_coords, np.minimum(s, t), side="right"
    )
    if np.any(far) or np.any(between > 0):
        e = int(np.flatnonzero(far | (between > 0))[0])
        raise InvariantViolation(f"source {int(s[e])} shares target {int(t[e])} but is not at nearest distance")
