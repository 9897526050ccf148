"""
Reference implementations the fast solver is checked against.

dp_optimal_cost     - quadratic dynamic program over order-preserving assignments
exhaustive_optimal  - every surjection S -> T, crossing or not
profit_direct       - profit by literal piecewise integration
karp_li_identity_check - area of the reduced height function, two ways
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scaffold_assign.model.core import Assignment, Instance, without_sources
from scaffold_assign.model.errors import (
    HeightOutOfRange,
    InstanceTooLarge,
    MalformedRemovalSet,
)
from scaffold_assign.model.profile import HeightProfile, abs_area, height_profile
from scaffold_assign.model.utils import index_array


DEFAULT_GUARD = 20_000
DEFAULT_BACKTRACE_GUARD = 4_000
EXHAUSTIVE_MAX_T = 5
EXHAUSTIVE_MAX_S = 9


def _check_guard(inst: Instance, guard: int):
    if inst.n > guard:
        raise InstanceTooLarge(f"{inst.n} points exceed the dp guard of {guard}")


# dynamic program
#   D[i][j] = |s_i - t_j| + min(D[i-1][j-1], D[i-1][j]) for i >= j >= 1, D[0][0] = 0
# cells with i < j, or j = 0 < i, are unreachable; they are tracked with a boolean mask instead of a large number


def _dp_row(prev: np.ndarray, prev_ok: np.ndarray, d: np.ndarray):
    diag, diag_ok = prev[:-1], prev_ok[:-1]
    up, up_ok = prev[1:], prev_ok[1:]
    from_diag = diag_ok & (~up_ok | (diag <= up))
    cur_ok = np.zeros_like(prev_ok)
    cur_ok[1:] = diag_ok | up_ok
    cur = np.zeros_like(prev)
    cur[1:] = np.where(cur_ok[1:], np.where(from_diag, diag, up) + d, 0)
    return cur, cur_ok, from_diag


def dp_optimal_cost(inst: Instance, guard: int = DEFAULT_GUARD) -> int:
    _check_guard(inst, guard)
    s, t = inst.s_coords, inst.t_coords
    prev = np.zeros(t.size + 1, dtype=np.int64)
    prev_ok = np.zeros(t.size + 1, dtype=bool)
    prev_ok[0] = True
    for x in s.tolist():
        prev, prev_ok, _ = _dp_row(prev, prev_ok, np.abs(x - t))
    return int(prev[t.size])


@dataclass(frozen=True, eq=False)
class DpTable:
    cost: np.ndarray  # (|S| + 1, |T| + 1), meaningful only where reachable
    reachable: np.ndarray
    from_diagonal: np.ndarray  # predecessor of (i, j) is (i - 1, j - 1), else (i - 1, j)

    def value(self, i: int, j: int) -> int | None:
        return int(self.cost[i, j]) if self.reachable[i, j] else None

    @property
    def optimum(self) -> int:
        return int(self.cost[-1, -1])


def dp_table(inst: Instance, guard: int = DEFAULT_BACKTRACE_GUARD) -> DpTable:
    _check_guard(inst, guard)
    s, t = inst.s_coords, inst.t_coords
    cost = np.zeros((s.size + 1, t.size + 1), dtype=np.int64)
    reachable = np.zeros((s.size + 1, t.size + 1), dtype=bool)
    from_diagonal = np.zeros((s.size + 1, t.size + 1), dtype=bool)
    reachable[0, 0] = True
    for i, x in enumerate(s.tolist(), start=1):
        cost[i], reachable[i], from_diagonal[i, 1:] = _dp_row(cost[i - 1], reachable[i - 1], np.abs(x - t))
    return DpTable(cost=cost, reachable=reachable, from_diagonal=from_diagonal)


def backtrace(inst: Instance, table: DpTable) -> Assignment:
    targets = np.empty(inst.s_coords.size, dtype=np.int64)
    j = inst.t_coords.size
    for i in range(inst.s_coords.size, 0, -1):
        targets[i - 1] = j - 1
        if table.from_diagonal[i, j]:
            j -= 1
    return Assignment.from_targets(inst, targets)


def dp_optimal_assignment(inst: Instance, guard: int = DEFAULT_BACKTRACE_GUARD) -> tuple[int, Assignment]:
    table = dp_table(inst, guard)
    return table.optimum, backtrace(inst, table)


# exhaustive enumeration


def exhaustive_optimal(inst: Instance) -> int:
    ns, nt = inst.s_coords.size, inst.t_coords.size
    if nt > EXHAUSTIVE_MAX_T or ns > EXHAUSTIVE_MAX_S:
        raise InstanceTooLarge(
            f"exhaustive search is limited to |T| <= {EXHAUSTIVE_MAX_T} and |S| <= {EXHAUSTIVE_MAX_S}, "
            f"got {nt} and {ns}"
        )
    # axis i of the (nt,) * ns tensors is the target of s_i, so every cell is one map S -> T
    dist = np.abs(inst.s_coords[:, None] - inst.t_coords[None, :])
    bits = np.left_shift(1, np.arange(nt, dtype=np.int64))
    cost = np.zeros((1,) * ns, dtype=np.int64)
    cover = np.zeros((1,) * ns, dtype=np.int64)
    for i in range(ns):
        shape = [1] * ns
        shape[i] = nt
        cost = cost + dist[i].reshape(shape)
        cover = cover | bits.reshape(shape)
    surjective = cover == (1 << nt) - 1
    return int(cost[surjective].min())


# literal integrals


def integral_from(p: HeightProfile, position: int, k: int, upper: int | None = None) -> int:
    """
    Integral of h^k from the breakpoint at `position` up to `upper` (default: the largest point).
    """
    xs = p.breakpoints[position:]
    if upper is not None:
        xs = np.append(xs[xs < upper], upper)
    lengths = np.diff(xs)
    signs = np.where(p.levels[position : position + lengths.size] >= k, 1, -1)
    return int((signs * lengths).sum())


def profit_direct(inst: Instance, s_index: int, upper: int | None = None) -> int:
    if not 0 <= s_index < inst.s_coords.size:
        raise IndexError(f"s_index {s_index} out of range for |S| = {inst.s_coords.size}")
    p = height_profile(inst)
    k = int(p.s_height[s_index])
    if not 1 <= k <= p.delta:
        raise HeightOutOfRange(f"s[{s_index}] has height {k}, profits exist for heights 1..{p.delta}")
    s = int(inst.s_coords[s_index])
    nearest = int(np.abs(inst.t_coords - s).min())
    return integral_from(p, int(p.s_position[s_index]), k, upper) - nearest


def karp_li_identity_check(inst: Instance, removed) -> tuple[int, int]:
    """
    For R whose k-th smallest element has height k:
        integral |H_R|  ==  integral from min to m of |H|  -  sum over r_k of integral from r_k to m of h^k
    Returns (lhs, rhs); the caller compares them.
    """
    p = height_profile(inst)
    removed = index_array(removed)
    heights = p.s_height[removed].tolist()
    if heights != list(range(1, p.delta + 1)) or np.any(np.diff(p.s_position[removed]) <= 0):
        raise MalformedRemovalSet(f"heights {heights} of R are not 1..{p.delta} in increasing order")

    lhs = abs_area(height_profile(without_sources(inst, removed)))
    rhs = abs_area(p) - sum(
        integral_from(p, int(p.s_position[r]), k) for k, r in enumerate(removed.tolist(), start=1)
    )
    return lhs, rhs
