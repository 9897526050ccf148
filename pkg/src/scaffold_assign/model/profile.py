"""
Height function H(x) = #{s <= x} - #{t <= x} over the merged sweep order, and nearest neighbours in T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scaffold_assign.model.core import Instance
from scaffold_assign.model.utils import frozen


@dataclass(frozen=True, eq=False)
class HeightProfile:
    """
    breakpoints  - all coordinates of S and T in sweep order (T before S on ties)
    levels       - levels[i] is H on the half-open interval starting at breakpoints[i]; H is 0 before the first
    is_source    - True where the breakpoint is an S point (+1 step), False for T (-1 step)
    s_position   - merged position of every S point, t_position likewise
    s_height     - H right after each S point's transition, t_height likewise
    """

    breakpoints: np.ndarray
    levels: np.ndarray
    is_source: np.ndarray
    s_position: np.ndarray
    t_position: np.ndarray
    s_height: np.ndarray
    t_height: np.ndarray

    @property
    def delta(self) -> int:
        return int(self.levels[-1])

    @property
    def max_point(self) -> int:
        return int(self.breakpoints[-1])

    @property
    def min_point(self) -> int:
        return int(self.breakpoints[0])

    def __len__(self):
        return int(self.breakpoints.size)


@dataclass(frozen=True, eq=False)
class NeighborTable:
    index: np.ndarray  # nearest T index per S index
    distance: np.ndarray

    def __len__(self):
        return int(self.index.size)


def merge_positions(s: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Positions of S and T points in the merged sweep order. Both inputs are sorted, so the stable sort of T followed
    by S merges two runs in linear time.
    """
    # T first, so at equal coordinates every T point precedes every S point
    order = np.argsort(np.concatenate([t, s]), kind="stable")
    position = np.empty(order.size, dtype=np.int64)
    position[order] = np.arange(order.size)
    return position[t.size :], position[: t.size]


def height_profile(inst: Instance) -> HeightProfile:
    s, t = inst.s_coords, inst.t_coords
    s_position, t_position = merge_positions(s, t)

    breakpoints = np.empty(s.size + t.size, dtype=np.int64)
    breakpoints[s_position] = s
    breakpoints[t_position] = t

    is_source = np.ones(breakpoints.size, dtype=bool)
    is_source[t_position] = False
    levels = np.cumsum(np.where(is_source, 1, -1), dtype=np.int64)

    return HeightProfile(
        breakpoints=frozen(breakpoints),
        levels=frozen(levels),
        is_source=frozen(is_source),
        s_position=frozen(s_position),
        t_position=frozen(t_position),
        s_height=frozen(levels[s_position]),
        t_height=frozen(levels[t_position]),
    )


def height_at(p: HeightProfile, x) -> int:
    i = int(np.searchsorted(p.breakpoints, x, side="right")) - 1
    return 0 if i < 0 else int(p.levels[i])


def relative_height(p: HeightProfile, x, k: int) -> int:
    return 1 if height_at(p, x) >= k else -1


def abs_area(p: HeightProfile) -> int:
    """
    Integral of |H| from the first breakpoint to the largest point m. When |S| = |T| this is the cost of the sorted
    one-to-one matching.
    """
    return int((np.abs(p.levels[:-1]) * np.diff(p.breakpoints)).sum())


def profile_rows(p: HeightProfile) -> list[tuple[int, int]]:
    return list(zip(p.breakpoints.tolist(), p.levels.tolist()))


def nearest_neighbors(inst: Instance) -> NeighborTable:
    """
    Nearest T point of every S point in one merge of the two sorted sequences. On each side the candidate is the T
    point closest in sweep order; equal distances go to the left candidate.
    """
    s, t = inst.s_coords, inst.t_coords
    s_position, _ = merge_positions(s, t)
    # T points before s_i in sweep order
    right = s_position - np.arange(s.size)
    left = right - 1
    has_left = left >= 0
    has_right = right < t.size

    left_gap = s - t[np.clip(left, 0, t.size - 1)]
    right_gap = t[np.clip(right, 0, t.size - 1)] - s
    take_left = has_left & (~has_right | (left_gap <= right_gap))

    index = np.where(take_left, left, right)
    distance = np.where(take_left, left_gap, right_gap)
    return NeighborTable(index=frozen(index.astype(np.int64)), distance=frozen(distance.astype(np.int64)))
