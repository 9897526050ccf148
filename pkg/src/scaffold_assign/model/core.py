"""
Instances, assignments and their cost.

notation:
S - source points, each assigned to exactly one target
T - target points, each receiving at least one source
delta - |S| - |T|, the number of sources the one-to-one part leaves out

At equal coordinates a T point precedes an S point in sweep order, and duplicates inside one set keep index order.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from scaffold_assign.model.errors import (
    EmptySource,
    EmptyTarget,
    InfeasibleCardinality,
    InstanceTooLarge,
    RangeExceeded,
    UnsortedInput,
)
from scaffold_assign.model.utils import (
    COORD_MAX,
    COORD_MIN,
    MAX_POINTS,
    count_inversions,
    frozen,
    index_array,
    is_sorted,
)


def _check_range(lo: int, hi: int, name: str):
    if lo < COORD_MIN or hi > COORD_MAX:
        bad = lo if lo < COORD_MIN else hi
        raise RangeExceeded(f"{name} coordinate {bad} outside [{COORD_MIN}, {COORD_MAX}]")


def _coords(values, name: str) -> np.ndarray:
    if isinstance(values, np.ndarray):
        if values.size == 0:
            return np.zeros(0, dtype=np.int64)
        if values.dtype.kind not in "iu":
            raise TypeError(f"{name} coordinates must be integers, got dtype {values.dtype}")
        # compare as python ints, uint64 maxima do not fit int64
        _check_range(int(values.min()), int(values.max()), name)
        return values.astype(np.int64, copy=False).reshape(-1)

    values = list(values)
    if not values:
        return np.zeros(0, dtype=np.int64)
    if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in values):
        raise TypeError(f"{name} coordinates must be integers")
    _check_range(int(min(values)), int(max(values)), name)
    return np.asarray(values, dtype=np.int64)


def _check_sorted(arr: np.ndarray, name: str):
    if not is_sorted(arr):
        first = int(np.flatnonzero(arr[1:] < arr[:-1])[0])
        raise UnsortedInput(f"{name} is not sorted: {int(arr[first])} precedes {int(arr[first + 1])}")


@dataclass(frozen=True, eq=False)
class Instance:
    """
    Both coordinate arrays are sorted non-decreasing and owned by the instance (copied, read-only).
    trust_order=True skips the sortedness check; only instance_from_sorted(verify=False) and already sorted
    internal arrays use it.
    """

    s_coords: np.ndarray
    t_coords: np.ndarray
    trust_order: InitVar[bool] = False

    def __post_init__(self, trust_order: bool):
        s = _coords(self.s_coords, "S")
        t = _coords(self.t_coords, "T")
        if t.size == 0:
            raise EmptyTarget("T is empty, every target needs at least one source")
        if s.size == 0:
            raise EmptySource("S is empty, there is nothing to assign")
        if s.size < t.size:
            raise InfeasibleCardinality(
                f"|S| = {s.size} < |T| = {t.size}: no assignment can cover every target; "
                "swap the roles of S and T if that is what you meant"
            )
        if s.size + t.size > MAX_POINTS:
            raise InstanceTooLarge(f"{s.size + t.size} points exceed the limit of {MAX_POINTS}")
        if not trust_order:
            _check_sorted(s, "S")
            _check_sorted(t, "T")
        # a read-only view may still sit on a caller's writeable buffer
        object.__setattr__(self, "s_coords", frozen(s.copy()))
        object.__setattr__(self, "t_coords", frozen(t.copy()))

    @property
    def delta(self) -> int:
        return int(self.s_coords.size - self.t_coords.size)

    @property
    def n(self) -> int:
        return int(self.s_coords.size + self.t_coords.size)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return np.array_equal(self.s_coords, other.s_coords) and np.array_equal(self.t_coords, other.t_coords)

    __hash__ = None

    def __repr__(self):
        return f"Instance(S={self.s_coords.tolist()}, T={self.t_coords.tolist()})"


def make_instance(s, t) -> Instance:
    # stable sort keeps duplicates in input order
    s = np.sort(_coords(s, "S"), kind="stable")
    t = np.sort(_coords(t, "T"), kind="stable")
    return Instance(s, t, trust_order=True)


def instance_from_sorted(s, t, verify: bool = True) -> Instance:
    """
    Build an instance from inputs already sorted non-decreasing, without sorting.
    With verify=False the order is trusted.
    """
    return Instance(s, t, trust_order=not verify)


def without_sources(inst: Instance, s_indices) -> Instance:
    keep = np.ones(inst.s_coords.size, dtype=bool)
    keep[index_array(s_indices)] = False
    # a subsequence of a sorted array stays sorted
    return Instance(inst.s_coords[keep], inst.t_coords, trust_order=True)


# assignments


@dataclass(frozen=True)
class Edge:
    s_index: int
    t_index: int
    cost: int


@dataclass(frozen=True, eq=False)
class Assignment:
    """
    Edge list as parallel arrays. Arbitrary (even invalid) edge lists are representable so that
    validate_assignment can report on them.
    """

    s_index: np.ndarray
    t_index: np.ndarray
    cost: np.ndarray
    total_cost: int = field(init=False)

    def __post_init__(self):
        s_index = index_array(self.s_index)
        t_index = index_array(self.t_index)
        cost = index_array(self.cost)
        if not (s_index.size == t_index.size == cost.size):
            raise ValueError("s_index, t_index and cost must have the same length")
        object.__setattr__(self, "s_index", frozen(s_index.copy()))
        object.__setattr__(self, "t_index", frozen(t_index.copy()))
        object.__setattr__(self, "cost", frozen(cost.copy()))
        object.__setattr__(self, "total_cost", int(cost.sum()))

    @classmethod
    def build(cls, inst: Instance, s_index, t_index) -> Assignment:
        s_index = index_array(s_index)
        t_index = index_array(t_index)
        cost = np.abs(inst.s_coords[s_index] - inst.t_coords[t_index])
        return cls(s_index, t_index, cost)

    @classmethod
    def from_edges(cls, edges) -> Assignment:
        edges = list(edges)
        return cls(
            [e.s_index for e in edges],
            [e.t_index for e in edges],
            [e.cost for e in edges],
        )

    @classmethod
    def from_targets(cls, inst: Instance, targets) -> Assignment:
        """
        Total assignment given as one target index per source index.
        """
        return cls.build(inst, np.arange(inst.s_coords.size), targets)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(
            Edge(s, t, c) for s, t, c in zip(self.s_index.tolist(), self.t_index.tolist(), self.cost.tolist())
        )

    def __len__(self):
        return int(self.s_index.size)

    def targets(self) -> np.ndarray:
        """
        Target index per source index; only meaningful for a total assignment.
        """
        out = np.full(int(self.s_index.max()) + 1 if self.s_index.size else 0, -1, dtype=np.int64)
        out[self.s_index] = self.t_index
        return out

    def pairs(self, inst: Instance) -> list[tuple[int, int]]:
        """
        Edges as (s, t) coordinate pairs sorted by s coordinate.
        """
        order = np.argsort(self.s_index, kind="stable")
        s = inst.s_coords[self.s_index[order]].tolist()
        t = inst.t_coords[self.t_index[order]].tolist()
        return list(zip(s, t))


def assignment_cost(inst: Instance, a: Assignment) -> int:
    # recomputed from coordinates, stored costs are not trusted
    return int(np.abs(inst.s_coords[a.s_index] - inst.t_coords[a.t_index]).sum())


@dataclass(frozen=True)
class Violation:
    kind: str  # "index" | "totality" | "surjectivity" | "cost"
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __str__(self):
        return "\n".join(str(v) for v in self.violations) if self.violations else "valid"


def validate_assignment(inst: Instance, a: Assignment) -> ValidationReport:
    ns, nt = inst.s_coords.size, inst.t_coords.size
    violations = []

    s_ok = (a.s_index >= 0) & (a.s_index < ns)
    t_ok = (a.t_index >= 0) & (a.t_index < nt)
    for e in np.flatnonzero(~s_ok).tolist():
        violations.append(Violation("index", f"edge {e}: s_index {int(a.s_index[e])} out of range [0, {ns})"))
    for e in np.flatnonzero(~t_ok).tolist():
        violations.append(Violation("index", f"edge {e}: t_index {int(a.t_index[e])} out of range [0, {nt})"))

    s_count = np.bincount(a.s_index[s_ok], minlength=ns)
    for i in np.flatnonzero(s_count == 0).tolist():
        violations.append(Violation("totality", f"s_index {i} unassigned"))
    for i in np.flatnonzero(s_count > 1).tolist():
        violations.append(Violation("totality", f"s_index {i} appears {int(s_count[i])} times"))

    t_count = np.bincount(a.t_index[t_ok], minlength=nt)
    for j in np.flatnonzero(t_count == 0).tolist():
        violations.append(Violation("surjectivity", f"t_index {j} uncovered"))

    both = np.flatnonzero(s_ok & t_ok)
    actual = np.abs(inst.s_coords[a.s_index[both]] - inst.t_coords[a.t_index[both]])
    mismatch = a.cost[both] != actual
    for e, c, d in zip(both[mismatch].tolist(), a.cost[both][mismatch].tolist(), actual[mismatch].tolist()):
        violations.append(Violation("cost", f"edge {e}: stored cost {c} != |s - t| = {d}"))

    return ValidationReport(tuple(violations))


def count_crossings(inst: Instance, a: Assignment) -> int:
    """
    Pairs of edges (a, d), (b, c) with a before b in S and c before d in T. Sorted coordinates plus the tie rule make
    index order the sweep order, so this is the inversion count of the targets read in source order.
    """
    order = np.argsort(a.s_index, kind="stable")
    return count_inversions(a.t_index[order])


def pierce_area(inst: Instance, a: Assignment) -> int:
    """
    Cost as the integral of the number of edges pierced by a vertical line, summed interval by interval over the
    distinct coordinates of S and T.
    """
    if len(a) == 0:
        return 0
    s = inst.s_coords[a.s_index]
    t = inst.t_coords[a.t_index]
    xs = np.unique(np.concatenate([inst.s_coords, inst.t_coords]))
    lo = np.searchsorted(xs, np.minimum(s, t))
    hi = np.searchsorted(xs, np.maximum(s, t))
    # edges spanning interval [xs[i], xs[i + 1]) are those with lo <= i < hi
    pierced = np.zeros(xs.size, dtype=np.int64)
    np.add.at(pierced, lo, 1)
    np.add.at(pierced, hi, -1)
    pierced = np.cumsum(pierced)[:-1]
    return int((pierced * np.diff(xs)).sum())


def uncross(inst: Instance, a: Assignment) -> Assignment:
    """
    Exchanging a crossing pair (a, d), (b, c) for (a, c), (b, d) never raises the cost and keeps the multiset of
    targets. Repeating it until no crossing is left ends in sources paired in order with the sorted targets.
    """
    order = np.argsort(a.s_index, kind="stable")
    return Assignment.build(inst, a.s_index[order], np.sort(a.t_index))
