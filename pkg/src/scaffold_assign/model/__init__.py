from scaffold_assign.model.core import (
    Assignment,
    Edge,
    Instance,
    assignment_cost,
    count_crossings,
    instance_from_sorted,
    make_instance,
    validate_assignment,
)

from scaffold_assign.model.profile import HeightProfile, NeighborTable, height_at, height_profile, nearest_neighbors

from scaffold_assign.model.solver import (
    ProfitTable,
    Solution,
    one_to_one_sorted,
    profit_sweep,
    select_r,
    solve,
    solve_presorted,
)


__all__ = [
    "Assignment",
    "Edge",
    "Instance",
    "assignment_cost",
    "count_crossings",
    "instance_from_sorted",
    "make_instance",
    "validate_assignment",
    "HeightProfile",
    "NeighborTable",
    "height_at",
    "height_profile",
    "nearest_neighbors",
    "ProfitTable",
    "Solution",
    "one_to_one_sorted",
    "profit_sweep",
    "select_r",
    "solve",
    "solve_presorted",
]
