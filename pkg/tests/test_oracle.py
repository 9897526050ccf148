import pytest
from conftest import instances
from hypothesis import given, settings

from scaffold_assign.eval import eval_oracle_suite
from scaffold_assign.eval.oracle import (
    DpTable,
    dp_optimal_assignment,
    dp_optimal_cost,
    dp_table,
    exhaustive_optimal,
    karp_li_identity_check,
    profit_direct,
)
from scaffold_assign.eval.utils_eval import exhaustive_grid, height_respecting_sets, random_suite
from scaffold_assign.model.core import count_crossings, make_instance, validate_assignment
from scaffold_assign.model.errors import HeightOutOfRange, InstanceTooLarge, MalformedRemovalSet
from scaffold_assign.model.profile import height_profile, nearest_neighbors
from scaffold_assign.model.solver import profit_sweep, solve


# dynamic program


def test_dp_worked_examples(example, balanced):
    assert dp_optimal_cost(example) == 19
    assert dp_optimal_cost(balanced) == 15
    assert dp_optimal_cost(make_instance([0, 2], [0, 1])) == 1


def test_dp_table_cells(example):
    table = dp_table(example)
    assert isinstance(table, DpTable)
    assert table.value(8, 6) == 19
    assert table.value(0, 0) == 0
    assert table.value(0, 1) is None
    assert table.value(3, 0) is None
    assert table.value(2, 3) is None
    # s_0 onto t_0
    assert table.value(1, 1) == 1


def test_dp_backtrace(example):
    cost, a = dp_optimal_assignment(example)
    assert cost == 19
    assert a.total_cost == 19
    assert validate_assignment(example, a).ok
    assert count_crossings(example, a) == 0


def test_dp_guards(example):
    with pytest.raises(InstanceTooLarge):
        dp_optimal_cost(example, guard=10)
    with pytest.raises(InstanceTooLarge):
        dp_table(example, guard=13)


@settings(max_examples=200, deadline=None)
@given(instances(max_t=5, max_extra=4))
def test_dp_backtrace_is_valid(inst):
    cost, a = dp_optimal_assignment(inst)
    assert cost == dp_optimal_cost(inst) == a.total_cost
    assert validate_assignment(inst, a).ok
    assert count_crossings(inst, a) == 0


# exhaustive enumeration


def test_exhaustive_examples():
    assert exhaustive_optimal(make_instance([0, 2], [0, 1])) == 1
    assert exhaustive_optimal(make_instance([5], [3])) == 2
    assert exhaustive_optimal(make_instance([0, 1, 2, 3, 4, 5, 6, 7, 8], [0, 2, 4, 6, 8])) == 4


def test_exhaustive_bounds():
    with pytest.raises(InstanceTooLarge):
        exhaustive_optimal(make_instance(list(range(10)), [0]))
    with pytest.raises(InstanceTooLarge):
        exhaustive_optimal(make_instance(list(range(6)), list(range(6))))


def test_exhaustive_grid_agrees():
    for inst in exhaustive_grid(max_t=2, max_s=5, high=4):
        truth = exhaustive_optimal(inst)
        assert dp_optimal_cost(inst) == truth, inst
        assert solve(inst).total_cost == truth, inst


def test_random_instances_agree_with_exhaustive():
    for inst in random_suite(seed=4, count=500, max_t=5, max_s=9):
        truth = exhaustive_optimal(inst)
        assert dp_optimal_cost(inst) == truth, inst
        assert solve(inst).total_cost == truth, inst


# literal profits


def test_profit_direct_example(example):
    # s = 4, 16, 15
    assert profit_direct(example, 2) == 0
    assert profit_direct(example, 7) == -4
    assert profit_direct(example, 6) == -2
    assert profit_direct(example, 0) == -1
    assert profit_direct(example, 3) == -8


def test_profit_direct_height_out_of_range(example):
    # s = 13 has height -1
    with pytest.raises(HeightOutOfRange):
        profit_direct(example, 4)


def test_profit_direct_index_bounds(example):
    with pytest.raises(IndexError):
        profit_direct(example, -1)
    with pytest.raises(IndexError):
        profit_direct(example, 8)


def test_sweep_matches_direct_profits():
    for inst in random_suite(seed=5, count=200, max_t=150, max_s=250, high=600):
        if inst.delta == 0:
            continue
        pt = profit_sweep(inst, height_profile(inst), nearest_neighbors(inst), record=True)
        for s_index, profit in pt.profits().items():
            assert profit == profit_direct(inst, s_index), (inst, s_index)


def test_upper_limit_shifts_profits_by_a_constant():
    for inst in random_suite(seed=6, count=300):
        if inst.delta == 0:
            continue
        upper = int(inst.s_coords[-1])
        p = height_profile(inst)
        shifts = {}
        for i in range(inst.s_coords.size):
            k = int(p.s_height[i])
            if 1 <= k <= p.delta:
                shifts.setdefault(k, set()).add(profit_direct(inst, i) - profit_direct(inst, i, upper=upper))
        assert all(len(v) == 1 for v in shifts.values()), inst


# integral identity


def test_karp_li_example(example):
    assert karp_li_identity_check(example, [2, 7]) == (13, 13)


def test_karp_li_equal_sizes(balanced):
    assert karp_li_identity_check(balanced, []) == (15, 15)


def test_karp_li_rejects_malformed(example):
    with pytest.raises(MalformedRemovalSet):
        karp_li_identity_check(example, [7, 2])
    with pytest.raises(MalformedRemovalSet):
        karp_li_identity_check(example, [1, 7])


def test_karp_li_every_height_respecting_set():
    for inst in random_suite(seed=8, count=500, max_t=8, max_s=12):
        for removed in height_respecting_sets(inst, limit=100):
            lhs, rhs = karp_li_identity_check(inst, removed)
            assert lhs == rhs, (inst, removed)


# acceptance runner


def test_oracle_suite_runner(capsys):
    assert eval_oracle_suite.main(["--scale", "0.01", "--quiet"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [
        "PASS oracle (100 instances)",
        "PASS ground-truth (100 instances)",
        "PASS profit (10 instances)",
        "PASS karp-li (5 instances)",
        "PASS upper-limit (10 instances)",
    ]


def test_oracle_suite_reports_failures(capsys, monkeypatch):
    monkeypatch.setattr(eval_oracle_suite, "dp_optimal_cost", lambda inst: -1)
    assert eval_oracle_suite.main(["--suite", "oracle", "--scale", "0.001", "--quiet"]) == 3
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "FAIL oracle (10 instances)"
    assert "!= dp -1" in out[1]
