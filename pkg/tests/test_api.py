import json

import pytest
from conftest import EXAMPLE_S, EXAMPLE_T

from scaffold_assign.api import LineAssigner
from scaffold_assign.model.errors import UnsortedInput


def test_solve_and_cost():
    assigner = LineAssigner(check=True)
    sol = assigner.solve(EXAMPLE_S, EXAMPLE_T)
    assert sol.total_cost == 19
    assert assigner.cost(list(reversed(EXAMPLE_S)), EXAMPLE_T) == 19
    assert assigner.oracle_cost(EXAMPLE_S, EXAMPLE_T) == 19
    cost, a = assigner.oracle_assignment(EXAMPLE_S, EXAMPLE_T)
    assert cost == a.total_cost == 19


def test_presorted_assigner():
    assigner = LineAssigner(presorted=True, check=True)
    assert assigner.cost(EXAMPLE_S, EXAMPLE_T) == 19
    with pytest.raises(UnsortedInput):
        assigner.cost([3, 1], [2])


def test_rhythm():
    assert LineAssigner().rhythm("xxx.", "x...") == 3
    assert LineAssigner().rhythm("x...", "xxx.", swap=True) == 3


def test_load(example_file, example):
    assert LineAssigner().load(example_file) == example


def test_exports(tmp_path):
    assigner = LineAssigner()
    with pytest.raises(ValueError):
        assigner.export_solution(tmp_path / "none.json")
    assigner.solve(EXAMPLE_S, EXAMPLE_T)
    out = tmp_path / "sol.json"
    assigner.export_solution(out)
    assert json.loads(out.read_text())["removed"] == [4, 16]

    tsv, png = tmp_path / "h.tsv", tmp_path / "h.png"
    p = assigner.export_height(EXAMPLE_S, EXAMPLE_T, file_tsv=tsv, file_plot=png)
    assert p.delta == 2
    assert tsv.read_text().startswith("# x\tH\n-inf\t0\n")
    assert png.exists()
