import json

import pytest
from conftest import EXAMPLE_TEXT

from scaffold_assign.cli.assign_cli import load_config, main
from scaffold_assign.cli.utils_cli import (
    emit_instance,
    height_tsv,
    parse_box_notation,
    parse_instance,
    rhythm_distance,
)
from scaffold_assign.model.core import make_instance
from scaffold_assign.model.errors import (
    BadSymbol,
    EmptySource,
    InfeasibleCardinality,
    InstanceSyntaxError,
    RangeExceeded,
    UnsortedInput,
)
from scaffold_assign.model.profile import height_profile


EXAMPLE_JSON = (
    '{"cost": 19, "edges": [[0, 1], [3, 2], [4, 2], [6, 8], [13, 10], [14, 11], [15, 12], [16, 12]], '
    '"removed": [4, 16], "decomposition": {"neighbor_sum": 6, "reduced_area": 13}}\n'
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# instance files


def test_parse_instance(example):
    assert parse_instance(EXAMPLE_TEXT) == example
    assert parse_instance("# comment\nS 5\n\nT 3") == make_instance([5], [3])
    assert parse_instance("S 3 -1\r\nT +2\r\n") == make_instance([-1, 3], [2])


def test_parse_instance_errors():
    with pytest.raises(InfeasibleCardinality, match="swap"):
        parse_instance("S 1\nT 1 2")
    with pytest.raises(InstanceSyntaxError) as e:
        parse_instance("S 1 2\nT 1 x")
    assert e.value.line == 2
    with pytest.raises(InstanceSyntaxError, match="line 2"):
        parse_instance("S 1\nS 2\nT 1")
    with pytest.raises(InstanceSyntaxError, match="missing T"):
        parse_instance("S 1")
    with pytest.raises(InstanceSyntaxError, match="line 1"):
        parse_instance("X 1\nT 1")
    # digits outside ASCII are not integers here
    with pytest.raises(InstanceSyntaxError):
        parse_instance("S ١\nT 1")
    with pytest.raises(RangeExceeded, match="line 1"):
        parse_instance(f"S {2**47}\nT 1")


def test_parse_presorted():
    assert parse_instance("S 0 2\nT 1", presorted=True) == make_instance([0, 2], [1])
    with pytest.raises(UnsortedInput):
        parse_instance("S 2 0\nT 1", presorted=True)


def test_emit_round_trip(example):
    text = emit_instance(parse_instance("S 16 0 15 3 14 4 13 6\n# T below\nT 12 1 11 2 10 8\n"))
    assert text == EXAMPLE_TEXT
    assert parse_instance(text) == example


# rhythms


def test_parse_box_notation():
    assert parse_box_notation("x..x") == [0, 3]
    assert parse_box_notation("x.x.x") == [0, 2, 4]
    assert parse_box_notation("X.x") == [0, 2]
    assert parse_box_notation("....") == []
    with pytest.raises(BadSymbol) as e:
        parse_box_notation("x-x")
    assert e.value.position == 1


def test_rhythm_distance():
    assert rhythm_distance("x.x.", "x.x.") == 0
    assert rhythm_distance("x.x.", "xx..") == 1
    assert rhythm_distance("xxx.", "x...") == 3
    assert rhythm_distance("x...", "xxx.", swap=True) == 3
    with pytest.raises(InfeasibleCardinality, match="--swap"):
        rhythm_distance("x...", "xxx.")
    with pytest.raises(EmptySource):
        rhythm_distance("....", "x...")


@pytest.mark.parametrize("pattern", ["x", "x..x.x..", "xxxx", "..x..x.x"])
def test_rhythm_distance_to_itself(pattern):
    assert rhythm_distance(pattern, pattern) == 0


# height export


def test_height_tsv():
    assert height_tsv(height_profile(make_instance([0], [1]))) == "# x\tH\n-inf\t0\n0\t1\n1\t0\n"


# command line


def test_solve_json(capsys, example_file):
    code, out, _ = run(capsys, "solve", str(example_file))
    assert code == 0
    assert out == EXAMPLE_JSON
    assert json.loads(out)["cost"] == 19


def test_solve_tsv_and_output_file(capsys, example_file, tmp_path):
    target = tmp_path / "out.tsv"
    code, out, _ = run(capsys, "solve", str(example_file), "--format", "tsv", "--check", "-o", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[:5] == ["# cost\t19", "# removed\t4 16", "# neighbor_sum\t6", "# reduced_area\t13", "s\tt"]
    assert lines[5:7] == ["0\t1", "3\t2"]


def test_solve_is_deterministic(capsys, example_file):
    assert run(capsys, "solve", str(example_file)) == run(capsys, "solve", str(example_file))


def test_presorted_flag(capsys, tmp_path):
    path = tmp_path / "unsorted.txt"
    path.write_text("S 4 0\nT 1\n")
    code, _, err = run(capsys, "solve", str(path), "--presorted", "--check")
    assert code == 1
    assert "not sorted" in err


def test_oracle_and_compare(capsys, example_file):
    code, out, _ = run(capsys, "oracle", str(example_file), "--exhaustive", "--quiet")
    assert code == 1  # |S| = 8 is within bounds but |T| = 6 is not
    code, out, _ = run(capsys, "oracle", str(example_file))
    assert code == 0
    record = json.loads(out)
    assert record["cost"] == 19
    assert len(record["edges"]) == 8
    code, out, _ = run(capsys, "compare", str(example_file), "--format", "tsv", "--quiet")
    assert code == 0
    assert out == "cost\tdp_cost\tstatus\n19\t19\tPASS\n"


def test_oracle_guard(capsys, example_file):
    code, _, err = run(capsys, "oracle", str(example_file), "--guard", "5")
    assert code == 1
    assert "guard" in err


def test_infeasible_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("S 1\nT 1 2\n")
    code, out, err = run(capsys, "solve", str(path))
    assert code == 2
    assert out == ""
    assert "swap" in err


def test_syntax_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("S 1 q\nT 1\n")
    code, _, err = run(capsys, "solve", str(path))
    assert code == 1
    assert "line 1" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_rhythm_command(capsys):
    assert run(capsys, "rhythm", "xxx.", "x...")[:2] == (0, '{"cost": 3}\n')
    assert run(capsys, "rhythm", "x...", "xxx.")[0] == 2
    assert run(capsys, "rhythm", "x...", "xxx.", "--swap")[1] == '{"cost": 3}\n'
    assert run(capsys, "rhythm", "x?", "x")[0] == 1


def test_height_command(capsys, example_file, tmp_path):
    plot = tmp_path / "height.png"
    code, out, _ = run(capsys, "height", str(example_file), "--plot", str(plot), "--quiet")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["# x\tH", "-inf\t0", "0\t1"]
    assert lines[-1] == "16\t2"
    assert plot.stat().st_size > 0


def test_gen_command(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "3", "--size-s", "9", "--size-t", "4")
    assert code == 0
    inst = parse_instance(out)
    assert inst.s_coords.size == 9 and inst.t_coords.size == 4
    assert run(capsys, "gen", "--seed", "3", "--size-s", "9", "--size-t", "4")[1] == out
    assert run(capsys, "gen", "--size-s", "2", "--size-t", "4")[0] == 1


def test_bench_command(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "64,128", "--reps", "1", "--dp", "--quiet", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t")[0] == "n_s"
    assert len(lines) == 3
    for line in lines[1:]:
        cells = line.split("\t")
        assert cells[7] == cells[8]


def test_config_file_overrides_defaults(capsys, example_file, tmp_path):
    config = tmp_path / "custom.toml"
    config.write_text('format = "tsv"\n[gen]\nsize_s = 5\n')
    merged = load_config(config)
    assert merged["format"] == "tsv"
    assert merged["gen"]["size_s"] == 5
    assert merged["gen"]["size_t"] == 10
    code, out, _ = run(capsys, "solve", str(example_file), "-c", str(config))
    assert out.startswith("# cost\t19")
    # the flag beats the config file
    code, out, _ = run(capsys, "solve", str(example_file), "-c", str(config), "--format", "json")
    assert out == EXAMPLE_JSON


def test_missing_config_file(capsys, example_file, tmp_path):
    code, _, _ = run(capsys, "solve", str(example_file), "-c", str(tmp_path / "nope.toml"))
    assert code == 1
