import json
import subprocess
import sys

import pytest

from gammahom import cli


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, data, name="problem.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_parse_minimal_cyclic_spec():
    spec = cli.parse_problem({"command": "group-homology", "group": {"cyclic": 3}})
    assert spec.objects["gg"].group.order == 3
    assert spec.degree_max == cli.DEFAULT_DEGREE_MAX


def test_missing_action_matrix_reports_path():
    data = {"group": {"cyclic": 2}, "module": {"rank": 1, "g_action": [[[1]]]}}
    with pytest.raises(cli.InputError) as err:
        cli.parse_problem(data, "group-homology")
    assert err.value.path == "$.module"


def test_non_associative_table_surfaces_validator_error():
    with pytest.raises(cli.InputError) as err:
        cli.parse_problem({"group": {"table": [[0, 1, 2], [1, 0, 0], [2, 2, 1]]}}, "group-homology")
    assert err.value.path == "$.group"
    assert "validation failed" in str(err.value)


def test_missing_required_field():
    with pytest.raises(cli.InputError) as err:
        cli.parse_problem({}, "hochschild")
    assert err.value.path == "$.algebra"


def test_group_homology_report(tmp_path, capsys):
    path = _write(tmp_path, {"group": {"cyclic": 3}, "action": "inversion"})
    code, out, _ = _run(["group-homology", "--input", path, "--degree-max", "3"], capsys)
    rep = json.loads(out)
    assert code == cli.EXIT_OK
    assert rep["schema_version"] == cli.SCHEMA_VERSION
    hom = rep["results"]["homology"]
    assert hom[0]["pretty"] == "Z" and hom[1]["pretty"] == "0"
    assert rep["verdicts"]["H1_matches_formula"] is True


def test_rational_cyclic_report(capsys):
    code, out, _ = _run(["rational-cyclic", "--m", "3", "--action", "k=2", "--degree-max", "3"], capsys)
    rep = json.loads(out)
    assert code == cli.EXIT_OK
    assert rep["results"]["homology_dimensions"] == [1, 0, 0, 0]


def test_reports_are_byte_identical_without_timing(tmp_path, capsys):
    path = _write(tmp_path, {"algebra": {"kind": "truncated", "n": 2}})
    first = _run(["hochschild", "--input", path, "--no-timing"], capsys)[1]
    second = _run(["hochschild", "--input", path, "--no-timing"], capsys)[1]
    assert first == second
    assert "timing_seconds" not in first


def test_text_format(capsys):
    code, out, _ = _run(["rational-cyclic", "--m", "4", "--action", "k=3", "--format", "text", "--no-timing"], capsys)
    assert code == cli.EXIT_OK
    assert "results.homology_dimensions: [1, 0, 0, 0]" in out.splitlines()


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = _run(["rational-cyclic", "--m", "3", "--action", "k=2", "--output", str(out_path)], capsys)
    assert code == cli.EXIT_OK and out == ""
    assert json.loads(out_path.read_text())["command"] == "rational-cyclic"


def test_exit_code_input_error(tmp_path, capsys):
    path = _write(tmp_path, {"group": {"cyclic": 3}, "gamma": {"cyclic": 2}, "action": [[0, 1, 2]]})
    code, _, err = _run(["group-homology", "--input", path], capsys)
    assert code == cli.EXIT_INPUT
    assert "$.group" in err


def test_exit_code_budget(tmp_path, capsys):
    path = _write(tmp_path, {"group": {"symmetric": 3}})
    code, out, _ = _run(["group-homology", "--input", path, "--degree-max", "5", "--budget-generators", "50"], capsys)
    assert code == cli.EXIT_BUDGET
    assert "error" in json.loads(out)["results"]


def test_exit_code_invariant_failure(tmp_path, capsys):
    path = _write(tmp_path, {"crossed_module": {"group": {"symmetric": 3}, "mu": [0] * 6}})
    code, _, _ = _run(["crossed", "validate", "--input", path], capsys)
    assert code == cli.EXIT_INVARIANT


def test_exit_code_cross_check_mismatch(capsys):
    # the degree-0 closed form disagrees with the computed value on the regular module
    code, out, _ = _run(["rational-cyclic", "--m", "3", "--action", "k=2", "--module", "regular"], capsys)
    rep = json.loads(out)
    assert code == cli.EXIT_MISMATCH
    assert rep["verdicts"]["bar_crosscheck"] is True
    assert rep["verdicts"]["H0_matches_closed_form"] is False


def test_other_subcommands(tmp_path, capsys):
    cases = [
        (["extensions", "enumerate"], {"group": {"cyclic": 2}, "module": {"trivial": 2}}),
        (["extensions", "obstruction"], {"group": {"cyclic": 2}, "kernel_group": {"cyclic": 4}}),
        (["cyclic"], {"algebra": {"kind": "rationals"}}),
        (["morita-check"], {"algebra": {"kind": "rationals"}, "degree_max": 1}),
        (["case2-crosscheck"], {"group": {"cyclic": 2}, "degree_max": 2}),
        (["group-cohomology"], {"group": {"cyclic": 2}}),
        (["freegroup", "schreier"], {"rank": 2, "target": {"cyclic": 2}, "images": [1, 1]}),
        (["crossed", "validate"], {"crossed_module": {"inclusion": {"gamma": {"symmetric": 3}, "subgroup": [0, 3, 4]}}}),
    ]
    for argv, data in cases:
        path = _write(tmp_path, data)
        code, out, err = _run(argv + ["--input", path], capsys)
        assert code == cli.EXIT_OK, (argv, err, out)
        assert json.loads(out)["command"] == "-".join(argv)


def test_freegroup_flags(capsys):
    code, out, _ = _run(["freegroup", "schreier", "--rank", "2", "--target", '{"cyclic": 2}', "--images", "1,1"], capsys)
    assert code == cli.EXIT_OK
    assert json.loads(out)["results"]["kernel"]["rank"] == 3


def test_crossed_pushforward(tmp_path, capsys):
    ext = {
        "kernel": {"group": {"cyclic": 2}, "gamma": {"cyclic": 2}},
        "middle": {"group": {"cyclic": 4}, "gamma": {"cyclic": 2}, "mu": [0, 1, 0, 1]},
        "base": {"inclusion": {"gamma": {"cyclic": 2}, "subgroup": [0, 1]}},
        "sigma": [0, 2],
        "tau": [0, 1, 0, 1],
        "section": [0, 1],
    }
    path = _write(tmp_path, {"extension": ext, "new_kernel": {"group": {"cyclic": 2}, "gamma": {"cyclic": 2}}, "map": [0, 0]})
    code, out, _ = _run(["crossed", "pushforward", "--input", path], capsys)
    assert code == cli.EXIT_OK
    assert json.loads(out)["verdicts"]["valid"] is True


def test_self_test_lists_criteria(capsys):
    code, out, err = _run(["self-test", "--only", "1,3"], capsys)
    lines = [l for l in err.splitlines() if l.startswith("[")]
    assert len(lines) == 2 and all(l.startswith("[PASS]") for l in lines)
    assert json.loads(out)["verdicts"] == {"01": True, "03": True}
    assert code == cli.EXIT_OK


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gammahom", "rational-cyclic", "--m", "2", "--no-timing"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["m"] == 2
