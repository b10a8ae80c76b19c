import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from branchlab.cli import main

SCHEMA = json.loads(resources.files("branchlab").joinpath("schemas/output.schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(cmd, *argv):
    code, out, err = run(cmd, *argv, "--format", "json")
    assert code == 0, err
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA["commands"][cmd])
    return payload


def test_act_example():
    assert run("act", "--d", "3", "a1", "11") == (0, "22\n", "")


def test_index_table_example():
    code, out, _ = run("index-table", "--d", "3", "--kmax", "2")
    assert code == 0
    assert out.splitlines()[0] == "1 108 648 1296 16"


def test_index_table_csv():
    _, out, _ = run("index-table", "--d", "3", "--kmax", "2", "--format", "csv")
    lines = out.splitlines()
    assert lines[1] == "1,108,648,1296,16"


def test_verify_example():
    code, out, _ = run("verify", "--d", "3", "--seed", "42")
    assert code == 0
    assert out.startswith("seed 42")


def test_generator_out_of_range_exit_2():
    code, out, err = run("act", "--d", "5", "a7", "1")
    assert code == 2 and out == ""
    assert json.loads(err)["error"]["code"] == "range"
    jsonschema.validate(json.loads(err), SCHEMA["commands"]["error"])


def test_syntax_error_exit_2():
    code, _, err = run("identity", "--d", "3", "a1 b2")
    assert code == 2 and json.loads(err)["error"]["code"] == "syntax"


def test_resource_guard_exit_3():
    code, _, err = run("perm", "--d", "3", "--level", "20", "a1")
    assert code == 3 and json.loads(err)["error"]["code"] == "resource"


def test_usage_error_exit_2():
    assert run("act", "--d", "3")[0] == 2
    assert run("coset", "--d", "3", "--level", "1", "a1")[0] == 2


CASES = [
    ("act", "--d", "3", "a1", "11"),
    ("section", "--d", "3", "a1 a2", "2"),
    ("perm", "--d", "5", "--level", "2", "a1 a3"),
    ("identity", "--d", "5", "a1 a3 a1' a3'"),
    ("equal", "--d", "3", "a1 a2", "a2 a1"),
    ("stab", "--d", "3", "--level", "1", "a1^2"),
    ("rist", "--d", "3", "--level", "1", "a1^4"),
    ("inH", "--d", "3", "--k", "1", "a1^4"),
    ("coset", "--d", "3", "--level", "1", "a1^2"),
    ("theta", '{"d": 3, "k": 1, "n": [2, 2, 0]}'),
    ("rho", '{"d": 3, "k": 2, "n": [2, 2, 0, 0, 0, 0, 2, 2, 0]}'),
    ("kernel-from-free", "--d", "3", "--free", "[[2, 0], [0, 0, 0, 0, 0, 0]]"),
    ("phi", '{"d": 3, "K": 1, "tower": [[2, 0, 2]]}'),
    ("torsion", '{"d": 3, "K": 1, "tower": [[2, 0, 2]]}'),
    ("branch-kernel", "--d", "5", "--k", "2"),
    ("trace-nf", "--d", "5", "a3 a1"),
    ("growth", "--d", "5", "--n", "4"),
    ("index-table", "--d", "5", "--kmax", "3"),
    ("hausdorff", "--d", "3", "--kmax", "5"),
    ("named", "--d", "5", "eta", "2"),
    ("named", "--d", "7", "rist-gens"),
    ("search", "--d", "5", "--target", '{"sections": ["e", "e", "e", "e", "e"], "perm": [3, 4, 1, 2, 5]}', "--budget", "2"),
    ("verify", "--d", "3", "--seed", "1", "--samples", "50", "--suite", "words"),
]


@pytest.mark.parametrize("argv", CASES, ids=[" ".join(c[:1]) + str(i) for i, c in enumerate(CASES)])
def test_json_output_validates_and_is_deterministic(argv):
    first = run(*argv, "--format", "json")
    second = run(*argv, "--format", "json")
    assert first[0] == 0, first[2]
    assert first == second
    jsonschema.validate(json.loads(first[1]), SCHEMA["commands"][argv[0]])


def test_selected_payloads():
    assert run_json("trace-nf", "--d", "5", "a3 a1")["normal_form"] == "a1 a3"
    assert run_json("coset", "--d", "3", "--level", "1", "a1^2")["n"] == [2, 2, 0]
    assert run_json("rho", '{"d": 3, "k": 2, "n": [2, 2, 0, 0, 0, 0, 2, 2, 0]}')["n"] == [2, 0, 2]
    assert run_json("equal", "--d", "3", "a1 a2", "a2 a1")["equal"] is False
    assert run_json("branch-kernel", "--d", "3", "--k", "1")["forced_total"] == 2
    rows = run_json("growth", "--d", "5", "--n", "2")["rows"]
    assert rows[-1] == {"n": 2, "count": 20}
    th = run_json("theta", '{"d": 3, "k": 1, "n": [2, 2, 0]}')
    assert th["l"] == [2, 2]
    back = run_json("theta", json.dumps(th), "--inverse")
    assert back["n"] == [2, 2, 0]


def test_json_argument_from_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text('{"d": 3, "k": 1, "n": [2, 2, 0]}')
    assert run_json("theta", f"@{f}")["l"] == [2, 2]


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"d": 3, "format": "json"}')
    code, out, _ = run("--config", str(cfg), "act", "a1", "11")
    assert code == 0 and json.loads(out)["image"] == "22"
    # explicit flags win
    code, out, _ = run("--config", str(cfg), "act", "--format", "text", "a1", "11")
    assert out == "22\n"


def test_named_rejects_missing_index():
    assert run("named", "--d", "5", "xi")[0] == 2


def test_entry_point_subprocess():
    res = subprocess.run([sys.executable, "-m", "branchlab", "act", "--d", "3", "a1", "11"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "22\n"


def test_verify_failure_exit_1(monkeypatch):
    from branchlab import cli
    from branchlab.verify import SuiteResult

    def broken(cfg, names):
        res = SuiteResult("words")
        res.check(False, "forced failure")
        return [res]

    monkeypatch.setattr(cli, "run_suites", broken)
    code, out, _ = run("verify", "--d", "3", "--seed", "1")
    assert code == 1 and "FAIL words" in out
