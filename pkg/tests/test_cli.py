import json

import jsonschema
import pytest

from qkostant.cli import SCHEMA_PATH, RunConfig, UsageError, dispatch, main, seeded_random_suite
from qkostant.mutation import corrupted_system

SCHEMA = json.loads(SCHEMA_PATH.read_text())


def run(argv, tmp_path, name="r.json"):
    path = tmp_path / name
    code = main(argv + ["--report", str(path)])
    rep = json.loads(path.read_text())
    jsonschema.validate(rep, SCHEMA)
    return code, rep


def test_normalize_example(tmp_path, capsys):
    code, rep = run(["normalize", "--n", "3", "--stage", "1", "--expr", "x[2,3]*x[1,2]"], tmp_path)
    assert code == 0
    assert capsys.readouterr().out.strip() == "x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]"
    assert rep["output"] == "x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]"


def test_hilbert_example(tmp_path):
    code, rep = run(["hilbert", "--n", "2", "--max-degree", "3"], tmp_path)
    assert code == 0
    assert rep["dims_A"] == [1, 4, 10, 20]
    assert rep["dims_I"] == [1, 1, 2, 2]
    assert rep["dims_H"] == [1, 3, 5, 7]


def test_certify_n1(tmp_path):
    code, rep = run(["kostant-certify", "--n", "1", "--max-degree", "5"], tmp_path)
    assert code == 0 and rep["verdict"] == "pass"
    assert set(rep) >= {"n", "max_degree", "mode", "degrees", "verdict", "elapsed_ms"}


def test_certify_sampled(tmp_path):
    code, rep = run(["kostant-certify", "--n", "2", "--max-degree", "3", "--mode", "sampled",
                     "--samples", "3", "--seed", "9"], tmp_path)
    assert code == 0 and len(rep["sampled_points"]) == 3


def test_certify_right_and_threads(tmp_path, monkeypatch):
    monkeypatch.setenv("QKOSTANT_THREADS", "2")
    code, rep = run(["kostant-certify", "--n", "2", "--max-degree", "3", "--right"], tmp_path)
    assert code == 0 and rep["side"] == "right"


@pytest.mark.parametrize(
    "argv",
    [
        ["relations", "--n", "2"],
        ["qdet", "--n", "3"],
        ["delta", "--n", "3"],
        ["delta", "--n", "3", "--d", "2", "--stage", "2"],
        ["delta", "--n", "2", "--primed"],
        ["invariants", "--n", "2"],
        ["pbw-check", "--n", "3"],
        ["tower-check", "--n", "3"],
        ["suite", "--n", "2", "--trials", "10"],
    ],
)
def test_commands_pass(argv, tmp_path):
    code, rep = run(argv, tmp_path)
    assert code == 0 and rep["verdict"] == "pass"


def test_relations_text(capsys):
    main(["relations", "--n", "2"])
    out = capsys.readouterr().out
    assert "x[2,2]*x[1,1] = x[1,1]*x[2,2] - (q^1 - q^-1)*x[1,2]*x[2,1]" in out.splitlines()
    assert "x[2,1]*x[1,2] = x[1,2]*x[2,1]" in out.splitlines()


def test_tower_reports_trace_witness(tmp_path):
    _, rep = run(["tower-check", "--n", "3"], tmp_path)
    assert not rep["trace_weighting"]["compatible"]
    assert rep["trace_weighting"]["witnesses"][0].startswith("(1,2),(2,3)")


def test_pbw_corrupted_fails(tmp_path):
    code, rep = run(["pbw-check", "--n", "3", "--stage", "1", "--corrupt"], tmp_path)
    assert code == 1 and rep["stages"][0]["failures"]


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["normalize", "--n", "2", "--expr", "x[3,1]"], "--expr"),
        (["normalize", "--n", "2", "--stage", "3", "--expr", "x[1,1]"], "--stage"),
        (["normalize", "--n", "2", "--strategy", "rightmost", "--expr", "x[1,1]"], "--strategy"),
        (["kostant-certify", "--n", "2", "--max-degree", "0"], "--max-degree"),
        (["kostant-certify", "--n", "2", "--samples", "0", "--mode", "sampled"], "--samples"),
        (["delta", "--n", "2", "--d", "3"], "--d"),
        (["qdet", "--n", "0"], "--n"),
        (["suite", "--threads", "0"], "--threads"),
    ],
)
def test_usage_errors(argv, flag, capsys):
    assert main(argv) == 2
    assert flag in capsys.readouterr().err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["hilbert", "--n", "two"])
    assert e.value.code == 2


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("QKOSTANT_THREADS", "many")
    assert main(["hilbert", "--n", "2"]) == 2


def test_dispatch_validates():
    with pytest.raises(UsageError):
        dispatch(RunConfig("hilbert", n=2, max_degree=-1))


def test_suite_deterministic(tmp_path):
    argv = ["suite", "--n", "2", "--trials", "40", "--seed", "42"]
    main(argv + ["--report", str(tmp_path / "a.json")])
    main(argv + ["--report", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_suite_negative_control():
    rep = seeded_random_suite(3, 20, 42, system=corrupted_system(3, 1))
    assert rep["verdict"] == "fail"
    failing = [p for p in rep["properties"] if p["failures"]]
    assert failing and all(f["reproducer"] for p in failing for f in p["failures"])
    jsonschema.validate({**rep, "elapsed_ms": None}, SCHEMA)


def test_suite_hidden_flag(tmp_path):
    code, rep = run(["suite", "--n", "2", "--trials", "20", "--seed", "42", "--corrupt"], tmp_path)
    assert code == 1
    names = {p["name"] for p in rep["properties"] if p["failures"]}
    assert "q1_commutativity" in names


def test_timing_flag(tmp_path):
    _, rep = run(["hilbert", "--n", "2", "--timing"], tmp_path)
    assert isinstance(rep["elapsed_ms"], int)
    _, rep = run(["hilbert", "--n", "2"], tmp_path)
    assert rep["elapsed_ms"] is None
