import json

import pytest

from twsparse.cli import EXIT_INFEASIBLE, EXIT_INVARIANT, EXIT_IO, EXIT_OK, main



@pytest.fixture
def system(tmp_path):
    path = tmp_path / "pos.json"
    assert main(["generate", "grid-pos", "--h", "2", "--r", "4", "--out", str(path)]) == EXIT_OK
    return path


def test_generate_random_graph(tmp_path):
    out = tmp_path / "g.json"
    assert main(["generate", "random-graph", "--n", "10", "--p", "0.4", "--seed", "1", "--out", str(out)]) == EXIT_OK
    assert len(json.loads(out.read_text())["graph"]["vertices"]) == 10
    assert main(["generate", "random-graph", "--n", "10"]) == EXIT_INFEASIBLE


def test_route2_feasible_and_infeasible(tmp_path):
    star = tmp_path / "star.txt"
    star.write_text("0 1\n0 2\n0 3\n0 4\n")
    out = tmp_path / "r.json"
    assert main(["route2", str(star), "1", "2", "3", "4", "--out", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["ok"] and report["first"]["paths"] == [[1, 0, 2]]
    assert main(["route2", str(star), "1,2", "3,4", "1", "2", "--out", str(out)]) == EXIT_INFEASIBLE
    assert json.loads(out.read_text())["cut"] == [0]


def test_sparsify_and_certify(tmp_path, system):
    d = tmp_path / "run"
    assert main(["sparsify", str(system), "--seed", "5", "--n-expanders", "2", "--out", str(d)]) == EXIT_OK
    files = [d / n for n in ("sparsifier.json", "witness.json", "certificate.json")]
    assert all(f.exists() for f in files)
    report = tmp_path / "check.json"
    assert main(["certify", str(system), *map(str, files), "--out", str(report)]) == EXIT_OK
    assert json.loads(report.read_text())["ok"]

    cert = json.loads(files[2].read_text())
    cert["max_degree"] = 7
    files[2].write_text(json.dumps(cert))
    assert main(["certify", str(system), *map(str, files), "--out", str(report)]) == EXIT_INVARIANT
    assert "/max_degree" in json.loads(report.read_text())["mismatched_fields"]

    w = json.loads(files[1].read_text())
    first = next(iter(w["witness"]["edge_paths"]))
    w["witness"]["edge_paths"][first] = w["witness"]["edge_paths"][first][:1]
    files[1].write_text(json.dumps(w))
    assert main(["certify", str(system), *map(str, files), "--out", str(report)]) == EXIT_INVARIANT


def test_sparsify_usage_errors(tmp_path, system):
    assert main(["sparsify", str(system)]) == EXIT_INFEASIBLE
    assert main(["sparsify", str(system), "--seed", "1", "--rstar", "3"]) == EXIT_INFEASIBLE
    assert main(["sparsify", str(system), "--seed", "1", "--h", "4"]) == EXIT_INFEASIBLE


def test_invalid_system_exit_code(tmp_path, system):
    d = json.loads(system.read_text())
    d["interfaces"][0]["A"], d["interfaces"][0]["B"] = d["interfaces"][0]["A"][:1] * 2, d["interfaces"][0]["B"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    assert main(["sparsify", str(bad), "--seed", "1", "--out", str(tmp_path / "o")]) == EXIT_INFEASIBLE


def test_io_errors(tmp_path):
    assert main(["route2", str(tmp_path / "missing.txt"), "1", "2", "3", "4"]) == EXIT_IO
    broken = tmp_path / "broken.json"
    broken.write_text("{\n  nope\n}")
    assert main(["sparsify", str(broken), "--seed", "1"]) == EXIT_IO
    d = {"version": 42}
    old = tmp_path / "old.json"
    old.write_text(json.dumps(d))
    assert main(["sparsify", str(old), "--seed", "1"]) == EXIT_IO


def test_reruns_are_byte_identical(tmp_path, system):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        assert main(["sparsify", str(system), "--seed", "9", "--out", str(d)]) == EXIT_OK
        outs.append([(d / n).read_bytes() for n in ("sparsifier.json", "witness.json", "certificate.json")])
    assert outs[0] == outs[1]


def test_stdout_mode(capsys):
    assert main(["sparsify", "--h", "2", "--r", "2", "--seed", "0", "--degree", "4"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["certificate"]["ok"] and doc["certificate"]["degree"] == 4
