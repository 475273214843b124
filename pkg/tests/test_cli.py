import json
import subprocess
import sys

import pytest

from ftgossip import schemeio
from ftgossip.builder import build_wheel_ft
from ftgossip.cli import main
from ftgossip.knodel import gossip_base
from ftgossip.verify import is_k_fault_tolerant_flow


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_wheel(tmp_path, capsys):
    path = tmp_path / "w.txt"
    code, _, err = run(capsys, "generate", "--construction", "wheel", "--n", "11", "--k", "3", "--out", str(path))
    assert code == 0
    assert "calls=45" in err
    text = path.read_text()
    assert text.splitlines()[0] == "# builder=wheel n=11 k=3 xi=45"
    assert schemeio.loads(text) == build_wheel_ft(11, 3)


def test_generate_to_stdout_is_deterministic(capsys):
    _, a, _ = run(capsys, "generate", "--construction", "knodel", "--n", "10", "--k", "0")
    _, b, _ = run(capsys, "generate", "--construction", "knodel", "--n", "10", "--k", "0")
    assert a == b
    assert schemeio.loads(a).m == 20


def test_generate_odd_knodel_points_to_wrapper(capsys):
    code, _, err = run(capsys, "generate", "--n", "7", "--construction", "knodel")
    assert code == 2
    assert "knodel-odd" in err


@pytest.mark.parametrize("argv", [["generate", "--construction", "wheel", "--n", "3"], ["frobnicate"], []])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_round_trip_agrees_with_memory(tmp_path, capsys):
    path = tmp_path / "w.txt"
    run(capsys, "generate", "--construction", "wheel", "--n", "11", "--k", "3", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--k", "3")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "tolerant"
    assert report["min_pair_flow"] == is_k_fault_tolerant_flow(build_wheel_ft(11, 3), 3).min_pair_flow


def test_verify_failure_gives_witness(tmp_path, capsys):
    path = tmp_path / "g.txt"
    schemeio.write_scheme(path, gossip_base(10))
    code, out, _ = run(capsys, "verify", str(path), "--k", "1")
    assert code == 1
    report = json.loads(out)
    assert report["verdict"] == "not_tolerant"
    assert report["witness"]

    # the witness really is a breaking fault set
    faults = ";".join(" ".join(map(str, c)) for c in report["witness"])
    code, out, _ = run(capsys, "simulate", str(path), "--fail", faults)
    assert code == 1
    assert out.splitlines()[-1] == "incomplete"


def test_verify_both_methods(tmp_path, capsys):
    path = tmp_path / "s.txt"
    run(capsys, "generate", "--construction", "knodel", "--n", "6", "--k", "1", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--k", "1", "--method", "both")
    assert code == 0
    assert json.loads(out)["verdict"] == "tolerant"


def test_verify_budget_exceeded_is_an_error(tmp_path, capsys, monkeypatch):
    path = tmp_path / "s.txt"
    run(capsys, "generate", "--construction", "knodel", "--n", "16", "--k", "3", "--out", str(path))
    monkeypatch.setenv("FTGOSSIP_BRUTE_BUDGET", "1000")
    code, _, err = run(capsys, "verify", str(path), "--k", "3", "--method", "brute")
    assert code == 2
    assert "budget" in err


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n1 0 1\n")
    assert run(capsys, "verify", str(path), "--k", "0")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.txt"), "--k", "0")[0] == 2


def test_simulate_full_and_empty(tmp_path, capsys):
    path = tmp_path / "g.txt"
    schemeio.write_scheme(path, gossip_base(10))
    code, out, _ = run(capsys, "simulate", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[:10] == [" ".join(["1"] * 10)] * 10
    assert lines[-1] == "complete"

    empty = tmp_path / "e.txt"
    empty.write_text("3 0\n")
    code, out, _ = run(capsys, "simulate", str(empty))
    assert code == 1
    assert out.splitlines()[:3] == ["1 0 0", "0 1 0", "0 0 1"]


def test_simulate_unknown_fault(tmp_path, capsys):
    path = tmp_path / "g.txt"
    schemeio.write_scheme(path, gossip_base(10))
    assert run(capsys, "simulate", str(path), "--fail", "9 0 1")[0] == 2


def test_time(capsys):
    assert run(capsys, "time", "--n", "10", "--k", "2")[1].strip() == "exact 6"
    assert run(capsys, "time", "--n", "11", "--k", "1")[1].strip() == "[5, 8]"


def test_bounds_rows(capsys):
    code, out, _ = run(capsys, "bounds", "--n-range", "10..10", "--k-range", "0..3", "--format", "csv")
    assert code == 0
    assert len(out.splitlines()) == 1 + 4
    assert run(capsys, "bounds", "--n-range", "10..9", "--k-range", "0..3")[0] == 2


def test_stdin_and_module_entry_point():
    gen = subprocess.run(
        [sys.executable, "-m", "ftgossip", "generate", "--construction", "knodel-odd", "--n", "7", "--k", "1"],
        capture_output=True, text=True, check=True,
    )
    ver = subprocess.run(
        [sys.executable, "-m", "ftgossip", "verify", "-", "--k", "1", "--method", "both"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert ver.returncode == 0, ver.stderr
    assert json.loads(ver.stdout)["verdict"] == "tolerant"
