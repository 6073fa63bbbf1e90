import json
from fractions import Fraction

import pytest

from rainbow_lab.cli import run
from rainbow_lab.coloring import read_coloring
from rainbow_lab.graphon import read_graphon, write_graphon
from rainbow_lab.witness import WitnessCertificate, build_witness_graphon, evaluate_polynomial


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_fixture(capsys):
    code, out, _ = _run(capsys, "count", "--pattern", "C4", "--coloring", "fixture:K5")
    assert code == 0 and out.split()[0] == "8"
    code, out, _ = _run(capsys, "count", "--pattern", "C5", "--coloring", "fixture:K8", "--json")
    assert code == 0 and json.loads(out)["copies"] == 128


def test_global_flags_before_subcommand(capsys):
    code, out, _ = _run(capsys, "--json", "--threads", "2", "count", "--pattern", "C4", "--coloring", "fixture:K5")
    assert code == 0 and json.loads(out)["copies"] == 8


def test_witness_json_roundtrip(capsys):
    code, out, _ = _run(capsys, "witness", "--pattern", "C3", "-r", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert all(isinstance(data[key], str) for key in ("epsilon", "gap", "density", "baseline"))
    cert = WitnessCertificate.from_dict(data)
    assert cert.gap > 0 and cert.verify()
    assert evaluate_polynomial(cert.coefficients, Fraction(data["epsilon"])) == Fraction(data["gap"])


def test_witness_text_and_graphon(capsys, tmp_path):
    path = tmp_path / "w.txt"
    code, out, _ = _run(capsys, "witness", "--pattern", "K4", "-r", "6", "--epsilon", "1/12",
                        "--emit-graphon", str(path))
    assert code == 0 and "gap:" in out and "eps^3" in out
    assert read_graphon(str(path)) == build_witness_graphon(6, 1, Fraction(1, 12))
    code, out, _ = _run(capsys, "density", "--pattern", "K4", "--graphon", str(path), "--json")
    assert code == 0 and Fraction(json.loads(out)["density"]) > Fraction(720, 6**6)


def test_witness_forest_is_domain_error(capsys):
    code, _, err = _run(capsys, "witness", "--pattern", "P3", "-r", "2")
    assert code == 1 and "NoCycle" in err
    code, out, _ = _run(capsys, "witness", "--pattern", "P3", "-r", "2", "--json")
    assert code == 1 and json.loads(out)["error"] == "NoCycle"


def test_epsilon_too_large(capsys):
    code, _, err = _run(capsys, "witness", "--pattern", "C4", "-r", "4", "--k", "1", "--epsilon", "1/2")
    assert code == 1 and "EpsilonTooLarge" in err


def test_usage_errors(capsys):
    assert _run(capsys, "count", "--pattern", "C4")[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2
    assert _run(capsys, "count", "--pattern", "C4", "--coloring", "fixture:K7")[0] == 2
    assert _run(capsys, "blowup", "--seed", "fixture:K5", "-d", "3", "--verify", "--pattern", "C4")[0] == 2


def test_threshold_and_uniform(capsys):
    code, out, _ = _run(capsys, "threshold", "--pattern", "C4", "-r", "4", "-m", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data == {"threshold": "465/64", "minimal_beating_count": 8}
    code, out, _ = _run(capsys, "uniform-expect", "--pattern", "C3", "-r", "3", "-n", "4", "--enumerate", "--json")
    data = json.loads(out)
    assert data["expected"] == data["enumerated_mean"] == "8/9"


def test_baseline(capsys):
    code, out, _ = _run(capsys, "baseline", "--pattern", "C5", "-r", "5", "--json")
    assert json.loads(out)["baseline"] == "24/625"


def test_blowup_verify_and_out(capsys, tmp_path):
    path = tmp_path / "k25.txt"
    code, out, _ = _run(capsys, "blowup", "--seed", "fixture:K5", "-d", "2", "--verify", "--pattern", "C4",
                        "--out", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["holds"] and data["lower_bound"] == 5040
    assert read_coloring(str(path)).n == 25


def test_sample(capsys, tmp_path):
    path = tmp_path / "w.txt"
    write_graphon(build_witness_graphon(3, 1, Fraction(1, 3)), str(path))
    code, out, _ = _run(capsys, "sample", "--pattern", "C3", "--graphon", str(path), "-n", "60",
                        "--trials", "20000", "--seed", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["exact_target"] == "5/18" and data["consistent"]


def test_search(capsys, tmp_path):
    path = tmp_path / "best.txt"
    code, out, _ = _run(capsys, "search", "--pattern", "C4", "-m", "5", "-r", "4", "--seed", "0",
                        "--out", str(path))
    data = json.loads(out)
    assert code == 0 and data["count"] >= 8 and data["beat"] is True
    assert read_coloring(str(path)).n == 5


def test_deterministic_output(capsys):
    argv = ["search", "--pattern", "C3", "-m", "5", "-r", "3", "--seed", "3", "--budget", "300"]
    assert _run(capsys, *argv)[1] == _run(capsys, *argv)[1]


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("RAINBOW_LAB_THREADS", "3")
    code, out, _ = _run(capsys, "count", "--pattern", "C5", "--coloring", "fixture:K8")
    assert code == 0 and out.split()[0] == "128"


@pytest.mark.parametrize("name", ["C3", "K4", "P2"])
def test_pattern_files(capsys, tmp_path, name):
    from rainbow_lab.graphs import format_graph_text, named_graph
    path = tmp_path / f"{name}.txt"
    path.write_text(format_graph_text(named_graph(name)))
    a = _run(capsys, "baseline", "--pattern", str(path), "-r", "6")[1]
    b = _run(capsys, "baseline", "--pattern", name, "-r", "6")[1]
    assert a == b
