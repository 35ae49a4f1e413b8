import json
import os

import numpy as np
import pytest

from cohlab.cli import main
from cohlab.states import make_density, make_pure, save_state


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def uniform4(tmp_path):
    path = tmp_path / "uniform4.json"
    save_state(make_pure(np.ones(4) / 2.0), str(path))
    return str(path)


@pytest.fixture
def basis3(tmp_path):
    path = tmp_path / "basis3.json"
    save_state(make_pure([1.0, 0.0, 0.0]), str(path))
    return str(path)


@pytest.fixture
def uniform3(tmp_path):
    path = tmp_path / "uniform3.json"
    save_state(make_pure(np.ones(3) / np.sqrt(3)), str(path))
    return str(path)


@pytest.fixture
def maxmixed3(tmp_path):
    path = tmp_path / "maxmixed3.json"
    save_state(make_density(np.eye(3) / 3.0), str(path))
    return str(path)


def test_monotones_uniform_pure(uniform4, capsys):
    code, out, _ = run_cli(["monotones", uniform4], capsys)
    assert code == 0
    doc = json.loads(out)
    coh = doc["coherence"]
    assert coh["rank_or_number"] == 4
    assert coh["ccN"] == pytest.approx(1.0, abs=1e-12)
    assert coh["cc"] == pytest.approx(3.0, abs=1e-12)
    assert coh["l1"] == pytest.approx(3.0, abs=1e-12)
    assert coh["rel_entropy"] == pytest.approx(2.0, abs=1e-12)
    assert all(v == "exact" for v in coh["flags"].values())
    # uniform 4-dim state is a product state across the 2x2 split
    conc = doc["concurrence"]
    assert conc["flag"] == "exact"
    assert conc["k_values"]["2"] == pytest.approx(0.0, abs=1e-12)


def test_monotones_log2(uniform4, capsys):
    code, out, _ = run_cli(["monotones", uniform4, "--log2"], capsys)
    assert code == 0
    coh = json.loads(out)["coherence"]
    assert coh["log2_rank_or_number"] == pytest.approx(2.0, abs=1e-15)


def test_monotones_basis_state(basis3, capsys):
    code, out, _ = run_cli(["monotones", basis3], capsys)
    assert code == 0
    doc = json.loads(out)
    coh = doc["coherence"]
    assert coh["rank_or_number"] == 1
    assert coh["cc"] == 0.0
    assert coh["ccN"] == 0.0
    # d=3 has no square bipartite split
    assert doc["concurrence"] is None
    assert "square" in doc["concurrence_note"]


def test_monotones_maximally_mixed(maxmixed3, capsys):
    code, out, _ = run_cli(["monotones", maxmixed3], capsys)
    assert code == 0
    coh = json.loads(out)["coherence"]
    assert coh["rank_or_number"] == 1
    assert coh["cc"] == 0.0
    assert coh["l1"] == 0.0
    assert coh["flags"]["cc"] == "estimate (upper bound)"
    assert coh["flags"]["rank_or_number"] == "exact"


def test_monotones_pure_density_gets_exact_concurrence(tmp_path, capsys):
    v = np.zeros(4)
    v[0], v[3] = 0.8, 0.6
    path = tmp_path / "puredens.json"
    save_state(make_density(np.outer(v, v)), str(path))
    code, out, _ = run_cli(["monotones", str(path)], capsys)
    assert code == 0
    conc = json.loads(out)["concurrence"]
    assert conc["flag"] == "exact"
    assert conc["k_values"]["2"] == pytest.approx(2 * 0.8 * 0.6, abs=1e-12)
    assert sorted(conc["schmidt_coeffs"], reverse=True) == pytest.approx(
        [0.64, 0.36], abs=1e-12)


def test_monotones_mixed_concurrence_flagged_estimate(tmp_path, capsys):
    rho = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    rho[0, 3] = rho[3, 0] = 0.3
    path = tmp_path / "mixed.json"
    save_state(make_density(rho), str(path))
    code, out, _ = run_cli(["monotones", str(path)], capsys)
    assert code == 0
    conc = json.loads(out)["concurrence"]
    assert conc["flag"] == "estimate (upper bound)"
    assert conc["k_values"]["2"] >= 0.0


def test_monotones_missing_file(capsys):
    code, _, err = run_cli(["monotones", "/no/such/state.json"], capsys)
    assert code == 2
    assert "error" in err


def test_monotones_malformed_state(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 2, "amplitudes": [[1.0, 0.0]]}\n')
    code, _, err = run_cli(["monotones", str(path)], capsys)
    assert code == 2
    assert "amplitudes" in err


def test_monotones_out_file(uniform4, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(["monotones", uniform4, "--out", str(out_path)], capsys)
    assert code == 0
    assert out == ""
    doc = json.loads(out_path.read_text())
    assert doc["coherence"]["rank_or_number"] == 4
    # atomic write leaves no temp droppings
    leftovers = [n for n in os.listdir(tmp_path) if n.startswith(".report")]
    assert leftovers == []


def test_grover_csv_first_row(capsys):
    code, out, _ = run_cli(["grover", "1024", "5", "10", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,alpha_r,P,coherence_number,ccN,l1,rel_entropy,w"
    assert len(lines) == 12
    first = lines[1].split(",")
    assert first[0] == "0"
    assert first[2] == "0.0048828125"
    assert first[3] == "1024"
    assert first[4] == "1"
    assert first[5] == "1023"
    assert first[6] == "10"
    assert first[7] == ""


def test_grover_json_points(capsys):
    code, out, _ = run_cli(["grover", "1024", "5", "10", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["N"] == 1024 and doc["m"] == 5
    points = doc["points"]
    assert len(points) == 11
    probs = [p["P"] for p in points]
    ccns = [p["ccN"] for p in points]
    assert probs[0] == 5 / 1024
    assert all(b > a for a, b in zip(probs, probs[1:]))
    assert ccns[0] == 1.0
    assert all(b < a for a, b in zip(ccns, ccns[1:]))
    assert points[0]["w"] is None
    assert all(p["w"] > 0 for p in points[1:])


def test_grover_csv_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "traj.csv"
    code, out, _ = run_cli(["grover", "1024", "5", "10", "--csv", str(path)], capsys)
    assert code == 0
    assert out == ""
    lines = path.read_text().strip().split("\n")
    assert len(lines) == 12
    assert lines[0].startswith("r,alpha_r,P")


def test_grover_dense_trajectory(capsys):
    code, out, _ = run_cli(["grover", "64", "16", "3", "--dense", "--format", "csv"],
                           capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 201
    rows = [line.split(",") for line in lines[1:]]
    rs = [float(r[0]) for r in rows]
    probs = [float(r[2]) for r in rows]
    assert rs[0] == 0.0
    assert rs[-1] == pytest.approx(1.0, abs=1e-12)
    assert all(b > a for a, b in zip(probs, probs[1:]))


def test_grover_statevector_column(capsys):
    code, out, _ = run_cli(["grover", "16", "4", "1", "--format", "csv",
                            "--statevector-check"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].endswith(",statevector_dev")
    for line in lines[1:]:
        dev = float(line.split(",")[-1])
        assert dev <= 1e-12


def test_grover_statevector_rejects_non_power_of_two(capsys):
    code, _, err = run_cli(["grover", "10", "3", "2", "--statevector-check"], capsys)
    assert code == 2
    assert "2^n" in err


def test_grover_bad_params(capsys):
    code, _, err = run_cli(["grover", "4", "9", "2"], capsys)
    assert code == 2
    assert "error" in err


def test_grover_deterministic_output(capsys):
    _, out1, _ = run_cli(["grover", "256", "3", "8", "--format", "csv"], capsys)
    _, out2, _ = run_cli(["grover", "256", "3", "8", "--format", "csv"], capsys)
    assert out1 == out2


def test_convert_uniform3(uniform3, capsys):
    code, out, _ = run_cli(["convert", uniform3], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["input_rc"] == 3
    assert doc["cc_value"] == pytest.approx(2.0, abs=1e-9)
    # rank-3 input converts to a maximally entangled 3x3 output
    assert doc["k_values"]["2"] == pytest.approx(1.0, abs=1e-9)
    assert doc["k_values"]["3"] == pytest.approx(1.0, abs=1e-9)
    assert doc["chain_ok"] is True
    assert doc["output_state"]["dim"] == 9


def test_convert_rank2_input(tmp_path, capsys):
    path = tmp_path / "rank2.json"
    save_state(make_pure([1 / np.sqrt(2), 1 / np.sqrt(2), 0.0]), str(path))
    code, out, _ = run_cli(["convert", str(path)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["input_rc"] == 2
    assert doc["k_values"]["2"] > 0.5
    assert doc["k_values"]["3"] <= 1e-7


def test_convert_incoherent_input(basis3, capsys):
    code, out, _ = run_cli(["convert", basis3], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["input_rc"] == 1
    assert doc["cc_value"] == 0.0
    assert doc["k_values"]["2"] == pytest.approx(0.0, abs=1e-9)
    assert doc["k_values"]["3"] == pytest.approx(0.0, abs=1e-9)


def test_verify_passing_suite(capsys):
    code, out, _ = run_cli(["verify", "maclaurin", "--cases", "20", "--seed", "7"],
                           capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "maclaurin"
    assert doc["violations"] == 0
    assert doc["ok"] is True
    assert len(doc["results"]) == 20


def test_verify_csv_format(capsys):
    code, out, _ = run_cli(["verify", "cauchy-binet", "--cases", "15",
                            "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "case,residual,ok"
    assert len(lines) == 16
    for line in lines[1:]:
        idx, residual, ok = line.split(",")
        assert float(residual) < 1e-8
        assert ok == "1"
    assert int(lines[-1].split(",")[0]) == 14


def test_verify_failing_suite_exits_one(capsys):
    # impossible tolerance forces residual violations
    code, out, _ = run_cli(["verify", "cauchy-binet", "--cases", "5",
                            "--tol", "1e-22"], capsys)
    assert code == 1
    doc = json.loads(out)
    assert doc["violations"] > 0
    assert doc["ok"] is False


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuch"])
    assert exc.value.code == 2


def test_verify_rejects_bad_tol_and_cases(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "maclaurin", "--tol", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "maclaurin", "--cases", "0"])
    assert exc.value.code == 2


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "suite.json"
    code, _, _ = run_cli(["verify", "theorem4", "--cases", "5",
                          "--out", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["ok"] is True


def test_verify_seed_changes_corpus(capsys):
    _, out1, _ = run_cli(["verify", "cauchy-binet", "--cases", "10",
                          "--seed", "1"], capsys)
    _, out2, _ = run_cli(["verify", "cauchy-binet", "--cases", "10",
                          "--seed", "2"], capsys)
    _, out3, _ = run_cli(["verify", "cauchy-binet", "--cases", "10",
                          "--seed", "1"], capsys)
    assert out1 != out2
    assert out1 == out3


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
