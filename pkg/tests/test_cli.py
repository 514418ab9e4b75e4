import json
import subprocess
import sys

import numpy as np
import pytest

import hsroots as hs
from hsroots import cli
from hsroots import descriptor as dsc


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def neg_descriptor(tmp_path):
    return write_json(tmp_path, "neg.json", {
        "blocks": [{"kind": "real", "lambda": -1.0, "size": 2, "sign": 1}]})


@pytest.fixture
def fifth_descriptor(tmp_path):
    return write_json(tmp_path, "fifth.json", {
        "blocks": [{"kind": "real", "lambda": -1.0, "size": 3, "sign": 1}]})


@pytest.fixture
def raw_pair(tmp_path):
    d = hs.Descriptor([hs.RealBlock(2.0, 3, +1), hs.RealBlock(0.0, 1, -1)])
    raw, _ = dsc.scramble(d, 4)
    return write_json(tmp_path, "raw.json", {
        "B": dsc.matrix_to_lists(raw.B), "H": dsc.matrix_to_lists(raw.H)}), raw


def test_decide_refusal_exit_2(capsys, neg_descriptor):
    code, out, _ = run_cli(capsys, "decide", neg_descriptor, "--m", "2")
    assert code == 2
    rep = json.loads(out)
    assert rep["schema"] == "1"
    assert rep["exists"] is False
    assert rep["refusal"]["property"] == "P3-negative-pairing"


def test_decide_exists_exit_0(capsys, neg_descriptor):
    code, out, _ = run_cli(capsys, "decide", neg_descriptor, "--m", "3")
    assert code == 0
    assert json.loads(out)["exists"] is True


def test_construct_fifth_root_golden(capsys, fifth_descriptor):
    code, out, _ = run_cli(capsys, "construct", fifth_descriptor, "--m", "5")
    assert code == 0
    rep = json.loads(out)
    A = dsc.matrix_from_lists(rep["A"])
    golden = np.array([[-1, 1 / 5, 2 / 25], [0, -1, 1 / 5], [0, 0, -1]])
    assert np.max(np.abs(A - golden)) < 1e-12
    assert rep["residuals"]["power"] < 1e-12


def test_construct_refusal_exit_2(capsys, neg_descriptor):
    code, out, _ = run_cli(capsys, "construct", neg_descriptor, "--m", "2")
    assert code == 2
    assert json.loads(out)["exists"] is False


def test_verify_identity(capsys, tmp_path):
    I = dsc.matrix_to_lists(np.eye(3))
    p = write_json(tmp_path, "triple.json", {"A": I, "B": I, "H": I})
    code, out, _ = run_cli(capsys, "verify", p, "--m", "7")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True
    assert rep["residuals"]["power"] == 0.0


def test_verify_failure_exit_2(capsys, tmp_path):
    I = dsc.matrix_to_lists(np.eye(2))
    A = dsc.matrix_to_lists(2 * np.eye(2))
    p = write_json(tmp_path, "bad_triple.json", {"A": A, "B": I, "H": I})
    code, out, _ = run_cli(capsys, "verify", p, "--m", "2")
    assert code == 2
    assert json.loads(out)["pass"] is False


def test_construct_raw_transports_and_verifies(capsys, raw_pair, tmp_path):
    path, raw = raw_pair
    code, out, _ = run_cli(capsys, "construct", path, "--m", "3")
    assert code == 0
    rep = json.loads(out)
    assert "S" in rep and "descriptor" in rep
    A = dsc.matrix_from_lists(rep["A"])
    # pipe the construct output into verify
    p2 = write_json(tmp_path, "piped.json", {
        "A": rep["A"], "B": dsc.matrix_to_lists(raw.B),
        "H": dsc.matrix_to_lists(raw.H)})
    code2, out2, _ = run_cli(capsys, "verify", p2, "--m", "3")
    assert code2 == 0
    assert json.loads(out2)["pass"] is True
    report, ok = hs.verify_root(A, raw.B, raw.H, 3, 1e-8)
    assert ok


def test_canonicalize_raw(capsys, raw_pair):
    path, raw = raw_pair
    code, out, _ = run_cli(capsys, "canonicalize", path)
    assert code == 0
    rep = json.loads(out)
    blocks = rep["descriptor"]["blocks"]
    assert [(b["size"], b["sign"]) for b in blocks] == [(1, -1), (3, 1)]
    assert rep["residuals"]["similarity"] < 1e-9
    S = dsc.matrix_from_lists(rep["S"])
    J = dsc.realize(dsc.descriptor_from_dict(rep["descriptor"])).B
    assert np.linalg.norm(np.linalg.solve(S, raw.B @ S) - J) < 1e-8


def test_canonicalize_needs_raw(capsys, neg_descriptor):
    code, _, err = run_cli(capsys, "canonicalize", neg_descriptor)
    assert code == 1
    assert "raw pair" in err


def test_oracle_descriptor(capsys, tmp_path, neg_descriptor):
    code, out, _ = run_cli(capsys, "oracle", neg_descriptor, "--m", "2")
    assert code == 2
    rep = json.loads(out)
    assert rep["negative_part"] is False and rep["exists"] is False
    p = write_json(tmp_path, "zero.json", {"blocks": [
        {"kind": "real", "lambda": 0.0, "size": 3, "sign": 1},
        {"kind": "real", "lambda": 0.0, "size": 3, "sign": -1}]})
    code2, out2, _ = run_cli(capsys, "oracle", p, "--m", "2")
    assert code2 == 0
    assert json.loads(out2)["zero_part"] is True


def test_malformed_inputs_exit_1(capsys, tmp_path):
    p = write_json(tmp_path, "junk.json", {"nope": 1})
    assert run_cli(capsys, "decide", p, "--m", "2")[0] == 1
    p2 = tmp_path / "broken.json"
    p2.write_text("{not json")
    assert run_cli(capsys, "decide", str(p2), "--m", "2")[0] == 1
    assert run_cli(capsys, "decide", str(tmp_path / "missing.json"))[0] == 1
    # non-Hermitian H must be named in the diagnostic
    p3 = write_json(tmp_path, "nonherm.json", {
        "B": dsc.matrix_to_lists(np.eye(2)),
        "H": dsc.matrix_to_lists(np.array([[1.0, 1.0], [0.0, 1.0]]))})
    code, _, err = run_cli(capsys, "decide", p3, "--m", "2")
    assert code == 1 and "Hermitian" in err
    # singular H likewise
    p4 = write_json(tmp_path, "sing.json", {
        "B": dsc.matrix_to_lists(np.eye(2)),
        "H": dsc.matrix_to_lists(np.zeros((2, 2)))})
    code, _, err = run_cli(capsys, "decide", p4, "--m", "2")
    assert code == 1 and "singular" in err


def test_json_output_is_deterministic(capsys, fifth_descriptor):
    _, out1, _ = run_cli(capsys, "construct", fifth_descriptor, "--m", "5")
    _, out2, _ = run_cli(capsys, "construct", fifth_descriptor, "--m", "5")
    assert out1 == out2


def test_text_format(capsys, neg_descriptor):
    code, out, _ = run_cli(capsys, "decide", neg_descriptor, "--m", "2",
                           "--format", "text")
    assert code == 2
    assert "P3" in out and "{" not in out


def test_installed_entry_point_runs(tmp_path, fifth_descriptor):
    proc = subprocess.run(
        [sys.executable, "-m", "hsroots.cli", "decide", fifth_descriptor,
         "--m", "5"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["exists"] is True
