import json
import subprocess
import sys

import pytest

from chorded_spectra.cli import main
from chorded_spectra.cycles import CycleWitness, validate_witness
from chorded_spectra.families import family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_rho_star(capsys):
    code, doc = run_json(capsys, "rho", "--family", "star:9")
    assert code == 0 and doc["status"] == "ok"
    assert doc["payload"]["rho"] == pytest.approx(3.0, abs=1e-9)
    assert doc["payload"]["threshold_chorded"] == pytest.approx(3.0, abs=1e-9)


def test_rho_fixture_f2(capsys):
    code, doc = run_json(capsys, "rho", "--family", "fixture:F2")
    assert code == 0 and abs(doc["payload"]["rho"] - 2.618) < 1e-3
    assert len(doc["payload"]["perron"]) == 8


def test_rho_g6_k4(capsys):
    code, doc = run_json(capsys, "rho", "--g6", "C~")
    assert code == 0 and doc["payload"]["rho"] == pytest.approx(3.0, abs=1e-9)


def test_rho_k_threshold(capsys):
    code, doc = run_json(capsys, "rho", "--family", "clique_join:3,3", "--k", "3")
    assert code == 0
    p = doc["payload"]
    assert p["rho"] == pytest.approx(p["threshold_k_chorded"], abs=1e-9)


def test_rho_disconnected_has_no_perron(capsys):
    code, doc = run_json(capsys, "rho", "--g6", "Cg")
    assert code == 0 and doc["payload"]["perron"] is None


def test_detect_sk4(capsys):
    code, doc = run_json(capsys, "detect", "--family", "sk4", "--s", "2")
    assert code == 0
    w = CycleWitness.from_dict(doc["payload"]["witness"])
    assert validate_witness(family("sk4"), w, min_chords=2) == []


def test_detect_k25_none(capsys):
    code, doc = run_json(capsys, "detect", "--family", "complete_bipartite:2,5", "--s", "1")
    assert code == 1 and doc["status"] == "fail" and doc["payload"]["witness"] is None


def test_detect_k5_length(capsys):
    code, doc = run_json(capsys, "detect", "--family", "complete:5", "--s", "3", "--k", "5")
    assert code == 0
    w = CycleWitness.from_dict(doc["payload"]["witness"])
    assert validate_witness(family("complete:5"), w, min_chords=3, length=5) == []


def test_verify_thm_chorded_m9(capsys):
    code, doc = run_json(capsys, "verify", "thm-chorded", "--m", "9")
    assert code == 0 and doc["payload"]["pass"] is True
    assert len(doc["payload"]["computed"]["argmax"]) == 4


def test_verify_prop_doubly_n6(capsys):
    code, doc = run_json(capsys, "verify", "prop-doubly", "--n", "6")
    assert code == 0 and doc["payload"]["computed"]["max_edges"] == 9


def test_verify_k_chorded(capsys):
    code, doc = run_json(capsys, "verify", "k-chorded-extremal", "--k", "3", "--m", "12")
    assert code == 0 and doc["payload"]["pass"] is True


@pytest.mark.parametrize("argv", [
    ["rho", "--g6", "!!"],
    ["rho", "--family", "nope:3"],
    ["rho", "--family", "gnks:6,2,1"],
    ["rho"],
    ["rho", "--family", "star:3", "--g6", "C~"],
    ["detect", "--family", "star:3", "--s", "0"],
    ["verify", "k-chorded-extremal", "--k", "2", "--m", "8"],
    ["verify", "eg-path", "--n", "5"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 2 and doc["status"] == "error"


def test_resource_error_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("CHORDED_SPECTRA_CAP", "3")
    code, doc = run_json(capsys, "extremal", "--m", "5")
    assert code == 3 and doc["status"] == "error"


def test_bad_subcommand_is_argparse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_edges_file(capsys, tmp_path):
    f = tmp_path / "k4.txt"
    f.write_text("# K4 plus an isolated vertex\nn=5\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, doc = run_json(capsys, "rho", "--edges", str(f))
    assert code == 0 and doc["payload"]["n"] == 5 and doc["payload"]["m"] == 6
    assert doc["payload"]["rho"] == pytest.approx(3.0, abs=1e-9)


def test_edges_file_bad(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("0 0\n")
    code, _ = run(capsys, "rho", "--edges", str(f))
    assert code == 2


def test_extremal_tsv(capsys):
    code, out = run(capsys, "extremal", "--m", "6", "--tsv")
    header, row = out.strip().split("\n")
    assert code == 0 and header.startswith("m\tclass")
    assert row.split("\t")[:3] == ["6", "chorded_free", "63"]


def test_enumerate(capsys):
    code, doc = run_json(capsys, "enumerate", "--m", "3")
    assert code == 0 and doc["payload"]["count"] == 5
    code, out = run(capsys, "enumerate", "--m", "3", "--tsv")
    assert out.split() == doc["payload"]["graphs"]


def test_output_is_byte_identical(capsys):
    outs = {run(capsys, "verify", "k-chorded-extremal", "--k", "2", "--m", "9", "--seed", "3")[1] for _ in range(2)}
    assert len(outs) == 1
    outs = {run(capsys, "rho", "--family", "fixture:H1")[1] for _ in range(2)}
    assert len(outs) == 1


def test_floats_have_12_significant_digits(capsys):
    _, out = run(capsys, "rho", "--family", "star:5")
    assert '"rho": 2.2360679775' in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chorded_spectra", "rho", "--family", "complete:4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["rho"] == pytest.approx(3.0)
