import json

import pytest

from rslattice.cli import main
from rslattice.local_density import LocallyDenseGadget
from rslattice.reduction import GapSVPInstance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_min_dist_example(capsys):
    out = run_json(capsys, "lattice", "min-dist", "--q", "5", "--k", "2", "--p", "1", "--budget", "6")
    assert out["lambda1_pow_p"] == 4
    assert sum(map(abs, out["witness"])) == 4


def test_received_word_example(capsys):
    assert run_json(capsys, "derand", "received-word", "--q", "5", "--k", "2", "--h", "2", "--u", "2,0") == {"r": [0, 4, 1, 1, 4]}


def test_minkowski_report(capsys):
    out = run_json(capsys, "decode", "minkowski-report", "--q", "127")
    assert out["k"] == 9 and out["chain_holds"]
    assert out["sqrt_2k"] == pytest.approx(18**0.5, rel=1e-11)


def test_basis_and_build(capsys):
    out = run_json(capsys, "lattice", "basis", "--q", "5", "--k", "2")
    assert out["det"] == 25 and len(out["basis"]) == 5
    out = run_json(capsys, "lattice", "build", "--q", "7", "--k", "3", "--S", "1,2,4")
    assert out["H"] == [[1, 1, 1], [1, 2, 4], [1, 4, 2]]


def test_coset_commands(capsys):
    assert run_json(capsys, "coset", "count", "--q", "7", "--k", "2", "--h", "2", "--u", "2,0")["count"] == 3
    a = run(capsys, "coset", "sample", "--q", "11", "--k", "2", "--h", "3", "--seed", "5")
    b = run(capsys, "coset", "sample", "--q", "11", "--k", "2", "--h", "3", "--seed", "5")
    assert a == b


def test_gadget_reduce_pipeline(tmp_path, capsys):
    gpath, cpath, spath = tmp_path / "g.json", tmp_path / "cvp.json", tmp_path / "svp.json"
    code, _, _ = run(capsys, "gadget", "generate", "--p", "1", "--alpha", "3/4", "--r", "1",
                     "--q", "5", "--k", "2", "--out", str(gpath))
    assert code == 0
    LocallyDenseGadget.from_json(json.loads(gpath.read_text()))
    assert run_json(capsys, "gadget", "verify", "--in", str(gpath))["ok"]
    cpath.write_text(json.dumps({"p": 1, "B": [[2], [1]], "t": [1, 1], "s_pow_p": [1, 1], "gamma": [5, 1]}))
    assert run_json(capsys, "reduce", "verify-cvp", "--in", str(cpath))["verdict"] == "YES"
    code, _, _ = run(capsys, "reduce", "build", "--cvp", str(cpath), "--gadget", str(gpath), "--out", str(spath))
    assert code == 0
    GapSVPInstance.from_json(json.loads(spath.read_text()))
    assert run_json(capsys, "reduce", "verify-svp", "--in", str(spath))["verdict"] == "YES"


def test_tampered_gadget_exits_1(tmp_path, capsys):
    gpath = tmp_path / "g.json"
    run(capsys, "gadget", "generate", "--p", "1", "--alpha", "3/4", "--r", "1", "--q", "5", "--k", "2", "--out", str(gpath))
    g = json.loads(gpath.read_text())
    g["T"] = [[0, 0, 0, 0, 0]]
    gpath.write_text(json.dumps(g))
    code, out, _ = run(capsys, "gadget", "verify", "--in", str(gpath))
    assert code == 1 and json.loads(out) == {"ok": False}


def test_decode_commands(capsys):
    out = run_json(capsys, "decode", "rs", "--q", "7", "--dim", "2", "--y", "3,5,2,3,4,5,6", "--unique")
    assert out["codeword"] == [0, 1, 2, 3, 4, 5, 6]
    out = run_json(capsys, "decode", "lattice", "--q", "5", "--k", "2", "--eps", "1/3",
                   "--y", "[0, [1, 2], [-1, 2], [-1, 2], [1, 2]]")
    assert len(out["items"]) >= 2


def test_derand_commands(capsys):
    assert run_json(capsys, "derand", "convcount", "--q", "5", "--k", "2", "--h", "3", "--s", "3,0")["count"] == 25
    f = run_json(capsys, "derand", "fourier-id", "--q", "5", "--k", "2", "--h", "3", "--s", "3,0")
    assert f["main_term"] == [25, 1] and f["uncorrected_main_term"] == 625
    c = run_json(capsys, "derand", "charsum", "--q", "5", "--coeffs", "0,0,1", "--k", "3")
    assert c["magnitude"] == pytest.approx(5**0.5)
    t = run_json(capsys, "derand", "theta", "--tau", "0.69314718056")
    assert t["theta"] == pytest.approx(3, rel=1e-9)
    n = run_json(capsys, "derand", "np-bounds", "--tau", "0.5", "--delta", "0.6", "--r-pow-p", "3",
                 "--coset", "parity", "--q", "5", "--k", "1", "--u", "0")
    assert n["upper_ok"] and n["lower_ok"]


def test_csv_output(capsys):
    code, out, _ = run(capsys, "derand", "convcount", "--q", "5", "--k", "2", "--h", "3", "--s", "3,0", "--format", "csv")
    assert code == 0 and out.splitlines() == ["count", "25"]


@pytest.mark.parametrize("argv", [
    ["lattice", "nope"],
    ["lattice", "min-dist", "--q", "5", "--k", "2", "--budget", "x"],
    ["lattice", "min-dist", "--q", "13", "--k", "6", "--budget", "12", "--work-limit", "10"],
    ["derand", "received-word", "--q", "5", "--k", "2", "--h", "2", "--u", "3,0"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_json_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "reduce", "verify-cvp", "--in", str(p))[0] == 2


def test_seeded_runs_are_byte_identical(capsys):
    argv = ["gadget", "generate", "--p", "1", "--alpha", "3/4", "--r", "2", "--q", "7", "--k", "2", "--seed", "11"]
    assert run(capsys, *argv) == run(capsys, *argv)
