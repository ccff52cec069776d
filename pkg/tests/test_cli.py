import csv
import json
import subprocess
import sys

import pytest

from jacobihom import cli


def run(argv, capsys):
    code = cli.main(argv)
    return json.loads(capsys.readouterr().out), code


def test_betti_commands(capsys):
    rep, code = run(["betti", "--family", "o_odd", "--n", "1", "--R", "k", "--maxdeg", "3"], capsys)
    assert code == 0 and rep["betti"] == [1, 0, 0, 1]
    rep, code = run(["betti", "--family", "gl", "--n", "1", "--R", "k", "--maxdeg", "1"], capsys)
    assert rep["betti"] == [1, 1]
    rep, code = run(["betti", "--family", "sp", "--n", "2", "--R", "k", "--maxdeg", "10"], capsys)
    assert rep["betti"] == [1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1]


def test_betti_csv(tmp_path, capsys):
    path = tmp_path / "b.csv"
    run(["betti", "--family", "o_odd", "--n", "1", "--maxdeg", "3", "--csv", str(path)], capsys)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["degree", "betti", "primitive"] and rows[4] == ["3", "1", "1"]


def test_dihedral_commands(capsys):
    rep, _ = run(["dihedral", "--R", "k", "--variant", "plus", "--max-n", "8"], capsys)
    assert [r["n"] for r in rep["degrees"] if r["betti"]] == [0, 4, 8]
    rep, _ = run(["dihedral", "--R", "k", "--variant", "minus", "--max-n", "8"], capsys)
    assert [r["n"] for r in rep["degrees"] if r["betti"]] == [2, 6]
    rep, _ = run(["dihedral", "--R", "dual-minus", "--variant", "plus", "--n", "0"], capsys)
    assert rep["degrees"][0]["betti"] == 1 == rep["abelianization_fixed_dim"]


def test_dihedral_budget_exit(capsys):
    rep, code = run(["dihedral", "--R", "m2", "--variant", "plus", "--max-n", "9"], capsys)
    assert code == cli.EXIT_BUDGET and rep["error"] == "budget"


def test_stable_scan(capsys):
    rep, code = run(["stable-scan", "--family", "o_odd", "--n-range", "1-3", "--maxdeg", "5"], capsys)
    t = {row["degree"]: row for row in rep["table"]}
    assert t[3]["primitives"] == [1, 1, 1] and t[3]["stabilized"]
    assert t[2]["primitives"][-1] == 0 == t[4]["primitives"][-1]
    assert t[3]["skew_dihedral_prediction"] == 1


def test_sp_scan(capsys):
    rep, _ = run(["stable-scan", "--family", "sp", "--n-range", "1,2", "--maxdeg", "7"], capsys)
    assert rep["runs"][-1]["primitives"][3] == 1 and rep["runs"][-1]["primitives"][7] == 1


def test_verify_passes(capsys):
    rep, code = run(["verify", "--samples", "5", "--seed", "3"], capsys)
    assert code == 0, rep["first_failure"]


def test_verify_negative_control(capsys, monkeypatch):
    import jacobihom.shiftmap as sm

    real = sm.act_y
    monkeypatch.setattr(sm, "act_y", lambda alg, n, chain, skew=False: real(alg, n, chain, not skew))
    rep, code = run(["verify", "--samples", "3", "--R", "dual-minus"], capsys)
    assert code == cli.EXIT_FAIL
    assert rep["first_failure"]["suite"] == "shiftmap.y_sign"


def test_cocycle_command(capsys):
    rep, code = run(["cocycle", "--family", "sp", "--R", "m2", "--samples", "10"], capsys)
    assert code == 0 and rep["kernel"]["values_in_fixed_part"]
    rep, code = run(["cocycle", "--family", "o_odd", "--R", "dual-minus", "--samples", "10"], capsys)
    assert code == 0
    assert not rep["kernel"]["values_in_fixed_part"] and rep["kernel"]["minus_part_is_coboundary"]


def test_fock_command(capsys):
    rep, code = run(["fock", "--m", "2", "--samples", "10"], capsys)
    assert code == 0 and rep["worked_central_term"] == "-1" and rep["clifford_ok"]


def test_algebra_validate(tmp_path, capsys):
    from jacobihom.algebra import catalog, dump_algebra

    path = tmp_path / "dual.alg"
    path.write_text(dump_algebra(catalog("dual-minus")))
    rep, code = run(["algebra-validate", str(path)], capsys)
    assert code == 0 and rep["R_ab_fixed"] == 1
    bad = tmp_path / "bad.alg"
    bad.write_text(path.read_text().replace("1 1 -1", "1 1 2"))
    rep, code = run(["algebra-validate", str(bad)], capsys)
    assert code == cli.EXIT_FAIL and rep["violation"] == "involution"


def test_config_file_and_override(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("family = o_odd\nn = 1\nmaxdeg = 3\nmethod = exact\n")
    rep, _ = run(["betti", "--config", str(conf), "--family", "gl", "--n", "1", "--maxdeg", "1"], capsys)
    assert rep["family"] == "gl" and rep["method"] == "exact" and rep["betti"] == [1, 1]


def test_config_rejects_unknown_keys(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("family = o_odd\ncolour = red\n")
    with pytest.raises(SystemExit):
        cli.parse_args(["betti", "--config", str(conf), "--n", "1", "--maxdeg", "1"])


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    args = cli.parse_args(["fock"])
    assert args.threads == 3


def test_rejects_nonpositive(capsys):
    with pytest.raises(SystemExit):
        cli.parse_args(["betti", "--family", "sp", "--n", "0", "--maxdeg", "2"])


def test_out_file_and_module_entry(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "jacobihom", "dihedral", "--R", "k", "--max-n", "4",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["degrees"][4]["betti"] == 1


def test_required_values_from_config(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# o_3\nfamily = o_odd\nn = 1\nmaxdeg = 3\n")
    rep, code = run(["betti", "--config", str(conf)], capsys)
    assert code == 0 and rep["betti"] == [1, 0, 0, 1]
    with pytest.raises(SystemExit):
        cli.parse_args(["betti", "--n", "1"])
