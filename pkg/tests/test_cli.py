import hashlib
import json
from importlib import resources

import pytest

from hopfore import cli

DATA = resources.files("hopfore") / "data"


def data(name):
    return str(DATA / name)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_report_schema(capsys):
    path = data("ha.ghoe")
    code, rep = run_json(capsys, "check-ghoe", path)
    assert code == 0
    assert list(rep) == ["schema", "command", "inputs", "entries", "verdict"]
    assert rep["schema"] == 1 and rep["verdict"] == "Pass"
    with open(path, "rb") as fh:
        assert rep["inputs"] == [{"path": path, "sha256": hashlib.sha256(fh.read()).hexdigest()}]
    for e in rep["entries"]:
        assert set(e) <= {"check", "generator", "residual", "pass", "note"}
    assert rep["entries"][0]["check"] == "classify"


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "check-ghoe", data("sl3_literal.ghoe"), "--format", "json", "--theorem")
    _, b, _ = run(capsys, "check-ghoe", data("sl3_literal.ghoe"), "--format", "json", "--theorem")
    assert a == b


def test_sl3_literal_fails_with_the_hand_factor(capsys):
    code, rep = run_json(capsys, "check-ghoe", data("sl3_literal.ghoe"))
    assert code == 1 and rep["verdict"] == "Fail"
    first = next(e for e in rep["entries"] if not e["pass"])
    assert (first["check"], first["generator"]) == ("B2", "E1")
    code, rep = run_json(capsys, "check-ghoe", data("sl3_literal.ghoe"), "--q", "2")
    first = next(e for e in rep["entries"] if not e["pass"])
    assert first["residual"].startswith("3/4*")


def test_text_output(capsys):
    code, out, _ = run(capsys, "check-ghoe", data("h0.ghoe"))
    assert code == 0
    assert out.splitlines()[-1].startswith("verdict: Pass (0 of ")
    assert "PASS  classify" in out


@pytest.mark.parametrize("name", ["h0.ghoe", "ha.ghoe", "h1.ghoe", "ha5.ghoe", "p28b.ghoe"])
def test_shipped_files_pass(capsys, name):
    for cmd in ("check-presentation", "check-hopf", "ore-extend", "check-ghoe"):
        assert run(capsys, cmd, data(name))[0] == 0, cmd


def test_check_hopf_on_serre_file(capsys):
    assert run(capsys, "check-hopf", data("sl3_serre.ghoe"))[0] == 0
    assert run(capsys, "check-hopf", data("sl3_serre.ghoe"), "--q", "2")[0] == 0


def test_ore_extend_writes_a_loadable_file(capsys, tmp_path):
    out = tmp_path / "ext.ghoe"
    code, _, _ = run(capsys, "ore-extend", data("ha.ghoe"), "--out", str(out))
    assert code == 0 and "z" in out.read_text()
    assert run(capsys, "check-presentation", str(out))[0] == 0


def test_derive_chi(capsys):
    code, rep = run_json(capsys, "derive-chi", data("h1.ghoe"))
    assert code == 0 and rep["result"] == {"chi": {"a": "1"}}
    code, rep = run_json(capsys, "derive-chi", data("sl3_literal.ghoe"))
    assert code == 1
    assert [e["generator"] for e in rep["entries"] if not e["pass"]] == ["E2"]


def test_check_iso(capsys):
    code, rep = run_json(capsys, "check-iso", data("ha5.ghoe"), data("ha.ghoe"), data("ha5_to_ha.witness"))
    assert code == 0 and rep["verdict"] == "Pass"
    assert len(rep["inputs"]) == 3
    code, _, _ = run(capsys, "check-iso", data("ha.ghoe"), data("ha.ghoe"), data("ha5_to_ha.witness"))
    assert code == 1


def test_solve_iso(capsys):
    code, rep = run_json(capsys, "solve-iso-1dim", data("ha5.ghoe"), data("ha.ghoe"))
    assert code == 0 and rep["verdict"] == "Solved"
    assert 'lambda = "5"' in rep["result"]["witness"]
    code, rep = run_json(capsys, "solve-iso-1dim", data("h0.ghoe"), data("ha.ghoe"))
    assert code == 1 and rep["verdict"] == "NoSolution"
    code, rep = run_json(capsys, "solve-iso-1dim", data("h0.ghoe"), data("h1.ghoe"))
    assert code == 1 and rep["verdict"] == "NoSolution"


def test_solve_delta_eq(capsys):
    code, rep = run_json(capsys, "solve-delta-eq", data("h0.ghoe"), "--field", "Fp:3",
                         "--rhs", "-a (x) a", "--degree-bound", "3")
    assert code == 0
    assert rep["result"]["particular"] == "a^2"
    assert sorted(rep["result"]["kernel"]) == ["a", "a^3"]
    code, rep = run_json(capsys, "solve-delta-eq", data("h0.ghoe"), "--field", "Fp:2",
                         "--rhs", "a (x) a", "--degree-bound", "4")
    assert code == 1 and rep["verdict"] == "NoSolution"


def test_catalog_list_and_verify_all(capsys):
    code, rep = run_json(capsys, "catalog", "list")
    assert code == 0 and "SL3-literal" in rep["result"]["names"]
    code, rep = run_json(capsys, "catalog", "verify-all")
    assert code == 0
    assert all(e["pass"] for e in rep["entries"])
    sl3 = next(e for e in rep["entries"] if e["generator"] == "SL3-literal")
    assert sl3["note"] == "expected FailAt B2 E1; got FailAt B2 E1"


def test_catalog_emit_round_trip(capsys, tmp_path):
    out = tmp_path / "p28a.ghoe"
    code, _, _ = run(capsys, "catalog", "emit", "P2.8a", "--out", str(out))
    assert code == 0
    assert run(capsys, "check-ghoe", str(out), "--theorem")[0] == 0
    code, rep = run_json(capsys, "catalog", "emit", "Ha", "--param", "eta=7")
    assert 'delta_der.a = "7*a"' in rep["result"]["presentation"]


def test_catalog_emit_failing_entry(capsys, tmp_path):
    out = tmp_path / "lit.ghoe"
    run(capsys, "catalog", "emit", "SL3-literal", "--out", str(out))
    assert run(capsys, "check-ghoe", str(out))[0] == 1


@pytest.mark.parametrize("argv", [
    ["check-ghoe", "/nonexistent/file.ghoe"],
    ["catalog", "emit", "Nope"],
    ["catalog", "emit"],
    ["catalog", "emit", "Ha", "--param", "eta=0"],
    ["catalog", "emit", "Ha", "--param", "eta"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("hopfore: error:")


def test_missing_section_exits_2(capsys):
    code, _, err = run(capsys, "check-ghoe", data("sl3_serre.ghoe"))
    assert code == 2 and "ghoe" in err


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.ghoe"
    bad.write_text('[field]\nkind = "Q"\n[[generator]]\nname = "a"\nbogus = 1\n')
    code, _, err = run(capsys, "check-presentation", str(bad))
    assert code == 2 and "line 5" in err
