import json
import shutil
from pathlib import Path

import pytest

from contextuality import catalog
from contextuality.cli import main
from contextuality.model import EmpiricalModel

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    assert run(capsys, "validate", DATA / "bell_table.json")[0] == 0
    code, out, _ = run(capsys, "validate", DATA / "signalling.json", "--json")
    assert code == 1
    report = json.loads(out)
    assert report["result"]["violations"][0]["overlap"] == ["a"]


def test_validate_resolves_scenario_reference(capsys):
    assert run(capsys, "validate", DATA / "deterministic.json")[0] == 0


def test_malformed_input(capsys):
    code, _, err = run(capsys, "validate", DATA / "malformed.json")
    assert code == 2 and "error" in err
    assert run(capsys, "fraction", DATA / "missing.json")[0] == 2


def test_fraction_with_witness_and_decomposition(capsys, tmp_path):
    code, out, _ = run(capsys, "fraction", DATA / "bell_table.json", "--json",
                       "--witness", tmp_path / "w.json", "--decompose", tmp_path)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["cf"] == "1/4" and result["ncf"] == "3/4"
    contextual = json.loads((tmp_path / "contextual.json").read_text())
    assert EmpiricalModel.from_json(contextual) == catalog.pr_box()
    assert json.loads((tmp_path / "w.json").read_text())["bound"] == "0"


def test_fraction_rejects_signalling(capsys):
    assert run(capsys, "fraction", DATA / "signalling.json")[0] == 1


def test_logical(capsys):
    code, out, _ = run(capsys, "logical", DATA / "bell_table.json", DATA / "formulas.json", "--json")
    result = json.loads(out)["result"]
    assert code == 0
    assert (result["sum"], result["K"], result["violation"]) == ("13/4", 3, "1/4")


def test_possibilistic(capsys):
    for name, verdict in [("pr_box", "strongly-contextual"), ("hardy", "possibilistically-contextual"),
                          ("bell_table", "non-contextual-possibilistically")]:
        code, out, _ = run(capsys, "possibilistic", DATA / f"{name}.json", "--json")
        assert code == 0
        assert json.loads(out)["result"]["classification"] == verdict


def test_membership(capsys):
    code, out, _ = run(capsys, "membership", DATA / "correlation_bell.json", "--json")
    result = json.loads(out)["result"]
    assert code == 1 and not result["member"] and result["verified"]


def test_facets_and_resource_abort(capsys, tmp_path):
    code, out, _ = run(capsys, "facets", DATA / "chsh_scenario.json", "--json", "--output", tmp_path / "f.json")
    assert code == 0
    assert json.loads(out)["result"]["nontrivial"] == 8
    assert len(json.loads((tmp_path / "f.json").read_text())) == 8
    assert run(capsys, "facets", DATA / "bell_322.json", "--limit", "10")[0] == 3


def test_json_reports_are_deterministic(capsys):
    first = run(capsys, "fraction", DATA / "hardy.json", "--json")[1]
    second = run(capsys, "fraction", DATA / "hardy.json", "--json")[1]
    assert first == second
    report = json.loads(first)
    assert report["command"] == "fraction"
    assert list(report["inputs"].values())[0] == __import__("hashlib").sha256(
        (DATA / "hardy.json").read_bytes()).hexdigest()


def test_quantum_round_trip(capsys, tmp_path):
    out_path = tmp_path / "q.json"
    code, _, _ = run(capsys, "quantum", "--preset", "bell", "--setting", "0:a:0", "--setting", "0:a':pi/3",
                     "--setting", "1:b:0", "--setting", "1:b':pi/3", "--max-denominator", "8",
                     "--output", out_path)
    assert code == 0
    assert EmpiricalModel.from_json(json.loads(out_path.read_text())) == catalog.bell_table()
    assert run(capsys, "validate", out_path)[0] == 0
    code, out, _ = run(capsys, "fraction", out_path, "--json")
    assert json.loads(out)["result"]["cf"] == "1/4"


@pytest.mark.parametrize("argv", [
    ["quantum", "--setting", "0:a:bogus()"],
    ["quantum", "--setting", "nonsense"],
    ["quantum", "--amplitude", "1,0", "--setting", "0:a:0"],
])
def test_quantum_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_console_script_installed():
    assert shutil.which("contextuality") is not None
