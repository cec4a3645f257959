import json

import pytest

from slimlat.cli import main
from slimlat.enumerate import canonical_form
from slimlat.fixtures import b4, chain, s7
from slimlat.lattice import FiniteLattice


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_check(capsys):
    code, r = report(capsys, "check", "S7")
    assert code == 0 and r["is_patch_def11"] and (r["lc"], r["rc"]) == (3, 5)
    code, r = report(capsys, "check", "M3")
    assert code == 0 and not r["is_slim"] and r["witnesses"]["is_slim"]


def test_inline_and_file_inputs(capsys, tmp_path):
    text = json.dumps(b4().to_json())
    path = tmp_path / "b4.json"
    path.write_text(text)
    assert report(capsys, "check", text)[1] == report(capsys, "check", str(path))[1]


def test_stdin(capsys, monkeypatch):
    import io
    # a lattice without a diagram, so the diagram is inferred from the same input
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(s7().to_json())))
    assert report(capsys, "certify", "-")[1]["forks"] == [[0, 1, 2, 3]]


def test_fork_and_unfork(capsys, tmp_path):
    code, _, _ = run(capsys, "fork", "B4", "--out", str(tmp_path / "x.json"))
    r = json.loads((tmp_path / "x.json").read_text())
    assert code == 0 and FiniteLattice.from_json(r["diagram"]) == s7()
    code, r = report(capsys, "unfork", json.dumps(r["diagram"]))
    assert FiniteLattice.from_json(r["diagram"]) == b4()
    code, _, err = run(capsys, "fork", "B4", "--cell", "0,2,1,3")
    assert code == 2 and "NotACell" in err


def test_corners(capsys):
    code, r = report(capsys, "corner-rm", "B4", "1")
    assert FiniteLattice.from_json(r["diagram"]) == chain(3)
    code, r = report(capsys, "corner-add", "C3", "--side", "left", "--at", "1")
    assert code == 0 and FiniteLattice.from_json(r["diagram"]) == b4() and r["added"] == 1
    code, _, err = run(capsys, "corner-rm", "S7", "3")
    assert code == 2 and "NotACorner" in err
    assert run(capsys, "corner-add", "B4", "--side", "left", "--at", "1")[0] == 1


def test_witness_and_verdict(capsys):
    assert report(capsys, "witness", "G23")[1]["witness"]["kind"] == "filter_insertion"
    code, r = report(capsys, "verdict", "S7")
    assert code == 0 and r["maximal"]["holds"] and r["absolute_retract"]["holds"]
    code, r = report(capsys, "verdict", "C3", "--cat", "len")
    assert code == 1 and not r["maximal"]["holds"]


def test_congruences_and_retractions(capsys):
    assert report(capsys, "congruences", "B4")[1]["count"] == 4
    code, r = report(capsys, "retract", "S7", "3", "5")
    assert r["map"] == [0, 1, 2, 1, 3, 2, 3]
    assert canonical_form(FiniteLattice.from_json(r["target"])) == canonical_form(b4())
    code, r = report(capsys, "homs", "B4", "C3", "--cat", "zo")
    assert r["count"] == 2
    code, _, _ = run(capsys, "retract-search", "B4", "S7", "--map", "0,3,5,6")
    assert code == 0
    code, _, _ = run(capsys, "retract-search", "C3", "B4", "--map", "0,1,3", "--cat", "len")
    assert code == 1


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--max-size", "4")
    lines = [json.loads(s) for s in out.splitlines()]
    assert lines[0]["max_size"] == 4 and len(lines) == 1 + 5
    code, out, _ = run(capsys, "gen", "--max-size", "4", "--class", "all-lattices")
    assert code == 0 and len(out.splitlines()) == 1 + 5


@pytest.mark.parametrize("name, nodes, edges", [("S7", 7, 9), ("B4", 4, 4)])
def test_export_dot(capsys, name, nodes, edges):
    code, out, _ = run(capsys, "export", name, "--dot")
    assert code == 0 and out.startswith("graph")
    assert out.count(" -- ") == edges and out.count("label=") == nodes


def test_export_json(capsys):
    assert report(capsys, "export", "S7")[1]["n"] == 7


def test_usage_errors(capsys):
    code, _, err = run(capsys, "export", "{bad")
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "check", "/no/such/file.json")
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "verify", "thm-main", "--max-size", "20")
    assert code == 2 and "ConfigInvalid" in err
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_is_deterministic(capsys):
    code, first, err = run(capsys, "verify", "thm-main", "--max-size", "4", "--seed", "3")
    assert code == 0 and "[PASS] criterion 3" in err
    _, second, _ = run(capsys, "verify", "thm-main", "--max-size", "4", "--seed", "3")
    assert first == second
    assert [c["criterion"] for c in json.loads(first)["criteria"]] == [3, 4, 8]
