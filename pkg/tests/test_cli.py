import io
import json
import subprocess
import sys

import pytest

from dyadic import __version__
from dyadic.cli import main
from dyadic.examples import example_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fixture(tmp_path):
    def write(name, text=None):
        path = tmp_path / f"{name}.dtgd"
        path.write_text(text if text is not None else example_text(name))
        return path
    return write


def test_classify_json(fixture):
    path = fixture("problematic_atoms")
    code, out, _ = run("classify", path, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["classes"]["Shy"]["member"] is False
    assert data["classes"]["WeaklyAcyclic"]["member"] is True
    assert data["tool_version"] == __version__
    assert data["input_hash"].startswith("sha256:")
    assert run("classify", path, "--json")[1] == out


def test_classify_text_and_explain(fixture):
    code, out, _ = run("classify", fixture("problematic_atoms"), "--explain")
    assert code == 0
    assert "Dyadic-Ward" in out
    assert "s-atoms: R(U4,V4)" in out and "bridge: U4" in out


def test_chase_on_facts_only(fixture):
    code, out, _ = run("chase", fixture("facts", "P(a). Q(b,c)."))
    assert code == 0
    assert out.splitlines() == ["P(a).  % level 0", "Q(b,c).  % level 0", "% status: Completed"]


def test_chase_json_and_budget(fixture):
    path = fixture("loop", "R(a,b). R(X,Y) -> R(Y,Z).")
    code, out, _ = run("chase", path, "--json", "--max-level", "2")
    data = json.loads(out)
    assert code == 0 and data["status"] == "BudgetExhausted" and len(data["atoms"]) == 3
    code, _, err = run("chase", path, "--unlimited")
    assert code == 1 and err.startswith("UnboundedChase")


def test_answer(fixture):
    path = fixture("transitive_closure")
    assert run("answer", path, "--query", "0", "--class", "AfInds", "--check", "a,c")[:2] == (0, "true\n")
    assert run("answer", path, "--query", "2", "--class", "AfInds")[:2] == (0, "false\n")
    code, out, _ = run("answer", path, "--query", "?- X : T(X,c).", "--class", "AfInds")
    assert (code, out) == (0, "a\nb\n")
    code, out, _ = run("answer", path, "--query", "0", "--class", "AfInds", "--json")
    assert json.loads(out)["answers"] == [["a", "b"], ["a", "c"], ["b", "c"]]


def test_answer_exit_codes(fixture):
    code, _, err = run("answer", fixture("problematic_atoms"), "--query", "0", "--class", "Linear")
    assert code == 3 and err.startswith("NotInDyadicClass")
    loop = fixture("loop", "R(a,b). R(X,Y) -> R(Y,Z). ?- : R(b,a).")
    code, _, err = run("answer", loop, "--query", "0", "--class", "Guarded", "--oracle", "bounded",
                       "--max-level", "3")
    assert code == 4 and err.startswith("ReasonerInexact")
    code, _, err = run("answer", loop, "--query", "0", "--class", "Guarded")
    assert code == 1 and err.startswith("UnsupportedClass")
    code, _, err = run("answer", loop, "--query", "7", "--class", "Guarded")
    assert code == 1


def test_decompose_writes_files(fixture, tmp_path):
    path = fixture("transitive_closure")
    code, out, _ = run("decompose", path, "--class", "AfInds", "--out-dir", tmp_path / "out")
    assert code == 0
    hg = (tmp_path / "out" / "transitive_closure.hg.dtgd").read_text()
    main_rules = (tmp_path / "out" / "transitive_closure.main.dtgd").read_text()
    manifest = json.loads((tmp_path / "out" / "transitive_closure.aux.json").read_text())
    assert "__aux_r2(X,Z)" in hg
    assert main_rules.splitlines()[1] == "__aux_r2(X,Z) -> T(X,Z)."
    assert manifest["aux_registry"]["r2"] == {"arity": 2, "predicate": "__aux_r2"}


def test_complete(fixture, tmp_path):
    target = tmp_path / "done.dtgd"
    code, _, _ = run("complete", fixture("transitive_closure"), "--class", "AfInds", "--out", target)
    assert code == 0
    assert "__aux_r2(a,c)." in target.read_text().splitlines()


def test_usage_and_parse_errors(fixture):
    assert run("chase", "--bogus")[0] == 1
    assert run()[0] == 1
    assert run("chase", fixture("bad", "P(a)"))[0] == 1
    code, _, err = run("chase", fixture("arity", "P(a). P(a,b)."))
    assert code == 1 and err.startswith("ArityMismatch")
    assert run("chase", fixture("ok", "P(a)."), "--max-atoms", "0")[0] == 1
    assert run("classify", "/nonexistent/file.dtgd")[0] == 1
    code, _, err = run("classify", fixture("ok", "P(a)."), "--json", "--class")
    assert code == 1


def test_module_entry_point(fixture):
    path = fixture("transitive_closure")
    proc = subprocess.run([sys.executable, "-m", "dyadic", "answer", str(path), "--query", "1",
                           "--class", "AfInds"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"
