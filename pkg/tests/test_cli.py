import json
import shutil
import subprocess
import sys

import pytest

import corpus
from starhr.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


def test_normalize_logic_term(capsys, write):
    f = write("t.term", "mode logic; fun c / 0; fun d / 0;\n(PI[G, G] c d)\n")
    assert run(capsys, "normalize", f)[:2] == (0, "c\n")


def test_normalize_unbound_variable(capsys, write):
    f = write("t.term", "SUC\n  (SUC q)\n")
    code, _, err = run(capsys, "normalize", f)
    assert code == 2
    assert f"{f}:2:8:" in err and "unbound variable q" in err


def test_trace_prints_each_step(capsys):
    path = corpus.CORPUS / "terms" / "doubling.term"
    code, out, _ = run(capsys, "normalize", "--trace", path)
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1] == "6"
    steps = lines[:-1]
    assert steps and all(len(s.split()) >= 3 for s in steps)


def test_strategies_agree(capsys):
    path = corpus.CORPUS / "terms" / "pair-recursor.term"
    lo = run(capsys, "normalize", path)[1]
    ri = run(capsys, "normalize", "--strategy", "ri", path)[1]
    assert lo == ri


def test_translate(capsys, write):
    f = write("a.fml", "ex z:N . z = 0 : N\n")
    assert run(capsys, "translate", f)[1].strip() == "evars: (Z:N*); matrix: ex z in Z . z = 0 : N"
    g = write("b.fml", "0 = SUC 0 : N\n")
    assert run(capsys, "translate", g)[1].strip() == "evars: (); matrix: 0 = 1 : N"


def test_translate_bad_bound(capsys):
    code, _, err = run(capsys, "translate", corpus.CORPUS / "invalid" / "bad-bound.fml")
    assert code == 2 and "bound" in err


def test_extract_and_verify(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(capsys, "extract", corpus.CORPUS / "exists-two.prf", "--out", out)[0] == 0
    rep = json.loads(out.read_text())
    goal = next(ln for ln in rep["lines"] if ln["number"] == rep["goal"])
    assert goal["witnesses"] == {"M": ["2"]} or list(goal["witnesses"].values()) == [["2"]]
    code, text, _ = run(capsys, "verify", out, "--all")
    assert code == 0 and "False" not in text and "Undecidable" not in text


def test_extract_text_format(capsys):
    code, out, _ = run(capsys, "extract", "--format", "text", corpus.CORPUS / "herbrand.prf")
    assert code == 0 and "disj-idem" in out


def test_eigenvariable_exit(capsys):
    code, _, err = run(capsys, "extract", corpus.CORPUS / "invalid" / "eigenvariable.prf")
    assert code == 4 and "line " in err and "eigenvariable" in err


def test_verify_undecidable_exit(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "extract", corpus.CORPUS / "all-elim.prf", "--out", out)
    rep = json.loads(out.read_text())
    forall_line = next(ln["number"] for ln in rep["lines"] if ln["formula"].startswith("all "))
    code, text, _ = run(capsys, "verify", out, "--line", forall_line)
    assert code == 5 and "Undecidable" in text


def test_verify_needs_bindings_for_free_variables(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "extract", corpus.CORPUS / "doubling.prf", "--out", out)
    rep = json.loads(out.read_text())
    open_line = next(ln["number"] for ln in rep["lines"] if ln["formula"].startswith("m = m"))
    assert run(capsys, "verify", out, "--line", open_line)[0] == 2
    code, text, _ = run(capsys, "verify", out, "--line", open_line, "--bind", "m=3", "--bind", "n=1")
    assert code == 0 and "True" in text


def test_verify_relations(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "extract", corpus.CORPUS / "logic-witness.prf", "--out", out)
    assert run(capsys, "verify", out)[0] == 5
    assert run(capsys, "verify", out, "--relations", corpus.CORPUS / "relations.json")[0] == 0


def test_budget_exit(capsys, monkeypatch):
    monkeypatch.setenv("STARHR_BUDGET", "3")
    assert run(capsys, "normalize", corpus.CORPUS / "terms" / "doubling.term")[0] == 3


def test_check_reports_ok(capsys):
    code, out, _ = run(capsys, "check", corpus.CORPUS / "ex-elim.prf")
    assert code == 0 and out.strip()


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", "3", "--cases", "20")
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_missing_file(capsys):
    assert run(capsys, "check", "/nonexistent.prf")[0] == 2


@pytest.mark.skipif(shutil.which("starhr") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["starhr", "normalize", str(corpus.CORPUS / "terms" / "projection.term")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "c"


def test_module_entry():
    res = subprocess.run([sys.executable, "-m", "starhr", "check", str(corpus.CORPUS / "imp.prf")],
                         capture_output=True, text=True)
    assert res.returncode == 0
