import json
import subprocess
import sys

import pytest

from hopfheap.bundle import CORPUS_DIR, load_bundle
from hopfheap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def _bad_bundle(tmp_path, mutate):
    doc = json.loads((CORPUS_DIR / "trig2.json").read_text(encoding="utf-8"))
    mutate(doc)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def test_verify_heap_passes(capsys):
    code, out, _ = run(capsys, "verify", "heap", "corpus/trig2")
    assert code == 0
    assert "[pass] heap:malcev-left" in out


def test_descend_singular_operator(capsys):
    code, doc = structured(capsys, "descend", "corpus/trig2", "--rb", "B_i")
    assert code == 1
    assert doc["error"]["type"] == "NotSurjective"


def test_grouplikes_over_rationals_is_empty(capsys):
    code, doc = structured(capsys, "grouplikes", "corpus/trig2", "--field", "Q")
    assert code == 0
    assert doc["result"]["grouplikes"] == []
    code, doc = structured(capsys, "grouplikes", "corpus/trig2")
    assert doc["result"]["grouplikes"] == [["-1*sqrt(-1)", "1"], ["1*sqrt(-1)", "1"]]


def test_failing_check_exit_one_with_witness(capsys, tmp_path):
    def corrupt(doc):
        doc["objects"]["Hp"]["bracket"][1][-1] = "2"
    code, doc = structured(capsys, "verify", "heap", _bad_bundle(tmp_path, corrupt))
    assert code == 1
    checks = {c["check"]: c for c in doc["reports"][0]["checks"]}
    assert checks["heap:malcev-left"]["witness"]["args"] == ["θ", "θ", "θ"]
    assert all("witness" not in c for c in checks.values() if c["status"] == "pass")


def test_parse_error_exit_two(capsys, tmp_path):
    def corrupt(doc):
        doc["objects"]["Hp"]["bracket"][0][-1] = "1/0"
    code, doc = structured(capsys, "verify", "heap", _bad_bundle(tmp_path, corrupt))
    assert code == 2
    assert doc["error"]["type"] == "ParseError"
    assert doc["error"]["token"] == "1/0"


def test_usage_and_missing_file_exit_two(capsys):
    assert run(capsys, "verify", "nonsense", "corpus/trig2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "heap", "corpus/no-such-bundle")[0] == 2
    assert run(capsys, "verify", "heap", "corpus/trig2", "--name", "missing")[0] == 2


def test_empty_report_exit_zero(capsys):
    code, doc = structured(capsys, "verify", "truss", "corpus/trig2")
    assert code == 0
    assert doc["status"] == "pass" and doc["reports"] == []


def test_all_pass_structured_report(capsys):
    code, doc = structured(capsys, "report", "corpus/trig2-modules")
    assert code == 0
    checks = [c for r in doc["reports"] for c in r["checks"]]
    assert checks and all(c["status"] == "pass" for c in checks)
    ids = {c["check"] for c in checks}
    assert {"heap:exchange", "grunspan:defining-identity", "module:bracket-shift",
            "rbmodule:identity"} <= ids


@pytest.mark.parametrize("bundle", ["trig2", "trig2-modules", "z2", "z3", "sweedler"])
def test_reports_are_deterministic(capsys, bundle):
    first = run(capsys, "report", f"corpus/{bundle}", "--format", "structured")
    second = run(capsys, "report", f"corpus/{bundle}", "--format", "structured")
    assert first == second and first[0] == 0


def test_structure_on_rb_module(capsys):
    code, doc = structured(capsys, "structure", "corpus/trig2-modules", "--module", "self_rb",
                           "--x", "x_plus")
    assert code == 0
    assert doc["result"]["coinvariants"] == [["1*sqrt(-1)", "1"]]
    assert "T_hat" in doc["result"]


def test_coinvariants_with_coordinates(capsys):
    code, doc = structured(capsys, "coinvariants", "corpus/z2", "--module", "free_left", "--x", "1,0")
    assert code == 0 and len(doc["result"]["basis"]) == 2
    code, doc = structured(capsys, "coinvariants", "corpus/z2", "--module", "free_left", "--x", "1,1")
    assert code == 1 and doc["error"]["type"] == "NotGroupLike"


def test_search(capsys):
    code, doc = structured(capsys, "search", "corpus/trig2", "--family", "diagonal")
    assert code == 0
    assert [["0", "0"], ["0", "1"]] in doc["result"]["operators"]
    assert doc["result"]["candidates"] == 9


def test_construct_writes_bundle(capsys, tmp_path):
    out = tmp_path / "hx.json"
    code, _, _ = run(capsys, "construct", "hopf", "corpus/trig2", "--x", "x_plus", "--out", str(out))
    assert code == 0
    b = load_bundle(out)
    assert b.names_of_kind("hopf-algebra") == ["result"]
    code, _, _ = run(capsys, "verify", "hopf", str(out))
    assert code == 0


def test_construct_precondition_failures(capsys):
    code, doc = structured(capsys, "construct", "cooperator", "corpus/trig2", "--name", "B_ii",
                           "--x", "x_plus")
    assert code == 1 and doc["error"]["type"] == "FixedPointFails"
    code, doc = structured(capsys, "construct", "opposite", "corpus/sweedler")
    assert code == 2


def test_construct_variety(capsys):
    for argv in (["truss", "corpus/z2"], ["heap", "corpus/sweedler"], ["grunspan", "corpus/trig2"],
                 ["trivial-truss", "corpus/trig2"], ["alpha-truss", "corpus/trig2"],
                 ["translate", "corpus/trig2", "--name", "B_ii", "--x", "x_plus"],
                 ["hopf-module", "corpus/trig2-modules", "--name", "free_left", "--x", "x_plus"],
                 ["cooperator", "corpus/z2", "--name", "B_id", "--x", "1,0"],
                 ["tensor", "corpus/z2"]):
        code, out, err = run(capsys, "construct", *argv)
        assert code == 0, (argv, out, err)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfheap", "verify", "heap", "corpus/trig2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
