import io
import json
import subprocess
import sys

import pytest

from learnspace.cli import main
from learnspace.serialize import parse_family


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_learning_space():
    code, text = run("check", "fixtures/f_ex")
    assert code == 0
    assert "learning space: yes" in text


def test_check_l_ex():
    code, text = run("check", "fixtures/l_ex")
    assert code == 1
    assert "union-closed: no" in text
    assert "well-graded: no" in text
    assert "L1 learning smoothness: no" in text


def test_project():
    code, text = run("project", "fixtures/f_ex", "--items", "a,d,f")
    assert code == 0
    P = parse_family(text)
    assert len(P) == 8 and P.domain.items == ("a", "d", "f")


def test_children_g_ex():
    code, text = run("children", "fixtures/g_ex", "--items", "c")
    assert code == 0
    docs = [parse_family(line) for line in text.splitlines() if line.startswith("{")]
    assert [d.as_names() for d in docs] == [
        [(), ("a",), ("b",), ("a", "b")],
        [(), ("a",), ("a", "b")],
    ]


def test_children_marks_trivial():
    code, text = run("children", "fixtures/f_ex", "--items", "a,d,f", "--format", "lines")
    assert code == 0
    assert text.count("trivial") == 1
    assert "plus child learning space: yes" in text


def test_partition():
    code, text = run("partition", "fixtures/f_ex", "--items", "a,d,f")
    assert code == 0 and text.startswith("classes: 8\n")


def test_yielding():
    assert run("yielding", "fixtures/f_ex", "--items", "a,d,f") == (0, "true\n")
    code, text = run("yielding", "fixtures/k_ny", "--items", "d")
    assert code == 1
    assert text.startswith("false\n") and "{a,b,d}" in text


def test_assess():
    code, text = run("assess", "fixtures/f_ex", "--true-state", "b,c,d,e", "--items", "a,d,f")
    assert code == 0
    assert text.rstrip().endswith("recovered: {b,c,d,e}")


def test_assess_empty_state():
    code, text = run("assess", "fixtures/f_ex", "--true-state", "-")
    assert code == 0 and "recovered: {}" in text


def test_assess_incomplete():
    code, text = run("assess", "fixtures/f_ex", "--true-state", "b,c,d,e", "--items", "a,d,f", "--max-depth", "1")
    assert code == 1 and "incomplete: 3 candidate states" in text


def test_enumerate():
    code, text = run("enumerate", "--n", "3")
    lines = text.splitlines()
    assert code == 0 and lines[-1] == "# count: 22"
    assert len(lines) == 23


def test_generate_is_byte_identical():
    a = run("generate", "--n", "6", "--steps", "40", "--seed", "7")
    b = run("generate", "--n", "6", "--steps", "40", "--seed", "7")
    assert a == b and a[0] == 0


def test_verify_lines_and_json():
    code, text = run("verify", "--suite", "pt1", "--n", "3")
    assert code == 0
    assert "projection.learning_space\tchecked=138\tfailures=0\tPASS" in text
    code, text = run("verify", "--suite", "pt2", "--n", "6", "--seeds", "5", "--subsets", "4", "--json")
    assert code == 0
    doc = json.loads(text)
    assert doc["claims"] == [{"checked": 20, "claim": "yielding.iff_plus_children", "failures": 0}]


def test_verify_lemmas():
    code, text = run("verify", "--suite", "lemmas", "--n", "3")
    assert code == 0 and "FAIL" not in text


@pytest.mark.parametrize(
    "argv",
    [
        ["frob"],
        ["check", "no/such/file"],
        ["project", "fixtures/f_ex", "--items", "z"],
        ["project", "fixtures/f_ex", "--items", "a,b,c,d,e,f,g"],
        ["verify", "--suite", "pt1", "--n", "5"],
        ["verify", "--suite", "lemmas", "--n", "3", "--seeds", "4"],
        ["assess", "fixtures/f_ex", "--true-state", "e"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_reads_files(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text('{"domain": ["a", "b"], "states": [[], ["a"], ["a", "b"]]}')
    code, text = run("check", str(path))
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "learnspace", "yielding", "fixtures/f_ex", "--items", "a,d,f"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "true\n"
