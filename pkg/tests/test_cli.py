import json
import os
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from conftest import FIXTURES, load_fixture
from quatspec.cli import _Sci, dumps, render_text, run
from quatspec.quat import parse_quaternion
from quatspec.schema import MATRIX_DOCUMENT, REPORTS, SCHEMA_ID
from quatspec.solver import spectrum


def fx(name):
    return str(FIXTURES / f"{name}.json")


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, REPORTS[doc["command"]])
    assert doc["schema"] == SCHEMA_ID
    return doc


def write(tmp_path, doc, name="m.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_fixtures_are_valid_documents():
    for p in FIXTURES.glob("*.json"):
        if p.stem in ("MANIFEST", "sylvester_rank3"):
            continue
        jsonschema.validate(json.loads(p.read_text()), MATRIX_DOCUMENT)


def test_spectrum_json_round_trips(capsys):
    doc = call_json(capsys, "spectrum", fx("pole_not_eigenvalue"))
    report = spectrum(load_fixture("pole_not_eigenvalue"))
    got = [tuple(r["value"]) for r in doc["roots"]]
    assert got == [tuple(r.value) for r in report.roots]
    assert doc["kind"] == "finite" and doc["degree"] == 3
    assert list(doc)[:2] == ["schema", "command"]


def test_spectrum_text_round_trips(capsys):
    doc = call_json(capsys, "spectrum", fx("pole_is_eigenvalue"))
    code, out, _ = call(capsys, "spectrum", fx("pole_is_eigenvalue"), "--format", "text")
    assert code == 0
    roots = [line.split()[1] for line in out.splitlines() if line.startswith("root ")]
    assert [list(parse_quaternion(r)) for r in roots] == [r["value"] for r in doc["roots"]]


def test_verify_flag_adds_sigma(capsys):
    doc = call_json(capsys, "spectrum", fx("so3_triple"), "--verify")
    assert all("sigma" in r for r in doc["roots"])


def test_spherical_output(capsys):
    doc = call_json(capsys, "spectrum", fx("spherical2"))
    assert doc["kind"] == "spherical"
    assert doc["spherical"]["radius"] == 1.0


def test_sdet_and_inverse(capsys):
    doc = call_json(capsys, "sdet", fx("shifted_by_pole"))
    assert doc["sdet"] == pytest.approx(10 ** 0.5)
    doc = call_json(capsys, "inverse", fx("shifted_by_pole"))
    assert doc["entries"][0][2] == [0.0, 0.0, 0.0, 0.0]
    assert doc["residual"] < 1e-14


def test_charmap_and_pole(capsys):
    doc = call_json(capsys, "charmap", fx("pole_not_eigenvalue"))
    assert doc["kind"] == "rational3" and doc["pole"] == [0.0, -1.0, 0.0, 0.0]
    doc = call_json(capsys, "pole", fx("pole_is_eigenvalue"), "--all")
    assert doc["pole"] == [1.0, 0.0, 1.0, 0.0] and doc["eigenvalue"] is True
    assert len(doc["candidates"]) == 6


def test_pole_of_polynomial_case_is_null(capsys):
    doc = call_json(capsys, "pole", fx("so3_triple"))
    assert doc["pole"] is None and doc["eigenvalue"] is None


def test_rank_reports_reference_matrix(capsys):
    doc = call_json(capsys, "rank", fx("rank_three_root"), "--at", "0")
    assert doc["rank"] == 3
    assert doc["matrix"] == [[0, -2, 0, 0], [0, 0, -2, 0], [0, 0, 0, 0], [2, 0, -2, 0]]


def test_rank_at_pole_uses_another_map(capsys):
    doc = call_json(capsys, "rank", fx("pole_is_eigenvalue"), "--at=1+j")
    assert doc["permutation"] != [0, 1, 2]
    assert doc["rank"] == 4


def test_verify_command(capsys):
    assert call_json(capsys, "verify", fx("so3_triple"), "--at", "j")["eigenvalue"] is True
    assert call_json(capsys, "verify", fx("so3_triple"), "--at", "1")["eigenvalue"] is False


def test_solve_sylvester(capsys, tmp_path):
    doc = {"terms": [[[1, 2, 0, 0], [1, 0, 0, 0]], [[1, 0, 0, 0], [0, 0, 3, 1]]], "rhs": [1, 0, 0, 0]}
    out = call_json(capsys, "solve-sylvester", write(tmp_path, doc))
    assert out["rank"] == 4
    code, _, err = call(capsys, "solve-sylvester", fx("sylvester_rank3"))
    assert code == 3 and "rank 3" in err


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO((FIXTURES / "identity3.json").read_text()))
    assert call_json(capsys, "sdet", "-")["sdet"] == 1.0


@pytest.mark.parametrize(
    "content,command",
    [
        ("{not json", "sdet"),
        ({"n": 2}, "sdet"),
        ({"n": 2, "entries": [[[1, 0, 0, 0]]]}, "sdet"),
        ({"n": 1, "entries": [[[1, 0, 0]]]}, "sdet"),
        ({"n": 1, "entries": [[[1, 0, 0, 0]]], "extra": 1}, "sdet"),
        ({"n": 1, "entries": [[[1, 0, 0, 0]]], "schema": "other/2"}, "sdet"),
        ({"n": 1, "entries": [[[1, 0, 0, 0]]]}, "spectrum"),
        ({"n": 2, "entries": [[[1, 0, 0, 0]] * 2] * 2}, "pole"),
    ],
)
def test_bad_input_exits_2(capsys, tmp_path, content, command):
    code, out, err = call(capsys, command, write(tmp_path, content))
    assert code == 2 and out == ""
    assert err.startswith("error:") and len(err.strip().splitlines()) == 1


def test_missing_file_and_bad_options(capsys):
    assert call(capsys, "sdet", "/nonexistent.json")[0] == 2
    assert call(capsys, "spectrum", fx("so3_triple"), "--tol", "-1")[0] == 2
    assert call(capsys, "verify", fx("so3_triple"), "--at", "1+q")[0] == 2
    assert call(capsys, "bogus")[0] == 2


def test_singular_inverse_exits_3(capsys, tmp_path):
    doc = {"n": 2, "entries": [[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, -1]]]}
    code, _, err = call(capsys, "inverse", write(tmp_path, doc))
    # row 2 = j * row 1, so the matrix is singular
    assert code == 3 and err.startswith("error:")


def test_solver_failure_exits_4(capsys, tmp_path):
    a = np.random.default_rng(0).standard_normal((3, 3, 4))
    a[0, 2] = 0
    path = write(tmp_path, {"n": 3, "entries": a.tolist()})
    code, out, err = call(capsys, "spectrum", path, "--tol", "1e-300", "--max-iter", "1", "--starts", "1")
    assert code == 4 and out == "" and err.startswith("error:")


def test_module_entry_point_and_ascii_fallback():
    env = dict(os.environ, PYTHONIOENCODING="ascii")
    proc = subprocess.run(
        [sys.executable, "-m", "quatspec", "spectrum", fx("so3_triple"), "--format", "text"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0, proc.stderr
    assert "root k" in proc.stdout and "root i" in proc.stdout


def test_dumps_formatting():
    text = dumps({"a": 1.0, "b": [0.1, float("nan"), 3], "c": _Sci(0.5), "d": None, "e": True})
    assert json.loads(text) == {"a": 1.0, "b": [0.1, None, 3], "c": 0.5, "d": None, "e": True}
    assert '"a": 1.0' in text and "5.0000000000000000e-01" in text
    assert dumps(0.1 + 0.2) == "0.30000000000000004"
    with pytest.raises(TypeError):
        dumps(object())


def test_render_text_unicode(capsys):
    doc = call_json(capsys, "spectrum", fx("so3_triple"))
    assert "𝐤" in render_text(doc, ascii_only=False)


def test_json_output_is_byte_identical():
    argv = [sys.executable, "-m", "quatspec", "spectrum", fx("rank_three_root")]
    first = subprocess.run(argv, capture_output=True)
    second = subprocess.run(argv, capture_output=True)
    assert first.returncode == 0 and first.stdout == second.stdout
