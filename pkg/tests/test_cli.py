from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from equiwitt.cli import EXIT_CAP, EXIT_FORM, EXIT_OK, EXIT_PARSE, main
from equiwitt.equiforms import equiv_form_from_dict, orth_sum, witt_equal
from helpers import GF2, r_plus

ROOT = Path(__file__).resolve().parents[1]
GROUPS = ROOT / "groups"
FORMS = ROOT / "forms"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(p)


def test_simples_s3(capsys):
    code, out, _ = run(capsys, "simples", "--group", str(GROUPS / "s3.json"), "--e", "1")
    assert code == EXIT_OK
    rows = [line.split() for line in out.splitlines()[2:]]
    assert len(rows) == 2
    assert rows[0][1:] == ["1", "yes", "trivial"]
    assert rows[1][1:] == ["2", "yes", "orthogonal"]


def test_simples_with_modulus(capsys, tmp_path):
    out_json = tmp_path / "cat.json"
    code, out, _ = run(capsys, "simples", "--group", str(GROUPS / "c3.json"), "--e", "2", "--modulus", "7",
                       "--json", str(out_json))
    assert code == EXIT_OK
    assert "GF(4)" in out
    cat = json.loads(out_json.read_text())
    assert cat["field"]["modulus_bits"] == 7


def test_simples_malformed_group(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", "{not json")
    code, _, err = run(capsys, "simples", "--group", bad)
    assert code == EXIT_PARSE and "error" in err
    code, _, _ = run(capsys, "simples", "--group", write(tmp_path, "b2.json", {"degree": 3}))
    assert code == EXIT_PARSE
    code, _, _ = run(capsys, "simples", "--group", write(tmp_path, "b3.json", {"degree": 3, "gens": [[0, 0, 1]]}))
    assert code == EXIT_PARSE


def test_simples_bad_modulus(capsys):
    code, _, _ = run(capsys, "simples", "--group", str(GROUPS / "c3.json"), "--e", "2", "--modulus", "5")
    assert code == EXIT_PARSE


def test_cap_exceeded(capsys, tmp_path):
    s8 = write(tmp_path, "s8.json", {"degree": 8, "gens": [[1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 7, 0]]})
    code, _, err = run(capsys, "simples", "--group", s8)
    assert code == EXIT_CAP and "cap" in err


def test_witt_c2(capsys, tmp_path):
    out_json = tmp_path / "report.json"
    code, out, _ = run(capsys, "witt", "--group", str(GROUPS / "c2.json"), "--json", str(out_json))
    assert code == EXIT_OK
    assert out.splitlines()[0] == "rank 2 = s(1) + t(1), PASS"
    report = json.loads(out_json.read_text())
    assert report["rank"] == 2 and report["pass"]
    assert {"s", "t", "rank", "generators", "checks"} <= set(report)
    assert all({"name", "pass", "ms"} <= set(c) for c in report["checks"])


def test_witt_q8(capsys):
    code, out, _ = run(capsys, "witt", "--group", str(GROUPS / "q8.json"), "--samples", "5")
    assert code == EXIT_OK
    assert out.startswith("rank 3 = s(1) + t(2), PASS")


def test_class_rminus(capsys, tmp_path):
    out_json = tmp_path / "cls.json"
    code, out, _ = run(capsys, "class", "--form", str(FORMS / "c2_rminus.json"), "--trace", "--json", str(out_json))
    assert code == EXIT_OK
    assert "coordinates (c0=-, a=1, d=1)" in out
    assert "dimension 2" in out
    payload = json.loads(out_json.read_text())
    assert payload["coords"] == {"c0": [], "a": 1, "d": [1]}
    rep = equiv_form_from_dict(payload["anisotropic"])
    src = equiv_form_from_dict(json.loads((FORMS / "c2_rminus.json").read_text()))
    assert witt_equal(rep, src)
    assert payload["transcript"] == []


def test_class_metabolic(capsys, tmp_path):
    x = orth_sum(r_plus(cyclic_c2(), GF2), r_plus(cyclic_c2(), GF2))
    path = write(tmp_path, "met.json", x.to_dict())
    out_json = tmp_path / "out.json"
    code, out, _ = run(capsys, "class", "--form", path, "--trace", "--json", str(out_json))
    assert code == EXIT_OK
    assert "coordinates (c0=-, a=0, d=0)" in out
    assert "dimension 0" in out
    payload = json.loads(out_json.read_text())
    assert np.asarray(payload["anisotropic"]["upper"]).size == 0
    assert [step["dim"] for step in payload["transcript"]] == [4, 2]
    assert "step 0: dim 4" in out and "step 1: dim 2" in out


def cyclic_c2():
    from equiwitt.grouprep import cyclic_group

    return cyclic_group(2)


def test_class_non_invariant(capsys, tmp_path):
    d = json.loads((FORMS / "c2_rminus.json").read_text())
    d["upper"] = [[1, 1], [0, 0]]
    code, _, err = run(capsys, "class", "--form", write(tmp_path, "bad.json", d))
    assert code == EXIT_FORM
    assert "witness vector" in err


def test_class_degenerate(capsys, tmp_path):
    d = {"group": {"degree": 2, "gens": [[1, 0]]}, "field": {"e": 1, "modulus_bits": 2},
         "rep_mats": [[[1]]], "upper": [[1]]}
    code, _, err = run(capsys, "class", "--form", write(tmp_path, "deg.json", d))
    assert code == EXIT_FORM and "witness vector" in err


def test_class_malformed(capsys, tmp_path):
    code, _, _ = run(capsys, "class", "--form", write(tmp_path, "m.json", {"group": {}}))
    assert code == EXIT_PARSE
    code, _, _ = run(capsys, "class", "--form", str(tmp_path / "missing.json"))
    assert code == EXIT_PARSE


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "equiwitt.cli", "simples", "--group", str(GROUPS / "c2.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "s = 1" in proc.stdout


@pytest.mark.parametrize("name", ["c2", "c3", "s3", "q8", "d8", "a5"])
def test_shipped_group_files_load(capsys, name):
    e = "2" if name == "a5" else "1"
    code, out, _ = run(capsys, "simples", "--group", str(GROUPS / f"{name}.json"), "--e", e)
    assert code == EXIT_OK and "s = " in out
