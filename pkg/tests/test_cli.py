import json
import subprocess
import sys
from pathlib import Path

import pytest

from hopfcyc.cli import InputError, main, parse_matrix

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    data = json.loads(out.out) if out.out.strip() else None
    return code, data, out.err


def test_parse_matrix():
    assert parse_matrix("[[1, -1/2], [0, 3]]") == [[1, -0.5], [0, 3]]
    for bad in ("[[1, 2], [3]]", "[[1, 1/0]]", "[[1, x]]", "[[1, 2]"):
        with pytest.raises(InputError):
            parse_matrix(bad)


def test_validate_ok(capsys):
    code, data, _ = run(capsys, "validate", FIX / "sl2_koszul.ini")
    assert code == 0 and data["ok"] and data["schema"] == 1
    assert data["conilpotency_index"] == 2


def test_validate_simple_module(capsys):
    code, data, _ = run(capsys, "validate", FIX / "sl2_simple.ini")
    assert code == 0 and data["conilpotency_index"] == 1


def test_validate_broken_jacobi(capsys):
    code, data, _ = run(capsys, "validate", FIX / "broken_jacobi.ini")
    assert code == 1 and not data["ok"]
    assert any(not c["ok"] for c in data["checks"])


def test_validate_noncommuting_coaction(capsys):
    code, data, _ = run(capsys, "validate", FIX / "bad_coaction.ini")
    assert code == 1 and not data["ok"]


def test_bad_rational_exit_two(capsys):
    code, data, err = run(capsys, "validate", FIX / "bad_rational.ini")
    assert code == 2 and data is None and "1/0" in err


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "validate", tmp_path / "nope.ini")
    assert code == 2 and "cannot read" in err


def test_unknown_section_exit_two(capsys, tmp_path):
    p = tmp_path / "x.ini"
    p.write_text("[lie]\nbuiltin = sl2-xyz\n[weird]\na = 1\n")
    code, _, err = run(capsys, "validate", p)
    assert code == 2 and "weird" in err


def test_solve_simple_zero(capsys):
    code, data, _ = run(capsys, "solve-coactions", FIX / "sl2_simple.ini")
    assert code == 0 and data["parameters"] == 0


def test_solve_dual_two(capsys):
    code, data, _ = run(capsys, "solve-coactions", FIX / "sl2_dual.ini")
    assert code == 0 and data["parameters"] == 2
    assert set(data["basis"][0]) == {"e", "f", "h"}
    assert data["comodule_constraints"]


def test_cohomology_ce(capsys):
    code, data, _ = run(capsys, "cohomology", FIX / "sl2_koszul.ini")
    assert code == 0 and data["betti"] == {"0": 1, "1": 0, "2": 0, "3": 1}


def test_cohomology_cyclic(capsys):
    code, data, _ = run(capsys, "cohomology", FIX / "sl2_koszul.ini", "--complex", "cyclic-lie")
    assert code == 0 and (data["even"], data["odd"]) == (1, 1)
    assert len(data["representatives"]["1"]) == 1


def test_cohomology_homology_side(capsys):
    code, data, _ = run(capsys, "cohomology", FIX / "sl2_koszul.ini", "--complex", "koszul")
    assert code == 0 and (data["even"], data["odd"]) == (1, 1)


def test_cohomology_relative(capsys):
    code, data, _ = run(capsys, "cohomology", FIX / "sl2_relative.ini", "--complex", "relative")
    assert code == 0 and data["betti"] == {"0": 1, "1": 0, "2": 0, "3": 0}
    code, data, _ = run(capsys, "cohomology", FIX / "sl2_relative.ini", "--complex", "relative", "--parity")
    assert (data["even"], data["odd"]) == (1, 0)


def test_relative_needs_task(capsys):
    code, _, err = run(capsys, "cohomology", FIX / "sl2_koszul.ini", "--complex", "relative")
    assert code == 2 and "[task]" in err


def test_cyclic_rejects_non_sayd(capsys):
    code, data, _ = run(capsys, "cohomology", FIX / "bad_coaction.ini", "--complex", "cyclic-lie")
    assert code == 1 and data["ok"] is False


def test_golden_and_list(capsys):
    code, data, _ = run(capsys, "--list")
    names = [g["name"] for g in data["goldens"]]
    assert code == 0 and "c-odd" in names and len(names) == 10
    code, data, _ = run(capsys, "golden", "c-odd")
    assert code == 0 and data["ok"]
    code, _, _ = run(capsys, "golden", "nope")
    assert code == 2


def test_max_degree_env(capsys, monkeypatch):
    monkeypatch.setenv("HOPFCYC_MAX_DEGREE", "5")
    code, data, _ = run(capsys, "describe", "H1S-cop")
    assert code == 0 and data["max_degree"] == 5
    code, data, _ = run(capsys, "--max-degree", "7", "describe", "H1S-cop")
    assert data["max_degree"] == 7
    monkeypatch.setenv("HOPFCYC_MAX_DEGREE", "x")
    code, _, _ = run(capsys, "describe", "H1S-cop")
    assert code == 2


def test_describe_builtins(capsys):
    code, data, _ = run(capsys, "describe", "sl2-efh")
    assert data["kind"] == "lie" and data["brackets"]["e,f"] == "1*h"
    code, data, _ = run(capsys, "describe", "koszul-sym(1)")
    assert data["kind"] == "module" and data["names"] == ["1", "t^X", "t^Y", "t^Z"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfcyc", "validate", str(FIX / "sl2_koszul.ini")],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ok"]
