import json
import subprocess
import sys

import pytest

from seifertkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("symbol,chi,e,geometry", [
    ("{b=0; g=2; -}", "-2", "0", "H2xR"),
    ("{b=1; g=1; -}", "0", "-1", "Nil"),
    ("{b=0; g=0; -}", "2", "0", "S2xR"),
    ("{b=-1; g=0; (2,1)(3,1)(7,1)}", "-1/42", "1/42", "SL2R-tilde"),
])
def test_classify(capsys, symbol, chi, e, geometry):
    code, out, _ = run(capsys, "classify", "--symbol", symbol, "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert (data["chi"], data["e"], data["geometry"]) == (chi, e, geometry)
    code, out, _ = run(capsys, "classify", "--symbol", symbol)
    assert f"geometry = {geometry}" in out


def test_global_flags_before_or_after_subcommand(capsys):
    a = run(capsys, "--json", "--seed", "3", "cover", "--orbifold", "g=0 o cones=2,2,3,3")[1]
    b = run(capsys, "cover", "--orbifold", "g=0 o cones=2,2,3,3", "--json", "--seed", "3")[1]
    assert a == b and json.loads(a)["certificate"]["degree"] == 6


def test_cover_with_closure(capsys):
    code, out, _ = run(capsys, "cover", "--orbifold", "g=1 o cones=2", "--galois", "--json")
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["galois_closure_verified"]
    assert data["certificate"]["degree"] == 4 and data["galois_closure"]["degree"] == 12


def test_cover_bad_orbifold_is_error(capsys):
    code, _, err = run(capsys, "cover", "--orbifold", "g=0 o cones=3")
    assert code == 1 and "Teardrop" in err


def test_cover_not_found_exit_code(capsys):
    code, out, _ = run(capsys, "cover", "--orbifold", "g=0 o cones=2,3,7", "--max-mult", "1", "--json")
    assert code == 3 and json.loads(out)["status"] == "NotFound"


def test_descent(capsys):
    code, out, _ = run(capsys, "descent", "--symbol", "{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}", "--degree", "6", "--json")
    data = json.loads(out)["descent"]
    assert code == 0
    assert data["pullback_euler"] == -16 and data["residuals"] == [0, 0, 0, 0]
    code, _, err = run(capsys, "descent", "--symbol", "{b=0; g=0; (2,1)}", "--degree", "3")
    assert code == 1 and "error" in err


def test_verify_local_model(capsys):
    code, out, _ = run(capsys, "verify-local-model", "--p", "5", "--q", "2", "--samples", "50", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and max(data["max_residuals"].values()) <= 1e-10
    code, out, _ = run(capsys, "verify-local-model", "--p", "3", "--q", "2", "--samples", "10", "--exact")
    assert code == 0 and "all within 0: True" in out
    code, _, err = run(capsys, "verify-local-model", "--p", "4", "--q", "2")
    assert code == 1


def test_pipeline_exit_codes(capsys):
    code, out, _ = run(capsys, "pipeline", "--symbol", "{b=-1; g=0; (2,1)(3,1)(5,1)}")
    assert code == 2 and "Refused-Spherical" in out
    code, out, _ = run(capsys, "pipeline", "--symbol", "{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}", "--json")
    assert code == 0 and json.loads(out)["status"] == "Completed"
    code, out, _ = run(capsys, "pipeline", "--symbol", "{b=0; g=0; (2,1)(3,1)(7,1)}", "--max-mult", "1")
    assert code == 3
    code, _, err = run(capsys, "pipeline", "--symbol", "{b=0; g=0; (2,1)(3,1)(7,1)}")
    assert code == 1 and "GroupTooLarge" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "classify", "--symbol", "{b=0; g=0; (2,1}")
    assert code == 1 and "offset" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "seifertkit", "classify", "--symbol", "{b=0; g=1; -}"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0 and "E3" in proc.stdout
