import json
import subprocess
import sys

import pytest

from frobcx.cli import run
from frobcx.complexes import GF2
from frobcx.frobenius import betti_table
from frobcx.monoid import AffineMonoid


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_betti_tsv_matches_library(capsys):
    code, out, _ = call(capsys, "betti", "--gens", "2,3", "--cap", "20", "--field", "gf2", "--format", "tsv")
    assert code == 0
    assert out == betti_table(AffineMonoid.from_generators([2, 3]), 20, GF2).to_tsv()
    lines = out.splitlines()
    assert lines[0] == "grade\ti\tbetti"
    assert lines[1:4] == ["0\t0\t1", "2\t1\t1", "3\t1\t1"]


def test_betti_json_covers_every_grade(capsys):
    code, out, _ = call(capsys, "betti", "--gens", "2,3", "--cap", "20", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [d["grade"][0] for d in data] == [0] + list(range(2, 21))


def test_verify_extension_pass(capsys):
    code, out, _ = call(capsys, "verify-extension", "--base-gens", "2", "--rho", "6", "--r", "2", "--cap", "12")
    assert code == 0
    assert out.splitlines()[0] == "PASS"


def test_verify_extension_json(capsys):
    code, out, _ = call(
        capsys, "verify-extension", "--base-gens", "2", "--rho", "6", "--r", "3", "--cap", "12", "--format", "json"
    )
    assert code == 0 and json.loads(out)["pass"] is True


def test_compare_series(capsys):
    code, out, _ = call(capsys, "compare-series", "--family", "two_gen", "--a", "2", "--b", "3", "--cap", "24")
    assert (code, out) == (0, "EQUAL\n")
    code, out, _ = call(
        capsys, "compare-series", "--family", "geometric", "--p", "2", "--q", "3", "--n", "2", "--cap", "36",
        "--format", "json",
    )
    data = json.loads(out)
    assert code == 0 and data["equal"] and data["forms"] == {"closed_form": True, "p2_form": True}


def test_suspension_check(capsys):
    code, out, _ = call(capsys, "suspension-check", "--base-gens", "4,10", "--rho", "14", "--r", "2", "--cap", "20")
    assert code == 0 and out.startswith("PASS")


def test_poincare_and_closed_form(capsys):
    code, out, _ = call(capsys, "poincare", "--gens", "2,3", "--cap", "8")
    assert (code, out) == (0, "1 + t*z^2 + t*z^3 + t^2*z^5 + t^2*z^6 + t^3*z^8\n")
    code, out, _ = call(capsys, "closed-form", "--family", "two_gen", "--a", "2", "--b", "3", "--cap", "8")
    assert code == 0
    assert out.splitlines() == [
        "(1+t*z^2)(1+t*z^3)/((1-t^2*z^6))",
        "1 + t*z^2 + t*z^3 + t^2*z^5 + t^2*z^6 + t^3*z^8",
    ]


def test_spec_files(capsys, tmp_path):
    mono = tmp_path / "m.json"
    mono.write_text(json.dumps({"dim": 2, "generators": [[1, 0], [0, 1]]}))
    code, out, _ = call(capsys, "poincare", "--spec", str(mono), "--cap", "2,2")
    assert code == 0 and out == "1 + t*z^(0,1) + t*z^(1,0) + t^2*z^(1,1)\n"

    ext = tmp_path / "e.json"
    ext.write_text(json.dumps({"base": {"generators": [2]}, "rho": 6, "r": 2}))
    code, out, _ = call(capsys, "verify-extension", "--spec", str(ext), "--cap", "10")
    assert code == 0 and out.startswith("PASS")


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "table.tsv"
    code, out, _ = call(capsys, "betti", "--gens", "3,5", "--cap", "15", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("grade\ti\tbetti\n")


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["betti", "--gens", "2,x", "--cap", "5"], "integers"),
        (["betti", "--gens", "0,3", "--cap", "5"], "nonzero"),
        (["betti", "--cap", "5"], "--gens"),
        (["betti", "--gens", "2,3"], "--cap"),
        (["betti", "--gens", "2,3", "--cap", "5", "--field", "gf4"], "prime"),
        (["verify-extension", "--base-gens", "2,3", "--rho", "2", "--r", "2", "--cap", "5"], "irreducible"),
        (["verify-extension", "--base-gens", "2", "--rho", "6", "--cap", "5"], "--r"),
        (["suspension-check", "--base-gens", "2", "--rho", "6", "--r", "3", "--cap", "5"], "r = 2"),
        (["compare-series", "--family", "pqr", "--p", "2", "--q", "3", "--cap", "5"], "--r"),
        (["betti", "--spec", "/nonexistent.json", "--cap", "5"], "--spec"),
        (["frobnicate"], "invalid choice"),
    ],
)
def test_invalid_input_exits_2(capsys, argv, fragment):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert fragment in err


def test_mismatch_exits_1(capsys, monkeypatch):
    from frobcx import cli

    def bad_closed_form(family, **params):
        from frobcx.series import RationalSeriesExpr

        return RationalSeriesExpr(((1, 2),))

    monkeypatch.setattr(cli, "closed_form", bad_closed_form)
    code, out, _ = call(capsys, "compare-series", "--family", "two_gen", "--a", "2", "--b", "3", "--cap", "12")
    assert code == 1 and out.startswith("DIFFER")


def test_output_is_deterministic_across_workers(tmp_path):
    cmd = [sys.executable, "-m", "frobcx", "betti", "--gens", "3,4,5", "--cap", "30"]
    one = subprocess.run(cmd, capture_output=True, env={"FROBCX_THREADS": "1", "PATH": ""}, check=True).stdout
    four = subprocess.run(cmd, capture_output=True, env={"FROBCX_THREADS": "4", "PATH": ""}, check=True).stdout
    assert one == four and one.startswith(b"grade")
