import json
import shutil
import subprocess
import sys

import pytest

from conftest import D2, QQ
from loopdet import parse_element, parse_series
from loopdet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out):
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line and not line.startswith(" "))


def test_ccsym(capsys):
    code, out, _ = run(capsys, "ccsym", "--a", "t", "--b", "t")
    assert code == 0
    assert fields(out) == {"ord_a": "1", "ord_b": "1", "variant": "corrected", "value": "-1"}


def test_ccsym_printed_variant(capsys):
    code, out, _ = run(capsys, "ccsym", "--ring", "Q[e^2]", "--a", "1 - e*t^-1", "--b", "1 + t", "--variant", "printed")
    assert code == 0
    assert fields(out)["value"] == "1 + e"


def test_tame_and_ord(capsys):
    assert fields(run(capsys, "tame", "--a", "3*t", "--b", "2")[1])["value"] == "1/2"
    assert fields(run(capsys, "ord", "--ring", "Q[e^2]", "--a", "e*t^-4 + 2*t")[1]) == {"ord": "1"}


def test_decomp_output_reparses(capsys):
    code, out, _ = run(capsys, "decomp", "--ring", "Q[e^2]", "--a", "2*t^2*(1 + t)*(1 + e*t^-1)")
    f = fields(out)
    assert code == 0 and f["n"] == "2" and f["a0"] == "2"
    plus, minus = parse_series(f["plus"], D2), parse_series(f["minus"], D2)
    assert plus == parse_series("1 + t", D2)
    assert minus == parse_series("1 + e/t", D2)
    assert parse_element(f["a0"], D2) == 2


def test_reldet(capsys):
    code, out, _ = run(capsys, "reldet", "--n", "1", "--f1", "t^-1", "--f2", "1")
    assert code == 0 and out == "deg: 1\nscal: 1\n"
    code, out, _ = run(capsys, "reldet", "--f1", "t, 0; 0, 1", "--f2", "1, 0; 0, 1", "--depth", "4", "--convention", "reversed")
    assert fields(out) == {"deg": "-1", "scal": "1"}


def test_cocycle_and_commutator(capsys):
    assert fields(run(capsys, "cocycle", "--g", "3", "--h", "t")[1]) == {"gamma": "3"}
    assert fields(run(capsys, "commutator", "--a", "t", "--b", "3")[1]) == {"commutator": "1/3"}


def test_verify_rr(capsys, tmp_path):
    report = tmp_path / "rr.json"
    code, out, _ = run(capsys, "verify-rr", "--ring", "Q[e^2]", "--seed", "1", "--cases", "12", "--report", str(report))
    f = fields(out)
    assert code == 0
    assert f["identity"] == "c = (-1)^mn symbol"
    assert f["printed skew-symmetric"] == "false"
    assert f["printed {t, 2}"] == "1/2"
    assert sum(line.startswith("case ") for line in out.splitlines()) == 12
    data = json.loads(report.read_text())
    assert data["command"] == "verify-rr" and data["status"] == "pass"
    assert data["identity"] == "c = (-1)^mn symbol"


def test_slfactor(capsys):
    code, out, _ = run(capsys, "slfactor", "--n", "2", "--m", "1, 3*t^-1 + t^2; 0, 1")
    assert code == 0
    assert out.splitlines() == ["factors: 1", "prec: 12", "e 1 2 : 3*t^-1 + t^2"]
    code, out, _ = run(capsys, "slfactor", "--m", "t, 0; 0, t^-1", "--prec", "6")
    assert code == 0
    for line in out.splitlines()[2:]:
        _, i, j, _, a = line.split(" ", 4)
        parse_series(a, QQ)


@pytest.mark.parametrize(
    "argv",
    [
        ["ccsym", "--a", "t", "--b", "x"],
        ["ccsym", "--ring", "Q[e]", "--a", "t", "--b", "t"],
        ["ord", "--a", "0"],
        ["reldet", "--n", "2", "--f1", "t", "--f2", "1"],
        ["commutator", "--a", "1, t; 0, 1", "--b", "1, 0; t, 1"],
        ["slfactor", "--m", "t, 0; 0, t"],
        ["tame", "--ring", "Q[e^2]", "--a", "t", "--b", "t"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error: ")
    assert out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["ccsym", "--a", "t"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["selftest", "--cases", "-1"])
    assert info.value.code == 2


def test_selftest_passes_and_is_deterministic(capsys, tmp_path):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    code1, out1, _ = run(capsys, "selftest", "--ring", "Q[e1^2]", "--seed", "42", "--cases", "3", "--report", str(r1))
    code2, out2, _ = run(capsys, "selftest", "--ring", "Q[e1^2]", "--seed", "42", "--cases", "3", "--report", str(r2))
    assert code1 == code2 == 0
    assert out1 == out2
    assert r1.read_bytes() == r2.read_bytes()
    data = json.loads(r1.read_text())
    assert all(s["failures"] == 0 for s in data["suites"])
    assert "status: pass" in out1


def test_selftest_field_suites(capsys):
    code, out, _ = run(capsys, "selftest", "--cases", "3")
    assert code == 0
    assert "suite tame: 3/3 passed" in out
    assert "suite slfactor: 3/3 passed" in out


def test_mutated_selftest_fails_with_counterexample(capsys):
    code, out, _ = run(capsys, "selftest", "--cases", "5", "--mutate")
    assert code == 1
    assert "variant: printed" in out
    assert "counterexample skew:" in out
    assert out.rstrip().endswith("status: fail")


@pytest.mark.skipif(shutil.which("loopdet") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["loopdet", "commutator", "--a", "3", "--b", "t"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "commutator: 3\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "loopdet.cli", "ord", "--a", "t^-2 + 1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ord: -2\n"
