import json
import subprocess
import sys

import pytest

from urncalc.cli import main, run

URN = "1|0>+1|1>+1|2>"


def test_draw_hyp_golden():
    code, out, err = run(["draw", "--mode", "hyp", "--urn", URN, "--K", "2"])
    assert code == 0 and err == ""
    assert out == "1/3|1|0>+1|1>> + 1/3|1|0>+1|2>> + 1/3|1|1>+1|2>>"


def test_draw_hyp_overdraw():
    code, out, err = run(["draw", "--mode", "hyp", "--urn", "1|0>", "--K", "2"])
    assert code == 1 and out == ""
    assert err == "overdraw: use sgnhyp"


def test_sgnhyp_json_records():
    code, out, _ = run(["sgnhyp", "--urn", URN, "--K", "4", "--format", "json"])
    assert code == 0
    records = json.loads(out)
    assert len(records) == 15
    assert records[0] == {"outcome": "4|0>", "num": 1, "den": 18}
    assert records[6] == {"outcome": "2|0>+1|1>+1|2>", "num": 2, "den": 3}


def test_sgnhyp_common_denominator():
    code, out, _ = run(["sgnhyp", "--urn", URN, "--K", "4", "--common-denominator", "126"])
    assert code == 0 and out.startswith("7/126|4|0>> - 14/126|3|0>+1|1>>")
    code, out, _ = run(["sgnhyp", "--urn", URN, "--K", "4", "--common-denominator"])
    assert code == 0 and out.startswith("1/18|4|0>> - 2/18|3|0>+1|1>>")


def test_sgnhyp_overdraw_bound():
    code, _, err = run(["sgnhyp", "--urn", "1|0>", "--K", "8"])
    assert code == 1 and "--max-overdraw" in err
    code, _, _ = run(["sgnhyp", "--urn", "1|0>", "--K", "8", "--max-overdraw", "7"])
    assert code == 0


def test_dmn_golden():
    code, out, _ = run(["dmn", "--omega", "1/2,1/6,1/3", "--K", "2"])
    assert out == "-1/4|2|0>> + 1/6|1|0>+1|1>> - 1/4|2|1>> + 11/6|1|0>+1|2>> + 1/6|1|1>+1|2>> - 2/3|2|2>>"


def test_ddir():
    code, out, _ = run(["ddir", "--urn", "2|0>", "--n", "3"])
    assert out == "72*r0^2 - 96*r0*r1 + 12*r1^2 - 96*r0*r2 + 24*r1*r2 + 12*r2^2"
    code, out, _ = run(["ddir", "--urn", "[0,0,0]", "--format", "json"])
    assert json.loads(out) == {"urn": "empty", "density": [{"exponent": [0, 0, 0], "num": 2, "den": 1}]}


def test_dualbasis_formats():
    code, out, _ = run(["dualbasis", "--n", "3", "--K", "2"])
    lines = out.splitlines()
    assert len(lines) == 6
    assert lines[0] == "d[2|0>] = 72*r0^2 - 96*r0*r1 + 12*r1^2 - 96*r0*r2 + 24*r1*r2 + 12*r2^2"
    code, out, _ = run(["dualbasis", "--n", "3", "--K", "2", "--psi", "1|0>+1|1>", "--format", "json"])
    data = json.loads(out)
    assert data[0]["psi"] == "1|0>+1|1>" and data[0]["polynomial"][1]["num"] == 264
    code, out, _ = run(["dualbasis", "--n", "2", "--K", "1", "--format", "csv-grid", "--grid", "2"])
    assert out.splitlines()[:3] == ["psi,r0,r1,value", "1|0>,1,0,4", "1|0>,1/2,1/2,1"]
    code, _, err = run(["dualbasis", "--n", "3", "--K", "2", "--psi", "1|0>"])
    assert code == 1 and "size 2" in err


def test_bihg():
    code, out, _ = run(["bihg", "--L", "3", "--K", "4", "--j", "2"])
    assert out == "17/210|0> - 34/105|1> + 17/35|2> + 106/105|3> - 53/210|4>"
    code, out, _ = run(["bihg", "--L", "3", "--K", "5", "--j", "2", "--format", "csv"])
    assert out.splitlines()[1:3] == ["0,1,6", "1,-3,7"]
    code, _, err = run(["bihg", "--L", "3", "--K", "4", "--j", "5"])
    assert code == 1


def test_bernstein_csv():
    code, out, _ = run(["bernstein", "--K", "1", "--dual", "--plot-grid", "2"])
    assert out.splitlines() == ["i,r,value,approx", "0,0,4,4.0", "0,1/2,1,1.0", "0,1,-2,-2.0",
                                "1,0,-2,-2.0", "1,1/2,1,1.0", "1,1,4,4.0"]
    code, out, _ = run(["bernstein", "--K", "5", "--plot-grid", "200"])
    assert len(out.splitlines()) == 1 + 6 * 201


def test_polya_and_multinomial_modes():
    code, out, _ = run(["draw", "--mode", "polya", "--urn", "[1,1,1]", "--K", "2"])
    assert out.count("1/6|") == 6
    code, out, _ = run(["draw", "--mode", "mn", "--omega", "1/2,1/2", "--K", "2", "--format", "csv"])
    assert out.splitlines() == ["outcome,num,den", "2|0>,1,4", "1|0>+1|1>,1,2", "2|1>,1,4"]


@pytest.mark.parametrize("argv", [
    ["draw", "--mode", "mn", "--K", "2"],
    ["draw", "--mode", "polya", "--urn", "1|0>", "--n", "2", "--K", "1"],
    ["draw", "--mode", "hyp", "--urn", "2|x>", "--K", "1"],
    ["dmn", "--omega", "1/2,1/3", "--K", "2"],
    ["dmn", "--omega", "1/0,1", "--K", "2"],
    ["dmn", "--omega", "a,b", "--K", "2"],
    ["sgnhyp", "--urn", URN, "--K", "-1"],
    ["sgnhyp", "--urn", URN],
    ["bernstein", "--K", "2", "--plot-grid", "1"],
    ["frobnicate"],
    [],
])
def test_validation_errors_exit_one(argv):
    code, out, err = run(argv)
    assert code == 1
    assert out == ""
    assert err and "\n" not in err


def test_verify_exit_codes():
    code, out, _ = run(["verify", "--suite", "dagger", "--n", "2", "--max-dagger", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and report["suite"] == "dagger"


def test_main_prints(capsys):
    assert main(["draw", "--mode", "hyp", "--urn", "1|0>", "--K", "2"]) == 1
    captured = capsys.readouterr()
    assert captured.err.strip() == "overdraw: use sgnhyp"
    assert main(["bihg", "--L", "2", "--K", "1", "--j", "1"]) == 0
    assert capsys.readouterr().out == "1/2|0> + 1/2|1>\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "urncalc", "bihg", "--L", "2", "--K", "1", "--j", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "1/2|0> + 1/2|1>\n"
