import csv
import io
import subprocess
import sys

import pytest

from _suites import REF_TABLE1, REF_TABLE3
from mfccquad.cli import main

T1 = ["--f", "x^4.5/(1+x^2)", "--g", "sqrt(x^2+3*x+4)", "--a", "0", "--b", "1", "--k", "100"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_value(out):
    re, im = out.strip().split("\t")
    return complex(float(re), float(im))


def test_integrate_mfcc1(capsys):
    code, out, err = run(capsys, "integrate", "--method", "mfcc1", *T1, "--M", "256", "--N", "2")
    assert code == 0 and err == ""
    assert abs(parse_value(out) - REF_TABLE1) == pytest.approx(4.6807e-13, rel=2e-3)
    # 17 significant digits
    assert len(out.split("\t")[0].lstrip("-").replace(".", "").lstrip("0")) >= 16


def test_integrate_fcc(capsys):
    code, out, _ = run(capsys, "integrate", "--method", "fcc", "--f", "1", "--g", "x",
                       "--a", "0", "--b", "1", "--k", "6.283185307179586", "--N", "8")
    assert code == 0
    assert abs(parse_value(out)) < 1e-14


def test_integrate_graded(capsys):
    code, out, _ = run(capsys, "integrate", "--method", "graded", "--f", "(x-1)/(1+x^2)",
                       "--g", "x^4", "--a", "0", "--b", "1", "--k", "1000",
                       "--stat-order", "3", "--M", "200", "--N", "6")
    assert code == 0
    err = abs(parse_value(out) - REF_TABLE3)
    assert 4.7397e-8 / 10 <= err <= 4.7397e-8 * 10


def test_integrate_mfcc2_and_verbose(capsys):
    code, out, err = run(capsys, "integrate", "--method", "mfcc2", "--f", "(x-1)/(1+x^2)",
                         "--g", "sqrt(x^2+3*x+4)", "--a", "-1", "--b", "1", "--k", "100",
                         "--N", "16", "--s", "3", "--verbose")
    assert code == 0
    assert "lambda_max=" in err and "panels=1" in err
    assert out.count("\t") == 1


def test_integrate_gprime(capsys):
    common = ["integrate", "--method", "mfcc1", *T1, "--M", "16", "--N", "4"]
    _, a, _ = run(capsys, *common)
    _, b, _ = run(capsys, *common, "--gprime", "(2*x+3)/(2*sqrt(x^2+3*x+4))")
    assert abs(parse_value(a) - parse_value(b)) < 1e-15


@pytest.mark.parametrize("argv", [
    ["integrate", "--method", "mfcc1", "--f", "sin(", "--g", "x", "--a", "0", "--b", "1", "--k", "3"],
    ["integrate", "--method", "mfcc1", "--f", "1", "--g", "y", "--a", "0", "--b", "1", "--k", "3"],
    ["integrate", "--method", "graded", "--f", "1", "--g", "x^2", "--a", "0", "--b", "1", "--k", "3"],
    ["integrate", "--method", "mfcc1", "--f", "1", "--g", "x", "--a", "1", "--b", "0", "--k", "3"],
    ["integrate", "--method", "mfcc1", "--f", "1", "--g", "x", "--a", "0", "--b", "1", "--k", "-3"],
    ["integrate", "--method", "fcc", "--f", "1", "--g", "x^2", "--a", "0", "--b", "1", "--k", "3"],
    ["integrate", "--method", "mfcc2", "--f", "1", "--g", "x", "--a", "0", "--b", "1", "--k", "3",
     "--Nprime", "2", "--s", "5"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err.startswith("usage error")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["integrate", "--method", "nope"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    # stationary point at 0 without --method graded
    ["integrate", "--method", "mfcc1", "--f", "1", "--g", "x^2", "--a", "0", "--b", "1", "--k", "50"],
    # g not monotone
    ["integrate", "--method", "mfcc2", "--f", "1", "--g", "x^2", "--a", "-1", "--b", "1", "--k", "50"],
    # pole of the amplitude at a node
    ["integrate", "--method", "mfcc1", "--f", "1/x", "--g", "x", "--a", "0", "--b", "1", "--k", "50"],
])
def test_numerical_failures_exit_3(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert err.startswith("error")


def test_weights_command(capsys):
    code, out, _ = run(capsys, "weights", "--N", "4", "--k", "3.141592653589793")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "re", "im"]
    assert len(rows) == 6
    assert abs(complex(float(rows[2][1]), float(rows[2][2])) - 2j / 3.141592653589793) < 1e-15


def test_python_dash_m():
    res = subprocess.run([sys.executable, "-m", "mfccquad", "weights", "--N", "2", "--k", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.startswith("n,re,im\n")
