import io as _io
import subprocess
import sys

from ffdesign.cli import main
from ffdesign.iso import image

from conftest import D1, D2, O4


def run(*argv):
    out = _io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_construct_generators():
    assert run("construct", "--runs", "16", "--factors", "12", "--format", "generators") == (
        0, "I=ABCE=ABDF=ACDG=BCDH=ADJ=BDK=CDL=ABCDM\n")
    assert run("construct", "--runs", "16", "--factors", "8")[1].strip() == "I=ABCE=ABDF=ACDG=BCDH"


def test_construct_columns_28():
    code, text = run("construct", "--runs", "32", "--factors", "28", "--format", "columns")
    assert code == 0
    assert len(text.strip().split(",")) == 28


def test_construct_out_of_scope(capsys):
    code, _ = run("construct", "--runs", "16", "--factors", "6")
    assert code == 1
    assert "k >= n/2" in capsys.readouterr().err


def test_construct_capability_exit():
    assert run("construct", "--runs", "64", "--factors", "40")[0] == 2


def test_wlp_outputs():
    assert run("wlp", "--design", D1)[1].splitlines()[0] == "(0,0,4,14,8,0,4,1,0)"
    assert run("wlp", "--design", "A,B,AB") == (0, "(0,0,1)\n1+u^3\n")
    code, text = run("wlp", "--design", O4, "--method", "both")
    assert code == 0 and text.splitlines()[0] == "(0,0,0,14,0,0,0,1)"


def test_wlp_poly_ineligible():
    assert run("wlp", "--design", "A,B,AB", "--method", "poly")[0] == 1


def test_wlp_poly_on_relabelled_design(d1, d2):
    moved = image(d1, (1, 0b1110, 0b1101, 0b1011))
    code, text = run("wlp", "--design", str(moved), "--method", "poly")
    assert code == 0 and text.splitlines()[0] == "(0,0,4,14,8,0,4,1,0)"
    assert run("wlp", "--design", D2, "--method", "poly")[0] == 1


def test_compare():
    assert run("compare", D1, D2)[1].strip() == "d1 smaller aberration (a_3: 4 < 8)"
    assert run("compare", D2, D1)[1].strip() == "d2 smaller aberration (a_3: 4 < 8)"
    assert run("compare", D1, D1)[1].startswith("equal")
    assert run("compare", D1, O4)[0] == 1


def test_enumerate_and_rank():
    code, text = run("enumerate", "--runs", "16")
    assert code == 0 and text.splitlines()[0] == "45 classes"
    assert run("enumerate", "--runs", "16", "--factors", "9")[1].splitlines()[0] == "5 classes"
    ranked = run("rank", "--runs", "16", "--factors", "9")[1].splitlines()
    assert len(ranked) == 5 and ranked[0].startswith("1 (0,0,4,14,8,0,4,1,0)")
    assert "complement rank 3" in run("rank", "--design", D1)[1]
    assert run("enumerate", "--runs", "64")[0] == 2


def test_enumerate_edges():
    lines = run("enumerate", "--runs", "16", "--edges")[1].splitlines()
    assert lines[0] == "0,-,A"
    assert all(line.count(",") == 2 for line in lines)


def test_matrix():
    code, text = run("matrix", "--design", "A,B,AB")
    assert code == 0 and text.splitlines()[0] == "A,B,AB"
    assert len(run("matrix", "--runs", "16", "--factors", "9")[1].splitlines()) == 17


def test_bad_design_is_domain_error():
    assert run("wlp", "--design", "A,Q?")[0] == 1
    assert run("wlp")[0] == 1


def test_verify_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ffdesign", "verify", "--seed", "2"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "0 failed" in proc.stdout
