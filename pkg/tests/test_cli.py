import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction as F

import pytest

from logmeans import harmonic_number
from logmeans.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "cos": write("cos.json", {"system": "trigonometric", "representation": {"type": "trig-poly", "coeffs": [[0.5, 0], [0, 0], [0.5, 0]]}}),
        "one": write("one.json", {"system": "trigonometric", "representation": {"type": "trig-poly", "coeffs": [[1, 0]]}}),
        "w3": write("w3.json", {"system": "walsh-paley", "representation": {"type": "dyadic-step", "values": [1, -1, -1, 1]}}),
        "bad": write("bad.json", {"system": "walsh-paley", "representation": {"type": "dyadic-step", "values": [1, 2, 3]}}),
        "seq": write("seq.json", ["1/2", 3, -1, 0.25]),
        "dir": str(tmp_path),
    }


# -- gamma -------------------------------------------------------------------


def test_gamma_logarithmic(capsys):
    code, out, err = run(["gamma", "--weights", "logarithmic", "--n", "4", "--exact"], capsys)
    assert code == 0
    table = rows(out)
    assert [r["gamma"] for r in table] == ["1", "-1/2", "-1/12", "-1/24", "-19/720"]
    assert table[-1]["partial_sum"] == "251/720"
    assert {r["convolution_residual"] for r in table} == {"0"}
    assert "# conclusions.strictly_negative: true" in err


def test_gamma_ones(capsys):
    code, out, _ = run(["gamma", "--weights", "ones", "--n", "4"], capsys)
    assert [r["gamma"] for r in rows(out)] == ["1", "-1", "0", "0", "0"]


def test_gamma_64_min_partial_sum_positive(capsys):
    code, out, _ = run(["gamma", "--n", "64", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["command"] == "gamma"
    assert F(doc["reports"]["conclusions"]["min_partial_sum"]) > 0
    assert all(F(r[1]) < 0 for r in doc["rows"][1:])


# -- bridge and scans -----------------------------------------------------------------


def test_bridge_row_two(capsys):
    code, out, err = run(["bridge", "--n", "2"], capsys)
    assert [r["t_k_n"] for r in rows(out)] == ["-1/56", "-9/56", "33/28"]
    assert "# abs_row_sum: 19/14" in err


def test_scan_rowsums_reciprocal(capsys):
    code, out, _ = run(["scan-rowsums", "--nmax", "2", "--alpha", "reciprocal", "--exact"], capsys)
    table = rows(out)
    assert [r["abs_row_sum"] for r in table] == ["1", "1", "19/14"]
    assert {r["row_sum_minus_one"] for r in table} == {r["identity2_residual"] for r in table} == {"0"}


def test_scan_rowsums_half(capsys):
    code, out, _ = run(["scan-rowsums", "--nmax", "32", "--alpha", "const:1/2", "--exact"], capsys)
    table = rows(out)
    assert len(table) == 33
    assert {r["abs_row_sum"] for r in table} == {"1"}
    assert {r["negatives"] for r in table} == {"0"}
    assert {r["identity2_residual"] for r in table} == {"0"}
    _, out2, _ = run(["scan-rowsums", "--nmax", "32", "--alpha", "const:0.5", "--exact"], capsys)
    assert out2 == out


def test_scan_float(capsys):
    code, out, _ = run(["scan-rowsums", "--nmax", "40", "--alpha", "const:0.5", "--float"], capsys)
    assert all(abs(float(r["row_sum_minus_one"])) < 1e-12 for r in rows(out))


def test_cond_check(capsys):
    code, out, err = run(["cond-check", "--n", "2"], capsys)
    table = rows(out)
    assert table[0]["holds_frozen"] == "false" and table[0]["holds_diagonal"] == "true"
    assert "# frozen_failures: 1" in err


# -- sequences --------------------------------------------------------------------------


def test_logmean_linear(capsys):
    code, out, _ = run(["logmean", "--nmax", "5"], capsys)
    assert [F(r["log_mean"]) for r in rows(out)] == [n * (1 - 1 / harmonic_number(n)) for n in range(1, 6)]


def test_logmean_sequence_file(capsys, files):
    code, out, _ = run(["logmean", "--seq-file", files["seq"], "--nmax", "2"], capsys)
    # (1/l_2)(s_0/2 + s_1) with s = (1/2, 3)
    assert rows(out)[1]["log_mean"] == "13/6"


def test_cesaro_half(capsys):
    code, out, _ = run(["cesaro", "--seq", "linear", "--alpha", "const:1/2", "--nmax", "3"], capsys)
    table = rows(out)
    assert table[0]["sigma_n"] == "0" and table[0]["alpha_n"] == "1/2"


# -- Fourier -------------------------------------------------------------------------------


def test_fourier_logmean_cos_exact(capsys, files):
    code, out, _ = run(["fourier-logmean", "--f", files["cos"], "--n", "3", "--x", "0", "--exact"], capsys)
    table = rows(out)
    assert table[-1]["L_n"] == "9/11"
    assert [r["S_n"] for r in table] == ["1", "1", "1"]


def test_fourier_logmean_w3(capsys, files):
    code, out, _ = run(["fourier-logmean", "--f", files["w3"], "--n", "3"], capsys)
    assert {float(r["L_n"]) for r in rows(out)} == {0.0}


def test_fourier_constant_columns(capsys, files):
    code, out, _ = run(["fourier-logmean", "--f", files["one"], "--n", "6", "--exact"], capsys)
    assert code == 0
    assert {(r["S_n"], r["L_n"]) for r in rows(out)} == {("1", "1")}


def test_fourier_partial(capsys, files):
    code, out, _ = run(["fourier-partial", "--f", files["w3"], "--n", "5", "--x", "0.375"], capsys)
    assert [float(r["S_n"]) for r in rows(out)] == [0, 0, 0, 0, -1, -1]


def test_subseq_logmean(capsys, files):
    code, out, _ = run(["subseq-logmean", "--f", files["w3"], "--subseq", "4,8,16", "--x", "0,0.25", "--exact"], capsys)
    assert [r["value"] for r in rows(out)] == ["1", "-1"]
    code, out, _ = run(["subseq-logmean", "--f", files["w3"], "--subseq", "4,8,16", "--norm", "ln", "--x", "0"], capsys)
    assert math.isclose(float(rows(out)[0]["value"]), (1 / 3 + 1 / 2 + 1) / math.log(3))


# -- dyadic ------------------------------------------------------------------------------------


def test_dyadic_values(capsys):
    code, out, err = run(["dyadic", "1", "5", "21", "--nested"], capsys)
    table = rows(out)
    assert [r["variation"] for r in table] == ["2", "4", "6"]
    assert table[1]["spectrum"] == "0;2" and table[1]["binary"] == "101"
    assert "# nested: true" in err


def test_dyadic_binary_and_gen(capsys):
    code, out, _ = run(["dyadic", "--binary", "101", "11"], capsys)
    assert [r["n"] for r in rows(out)] == ["5", "3"]
    code, out, _ = run(["dyadic", "--gen", "4", "--format", "json"], capsys)
    doc = json.loads(out)
    assert [r[0] for r in doc["rows"]] == [1, 5, 21, 85]
    assert doc["reports"]["nested"] is True


# -- divergence probe ---------------------------------------------------------------------------


def test_divergence_linear(capsys):
    code, out, _ = run(["divergence-probe", "--seq", "linear", "--nmax", "10000"], capsys)
    table = rows(out)
    expected = 1e4 * (1 - 1 / float(harmonic_number(10**4)))
    assert abs(float(table[-1]["sup_abs_log_mean"]) - expected) <= 1e-9 * expected


def test_divergence_bounded(capsys):
    code, out, _ = run(["divergence-probe", "--seq", "bounded", "--nmax", "10000"], capsys)
    assert all(float(r["sup_abs_log_mean"]) <= 1 for r in rows(out))


def test_divergence_dyadic_spikes(capsys):
    code, out, _ = run(["divergence-probe", "--seq", "dyadic-spikes", "--alpha", "tetunashvili:0.6", "--nmax", "16384"], capsys)
    # the Cesaro rule starts at n = 2, so checkpoint M = 1 has no Cesaro entry
    table = rows(out)
    assert table[0]["M"] == "1" and table[0]["sup_abs_cesaro"] == ""
    sups = [float(r["sup_abs_cesaro"]) for r in table[1:]]
    assert sups == sorted(sups) and sups[-1] > 0


def test_divergence_function_source(capsys, files):
    code, out, _ = run(["divergence-probe", "--f", files["one"], "--nmax", "16", "--x", "0.5"], capsys)
    assert {r["sup_abs_log_mean"] for r in rows(out)} == {"1.0"}


# -- errors and exit codes -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma", "--weights", "cubic"],
        ["bridge", "--n", "3", "--alpha", "nope"],
        ["logmean", "--seq", "fibonacci"],
        ["dyadic"],
        ["dyadic", "12x"],
        ["subseq-logmean", "--f", "/nonexistent.json", "--subseq", "1,2"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "logmeans" in err


def test_rule_catalog_in_message(capsys):
    _, _, err = run(["gamma", "--weights", "cubic"], capsys)
    assert "logarithmic | ones" in err


def test_malformed_function_file(capsys, files):
    code, _, err = run(["fourier-logmean", "--f", files["bad"], "--n", "3"], capsys)
    assert code == 2 and "$.representation" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gamma", "--n", "many"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma", "--weights", "list:0,1", "--n", "1"],
        ["dyadic", "5", "3", "--nested"],
        ["dyadic", "0"],
        ["subseq-logmean", "--f", "{one}", "--subseq", "3,2"],
        ["logmean", "--seq-file", "{seq}", "--nmax", "9"],
    ],
)
def test_precondition_errors(argv, capsys, files):
    argv = [a.format(**files) for a in argv]
    code, _, _ = run(argv, capsys)
    assert code == 3


def test_ceiling(capsys):
    code, _, err = run(["scan-rowsums", "--nmax", "513", "--exact"], capsys)
    assert code == 4 and "--float" in err
    code, _, _ = run(["gamma", "--n", "5000"], capsys)
    assert code == 4
    code, _, _ = run(["scan-rowsums", "--nmax", "600", "--float", "--alpha", "const:0.5"], capsys)
    assert code == 0


# -- output and determinism ------------------------------------------------------------------------


def test_out_file_and_json(tmp_path, capsys):
    target = tmp_path / "g.json"
    code, out, _ = run(["gamma", "--n", "3", "--format", "json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["columns"] == ["n", "gamma", "partial_sum", "convolution_residual"]
    assert doc["rows"][3][1] == "-1/24"


def test_same_seed_same_bytes(tmp_path):
    def once(tag, seed):
        p = tmp_path / f"{tag}-{seed}.csv"
        assert main(["scan-rowsums", "--nmax", "6", "--seed", str(seed), "--out", str(p)]) == 0
        return p.read_bytes()

    assert once("a", 5) == once("b", 5)
    assert once("c", 5) == once("d", 6)  # residuals are zero for any seed


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logmeans", "gamma", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "2,-1/12,5/12,0"
