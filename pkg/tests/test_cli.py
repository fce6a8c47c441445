import csv
import io
import json

import pytest

from majstat.cli import CSV_COLUMNS, main, pretty
from majstat.qpoly import IntPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pretty():
    assert pretty(IntPolynomial((0, 1, 1))) == "q+q²"
    assert pretty(IntPolynomial((3, 3))) == "3+3q"
    assert pretty(IntPolynomial((0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2))) == "2q¹¹"
    assert pretty(IntPolynomial()) == "0"


def test_gf(capsys):
    code, out, _ = run(capsys, "gf", "2,2", "--json")
    assert code == 0
    assert json.loads(out) == {"shape": "2,2", "shift": 2, "coeffs": ["1", "0", "1"]}
    code, out, _ = run(capsys, "gf", "2,2")
    assert "shift: 2" in out and "coeffs: [1, 0, 1]" in out


def test_gf_block_diagonal(capsys):
    code, out, _ = run(capsys, "gf", "2;2;3", "--json")
    assert code == 0 and json.loads(out)["shift"] == 0
    code, out, _ = run(capsys, "gf", "1,1;2,2", "--json")
    assert code == 0 and json.loads(out)["shift"] == 3


def test_cumulants_json(capsys):
    code, out, _ = run(capsys, "cumulants", "2,2", "--dmax", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["cumulants"] == ["3", "1", "0", "-2"]
    assert data["normalized_cumulants"][3] == -2.0


def test_cumulants_rationals_as_strings(capsys):
    code, out, _ = run(capsys, "cumulants", "3,1", "--dmax", "2", "--json")
    assert json.loads(out)["cumulants"] == ["2", "2/3"]


def test_classify_family(capsys):
    code, out, _ = run(capsys, "classify", "--family", "N+5,5 @ N=20..60:10", "--no-ks", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "ii" and data["limit"] == "IH_5*"


def test_equiv_pair(capsys):
    code, out, _ = run(capsys, "equiv", "2,1", "2,2", "--json")
    assert code == 0
    assert json.loads(out)["case"] == "iv"
    code, out, _ = run(capsys, "equiv", "3,1", "2,2", "--json")
    assert code == 0 and json.loads(out)["same"] is False


def test_equiv_scan(capsys):
    code, out, _ = run(capsys, "equiv", "--scan", "6", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert {"lambda": [2, 2], "nu": [2, 1], "case": "iv"} in data["pairs"]
    code, _, err = run(capsys, "equiv", "--scan", "30")
    assert code == 2 and "cap" in err


def test_scan_unimodal(capsys):
    code, out, _ = run(capsys, "scan", "unimodal", "--n", "8", "--json")
    data = json.loads(out)
    assert code == 0 and [6, 2] in data["exceptions"]


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "k22", "--n", "10", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert rows[-1]["gap"] == "2"


def test_jobs_do_not_change_output(capsys):
    _, serial, _ = run(capsys, "scan", "unimodal", "--n", "14", "--json")
    _, parallel, _ = run(capsys, "scan", "unimodal", "--n", "14", "--json", "--jobs", "2")
    assert serial == parallel


@pytest.mark.parametrize(
    "argv, text",
    [
        (("oracle", "2,1", "--stat", "maj"), "formula == oracle: q+q²"),
        (("oracle", "sn:3", "--stat", "baj-inv"), "formula == oracle: 3+3q"),
        (("oracle", "w:2,1", "--stat", "inv"), "formula == oracle: 1+q+q²"),
        (("oracle", "S3", "--stat", "maj"), "formula == oracle: 1+2q+2q²+q³"),
    ],
)
def test_oracle(capsys, argv, text):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == text


def test_oracle_skew(capsys):
    code, out, _ = run(capsys, "oracle", "3,3/1", "--json")
    assert code == 0 and json.loads(out)["formula"] is None


def test_oracle_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("MAJSTAT_CAP_SYT", "4")
    code, _, err = run(capsys, "oracle", "3,2")
    assert code == 2 and "cap" in err


def test_plot_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "2,2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r["count"] for r in rows] == ["0", "0", "1", "0", "1"]
    target = tmp_path / "p.svg"
    code, _, err = run(capsys, "plot", "105,5", "--overlay", "ih", "--out", str(target))
    text = target.read_text()
    assert code == 0 and text.startswith("<svg") and "<polyline" in text


@pytest.mark.parametrize(
    "argv, token",
    [
        (("gf", "2,x"), "'2,x'"),
        (("gf", "2,3"), "2,3"),
        (("gf", "3,2/1"), "3,2/1"),
        (("scan", "unimodal", "--n", "99"), "99"),
        (("plot", "2,2", "--overlay", "gamma"), "gamma"),
        (("equiv", "2,1"), "two partitions"),
    ],
)
def test_usage_errors(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert token in err


def test_unknown_option_is_usage_error(capsys):
    assert run(capsys, "gf", "2,2", "--bogus")[0] == 2
