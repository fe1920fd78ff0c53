"""Tests for the command-line front end."""

import csv
import io
import json

import pytest

from uniratio import ClassificationUnstableError, oracle
from uniratio.cli import main


P23 = '{"family": "P", "a": 2, "b": 3}'
P13 = '{"family": "P", "a": 1, "b": 3}'
H2_SPEC = '{"k": 0, "l": 1, "a": [1], "b": [1, 1]}'
TRIVIAL_SPEC = '{"k": 0, "l": 0, "a": [0], "b": [1]}'
DEGENERATE_SPEC = '{"k": 0, "l": 0, "a": [-2], "b": [1]}'
PISOT_SPEC = '{"k": 0, "l": 2, "a": [0], "b": [-1, -1, 1]}'


def read_csv(text):
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        else:
            body.append(line)
    return meta, list(csv.DictReader(io.StringIO("\n".join(body))))


class TestLimitRatio:
    def test_family_json(self, capsys):
        assert main(["limit-ratio", "--family", P23]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["lc"] == pytest.approx(0.1328095098966884, abs=1e-8)
        assert data["method"] == "exact"
        assert data["mahler"] is None

    def test_mahler(self, capsys):
        assert main(["limit-ratio", "--family", P23, "--mahler"]) == 0
        assert json.loads(capsys.readouterr().out)["mahler"] == pytest.approx(1.2554338662666087, abs=1e-6)

    def test_riemann(self, capsys):
        assert main(["limit-ratio", "--family", P13, "--method", "riemann", "--points", "1000000"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["lc"] == pytest.approx(1 / 3, abs=1e-5)
        assert data["intervals"] == []

    def test_csv(self, capsys):
        assert main(["limit-ratio", "--spec", H2_SPEC, "--format", "csv"]) == 0
        meta, rows = read_csv(capsys.readouterr().out)
        assert float(meta["lc"]) == pytest.approx(0.1608612465103325, abs=1e-12)
        assert meta["mahler"] == ""
        assert len(rows) == 1
        assert float(rows[0]["beta"]) == pytest.approx(3.141592653589793)

    def test_spec_from_file(self, capsys, tmp_path):
        path = tmp_path / "h2.json"
        path.write_text(H2_SPEC, encoding="utf-8")
        assert main(["limit-ratio", "--spec", str(path)]) == 0
        assert json.loads(capsys.readouterr().out)["lc"] == pytest.approx(0.1608612465103325, abs=1e-12)

    def test_malformed_json(self, capsys):
        assert main(["limit-ratio", "--spec", "{not json"]) == 1
        assert "malformed JSON" in capsys.readouterr().err

    def test_invalid_spec(self, capsys):
        assert main(["limit-ratio", "--spec", '{"k": 0, "l": 1, "a": [1], "b": [0, 1]}']) == 1
        assert capsys.readouterr().err.startswith("error: ")

    def test_non_palindromic(self):
        assert main(["limit-ratio", "--spec", '{"k": 0, "l": 2, "a": [0], "b": [-1, -1, 1]}']) == 1

    def test_degenerate(self, capsys):
        assert main(["limit-ratio", "--spec", DEGENERATE_SPEC]) == 2
        assert "coincide" in capsys.readouterr().err

    def test_missing_source(self):
        assert main(["limit-ratio"]) == 1

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 1


class TestVerify:
    def test_h2(self, capsys):
        assert main(["verify", "--spec", H2_SPEC, "--n-list", "50,100"]) == 0
        meta, rows = read_csv(capsys.readouterr().out)
        assert meta["mode"] == "exact"
        assert meta["r"] == "2"
        assert list(rows[0]) == ["n", "degree", "C", "abs_err", "et_bound", "status"]
        assert {row["status"] for row in rows} == {"ok"}
        assert [row["degree"] for row in rows] == ["102", "202"]
        assert float(rows[0]["C"]) == pytest.approx(18 / 102)

    def test_oracle_only(self, capsys):
        assert main(["verify", "--spec", PISOT_SPEC, "--n-list", "10"]) == 0
        meta, rows = read_csv(capsys.readouterr().out)
        assert meta["mode"] == "oracle-only"
        assert rows[0]["et_bound"] == ""

    def test_unstable_row_flagged(self, capsys, monkeypatch):
        census = oracle.count_roots_modulus

        def unstable_at_44(poly, tolerance=oracle.DEFAULT_TOLERANCE):
            if poly.degree == 44:
                raise ClassificationUnstableError("too close to call", moduli=(1.0000005,))
            return census(poly, tolerance)

        monkeypatch.setattr(oracle, "count_roots_modulus", unstable_at_44)
        assert main(["verify", "--spec", PISOT_SPEC, "--n-list", "10,20,30"]) == 3
        captured = capsys.readouterr()
        _, rows = read_csv(captured.out)
        assert [row["status"] for row in rows] == ["ok", "unstable", "ok"]
        assert rows[1]["C"] == ""
        assert "n=20" in captured.err

    def test_bound_breached(self, capsys):
        assert main(["verify", "--spec", TRIVIAL_SPEC, "--n-list", "1000", "--lc", "0.9"]) == 3
        assert "n=1000" in capsys.readouterr().err

    def test_family_rejected(self):
        assert main(["verify", "--family", P23, "--n-list", "10"]) == 1

    def test_bad_n_list(self):
        assert main(["verify", "--spec", H2_SPEC, "--n-list", "ten"]) == 1


class TestTable2:
    def test_output_is_reproducible(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["table2", "--out", str(first)]) == 0
        assert main(["table2", "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert b"\r\n" not in first.read_bytes()

    def test_columns(self, capsys):
        assert main(["table2"]) == 0
        _, rows = read_csv(capsys.readouterr().out)
        assert list(rows[0]) == [
            "label",
            "published_measure",
            "computed_measure",
            "published_lc",
            "computed_lc",
            "lc_abs_err",
            "measure_abs_err",
            "status",
        ]
        assert rows[0]["label"] == "P(2, 3)"
        assert rows[0]["status"] == "ok"


class TestFamilyCommands:
    def test_salem_single(self, capsys):
        assert main(["salem", "--m", "2"]) == 0
        meta, rows = read_csv(capsys.readouterr().out)
        assert meta["family"] == "T"
        assert (rows[0]["b1"], rows[0]["b2"]) == ("-3", "1")

    def test_salem_range_json(self, capsys):
        assert main(["salem", "--m-range", "1..3", "--format", "json"]) == 0
        assert [row["m"] for row in json.loads(capsys.readouterr().out)] == [1, 2, 3]

    def test_salem_rejects_zero(self):
        assert main(["salem", "--m", "0"]) == 1

    def test_hbounds(self, capsys):
        assert main(["hbounds", "--m-range", "2..4", "--no-conjecture"]) == 0
        _, rows = read_csv(capsys.readouterr().out)
        assert [row["m"] for row in rows] == ["2", "3", "4"]
        assert all(row["inside_bounds"] == "true" for row in rows)
        assert all(row["conjecture_err"] == "" for row in rows)

    def test_hbounds_conjecture_row(self, capsys):
        assert main(["hbounds", "--m", "2"]) == 0
        _, rows = read_csv(capsys.readouterr().out)
        assert rows[-1]["m"] == "200"
        assert float(rows[-1]["conjecture_err"]) < 0.003

    def test_hbounds_rejects_small_m(self):
        assert main(["hbounds", "--m", "1"]) == 1

    def test_bad_range(self):
        assert main(["hbounds", "--m-range", "9..3"]) == 1

    def test_gap_scan(self, capsys):
        assert main(["gap-scan", "--bound", "1", "--k-max", "0", "--l-max", "1", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["scanned"] == 12
        assert data["entries"][0]["rank"] == 1
        assert data["entries"][0]["lc"] == pytest.approx(0.1608612465103325, abs=1e-12)
