"""Command-line behavior: output shapes, exit codes, cache flags."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest

from gridham.cli import main

M10_N10 = "467260456608"
COEFF_4_100 = "1113455025360859674900898483836789708"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "-m", "10", "-n", "10")
    assert code == 0
    assert out.strip() == M10_N10


def test_count_zero(capsys):
    code, out, _ = run(capsys, "count", "-m", "5", "-n", "7")
    assert code == 0
    assert out.strip() == "0"


def test_count_json(capsys):
    code, out, _ = run(capsys, "--json", "count", "-m", "10", "-n", "10")
    assert code == 0
    data = json.loads(out)
    assert data == {"m": 10, "n": 10, "count": M10_N10}


def test_exit_codes(capsys):
    assert run(capsys, "count", "-m", "1", "-n", "4")[0] == 2
    assert run(capsys, "nonsense")[0] == 64
    assert run(capsys, "count", "-m", "4")[0] == 64
    assert run(capsys, "count", "-m", "4", "--bogus", "-n", "4")[0] == 64
    # resource guard: symbolic weighted GF limit
    assert run(capsys, "gf", "-m", "8", "--weights", "all")[0] == 3
    # empty ensemble is a domain error
    assert run(capsys, "sample", "-m", "3", "-n", "3", "--seed", "1")[0] == 2


def test_series(capsys):
    code, out, _ = run(capsys, "series", "-m", "10", "--terms", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[2] == "2 1"
    assert lines[10] == f"10 {M10_N10}"


def test_series_json(capsys):
    code, out, _ = run(capsys, "--json", "series", "-m", "4", "--terms", "5")
    data = json.loads(out)
    assert data["series"] == ["0", "0", "1", "2", "6", "14"]


def test_coeff_with_wildcards(capsys):
    code, out, _ = run(capsys, "coeff", "-m", "4", "-n", "100",
                       "--exps", "90,31,78")
    assert code == 0
    assert out.strip() == COEFF_4_100
    code, out, _ = run(capsys, "coeff", "-m", "4", "-n", "7",
                       "--exps", "*,4,*")
    assert code == 0
    assert out.strip().isdigit()


def test_gf_and_no_cache_identical(capsys):
    code, out1, _ = run(capsys, "gf", "-m", "4")
    assert code == 0
    assert "denominator:" in out1
    code, out2, _ = run(capsys, "gf", "-m", "4", "--no-cache")
    assert code == 0
    assert out1 == out2


def test_gf_json_schema(capsys):
    code, out, _ = run(capsys, "--json", "gf", "-m", "4")
    data = json.loads(out)
    assert data["num"] == ["0", "0", "1"]
    assert data["den"] == ["1", "-2", "-2", "2", "-1"]


def test_gf_weighted(capsys):
    code, out, _ = run(capsys, "gf", "-m", "3", "--weights", "all")
    assert code == 0
    assert "w1" in out and "w2" in out
    code, out, _ = run(capsys, "--json", "gf", "-m", "3", "--weights", "1")
    data = json.loads(out)
    assert data["variables"] == ["z", "w1", "w2"]
    assert all(len(t["exps"]) == 3 for t in data["num_terms"])


def test_enumerator(capsys):
    code, out, _ = run(capsys, "--json", "enumerator", "-m", "4", "-n", "10")
    data = json.loads(out)
    assert len(data["terms"]) == 25
    assert data["total"] == "1517"
    want = {"exps": [7, 3, 9], "coeff": "126"}
    assert want in data["terms"]


def test_alphabet(capsys):
    code, out, _ = run(capsys, "alphabet", "--width", "5")
    assert code == 0
    assert "32 states" in out
    code, out, _ = run(capsys, "--json", "alphabet", "--width", "3")
    data = json.loads(out)
    assert data["state_count"] == 6
    for s in data["states"]:
        assert set(s) == {"index", "column", "blocks", "starter", "ender",
                          "successors"}


def test_stats_text_and_json(capsys):
    code, out, _ = run(capsys, "stats", "-m", "4", "-n", "10", "--rows", "2")
    assert code == 0
    assert "5769/1517" in out
    code, out, _ = run(capsys, "--json", "stats", "-m", "4", "-n", "10",
                       "--rows", "2")
    data = json.loads(out)
    assert data["expectation"] == "5769/1517"


def test_stats_asymptotic(capsys):
    code, out, _ = run(capsys, "--json", "stats", "-m", "4", "--asymptotic",
                       "--rows", "1", "--precision", "8")
    data = json.loads(out)
    assert data["n"] == "asymptotic"
    assert "slope" in data and "growth" in data


def test_stats_correlation(capsys):
    code, out, _ = run(capsys, "stats", "-m", "4", "-n", "4",
                       "--rows", "1", "--rows2", "3")
    assert code == 0
    assert "correlation" in out
    code, _, _ = run(capsys, "stats", "-m", "4", "-n", "4",
                     "--rows", "1", "--rows2", "1,3")
    assert code == 2


def test_stats_requires_n_or_asymptotic(capsys):
    assert run(capsys, "stats", "-m", "4", "--rows", "1")[0] == 64
    assert run(capsys, "stats", "-m", "4", "-n", "4", "--asymptotic",
               "--rows", "1")[0] == 64


def test_sample_text(capsys):
    code, out, _ = run(capsys, "sample", "-m", "4", "-n", "6",
                       "--seed", "5", "--ascii")
    assert code == 0
    assert "probability: 1/37" in out
    assert "+-+" in out


def test_sample_json_deterministic(capsys):
    args = ("--json", "sample", "-m", "4", "-n", "8", "--seed", "31",
            "--count", "3")
    code, out1, _ = run(capsys, *args)
    assert code == 0
    code, out2, _ = run(capsys, *args)
    assert out1 == out2
    data = json.loads(out1)
    assert len(data["samples"]) == 3
    for s in data["samples"]:
        assert len(s["matrix"]) == 3
        assert len(s["edges"]) == 4 * 8


def test_sample_svg(tmp_path, capsys):
    target = tmp_path / "cycle.svg"
    code, out, _ = run(capsys, "sample", "-m", "4", "-n", "4",
                       "--seed", "2", "--svg", str(target))
    assert code == 0
    root = ET.fromstring(target.read_bytes())
    assert root.tag.endswith("svg")
    code, _, _ = run(capsys, "sample", "-m", "4", "-n", "4", "--seed", "2",
                     "--count", "2", "--svg", str(target))
    assert code == 2


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "-m", "4", "-n", "4")
    assert code == 0
    assert out.strip() == "6"
    code, out, _ = run(capsys, "--json", "oracle", "-m", "4", "-n", "4",
                       "--list")
    data = json.loads(out)
    assert data["count"] == 6
    assert len(data["matrices"]) == 6
    # guard on oversized brute force requests
    assert run(capsys, "oracle", "-m", "7", "-n", "7")[0] == 3


def test_cache_dir_flag(tmp_path, capsys, monkeypatch):
    from gridham import counting
    monkeypatch.setattr(counting, "_packaged_root", lambda: None)
    counting._gf_memo.clear()
    code, out1, _ = run(capsys, "--cache-dir", str(tmp_path),
                        "gf", "-m", "6")
    assert code == 0
    assert (tmp_path / "gf-m6.json").exists()
    counting._gf_memo.clear()
    code, out2, _ = run(capsys, "--cache-dir", str(tmp_path),
                        "gf", "-m", "6")
    assert out1 == out2
    counting._gf_memo.clear()
