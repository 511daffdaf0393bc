import json
import os
import subprocess
from pathlib import Path

import pytest

import abcover

SOURCE = Path(os.environ.get("ABCOVER_SOURCE_DIR", Path(__file__).resolve().parents[2]))
CLI = os.environ.get("ABCOVER_CLI")


def run_cli(*args):
    if not CLI:
        pytest.skip("ABCOVER_CLI not set")
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def twists(report):
    return {t: k for t, k in report["decomposition"]["twists"]}


def test_examples_listed():
    assert set(abcover.example_names()) >= {"example1", "example2", "a1_singular", "bad_divisibility"}


def test_analyze_example2():
    rep = abcover.analyze(abcover.example("example2"))
    assert rep["valid"]
    assert twists(rep) == {0: 1, 2: 18, 3: 43, 4: 18, 6: 1}
    assert rep["invariants"]["canonical_degree"] == 81


def test_analyze_accepts_text_and_dict():
    text = (SOURCE / "fixtures" / "example1.json").read_text()
    assert abcover.analyze(text) == abcover.analyze(json.loads(text))


def test_validate_reports_divisibility():
    res = abcover.validate(abcover.example("bad_divisibility"))
    assert not res["valid"]
    assert res["violations"][0]["kind"] == "DivisibilityViolation"


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        abcover.analyze("{not json")
    with pytest.raises(abcover.ParseError):
        abcover.analyze({"group": [2]})


def test_bounds_small():
    rep = abcover.bounds(2)
    assert rep["profile_count"] == len(rep["profiles"])


def test_search_double_covers_of_p4():
    spec = {
        "schema_version": 1,
        "ambient_dim": 4,
        "groups": [[2]],
        "m_min": 12,
        "m_max": 12,
        "require_smooth": False,
        "limits": {"max_candidates": 100000, "max_seconds": 60},
    }
    hits, summary = abcover.search(spec)
    assert summary["summary"]["complete"]
    assert len(hits) == summary["summary"]["hits"] == 1


def test_cli_examples_round_trip(tmp_path):
    out = tmp_path / "e2.json"
    assert run_cli("examples", "example2", "--out", str(out)).returncode == 0
    assert json.loads(out.read_text()) == abcover.example("example2")
    r = run_cli("analyze", str(out), "--no-timing")
    assert r.returncode == 0
    assert twists(json.loads(r.stdout)) == {0: 1, 2: 18, 3: 43, 4: 18, 6: 1}


def test_cli_exit_codes(tmp_path):
    assert run_cli("validate", str(SOURCE / "fixtures" / "bad_divisibility.json")).returncode == 2
    assert run_cli("analyze", str(tmp_path / "missing.json")).returncode == 3
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert run_cli("analyze", str(bad)).returncode == 2
    assert run_cli("examples", "nope").returncode == 2
    assert run_cli("bounds", "--dim", "2", "--summary").returncode == 0
