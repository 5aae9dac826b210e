import json

import pytest

from mcp_ortofree.cli import cli
from mcp_ortofree.core.bounds import TABLE_COLUMNS
from mcp_ortofree.core.constructions import s3_exact
from mcp_ortofree.utils.formats import sha256_file

from .conftest import vectors_file


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-level", "ERROR", *args], obj={})


def test_construct_to_stdout(config, runner):
    result = invoke(runner, "construct", "s3-exact", "--n", "5")
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "q=3 n=5"
    assert len(lines) == 28


def test_construct_rejects_bad_residue(config, runner):
    result = invoke(runner, "construct", "s3-exact", "--n", "4")
    assert result.exit_code == 2


def test_construct_writes_provenance(config, runner, tmp_path):
    target = tmp_path / "corner.txt"
    result = invoke(runner, "construct", "corner-free", "--n", "8", "--q", "3", "--k", "2", "--output", str(target))
    assert result.exit_code == 0
    assert len(target.read_text().splitlines()) == 5
    meta = json.loads((tmp_path / "corner.txt.json").read_text())
    assert meta["schema"] == 1
    assert meta["construction"] == "corner-free"
    assert meta["size"] == "4"


def test_construct_to_stdout_with_provenance(config, runner, tmp_path):
    meta_path = tmp_path / "s3.json"
    result = invoke(runner, "construct", "s3-exact", "--n", "2", "--provenance", str(meta_path))
    assert result.exit_code == 0
    assert result.stdout.startswith("q=3 n=2\n")
    meta = json.loads(meta_path.read_text())
    assert meta["construction"] == "s3-exact"
    assert meta["size"] == "9"


def test_construct_to_stdout_writes_no_provenance(config, runner, tmp_path):
    result = invoke(runner, "construct", "s3-exact", "--n", "2")
    assert result.exit_code == 0
    assert list(tmp_path.glob("*.json")) == []


def test_construct_missing_k(config, runner):
    result = invoke(runner, "construct", "corner-free", "--n", "8", "--q", "3")
    assert result.exit_code == 2


def test_verify_exit_codes(config, runner, tmp_path):
    bad = vectors_file(tmp_path, [[0, 0, 0], [1, 1, 1]], name="bad.txt")
    result = invoke(runner, "verify", "--input", str(bad), "--property", "self-orth")
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["status"] == "violation"
    assert report["violation"]["indices"] == ["0", "1"]

    good = vectors_file(tmp_path, [[0], [1], [2]], name="good.txt")
    result = invoke(runner, "verify", "--input", str(good), "--property", "right-angle")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["status"] == "ok"


def test_verify_budget(config, runner, tmp_path):
    path = tmp_path / "s3.txt"
    path.write_text(s3_exact(8).to_text())
    result = invoke(runner, "verify", "--input", str(path), "--property", "self-orth", "--budget", "10")
    assert result.exit_code == 3


def test_verify_corner_requires_k(config, runner, tmp_path):
    path = vectors_file(tmp_path, [[0, 0], [1, 0]])
    result = invoke(runner, "verify", "--input", str(path), "--property", "corner")
    assert result.exit_code == 2


def test_verify_malformed_file(config, runner, tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("q=3 n=2\n0,0,1\n")
    result = invoke(runner, "verify", "--input", str(path), "--property", "self-orth")
    assert result.exit_code == 2


def test_bounds_csv(config, runner):
    result = invoke(runner, "bounds", "--property", "self-orth", "--n", "1..3", "--q", "3")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == ",".join(TABLE_COLUMNS)
    assert "self-orthogonal-diff,2,3,,s_upper,upper,9,false,false,true," in lines


def test_bounds_json_and_missing_range(config, runner):
    result = invoke(runner, "bounds", "--property", "hamming", "--n-max", "6", "--q", "3", "--format", "json")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert {r["formula_id"] for r in rows if r["n"] == "6"} >= {"t_upper_divisible"}

    result = invoke(runner, "bounds", "--property", "hamming", "--q", "3")
    assert result.exit_code == 2
    result = invoke(runner, "bounds", "--property", "hamming", "--n", "1..x", "--q", "3")
    assert result.exit_code == 2


def test_certify(config, runner, tmp_path):
    basis = vectors_file(tmp_path, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="basis.txt")
    result = invoke(runner, "certify", "lemma-diag", "--input", str(basis), "--alpha", "1", "--R", "0")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["passed"] is True

    planted = vectors_file(tmp_path, [[0, 0, 0], [1, 1, 1]], name="planted.txt")
    result = invoke(runner, "certify", "p-matrix", "--input", str(planted))
    assert result.exit_code == 1


def test_search(config, runner, tmp_path):
    witness = tmp_path / "T.txt"
    result = invoke(runner, "search", "T", "--n", "3", "--q", "3", "--witness", str(witness))
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["optimum"] == "4"
    assert len(witness.read_text().splitlines()) == 5

    result = invoke(runner, "search", "R", "--n", "2", "--q", "5", "--budget", "5")
    assert result.exit_code == 3
    assert json.loads(result.stdout)["status"] == "budget-exhausted"


def test_search_zero_budget_is_honoured(config, runner):
    assert invoke(runner, "search", "R", "--n", "1", "--q", "3").exit_code == 0
    result = invoke(runner, "search", "R", "--n", "1", "--q", "3", "--budget", "0")
    assert result.exit_code == 3
    assert json.loads(result.stdout)["status"] == "budget-exhausted"
    assert invoke(runner, "search", "R", "--n", "1", "--q", "3", "--budget", "-1").exit_code == 2


def test_search_has_no_local_sequential_flag(config, runner):
    result = invoke(runner, "search", "T", "--n", "3", "--q", "3", "--sequential")
    assert result.exit_code == 2


def test_reproduce_packing_writes_manifest(config, runner, tmp_path):
    out = tmp_path / "out"
    result = invoke(runner, "reproduce", "--only", "packing", "--output-dir", str(out))
    assert result.exit_code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == ["ortofree", "reproduce", "--only=packing"]
    assert manifest["parameters"]["only"] == ["packing"]
    assert manifest["outputs"] == {"report.json": sha256_file(out / "report.json")}
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert [c["id"] for c in report["criteria"]] == ["packing"]


def test_reproduce_unknown_criterion(config, runner, tmp_path):
    result = invoke(runner, "reproduce", "--only", "Z", "--output-dir", str(tmp_path / "z"))
    assert result.exit_code == 2


def test_reproduce_is_byte_identical(config, runner, tmp_path):
    for name in ("a", "b"):
        result = invoke(runner, "--sequential", "reproduce", "--only", "T", "--output-dir", str(tmp_path / name))
        assert result.exit_code == 0
    for filename in ("report.json", "manifest.json", "T_6_3.txt"):
        assert (tmp_path / "a" / filename).read_bytes() == (tmp_path / "b" / filename).read_bytes()


@pytest.mark.parametrize("criterion", ["grid", "bounds", "certificates", "identities"])
def test_reproduce_fast_criteria_pass(config, runner, tmp_path, criterion):
    out = tmp_path / criterion
    result = invoke(runner, "--sequential", "reproduce", "--only", criterion, "--output-dir", str(out))
    report = json.loads((out / "report.json").read_text())
    (entry,) = report["criteria"]
    assert entry["id"] == criterion
    assert entry["failures"] == []
    assert int(entry["checks"]) > 0
    assert report["passed"] is True
    assert result.exit_code == 0


@pytest.mark.slow
def test_reproduce_all_criteria(config, runner, tmp_path):
    out = tmp_path / "full"
    result = invoke(runner, "--sequential", "reproduce", "--output-dir", str(out))
    assert result.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    manifest = json.loads((out / "manifest.json").read_text())
    for name, digest in manifest["outputs"].items():
        assert sha256_file(out / name) == digest
