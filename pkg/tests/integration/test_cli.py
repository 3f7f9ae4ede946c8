"""Integration tests for the psverify command line."""

import json
from collections.abc import Iterator
from pathlib import Path

import pytest
from typer.testing import CliRunner

from para_sasakian_verifier import __version__
from para_sasakian_verifier.config import get_settings
from para_sasakian_verifier.main import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def small_samples(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Keep the random sample counts small for every invocation."""
    monkeypatch.setenv("PSVERIFY_EINSTEIN_SAMPLE_COUNT", "3")
    monkeypatch.setenv("PSVERIFY_RANDOM_PARAM_COUNT", "10")
    monkeypatch.delenv("PSVERIFY_OUTPUT_FORMAT", raising=False)
    monkeypatch.delenv("PSVERIFY_TIMESTAMPS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def run_json(*args: str) -> tuple[int, dict]:
    result = runner.invoke(app, [*args, "--format", "json"])
    return result.exit_code, json.loads(result.stdout)


class TestVerifyCommand:
    """Tests for ``psverify verify``."""

    def test_single_preset_passes(self) -> None:
        """Test a passing run exits 0 and says so."""
        result = runner.invoke(app, ["verify", "e3_plus.manifest", "--preset", "concircular", "--mode", "both"])
        assert result.exit_code == 0, result.output
        assert "concircular" in result.output
        assert "PASS" in result.output

    def test_json_report(self) -> None:
        """Test the JSON report carries geometry and reference disagreements."""
        code, payload = run_json("verify", "e3_minus")
        assert code == 0
        assert payload["manifest"] == "e3_minus"
        assert payload["epsilon"] == "-1"
        assert payload["geometry"]["scalar"] == "6"
        assert payload["passed"] is True
        assert "generated_at" not in payload
        scalar = payload["reference_discrepancies"][0]
        assert (scalar["quantity"], scalar["reference"], scalar["derived"]) == ("scalar", "-2", "6")
        assert payload["paper_discrepancies"] == payload["reference_discrepancies"]
        assert len(payload["verdicts"]) == 40

    def test_reports_are_reproducible(self) -> None:
        """Test two runs produce byte-identical JSON."""
        first = runner.invoke(app, ["verify", "e3_plus", "--format", "json"])
        second = runner.invoke(app, ["verify", "e3_plus", "--format", "json"])
        assert first.stdout == second.stdout

    def test_timestamps(self) -> None:
        """Test the report is stamped on request."""
        _, payload = run_json("verify", "heisenberg", "--timestamps")
        assert payload["generated_at"].endswith("+00:00")

    def test_failed_check_exits_one(self) -> None:
        """Test a failing frame gives exit 1 and a witness."""
        code, payload = run_json("verify", "broken_jacobi")
        assert code == 1
        assert payload["passed"] is False
        jacobi = next(c for c in payload["checks"] if c["id"] == "jacobi")
        assert jacobi["status"] == "FAIL"
        assert jacobi["witness"]["index"] == [1, 2, 3, 3]
        assert (jacobi["witness"]["expected"], jacobi["witness"]["actual"]) == ("0", "-1")
        assert {s["group"] for s in payload["skipped"]} >= {"connection", "symmetry"}

    def test_failed_check_text(self) -> None:
        """Test the text report names the witness."""
        result = runner.invoke(app, ["verify", "broken_jacobi"])
        assert result.exit_code == 1
        assert "(1,2,3,3)" in result.output
        assert "FAIL" in result.output

    def test_check_selection(self) -> None:
        """Test --checks restricts the executed groups."""
        _, payload = run_json("verify", "e3_plus", "--checks", "connection,frame")
        assert {c["group"] for c in payload["checks"]} == {"frame", "connection"}
        assert payload["verdicts"] == []

    def test_explicit_params(self) -> None:
        """Test --params judges one explicit vector."""
        _, payload = run_json("verify", "e3_plus", "--params", "1,0,0,0,0,0,0,0", "--mode", "local")
        assert [(v["preset"], v["mode"]) for v in payload["verdicts"]] == [("(1, 0, 0, 0, 0, 0, 0, 0)", "local")]

    def test_unknown_preset(self) -> None:
        """Test an unknown preset is a usage error with an error object."""
        code, payload = run_json("verify", "e3_plus", "--preset", "nosuch")
        assert code == 2
        assert payload["code"] == "UNKNOWN_PRESET"

    def test_conflicting_options(self) -> None:
        """Test --preset and --params together are refused."""
        result = runner.invoke(app, ["verify", "e3_plus", "--preset", "conformal", "--params", "1,0,0,0,0,0,0,0"])
        assert result.exit_code == 2
        assert "error: USAGE_ERROR" in result.output

    def test_free_parameter_needs_preset(self) -> None:
        """Test --a0 alone is refused."""
        result = runner.invoke(app, ["verify", "e3_plus", "--a0", "2"])
        assert result.exit_code == 2

    def test_missing_manifest(self) -> None:
        """Test an unknown manifest reference exits 2."""
        code, payload = run_json("verify", "no_such_manifold")
        assert code == 2
        assert payload["code"] == "MANIFEST_NOT_FOUND"

    def test_parse_error(self, tmp_path: Path) -> None:
        """Test a malformed manifest exits 2 with the line number."""
        path = tmp_path / "bad.manifest"
        path.write_text("[manifold]\ndim = 3\n\n[metric]\n1 0 0\n0 1\n0 0 1\n", encoding="utf-8")
        code, payload = run_json("verify", str(path))
        assert code == 2
        assert payload["code"] == "PARSE_ERROR"
        assert payload["error"].startswith("line 6: ")

    def test_undecodable_manifest(self, tmp_path: Path) -> None:
        """Test a manifest with invalid UTF-8 is a parse error, not an internal one."""
        path = tmp_path / "bad.manifest"
        path.write_bytes(b"[manifold]\ndim = 3\n\n[metric]\n1 0 0\n0 \xff 0\n0 0 1\n")
        code, payload = run_json("verify", str(path))
        assert code == 2
        assert payload["code"] == "PARSE_ERROR"
        assert payload["error"].startswith("line 6: ")


class TestPresetsCommand:
    """Tests for ``psverify presets``."""

    def test_dimension_four(self) -> None:
        """Test the catalog and its classification at m = 4."""
        result = runner.invoke(app, ["presets", "--dim", "4", "--format", "json"])
        assert result.exit_code == 0
        entries = {entry["name"]: entry for entry in json.loads(result.stdout)}
        assert len(entries) == 20
        assert entries["conformal"]["coefficients"] == ["1", "-1/2", "1/2", "0", "-1/2", "1/2", "0", "1/6"]
        verdicts = {name: entry["conditions"]["verdict"] for name, entry in entries.items()}
        assert {n for n, v in verdicts.items() if v == "CONSTANT_R_CLASS"} == {"conharmonic", "w7"}
        assert {n for n, v in verdicts.items() if v == "NO_VERDICT"} == {"conformal", "w0", "w8"}

    def test_text(self) -> None:
        """Test the text table lists the presets."""
        result = runner.invoke(app, ["presets"])
        assert result.exit_code == 0
        assert "riemann" in result.output
        assert "theorem conditions" in result.output

    def test_dimension_too_small(self) -> None:
        """Test dimension 2 is refused."""
        result = runner.invoke(app, ["presets", "--dim", "2"])
        assert result.exit_code == 2
        assert "DIMENSION_ERROR" in result.output


class TestGeometryCommand:
    """Tests for ``psverify geometry``."""

    def test_json(self) -> None:
        """Test the derived invariants of the positive example."""
        code, payload = run_json("geometry", "e3_plus")
        assert code == 0
        assert payload["scalar"] == "-6"
        assert payload["constant_curvature"] == "-1"
        assert payload["einstein_constant"] == "-2"

    def test_text(self) -> None:
        """Test the text output lists the Ricci tensor."""
        result = runner.invoke(app, ["geometry", "heisenberg"])
        assert result.exit_code == 0
        assert "scalar curvature r = -1/2" in result.output

    def test_invalid_frame_refused(self) -> None:
        """Test an invalid frame exits 2."""
        code, payload = run_json("geometry", "broken_jacobi")
        assert code == 2
        assert payload["code"] == "PRECONDITION_FAILED"
        assert "jacobi" in payload["detail"]


class TestRootOptions:
    """Tests for the root callback."""

    def test_version(self) -> None:
        """Test --version prints and exits 0."""
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_bad_log_level(self) -> None:
        """Test an unknown log level exits 2."""
        result = runner.invoke(app, ["--log-level", "LOUD", "presets"])
        assert result.exit_code == 2
