"""Unit tests for the manifest codec and catalog."""

from pathlib import Path

import pytest

from para_sasakian_verifier.core.exceptions import ManifestParseError, UsageError
from para_sasakian_verifier.integrations.manifest import ManifestCatalog, parse_manifest, serialize_manifest
from para_sasakian_verifier.models.manifest import TParamsSource
from para_sasakian_verifier.models.tensor import Rational

MINIMAL = """\
[manifold]
dim = 3

[metric]
1 0 0
0 1 0
0 0 1
"""

STRUCTURE = """\
[phi]
1 0 0
0 1 0
0 0 0

[xi]
0 0 1

[eta]
0 0 1
"""


def with_manifold(extra: str, manifold: str = "dim = 3\nepsilon = 1") -> str:
    return f"[manifold]\n{manifold}\n\n[metric]\n1 0 0\n0 1 0\n0 0 1\n\n{extra}"


class TestParseManifest:
    """Tests for parse_manifest."""

    def test_bundled_e3(self, catalog: ManifestCatalog) -> None:
        """Test the example parses with brackets [e1,e3] = e1 and [e2,e3] = e2."""
        manifest = catalog.load("e3_plus.manifest")
        c = manifest.frame.c
        assert manifest.dim == 3
        assert manifest.name == "e3_plus"
        assert c[0, 0, 2] == 1 and c[0, 2, 0] == -1
        assert c[1, 1, 2] == 1
        assert all(c[k, 0, 1] == 0 for k in range(3))
        assert manifest.pc is not None and manifest.pc.eps == 1

    def test_frame_only(self) -> None:
        """Test a manifest without [phi] has no structure."""
        manifest = parse_manifest(MINIMAL)
        assert manifest.pc is None
        assert manifest.frame.c.is_zero()

    def test_crlf(self) -> None:
        """Test CRLF line endings are accepted."""
        assert parse_manifest(MINIMAL.replace("\n", "\r\n")) == parse_manifest(MINIMAL)

    def test_comments_kept(self) -> None:
        """Test comment text is collected in order."""
        manifest = parse_manifest("# first\n" + MINIMAL.replace("dim = 3", "dim = 3  # second"))
        assert manifest.comments == ("first", "second")

    @pytest.mark.parametrize(
        ("text", "line", "fragment"),
        [
            (MINIMAL.replace("0 1 0\n", "0 1\n"), 6, "expected 3 values"),
            (MINIMAL.replace("0 0 1\n", "0 0 x\n"), 7, "bad rational"),
            (MINIMAL + "\n[torsion]\n", 9, "unknown section"),
            (MINIMAL + "\n[metric]\n", 9, "duplicate section"),
            ("dim = 3\n" + MINIMAL, 1, "before the first section"),
            (MINIMAL + "\n[brackets]\n1 2 = 3:1\n1 2 = 3:2\n", 11, "duplicate bracket pair"),
            (MINIMAL + "\n[brackets]\n1 4 = 3:1\n", 10, "out of range"),
            (MINIMAL + "\n[brackets]\n2 1 = 3:1\n", 10, "i < j"),
            (MINIMAL + "\n[brackets]\n1 2 = 3:1 3:2\n", 10, "repeated"),
            (MINIMAL.replace("dim = 3", "dim = 3\ndim = 3"), 3, "duplicate key"),
            (MINIMAL + "\n[brackets]\n1 ² = 3:1\n", 10, "bad frame index"),
            (MINIMAL.replace("dim = 3", "dim = ³"), 2, "dim must be an integer"),
        ],
    )
    def test_line_numbered_errors(self, text: str, line: int, fragment: str) -> None:
        """Test malformed input names the offending line."""
        with pytest.raises(ManifestParseError) as excinfo:
            parse_manifest(text)
        assert excinfo.value.line == line
        assert fragment in excinfo.value.message
        assert excinfo.value.message.startswith(f"line {line}: ")

    def test_missing_metric(self) -> None:
        """Test a missing required section is reported."""
        with pytest.raises(ManifestParseError, match=r"missing required section \[metric\]"):
            parse_manifest("[manifold]\ndim = 3\n")

    def test_partial_structure(self) -> None:
        """Test [phi] without [xi] is rejected."""
        with pytest.raises(ManifestParseError, match="without"):
            parse_manifest(with_manifold("[phi]\n1 0 0\n0 1 0\n0 0 0\n"))

    def test_structure_needs_epsilon(self) -> None:
        """Test a structure without epsilon is rejected."""
        with pytest.raises(ManifestParseError, match="epsilon"):
            parse_manifest(with_manifold(STRUCTURE, manifold="dim = 3"))

    def test_epsilon_range(self) -> None:
        """Test epsilon other than +1 or -1 is rejected."""
        with pytest.raises(ManifestParseError, match="epsilon"):
            parse_manifest(with_manifold(STRUCTURE, manifold="dim = 3\nepsilon = 2"))

    def test_tparams_preset(self) -> None:
        """Test a preset with a free parameter."""
        manifest = parse_manifest(with_manifold(STRUCTURE + "\n[tparams]\npreset = quasiconformal\na1 = -1/2\n"))
        assert manifest.tparams == TParamsSource(preset="quasiconformal", coefficients={"a1": Rational(-1, 2)})

    def test_tparams_incomplete(self) -> None:
        """Test explicit coefficients must name all of a0..a7."""
        with pytest.raises(ManifestParseError, match="a0..a7"):
            parse_manifest(with_manifold("[tparams]\na0 = 1\n"))

    def test_reference_section(self, catalog: ManifestCatalog) -> None:
        """Test published values are parsed with 1-based indices."""
        reference = catalog.load("e3_minus").reference
        assert reference is not None
        assert reference.scalar == -2
        assert reference.ricci[(1, 1)] == -1
        assert reference.connection[(1, 2)] == {}
        assert reference.notes


class TestSerializeManifest:
    """Tests for serialize_manifest."""

    def test_round_trip_catalog(self, catalog: ManifestCatalog) -> None:
        """Test parse(serialize(m)) = m for every bundled manifest."""
        names = catalog.names()
        assert len(names) == 5
        for name in names:
            manifest = catalog.load(name)
            assert parse_manifest(serialize_manifest(manifest)) == manifest, name

    def test_canonical_text(self) -> None:
        """Test rationals are written in canonical form with LF endings."""
        text = serialize_manifest(parse_manifest(MINIMAL.replace("0 0 1\n", "0 0 2/2\n")))
        assert "0 0 1\n" in text
        assert "\r" not in text
        assert text.endswith("\n")

    def test_zero_brackets_omitted(self) -> None:
        """Test pairs with zero bracket are not written."""
        text = serialize_manifest(parse_manifest(MINIMAL + "\n[brackets]\n1 2 = 3:0\n"))
        assert "[brackets]" not in text


class TestCatalog:
    """Tests for ManifestCatalog."""

    def test_resolves_bare_names(self, catalog: ManifestCatalog) -> None:
        """Test a name resolves with or without the suffix."""
        assert catalog.resolve("heisenberg") == catalog.resolve("heisenberg.manifest")

    def test_resolves_paths(self, tmp_path: Path) -> None:
        """Test a path on disk wins over the catalog."""
        path = tmp_path / "local.manifest"
        path.write_text(MINIMAL, encoding="utf-8")
        catalog = ManifestCatalog(tmp_path / "empty")
        assert catalog.load(str(path)).dim == 3
        assert catalog.names() == []

    def test_not_found(self, catalog: ManifestCatalog) -> None:
        """Test an unknown reference is a usage error."""
        with pytest.raises(UsageError) as excinfo:
            catalog.resolve("no_such_manifold")
        assert excinfo.value.code == "MANIFEST_NOT_FOUND"

    def test_invalid_utf8(self, tmp_path: Path) -> None:
        """Test undecodable bytes are a parse error naming the line."""
        path = tmp_path / "bad.manifest"
        path.write_bytes(MINIMAL.encode("utf-8").replace(b"0 1 0", b"0 \xff 0"))
        with pytest.raises(ManifestParseError) as excinfo:
            ManifestCatalog(tmp_path).load(str(path))
        assert excinfo.value.line == 6
        assert "not valid UTF-8" in excinfo.value.message
