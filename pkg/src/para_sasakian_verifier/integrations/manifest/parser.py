"""Manifest text to Manifest.

Line-oriented sections; ``#`` starts a comment. Sections may appear in any
order, each at most once. Shapes are validated here, axioms are not.
"""

import logging
import re
from dataclasses import dataclass, field

from para_sasakian_verifier.core.exceptions import ManifestParseError, UsageError
from para_sasakian_verifier.models.geometry import FrameSpec, ParacontactSpec
from para_sasakian_verifier.models.manifest import (
    FrameVector,
    Manifest,
    ReferenceTable,
    TParamsSource,
)
from para_sasakian_verifier.models.tensor import Rational, parse_rational

logger = logging.getLogger(__name__)

SECTIONS = ("manifold", "metric", "brackets", "phi", "xi", "eta", "tparams", "reference")
STRUCTURE_SECTIONS = ("phi", "xi", "eta")

_HEADER = re.compile(r"^\[([A-Za-z_-]+)\]$")
_DIGITS = re.compile(r"[0-9]+")


@dataclass
class _Section:
    name: str
    header_line: int
    lines: list[tuple[int, str]] = field(default_factory=list)


def _rational(text: str, line: int) -> Rational:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise ManifestParseError(f"bad rational {text!r}", line) from e


def _index(text: str, m: int, line: int) -> int:
    if not _DIGITS.fullmatch(text):
        raise ManifestParseError(f"bad frame index {text!r}", line)
    value = int(text)
    if not 1 <= value <= m:
        raise ManifestParseError(f"index {value} out of range 1..{m}", line)
    return value


def _row(text: str, m: int, line: int) -> list[Rational]:
    tokens = text.split()
    if len(tokens) != m:
        raise ManifestParseError(f"expected {m} values, got {len(tokens)}", line)
    return [_rational(token, line) for token in tokens]


def _rows(section: _Section, m: int) -> list[list[Rational]]:
    if len(section.lines) != m:
        raise ManifestParseError(
            f"[{section.name}] needs {m} rows, got {len(section.lines)}", section.header_line
        )
    return [_row(text, m, line) for line, text in section.lines]


def _single_row(section: _Section, m: int) -> list[Rational]:
    if len(section.lines) != 1:
        raise ManifestParseError(f"[{section.name}] needs exactly one row", section.header_line)
    line, text = section.lines[0]
    return _row(text, m, line)


def _key_value(text: str, line: int) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep:
        raise ManifestParseError(f"expected 'key = value', got {text!r}", line)
    return key.strip(), value.strip()


def _combination(text: str, m: int, line: int) -> dict[int, Rational]:
    """``k:coeff k:coeff ...`` with 1-based k; zero coefficients dropped."""
    terms: dict[int, Rational] = {}
    for token in text.split():
        k_text, sep, coefficient = token.partition(":")
        if not sep:
            raise ManifestParseError(f"expected 'k:coeff', got {token!r}", line)
        k = _index(k_text, m, line)
        if k in terms:
            raise ManifestParseError(f"frame index {k} repeated", line)
        value = _rational(coefficient, line)
        terms[k] = value
    return {k: v for k, v in terms.items() if v != 0}


def _split_sections(text: str) -> tuple[dict[str, _Section], list[str]]:
    sections: dict[str, _Section] = {}
    comments: list[str] = []
    current: _Section | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content, hash_sign, comment = raw.partition("#")
        if hash_sign:
            comments.append(comment.strip())
        content = content.strip()
        if not content:
            continue
        header = _HEADER.match(content)
        if header:
            name = header.group(1).lower()
            if name not in SECTIONS:
                raise ManifestParseError(f"unknown section [{name}]", number)
            if name in sections:
                raise ManifestParseError(f"duplicate section [{name}]", number)
            current = sections[name] = _Section(name, number)
            continue
        if current is None:
            raise ManifestParseError("content before the first section", number)
        current.lines.append((number, content))
    return sections, comments


def _parse_manifold(section: _Section) -> tuple[int, Rational | None, str | None]:
    values: dict[str, tuple[int, str]] = {}
    for line, text in section.lines:
        key, value = _key_value(text, line)
        if key not in ("dim", "epsilon", "name"):
            raise ManifestParseError(f"unknown [manifold] key {key!r}", line)
        if key in values:
            raise ManifestParseError(f"duplicate key {key!r}", line)
        values[key] = (line, value)

    if "dim" not in values:
        raise ManifestParseError("[manifold] needs 'dim'", section.header_line)
    line, dim_text = values["dim"]
    if not _DIGITS.fullmatch(dim_text) or int(dim_text) < 2:
        raise ManifestParseError(f"dim must be an integer of at least 2, got {dim_text!r}", line)

    epsilon = None
    if "epsilon" in values:
        line, eps_text = values["epsilon"]
        epsilon = _rational(eps_text, line)
        if epsilon not in (1, -1):
            raise ManifestParseError(f"epsilon must be 1 or -1, got {eps_text}", line)

    name = values["name"][1] if "name" in values else None
    return int(dim_text), epsilon, name


def _parse_brackets(section: _Section, m: int) -> dict[tuple[int, int], dict[int, Rational]]:
    brackets: dict[tuple[int, int], dict[int, Rational]] = {}
    for line, text in section.lines:
        pair, value = _key_value(text, line)
        tokens = pair.split()
        if len(tokens) != 2:
            raise ManifestParseError(f"expected 'i j = ...', got {text!r}", line)
        i, j = (_index(token, m, line) for token in tokens)
        if i >= j:
            raise ManifestParseError(f"bracket pair needs i < j, got ({i}, {j})", line)
        if (i, j) in brackets:
            raise ManifestParseError(f"duplicate bracket pair ({i}, {j})", line)
        brackets[(i, j)] = _combination(value, m, line)
    return brackets


def _parse_tparams(section: _Section) -> TParamsSource:
    preset: str | None = None
    coefficients: dict[str, Rational] = {}
    for line, text in section.lines:
        key, value = _key_value(text, line)
        if key == "preset":
            if preset is not None:
                raise ManifestParseError("duplicate key 'preset'", line)
            preset = value
        elif re.fullmatch(r"a[0-7]", key):
            if key in coefficients:
                raise ManifestParseError(f"duplicate key {key!r}", line)
            coefficients[key] = _rational(value, line)
        else:
            raise ManifestParseError(f"unknown [tparams] key {key!r}", line)
    try:
        return TParamsSource(preset=preset, coefficients=coefficients)
    except UsageError as e:
        raise ManifestParseError(e.message, section.header_line) from e


def _parse_reference(section: _Section, m: int) -> ReferenceTable:
    notes: list[str] = []
    scalar: Rational | None = None
    ricci: dict[tuple[int, int], Rational] = {}
    connection: dict[tuple[int, int], FrameVector] = {}
    curvature: dict[tuple[int, int, int], FrameVector] = {}

    for line, text in section.lines:
        key, value = _key_value(text, line)
        quantity, *index_text = key.split()
        if quantity == "note" and not index_text:
            notes.append(value)
            continue
        if quantity == "scalar" and not index_text:
            if scalar is not None:
                raise ManifestParseError("duplicate reference scalar", line)
            scalar = _rational(value, line)
            continue

        arity = {"ricci": 2, "connection": 2, "curvature": 3}.get(quantity)
        if arity is None:
            raise ManifestParseError(f"unknown reference quantity {quantity!r}", line)
        if len(index_text) != arity:
            raise ManifestParseError(f"{quantity} needs {arity} indices", line)
        index = tuple(_index(token, m, line) for token in index_text)
        table: dict = {"ricci": ricci, "connection": connection, "curvature": curvature}[quantity]
        if index in table:
            raise ManifestParseError(f"duplicate reference {quantity} {index}", line)
        table[index] = _rational(value, line) if quantity == "ricci" else _combination(value, m, line)

    return ReferenceTable(
        notes=tuple(notes), scalar=scalar, ricci=ricci, connection=connection, curvature=curvature
    )


def parse_manifest(text: str) -> Manifest:
    """Parse manifest text (LF or CRLF line endings).

    Raises:
        ManifestParseError: malformed input, with the offending line number
    """
    sections, comments = _split_sections(text)
    for required in ("manifold", "metric"):
        if required not in sections:
            raise ManifestParseError(f"missing required section [{required}]")

    m, epsilon, name = _parse_manifold(sections["manifold"])
    metric = _rows(sections["metric"], m)
    brackets = _parse_brackets(sections["brackets"], m) if "brackets" in sections else {}
    frame = FrameSpec.from_brackets(metric, brackets)

    present = [s for s in STRUCTURE_SECTIONS if s in sections]
    pc = None
    if present:
        missing = [s for s in STRUCTURE_SECTIONS if s not in sections]
        if missing:
            raise ManifestParseError(
                f"[{present[0]}] given without [{missing[0]}]", sections[present[0]].header_line
            )
        if epsilon is None:
            raise ManifestParseError("[manifold] needs 'epsilon' with a structure", sections["manifold"].header_line)
        pc = ParacontactSpec.from_rows(
            _rows(sections["phi"], m),
            _single_row(sections["xi"], m),
            _single_row(sections["eta"], m),
            epsilon,
        )

    tparams = _parse_tparams(sections["tparams"]) if "tparams" in sections else None
    reference = _parse_reference(sections["reference"], m) if "reference" in sections else None

    manifest = Manifest(
        frame=frame,
        pc=pc,
        tparams=tparams,
        name=name,
        epsilon=epsilon,
        comments=tuple(comments),
        reference=reference,
    )
    logger.debug("Parsed manifest %s: dim %d, structure %s", name or "<unnamed>", m, pc is not None)
    return manifest
