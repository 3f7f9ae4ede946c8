"""Manifest to canonical text; ``parse_manifest(serialize_manifest(m)) == m``."""

from collections.abc import Iterable, Mapping, Sequence

from para_sasakian_verifier.models.manifest import Manifest, ReferenceTable, TParamsSource
from para_sasakian_verifier.models.tensor import Rational, format_rational


def _row(values: Iterable[Rational]) -> str:
    return " ".join(format_rational(v) for v in values)


def format_combination(terms: Mapping[int, Rational]) -> str:
    """Sparse frame vector as ``k:coeff k:coeff``; the zero vector is empty."""
    return " ".join(f"{k}:{format_rational(v)}" for k, v in sorted(terms.items()) if v != 0)


def _assignment(key: str, value: str) -> str:
    return f"{key} = {value}".rstrip()


def _indices(index: Sequence[int]) -> str:
    return " ".join(str(i) for i in index)


def _tparams_lines(source: TParamsSource) -> list[str]:
    lines = [_assignment("preset", source.preset)] if source.preset is not None else []
    for key in sorted(source.coefficients):
        lines.append(_assignment(key, format_rational(source.coefficients[key])))
    return lines


def _reference_lines(reference: ReferenceTable) -> list[str]:
    lines = [_assignment("note", note) for note in reference.notes]
    if reference.scalar is not None:
        lines.append(_assignment("scalar", format_rational(reference.scalar)))
    for index, value in sorted(reference.ricci.items()):
        lines.append(_assignment(f"ricci {_indices(index)}", format_rational(value)))
    for pair, vector in sorted(reference.connection.items()):
        lines.append(_assignment(f"connection {_indices(pair)}", format_combination(vector)))
    for triple, vector in sorted(reference.curvature.items()):
        lines.append(_assignment(f"curvature {_indices(triple)}", format_combination(vector)))
    return lines


def serialize_manifest(manifest: Manifest) -> str:
    """Canonical text: comments first, then sections in a fixed order, LF line endings."""
    frame, m = manifest.frame, manifest.dim
    blocks: list[list[str]] = []

    if manifest.comments:
        blocks.append([f"# {comment}".rstrip() for comment in manifest.comments])

    manifold = []
    if manifest.name is not None:
        manifold.append(_assignment("name", manifest.name))
    manifold.append(_assignment("dim", str(m)))
    epsilon = manifest.pc.eps if manifest.pc is not None else manifest.epsilon
    if epsilon is not None:
        manifold.append(_assignment("epsilon", format_rational(epsilon)))
    blocks.append(["[manifold]", *manifold])

    blocks.append(["[metric]", *(_row(frame.g[i, j] for j in range(m)) for i in range(m))])

    brackets = []
    for i in range(m):
        for j in range(i + 1, m):
            terms = {k + 1: frame.c[k, i, j] for k in range(m)}
            if any(v != 0 for v in terms.values()):
                brackets.append(_assignment(f"{i + 1} {j + 1}", format_combination(terms)))
    if brackets:
        blocks.append(["[brackets]", *brackets])

    if manifest.pc is not None:
        pc = manifest.pc
        blocks.append(["[phi]", *(_row(row) for row in pc.phi_rows())])
        blocks.append(["[xi]", _row(pc.xi.entries)])
        blocks.append(["[eta]", _row(pc.eta.entries)])

    if manifest.tparams is not None:
        blocks.append(["[tparams]", *_tparams_lines(manifest.tparams)])

    if manifest.reference is not None:
        blocks.append(["[reference]", *_reference_lines(manifest.reference)])

    return "\n\n".join("\n".join(block) for block in blocks) + "\n"
