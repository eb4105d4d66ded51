# convequiv: state-space analysis and equivalence of convolutional codes
# Copyright (C) 2026 the convequiv developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Text formats for encoders and systems.

Encoder files carry a field, an optional label and a polynomial matrix:

    # Example encoder
    field: GF(2)
    label: rate 2/4, degree 2
    matrix:
    z; 1+z^2; 1+z; z+z^2
    1; 0; 1; 1

System files carry a field and the four blocks of a realization, each a
matrix of field elements. A system with no states lists ``D:`` only:

    field: GF(3)
    A:
    0
    B:
    2
    1
    C:
    0; 0; 1
    D:
    0; 1; 1
    1; 0; 0

Everything after ``#`` on a line is ignored. Errors carry the line and
column of the offending input.
"""

import re
from dataclasses import dataclass
from pathlib import Path

import galois

from .fields import FieldSpec, parse_field
from .polymat import PolyMatrix, is_full_row_rank
from .realization import StateSpace
from .types import ParseError, RankDeficientError, ShapeError

_HEADER = re.compile(r"^\s*([A-Za-z]+)\s*:(.*)$")

ENCODER_KEYS = ("field", "label", "matrix")
SYSTEM_KEYS = ("field", "A", "B", "C", "D")


@dataclass(frozen=True)
class EncoderFile:
    """A parsed encoder file."""

    field: FieldSpec
    matrix: PolyMatrix
    label: str | None = None


@dataclass
class _Section:
    line: int
    value: str
    body: list[str]

    @property
    def first_body_line(self) -> int:
        return self.line + 1


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _sections(text: str, allowed: tuple[str, ...]) -> dict[str, _Section]:
    """Split a file into ``key:`` sections, keeping body lines aligned to line numbers."""
    sections: dict[str, _Section] = {}
    current: _Section | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        match = _HEADER.match(line)
        if match is not None:
            key = match.group(1)
            if key not in allowed:
                raise ParseError(
                    f"Unknown section {key!r}; expected one of {', '.join(allowed)}",
                    number,
                    line.index(key) + 1,
                )
            if key in sections:
                raise ParseError(f"Section {key!r} appears twice", number, 1)
            current = _Section(number, match.group(2).strip(), [])
            sections[key] = current
            continue
        if current is None:
            if line.strip():
                raise ParseError(
                    "Expected a section header such as 'field:' before any data", number, 1
                )
            continue
        current.body.append(line)
    return sections


def _field_from(sections: dict[str, _Section]) -> FieldSpec:
    section = sections.get("field")
    if section is None:
        raise ParseError("Missing 'field:' line (e.g. 'field: GF(2)')", 1, 1)
    try:
        return parse_field(section.value)
    except ParseError as e:
        if e.line:
            raise
        raise ParseError(str(e), section.line, 1) from None


def _require_empty_value(section: _Section, key: str) -> None:
    if section.value:
        raise ParseError(
            f"Put the rows of {key!r} on the lines after the header, not on the header line",
            section.line,
            len(key) + 2,
        )


# ============================================================================
# Encoders
# ============================================================================


def parse_encoder_file(text: str) -> EncoderFile:
    """
    Parse an encoder file.

    Raises:
        ParseError: On malformed input (with line and column)
        RankDeficientError: If the matrix does not have full row rank
    """
    sections = _sections(text, ENCODER_KEYS)
    F = _field_from(sections)
    section = sections.get("matrix")
    if section is None:
        raise ParseError("Missing 'matrix:' section", len(text.splitlines()) or 1, 1)
    _require_empty_value(section, "matrix")
    G = PolyMatrix.parse(F, "\n".join(section.body), first_line=section.first_body_line)
    if not is_full_row_rank(G):
        raise RankDeficientError(
            f"The {G.k} x {G.n} encoder matrix does not have full row rank.\n"
            "Remove dependent rows so the rows form a basis of the code."
        )
    label = sections["label"].value if "label" in sections else None
    return EncoderFile(F, G, label or None)


def load_encoder(path: str | Path) -> EncoderFile:
    return parse_encoder_file(Path(path).read_text())


def format_encoder_file(encoder: EncoderFile) -> str:
    lines = [f"field: {encoder.field}"]
    if encoder.label:
        lines.append(f"label: {encoder.label}")
    lines.append("matrix:")
    lines.append(encoder.matrix.to_text())
    return "\n".join(lines) + "\n"


# ============================================================================
# Systems
# ============================================================================


def _parse_field_matrix(F: FieldSpec, section: _Section, key: str) -> galois.FieldArray | None:
    _require_empty_value(section, key)
    rows: list[list[int]] = []
    for offset, line in enumerate(section.body):
        if not line.strip():
            continue
        number = section.first_body_line + offset
        row, column = [], 1
        for cell in line.split(";"):
            try:
                row.append(int(F.parse_element(cell)))
            except ParseError as e:
                raise ParseError(str(e), number, column) from None
            column += len(cell) + 1
        if rows and len(row) != len(rows[0]):
            raise ParseError(
                f"Row of {key!r} has {len(row)} entries but the first row has {len(rows[0])}",
                number,
                1,
            )
        rows.append(row)
    if not rows:
        return None
    return F.array(rows)


def parse_system_file(text: str) -> StateSpace:
    """
    Parse a system file into a realization.

    Sections ``A:``, ``B:`` and ``C:`` must all be present or all absent
    (absent means no states); ``D:`` is always required.

    Raises:
        ParseError: On malformed input
        ShapeError: If the blocks do not fit together
    """
    sections = _sections(text, SYSTEM_KEYS)
    F = _field_from(sections)
    if "D" not in sections:
        raise ParseError("Missing 'D:' section", len(text.splitlines()) or 1, 1)
    D = _parse_field_matrix(F, sections["D"], "D")
    if D is None:
        raise ParseError("Section 'D' has no rows", sections["D"].line, 1)

    present = [key for key in "ABC" if key in sections]
    if not present:
        return StateSpace.static(D)
    if len(present) != 3:
        missing = [key for key in "ABC" if key not in sections]
        raise ParseError(
            f"Sections {', '.join(missing)} are missing; give A, B and C together "
            "or only D for a system without states",
            sections[present[0]].line,
            1,
        )
    blocks = {key: _parse_field_matrix(F, sections[key], key) for key in "ABC"}
    if any(block is None for block in blocks.values()):
        empty = [key for key, block in blocks.items() if block is None]
        raise ShapeError(f"Sections {', '.join(empty)} have no rows")
    return StateSpace(F, blocks["A"], blocks["B"], blocks["C"], D)


def load_system(path: str | Path) -> StateSpace:
    return parse_system_file(Path(path).read_text())


def format_field_matrix(F: FieldSpec, M: galois.FieldArray) -> list[str]:
    """Rows of M in the element syntax, entries separated by ``; ``."""
    return ["; ".join(F.format_element(x) for x in row) for row in M]


def format_system(sigma: StateSpace) -> str:
    """Render a realization in the system file format."""
    F = sigma.field
    lines = [f"field: {F}"]
    blocks = ("A", "B", "C", "D") if sigma.delta > 0 else ("D",)
    for key in blocks:
        lines.append(f"{key}:")
        lines.extend(format_field_matrix(F, getattr(sigma, key)))
    return "\n".join(lines) + "\n"


def system_to_json(sigma: StateSpace) -> dict:
    """
    JSON record of a realization: field, dimensions and the four blocks as
    lists of rows of element literals.
    """
    F = sigma.field
    return {
        "field": str(F),
        "delta": sigma.delta,
        "k": sigma.k,
        "n": sigma.n,
        **{
            key: [[F.format_element(x) for x in row] for row in getattr(sigma, key)]
            for key in ("A", "B", "C", "D")
        },
    }
