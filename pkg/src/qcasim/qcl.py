"""Line-oriented text format for layouts (.qcl files).

    qcl 1
    pitch 20
    cellsize 18
    dotoffset 4.5
    radius 65
    epsr 12.9
    cell 0 0 zone=0 type=input orient=std label=A
    cell 1 0 zone=0 type=normal orient=std
    cell 2 0 zone=0 type=fixed orient=std pol=-1
    # comments start with '#'

Parameter lines are optional (defaults apply); unknown keys are rejected.
Serialization emits cells sorted by (gy, gx), so parse-serialize is the
identity on the sorted form.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from .layout import Cell, Geometry, Layout, validate

_ORIENT_TO_TOKEN = {"standard": "std", "rotated": "rot"}
_TOKEN_TO_ORIENT = {v: k for k, v in _ORIENT_TO_TOKEN.items()}
_PARAM_FIELDS = {
    "pitch": "pitch_nm",
    "cellsize": "cell_size_nm",
    "dotoffset": "dot_offset_nm",
    "radius": "radius_of_effect_nm",
    "epsr": "permittivity_rel",
}


class LayoutParseError(Exception):
    """Parse failure; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message}, line {line}")
        self.line = line


def _fmt_num(x: float) -> str:
    return f"{x:g}"


def serialize_layout(layout: Layout) -> str:
    geom = layout.geometry
    lines = ["qcl 1"]
    for key, fld in _PARAM_FIELDS.items():
        lines.append(f"{key} {_fmt_num(getattr(geom, fld))}")
    for c in sorted(layout.cells, key=lambda c: (c.gy, c.gx)):
        parts = [
            f"cell {c.gx} {c.gy}",
            f"zone={c.zone}",
            f"type={c.role}",
            f"orient={_ORIENT_TO_TOKEN[c.orient]}",
        ]
        if c.fixed_pol is not None:
            parts.append(f"pol={_fmt_num(c.fixed_pol)}")
        if c.label is not None:
            parts.append(f"label={c.label}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_layout(text: str, name: str = "layout") -> Layout:
    lines = text.splitlines()
    geom_kwargs: dict[str, float] = {}
    cells: list[Cell] = []
    positions: set[tuple[int, int]] = set()
    header_seen = False

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if not header_seen:
            if key != "qcl" or len(tokens) != 2 or tokens[1] != "1":
                raise LayoutParseError("missing or unsupported 'qcl 1' header", lineno)
            header_seen = True
            continue
        if key in _PARAM_FIELDS:
            if len(tokens) != 2:
                raise LayoutParseError(f"malformed parameter line {line!r}", lineno)
            try:
                geom_kwargs[_PARAM_FIELDS[key]] = float(tokens[1])
            except ValueError:
                raise LayoutParseError(f"bad numeric value {tokens[1]!r}", lineno) from None
            continue
        if key == "cell":
            cells.append(_parse_cell(tokens, lineno, positions))
            continue
        raise LayoutParseError(f"unknown key {key!r}", lineno)

    if not header_seen:
        raise LayoutParseError("missing 'qcl 1' header", 1)
    try:
        geometry = Geometry(**geom_kwargs)
    except ValueError as exc:
        raise LayoutParseError(f"bad geometry: {exc}", 1) from None
    layout = Layout(name, tuple(cells), geometry)
    issues = validate(layout)
    if issues:
        raise LayoutParseError(issues[0], len(lines))
    return layout


def _parse_cell(tokens: list[str], lineno: int, positions: set[tuple[int, int]]) -> Cell:
    if len(tokens) < 3:
        raise LayoutParseError("cell line needs coordinates", lineno)
    try:
        gx, gy = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise LayoutParseError(f"bad cell coordinates {tokens[1]!r} {tokens[2]!r}", lineno) from None
    if (gx, gy) in positions:
        raise LayoutParseError(f"duplicate position ({gx},{gy})", lineno)
    positions.add((gx, gy))

    cell = Cell(gx=gx, gy=gy)
    fields: dict[str, str] = {}
    for tok in tokens[3:]:
        if "=" not in tok:
            raise LayoutParseError(f"malformed field {tok!r}", lineno)
        k, v = tok.split("=", 1)
        if k in fields:
            raise LayoutParseError(f"repeated field {k!r}", lineno)
        fields[k] = v

    for k, v in fields.items():
        if k == "zone":
            try:
                cell = replace(cell, zone=int(v))
            except ValueError:
                raise LayoutParseError(f"bad zone {v!r}", lineno) from None
        elif k == "type":
            if v not in ("normal", "input", "output", "fixed"):
                raise LayoutParseError(f"unknown cell type {v!r}", lineno)
            cell = replace(cell, role=v)
        elif k == "orient":
            if v not in _TOKEN_TO_ORIENT:
                raise LayoutParseError(f"unknown orientation {v!r}", lineno)
            cell = replace(cell, orient=_TOKEN_TO_ORIENT[v])
        elif k == "pol":
            try:
                cell = replace(cell, fixed_pol=float(v))
            except ValueError:
                raise LayoutParseError(f"bad polarization {v!r}", lineno) from None
        elif k == "label":
            cell = replace(cell, label=v)
        else:
            raise LayoutParseError(f"unknown field {k!r}", lineno)

    if cell.role != "fixed" and cell.fixed_pol is not None:
        raise LayoutParseError("pol on non-fixed cell", lineno)
    if cell.role == "fixed" and cell.fixed_pol is None:
        raise LayoutParseError("fixed cell without pol", lineno)
    if cell.role in ("input", "output") and cell.label is None:
        raise LayoutParseError(f"{cell.role} cell without label", lineno)
    return cell
