"""Layout data model: cells on an integer grid, validation, geometry queries, design metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional

ROLES = ("normal", "input", "output", "fixed")
ORIENTS = ("standard", "rotated")


class LayoutError(Exception):
    """Raised for lookups/operations on layouts that cannot proceed."""


@dataclass(frozen=True)
class Cell:
    """One quantum cell on the grid.

    gx/gy are integer grid coordinates; physical position is grid * pitch.
    fixed_pol is present exactly when role == "fixed"; label exactly when
    role is "input" or "output".
    """

    gx: int
    gy: int
    role: str = "normal"
    orient: str = "standard"
    zone: int = 0
    fixed_pol: Optional[float] = None
    label: Optional[str] = None

    def pos_nm(self, pitch_nm: float) -> tuple[float, float]:
        return (self.gx * pitch_nm, self.gy * pitch_nm)


@dataclass(frozen=True)
class Geometry:
    """Physical cell geometry and interaction parameters (lengths in nm)."""

    pitch_nm: float = 20.0
    cell_size_nm: float = 18.0
    dot_offset_nm: float = 4.5
    radius_of_effect_nm: float = 65.0
    permittivity_rel: float = 12.9

    def __post_init__(self) -> None:
        for name in ("pitch_nm", "cell_size_nm", "dot_offset_nm", "radius_of_effect_nm"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.radius_of_effect_nm < self.pitch_nm:
            raise ValueError("radius_of_effect_nm must be >= pitch_nm")


@dataclass(frozen=True)
class Metrics:
    cell_count: int
    area_um2: float
    area_raw_um2: float
    latency_zones: int
    crossover: str


@dataclass(frozen=True)
class Layout:
    """A named, immutable collection of cells plus geometry parameters."""

    name: str
    cells: tuple[Cell, ...]
    geometry: Geometry = field(default_factory=Geometry)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))

    @property
    def inputs(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.role == "input")

    @property
    def outputs(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.role == "output")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.cells if c.label is not None)

    def cell_at(self, gx: int, gy: int) -> Optional[Cell]:
        for c in self.cells:
            if c.gx == gx and c.gy == gy:
                return c
        return None

    def by_label(self, label: str) -> Cell:
        for c in self.cells:
            if c.label == label:
                return c
        raise LayoutError(f"no cell labelled {label!r} in layout {self.name!r}")

    def translated(self, dx: int, dy: int) -> "Layout":
        moved = tuple(replace(c, gx=c.gx + dx, gy=c.gy + dy) for c in self.cells)
        return Layout(self.name, moved, self.geometry)


def validate(layout: Layout) -> list[str]:
    """Check every type invariant; returns a list of violation strings (empty == valid)."""
    issues: list[str] = []
    seen: dict[tuple[int, int], Cell] = {}
    labels: dict[str, Cell] = {}
    for c in layout.cells:
        at = f"cell ({c.gx},{c.gy})"
        if (c.gx, c.gy) in seen:
            issues.append(f"duplicate position at ({c.gx},{c.gy})")
        seen[(c.gx, c.gy)] = c
        if c.role not in ROLES:
            issues.append(f"{at}: unknown role {c.role!r}")
        if c.orient not in ORIENTS:
            issues.append(f"{at}: unknown orientation {c.orient!r}")
        if c.zone not in (0, 1, 2, 3):
            issues.append(f"{at}: clock zone {c.zone} outside 0..3")
        if c.role == "fixed":
            if c.fixed_pol is None:
                issues.append(f"{at}: fixed cell without fixed_pol")
            elif abs(c.fixed_pol) > 1.0:
                issues.append(f"{at}: |fixed_pol| = {abs(c.fixed_pol)} exceeds 1")
        elif c.fixed_pol is not None:
            issues.append(f"{at}: fixed_pol on non-fixed cell")
        if c.role in ("input", "output"):
            if not c.label:
                issues.append(f"{at}: {c.role} cell without label")
            elif c.label in labels:
                issues.append(f"{at}: duplicate label {c.label!r}")
            else:
                labels[c.label] = c
        elif c.label is not None:
            issues.append(f"{at}: label on {c.role} cell")
    if not any(c.role == "input" for c in layout.cells):
        issues.append("no input cell")
    if not any(c.role == "output" for c in layout.cells):
        issues.append("no output cell")
    return issues


def neighbors(layout: Layout, cell: Cell) -> list[Cell]:
    """Every other cell whose centre lies within the radius of effect."""
    if cell not in layout.cells:
        raise LayoutError(f"cell at ({cell.gx},{cell.gy}) is not part of layout {layout.name!r}")
    pitch = layout.geometry.pitch_nm
    r = layout.geometry.radius_of_effect_nm
    out = []
    for other in layout.cells:
        if other is cell or (other.gx == cell.gx and other.gy == cell.gy):
            continue
        d = math.hypot((other.gx - cell.gx) * pitch, (other.gy - cell.gy) * pitch)
        if d <= r:
            out.append(other)
    return out


def _adjacent(a: Cell, b: Cell) -> bool:
    # driven adjacency: orthogonal or diagonal lattice neighbours
    return max(abs(a.gx - b.gx), abs(a.gy - b.gy)) == 1


def _fewest_zone_path(layout: Layout, src: Cell, dst: Cell) -> Optional[frozenset[int]]:
    """Zone set of the path from src to dst using the fewest distinct clock zones.

    Dijkstra over (cell, zones-seen) states, cost = (|zones|, hops). Returns the
    winning zone set, or None when no path exists.
    """
    import heapq

    idx = {(c.gx, c.gy): i for i, c in enumerate(layout.cells)}
    adj: dict[int, list[int]] = {i: [] for i in range(len(layout.cells))}
    for i, a in enumerate(layout.cells):
        for j, b in enumerate(layout.cells):
            if i < j and _adjacent(a, b):
                adj[i].append(j)
                adj[j].append(i)
    s, t = idx[(src.gx, src.gy)], idx[(dst.gx, dst.gy)]
    start = frozenset({layout.cells[s].zone})
    heap: list[tuple[int, int, int, frozenset[int]]] = [(1, 0, s, start)]
    best: dict[tuple[int, frozenset[int]], int] = {(s, start): 0}
    while heap:
        nz, hops, i, zones = heapq.heappop(heap)
        if i == t:
            return zones
        for j in adj[i]:
            jz = zones | {layout.cells[j].zone}
            key = (j, jz)
            if key not in best or best[key] > hops + 1:
                best[key] = hops + 1
                heapq.heappush(heap, (len(jz), hops + 1, j, jz))
    return None


def _detect_crossover(layout: Layout) -> str:
    # coplanar crossing pattern: a rotated cell flanked by standard cells on
    # opposite orthogonal sides (a standard wire running through a rotated one)
    occupied = {(c.gx, c.gy): c for c in layout.cells}
    for c in layout.cells:
        if c.orient != "rotated":
            continue
        for d in ((1, 0), (0, 1)):
            a = occupied.get((c.gx - d[0], c.gy - d[1]))
            b = occupied.get((c.gx + d[0], c.gy + d[1]))
            if a and b and a.orient == "standard" and b.orient == "standard":
                return "coplanar"
    return "none"


def metrics(layout: Layout) -> Metrics:
    """Cell count, occupied area, clock-zone latency and crossover type."""
    issues = validate(layout)
    if issues:
        raise LayoutError(f"layout {layout.name!r} does not validate: {issues[0]}")
    geom = layout.geometry
    xs = [c.gx for c in layout.cells]
    ys = [c.gy for c in layout.cells]
    w_nm = (max(xs) - min(xs)) * geom.pitch_nm + geom.cell_size_nm
    h_nm = (max(ys) - min(ys)) * geom.pitch_nm + geom.cell_size_nm
    area_raw = (w_nm * h_nm) * 1e-6  # nm^2 -> um^2
    area = float(Decimal(repr(area_raw)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))

    latency = 0
    for src in layout.inputs:
        for dst in layout.outputs:
            zones = _fewest_zone_path(layout, src, dst)
            if zones is None:
                raise LayoutError(
                    f"disconnected layout: no path from {src.label!r} to {dst.label!r}"
                )
            latency = max(latency, len(zones))

    return Metrics(
        cell_count=len(layout.cells),
        area_um2=area,
        area_raw_um2=area_raw,
        latency_zones=latency,
        crossover=_detect_crossover(layout),
    )


def make_layout(
    name: str,
    cells: Iterable[Cell],
    geometry: Optional[Geometry] = None,
) -> Layout:
    """Build and validate a layout, raising on the first violation."""
    lay = Layout(name, tuple(cells), geometry or Geometry())
    issues = validate(lay)
    if issues:
        raise LayoutError(f"invalid layout {name!r}: {'; '.join(issues)}")
    return lay
