"""Dot-level electrostatics and the four-phase clock shared by both engines.

Each cell holds four quantum dots; the two electrons occupy one diagonal
(P = +1) or the other (P = -1). Dot charges: -e on each occupied dot plus a
+e/2 neutralising background on all four dots. The kink energy of a cell pair
is the electrostatic cost of opposite versus aligned polarization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .layout import Cell, Geometry

E_CHARGE = 1.602176634e-19  # C
EPSILON_0 = 8.8541878128e-12  # F/m
HBAR = 1.054571817e-34  # J s
K_BOLTZMANN = 1.380649e-23  # J/K
MEV_JOULE = 1e-3 * E_CHARGE  # 1 meV in J


class GeometryError(Exception):
    """Raised when the dot geometry of a request is ill-posed."""


def dot_centers_nm(cx: float, cy: float, orient: str, dot_offset_nm: float) -> list[tuple[float, float]]:
    """Four dot centres of a cell at (cx, cy) nm.

    The first two returned dots are the diagonal occupied at P = +1, the last
    two the P = -1 diagonal. A rotated cell carries its dots at 45 degrees,
    at the same centre-to-dot distance as the standard cell's diagonal.
    """
    d = dot_offset_nm
    if orient == "standard":
        return [(cx + d, cy + d), (cx - d, cy - d), (cx - d, cy + d), (cx + d, cy - d)]
    if orient == "rotated":
        r = d * math.sqrt(2.0)
        return [(cx + r, cy), (cx - r, cy), (cx, cy + r), (cx, cy - r)]
    raise GeometryError(f"unknown orientation {orient!r}")


def dot_charges(polarization_positive: bool, include_background: bool = True) -> list[float]:
    """Charge on each dot (same order as dot_centers_nm) for a fully polarized cell."""
    bg = E_CHARGE / 2.0 if include_background else 0.0
    if polarization_positive:
        return [-E_CHARGE + bg, -E_CHARGE + bg, bg, bg]
    return [bg, bg, -E_CHARGE + bg, -E_CHARGE + bg]


def _pair_potential(
    dots_a: list[tuple[float, float]],
    charges_a: list[float],
    dots_b: list[tuple[float, float]],
    charges_b: list[float],
    permittivity_rel: float,
) -> float:
    pref = 1.0 / (4.0 * math.pi * EPSILON_0 * permittivity_rel)
    total = 0.0
    for (xa, ya), qa in zip(dots_a, charges_a):
        for (xb, yb), qb in zip(dots_b, charges_b):
            dist_m = math.hypot(xa - xb, ya - yb) * 1e-9
            if dist_m == 0.0:
                raise GeometryError("coincident dots while computing pair potential")
            total += pref * qa * qb / dist_m
    return total


@lru_cache(maxsize=4096)
def _kink_by_offset(
    dx_nm: float,
    dy_nm: float,
    orient_a: str,
    orient_b: str,
    dot_offset_nm: float,
    permittivity_rel: float,
    include_background: bool,
) -> float:
    dots_a = dot_centers_nm(0.0, 0.0, orient_a, dot_offset_nm)
    dots_b = dot_centers_nm(dx_nm, dy_nm, orient_b, dot_offset_nm)
    qa = dot_charges(True, include_background)
    u_same = _pair_potential(dots_a, qa, dots_b, dot_charges(True, include_background), permittivity_rel)
    u_opp = _pair_potential(dots_a, qa, dots_b, dot_charges(False, include_background), permittivity_rel)
    return u_opp - u_same


def kink_energy(geom: Geometry, a: Cell, b: Cell, include_background: bool = True) -> float:
    """Kink energy U_opposite - U_same of a cell pair, in joules.

    Positive for side-by-side cells (alignment favoured), negative for
    diagonal pairs. Symmetric in (a, b).
    """
    if a.gx == b.gx and a.gy == b.gy:
        raise GeometryError(f"coincident cells at ({a.gx},{a.gy})")
    dx = (b.gx - a.gx) * geom.pitch_nm
    dy = (b.gy - a.gy) * geom.pitch_nm
    return _kink_by_offset(
        dx, dy, a.orient, b.orient, geom.dot_offset_nm, geom.permittivity_rel, include_background
    )


def nearest_neighbor_kink(geom: Geometry) -> float:
    """Kink energy of two horizontally adjacent standard cells: the coupling unit E_k0."""
    return _kink_by_offset(
        geom.pitch_nm, 0.0, "standard", "standard", geom.dot_offset_nm, geom.permittivity_rel, True
    )


@dataclass(frozen=True)
class ClockParams:
    """Four-phase clipped-cosine clock over the cell tunneling energy."""

    gamma_high: float = 9.8e-22  # J
    gamma_low: float = 3.8e-23  # J
    samples_per_period: int = 100

    def __post_init__(self) -> None:
        if not (0.0 < self.gamma_low < self.gamma_high):
            raise ValueError("require 0 < gamma_low < gamma_high")
        if self.samples_per_period < 8 or self.samples_per_period % 4 != 0:
            raise ValueError("samples_per_period must be >= 8 and divisible by 4")


def gamma_phase(clock: ClockParams, zone: int, phase: float) -> float:
    """Clock value at a phase within [0, 1) of one period, for a given zone.

    Cosine of amplitude 2*(high-low) clipped to [low, high]; zone z+1 lags
    zone z by a quarter period. Zone z ramps down (switch) during quarter z,
    holds low during quarter z+1.
    """
    if zone not in (0, 1, 2, 3):
        raise ValueError(f"clock zone {zone} outside 0..3")
    hi, lo = clock.gamma_high, clock.gamma_low
    mid = 0.5 * (hi + lo)
    raw = mid + 2.0 * (hi - lo) * math.cos(2.0 * math.pi * phase + math.pi / 4.0 - zone * math.pi / 2.0)
    return min(hi, max(lo, raw))


def gamma_at(clock: ClockParams, zone: int, sample: int) -> float:
    """Clock value at an integer sample index (periodic in samples_per_period)."""
    n = clock.samples_per_period
    return gamma_phase(clock, zone, (sample % n) / n)
