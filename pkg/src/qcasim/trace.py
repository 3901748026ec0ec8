"""Time-indexed polarization traces and their delimited export."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Mapping, Sequence

import numpy as np


@dataclass
class Trace:
    """Polarization series per labelled cell plus per-zone tunneling-energy series.

    One input vector is applied per clock period (window); `schedule` records
    which bit assignment was live during each window. `samples_per_period`
    windows of `len(schedule)` vectors concatenate into the global sample axis.
    """

    samples_per_period: int
    schedule: list[dict[str, int]]
    labels: list[str]
    label_zones: dict[str, int]
    series: dict[str, np.ndarray]
    gamma: np.ndarray  # shape (4, total_samples)
    nonconverged: list[tuple[int, int]] = field(default_factory=list)

    @property
    def total_samples(self) -> int:
        return int(self.gamma.shape[1])

    @property
    def windows(self) -> int:
        return self.total_samples // self.samples_per_period

    def window_slice(self, window: int) -> slice:
        n = self.samples_per_period
        return slice(window * n, (window + 1) * n)

    def hold_sample(self, window: int, zone: int) -> int:
        """Global index of the last locked sample of `zone`'s hold for a window.

        Zone z ramps down during quarter z and holds during quarter z+1; zone 3
        is sampled at the window end, just after its lock-in.
        """
        n = self.samples_per_period
        local = min((zone + 2) * n // 4, n) - 1
        return window * n + local

    def value_at(self, label: str, window: int) -> float:
        zone = self.label_zones[label]
        return float(self.series[label][self.hold_sample(window, zone)])

    def write_csv(self, fh: IO[str]) -> None:
        cols = ["sample", "gamma_z0", "gamma_z1", "gamma_z2", "gamma_z3"] + list(self.labels)
        fh.write(",".join(cols) + "\n")
        for s in range(self.total_samples):
            row = [str(s)]
            row += [repr(float(self.gamma[z, s])) for z in range(4)]
            row += [repr(float(self.series[lab][s])) for lab in self.labels]
            fh.write(",".join(row) + "\n")


def bits_to_polarization(bit: int) -> float:
    """Logic 1 -> P = +1, logic 0 -> P = -1."""
    return 1.0 if bit else -1.0


def polarization_to_bit(p: float, threshold: float = 0.5) -> int | None:
    """Threshold a polarization into a logic value; None when too weak."""
    if abs(p) < threshold:
        return None
    return 1 if p > 0 else 0


def exhaustive_vectors(labels: Sequence[str]) -> list[dict[str, int]]:
    """All 2^n assignments in Gray-code order (adjacent vectors differ by one bit)."""
    n = len(labels)
    out = []
    for k in range(1 << n):
        g = k ^ (k >> 1)
        out.append({lab: (g >> (n - 1 - i)) & 1 for i, lab in enumerate(labels)})
    return out


def vectors_from_mapping(rows: Sequence[Mapping[str, int]]) -> list[dict[str, int]]:
    return [dict(r) for r in rows]
