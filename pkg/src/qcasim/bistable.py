"""Quasi-static bistable engine: relax free cells to equilibrium at each clock sample."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .layout import Layout, LayoutError, validate
from .physics import ClockParams, gamma_at, kink_energy
from .trace import Trace, bits_to_polarization


class InputError(Exception):
    """Raised when a vector refers to unknown inputs or leaves inputs unassigned."""


@dataclass(frozen=True)
class BistableParams:
    convergence_tol: float = 0.001
    max_iterations_per_sample: int = 100
    clock: ClockParams = field(default_factory=ClockParams)

    def __post_init__(self) -> None:
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be > 0")
        if self.max_iterations_per_sample < 1:
            raise ValueError("max_iterations_per_sample must be >= 1")


def update_function(x: float) -> float:
    """Bistable cell response x / sqrt(1 + x^2): odd, monotone, range (-1, 1)."""
    return x / math.sqrt(1.0 + x * x)


def coupling_matrix(layout: Layout) -> np.ndarray:
    """Pairwise kink energies (J), zero beyond the radius of effect."""
    geom = layout.geometry
    n = len(layout.cells)
    ek = np.zeros((n, n))
    for i, a in enumerate(layout.cells):
        for j in range(i + 1, n):
            b = layout.cells[j]
            d = math.hypot((a.gx - b.gx) * geom.pitch_nm, (a.gy - b.gy) * geom.pitch_nm)
            if d <= geom.radius_of_effect_nm:
                ek[i, j] = ek[j, i] = kink_energy(geom, a, b)
    return ek


def _check_vectors(layout: Layout, vectors: Sequence[dict[str, int]]) -> None:
    input_labels = {c.label for c in layout.inputs}
    for k, vec in enumerate(vectors):
        unknown = set(vec) - input_labels
        if unknown:
            raise InputError(f"vector {k}: unknown input label(s) {sorted(unknown)}")
        missing = input_labels - set(vec)
        if missing:
            raise InputError(f"vector {k}: unassigned input(s) {sorted(missing)}")


def _simulate_window(
    layout: Layout,
    ek: np.ndarray,
    vector: dict[str, int],
    params: BistableParams,
    start: np.ndarray | None = None,
) -> tuple[np.ndarray, list[int]]:
    """One clock period with a single pinned vector.

    Returns the per-sample polarization history (samples_per_period, n_cells)
    and the sample indices that failed to converge.
    """
    n_samples = params.clock.samples_per_period
    cells = layout.cells
    n = len(cells)
    pol = np.zeros(n) if start is None else start.copy()
    for c_idx, c in enumerate(cells):
        if c.role == "input":
            pol[c_idx] = bits_to_polarization(vector[c.label])
        elif c.role == "fixed":
            pol[c_idx] = c.fixed_pol
    order = sorted(
        (i for i, c in enumerate(cells) if c.role in ("normal", "output")),
        key=lambda i: (cells[i].gy, cells[i].gx),
    )
    zones = [c.zone for c in cells]
    hist = np.empty((n_samples, n))
    flagged: list[int] = []
    for s in range(n_samples):
        g = [gamma_at(params.clock, z, s) for z in range(4)]
        converged = False
        for _ in range(params.max_iterations_per_sample):
            worst = 0.0
            for i in order:
                x = float(ek[i] @ pol) / (2.0 * g[zones[i]])
                new = update_function(x)
                worst = max(worst, abs(new - pol[i]))
                pol[i] = new
            if worst < params.convergence_tol:
                converged = True
                break
        if not converged:
            flagged.append(s)
        hist[s] = pol
    return hist, flagged


def simulate_bistable(
    layout: Layout,
    vectors: Sequence[dict[str, int]],
    params: BistableParams | None = None,
) -> Trace:
    """Drive the layout through one clock period per input vector.

    Each window is annealed independently (fresh unpolarized start), so vector
    results do not depend on schedule order. Input cells stay pinned for the
    whole window; free cells are swept in (gy, gx) order until the largest
    per-sweep change drops below the convergence tolerance.
    """
    params = params or BistableParams()
    issues = validate(layout)
    if issues:
        raise LayoutError(f"layout {layout.name!r} does not validate: {issues[0]}")
    _check_vectors(layout, vectors)

    ek = coupling_matrix(layout)
    n_samples = params.clock.samples_per_period
    labeled = [c for c in layout.cells if c.label is not None]
    labels = [c.label for c in labeled]
    label_idx = {c.label: i for i, c in enumerate(layout.cells) if c.label is not None}

    total = n_samples * len(vectors)
    series = {lab: np.empty(total) for lab in labels}
    gamma = np.empty((4, total))
    nonconverged: list[tuple[int, int]] = []

    for w, vec in enumerate(vectors):
        hist, flagged = _simulate_window(layout, ek, vec, params)
        sl = slice(w * n_samples, (w + 1) * n_samples)
        for lab in labels:
            series[lab][sl] = hist[:, label_idx[lab]]
        for z in range(4):
            gamma[z, sl] = [gamma_at(params.clock, z, s) for s in range(n_samples)]
        nonconverged.extend((w, s) for s in flagged)

    return Trace(
        samples_per_period=n_samples,
        schedule=[dict(v) for v in vectors],
        labels=labels,
        label_zones={c.label: c.zone for c in labeled},
        series=series,
        gamma=gamma,
        nonconverged=nonconverged,
    )


def hold_state(
    layout: Layout,
    vector: dict[str, int],
    params: BistableParams | None = None,
    ek: np.ndarray | None = None,
) -> np.ndarray:
    """Converged polarization of every cell under one vector, each read at its
    own zone's hold plateau."""
    params = params or BistableParams()
    _check_vectors(layout, [vector])
    if ek is None:
        ek = coupling_matrix(layout)
    hist, _ = _simulate_window(layout, ek, vector, params)
    n = params.clock.samples_per_period
    out = np.empty(len(layout.cells))
    for i, c in enumerate(layout.cells):
        s = min((c.zone + 2) * n // 4, n) - 1
        out[i] = hist[s, i]
    return out
