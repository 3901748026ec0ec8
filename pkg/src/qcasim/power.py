"""Non-adiabatic power estimation: leakage and switching energy per tunneling-energy level.

The dissipation of one quasi-instantaneous transition is bounded by the
relaxation energy released when the cell's steady-state coherence vector moves
from the pre-event field to the post-event field. Clock ramps with inputs held
count as leakage; the input swap at the clock-active point counts as switching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bistable import BistableParams, coupling_matrix, hold_state
from .coherence import hamiltonian_vector, steady_state
from .layout import Layout, LayoutError, validate
from .physics import HBAR, MEV_JOULE, nearest_neighbor_kink
from .trace import exhaustive_vectors


@dataclass(frozen=True)
class PowerParams:
    temperature: float = 2.0  # K
    gamma_levels: tuple[float, ...] = (0.5, 1.0, 1.5)  # multiples of E_k0
    gamma_low: float = 3.8e-23  # J, clock floor during hold
    bistable: BistableParams = field(default_factory=BistableParams)

    def __post_init__(self) -> None:
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")
        if any(m <= 0 for m in self.gamma_levels):
            raise ValueError("gamma level multipliers must be > 0")


@dataclass(frozen=True)
class LevelEnergies:
    level_ek: float
    avg_leakage_mev: float
    avg_switching_mev: float

    @property
    def total_mev(self) -> float:
        return self.avg_leakage_mev + self.avg_switching_mev


@dataclass
class PowerReport:
    layout_name: str
    levels: list[LevelEnergies]
    cell_map_mev: dict[tuple[int, int], float]  # per-cell average event dissipation

    def level(self, multiplier: float) -> LevelEnergies:
        for lv in self.levels:
            if abs(lv.level_ek - multiplier) < 1e-12:
                return lv
        raise KeyError(f"no gamma level {multiplier}")

    def write_csv(self, fh) -> None:
        fh.write("level,leakage_meV,switching_meV,total_meV\n")
        for lv in self.levels:
            fh.write(
                f"{lv.level_ek:g},{lv.avg_leakage_mev!r},{lv.avg_switching_mev!r},{lv.total_mev!r}\n"
            )

    def write_map_csv(self, fh) -> None:
        fh.write("gx,gy,avg_dissipation_meV\n")
        for (gx, gy), v in sorted(self.cell_map_mev.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            fh.write(f"{gx},{gy},{v!r}\n")


def event_dissipation(
    energy_before: float,
    energy_after: float,
    gamma_before: float,
    gamma_after: float,
    temperature: float,
) -> float:
    """Energy (J) released to the bath by one sudden field transition.

    The cell relaxes from the old steady state to the new one under the new
    field; the released relaxation energy (hbar/2) * Gamma_after .
    (lambda_ss_before - lambda_ss_after) is clamped below at zero, since an
    uphill transition absorbs energy instead of dissipating it.
    """
    if gamma_before <= 0 or gamma_after <= 0:
        raise ValueError("tunneling energies must be > 0")
    g_after = hamiltonian_vector(energy_after, gamma_after)
    ss_before = steady_state(hamiltonian_vector(energy_before, gamma_before), temperature)
    ss_after = steady_state(g_after, temperature)
    released = 0.5 * HBAR * float(np.dot(g_after, ss_before - ss_after))
    return max(released, 0.0)


def estimate_power(layout: Layout, params: Optional[PowerParams] = None) -> PowerReport:
    """Average leakage/switching energy over all ordered input-vector pairs.

    For each pair (previous -> next) and each free cell, three events fire in
    phase order: clock ramp-up with the old inputs held (leakage), the input
    swap at clock-active (switching), and clock ramp-down with the new inputs
    held (leakage). Neighbor fields come from converged hold states.
    """
    params = params or PowerParams()
    free = [i for i, c in enumerate(layout.cells) if c.role in ("normal", "output")]
    if not free:
        return PowerReport(layout.name, [
            LevelEnergies(m, 0.0, 0.0) for m in params.gamma_levels
        ], {})
    issues = validate(layout)
    if issues:
        raise LayoutError(f"layout {layout.name!r} does not validate: {issues[0]}")

    ek = coupling_matrix(layout)
    ek0 = nearest_neighbor_kink(layout.geometry)
    input_labels = [c.label for c in layout.inputs]
    vectors = exhaustive_vectors(input_labels)
    states = [hold_state(layout, v, params.bistable, ek) for v in vectors]
    fields = [ek @ st for st in states]  # per-cell neighbor energy sums, J

    t = params.temperature
    g_lo = params.gamma_low
    levels: list[LevelEnergies] = []
    cell_sum = {(layout.cells[i].gx, layout.cells[i].gy): 0.0 for i in free}
    cell_events = 0

    for mult in params.gamma_levels:
        g_hi = mult * ek0
        leak_total = 0.0
        switch_total = 0.0
        n_pairs = 0
        for ep in fields:
            for en in fields:
                n_pairs += 1
                for i in free:
                    up = event_dissipation(ep[i], ep[i], g_lo, g_hi, t)
                    sw = event_dissipation(ep[i], en[i], g_hi, g_hi, t)
                    down = event_dissipation(en[i], en[i], g_hi, g_lo, t)
                    leak_total += up + down
                    switch_total += sw
                    key = (layout.cells[i].gx, layout.cells[i].gy)
                    cell_sum[key] += up + sw + down
                    cell_events += 3
        # mean dissipation per vector pair, summed over cells, in meV;
        # ramp-up and ramp-down average to one leakage figure per pair
        leak_mev = (leak_total / (2 * n_pairs)) / MEV_JOULE
        switch_mev = (switch_total / n_pairs) / MEV_JOULE
        levels.append(LevelEnergies(mult, leak_mev, switch_mev))

    per_cell_events = cell_events / len(free)
    cell_map = {k: (v / per_cell_events) / MEV_JOULE for k, v in cell_sum.items()}
    return PowerReport(layout.name, levels, cell_map)


def power_map(report: PowerReport) -> dict[tuple[int, int], float]:
    """Per-cell average dissipation normalized to [0, 1] by the layout maximum."""
    if not report.cell_map_mev:
        return {}
    peak = max(report.cell_map_mev.values())
    if peak <= 0:
        return {k: 0.0 for k in report.cell_map_mev}
    return {k: v / peak for k, v in report.cell_map_mev.items()}
