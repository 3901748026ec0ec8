"""Coherence-vector engine: relaxation dynamics of each cell's two-state density matrix.

Every free cell carries a 3-component coherence vector lambda; its polarization
is P = -lambda_z. The dynamics follow d(lambda)/dt = Gamma x lambda -
(lambda - lambda_ss)/tau with the steady state set by the instantaneous field
and temperature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bistable import InputError, _check_vectors, coupling_matrix
from .layout import Layout, LayoutError, validate
from .physics import HBAR, K_BOLTZMANN, ClockParams, gamma_phase
from .trace import Trace, bits_to_polarization


class StepStabilityError(Exception):
    """Raised when one integration step moves a coherence vector too far."""


@dataclass(frozen=True)
class CoherenceParams:
    time_step: float = 1e-16  # s
    relaxation_time: float = 1e-15  # s
    temperature: float = 2.0  # K
    period_time: float = 1e-12  # s per input vector
    clock: ClockParams = field(default_factory=ClockParams)

    def __post_init__(self) -> None:
        if not (self.time_step < self.relaxation_time < self.period_time):
            raise ValueError("require time_step < relaxation_time < period_time")
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")


def hamiltonian_vector(energy: float, gamma: float) -> np.ndarray:
    """Field vector (1/s) of the two-state cell Hamiltonian: (-2*gamma/hbar, 0, E/hbar)."""
    if gamma <= 0:
        raise ValueError("gamma must be > 0")
    return np.array([-2.0 * gamma / HBAR, 0.0, energy / HBAR])


def steady_state(field_vec: np.ndarray, temperature: float) -> np.ndarray:
    """Thermal steady-state coherence vector for a constant field."""
    mag = float(np.linalg.norm(field_vec))
    if mag == 0.0:
        return np.zeros(3)
    return -(field_vec / mag) * np.tanh(HBAR * mag / (2.0 * K_BOLTZMANN * temperature))


@dataclass
class CoherenceState:
    """Coherence vectors of every cell; pinned cells stay at (0, 0, -P)."""

    lambdas: np.ndarray  # shape (n_cells, 3)
    time: float = 0.0

    @property
    def polarizations(self) -> np.ndarray:
        return -self.lambdas[:, 2]


def _pinned(layout: Layout, vector: dict[str, int]) -> tuple[np.ndarray, np.ndarray]:
    """(mask, P) for input and fixed cells under one bit assignment."""
    n = len(layout.cells)
    mask = np.zeros(n, dtype=bool)
    pol = np.zeros(n)
    for i, c in enumerate(layout.cells):
        if c.role == "input":
            mask[i] = True
            pol[i] = bits_to_polarization(vector[c.label])
        elif c.role == "fixed":
            mask[i] = True
            pol[i] = c.fixed_pol
    return mask, pol


def step_coherence(
    state: CoherenceState,
    layout: Layout,
    params: CoherenceParams,
    vector: dict[str, int],
    ek: np.ndarray | None = None,
) -> CoherenceState:
    """Advance every free cell by one explicit Euler step at state.time."""
    if ek is None:
        ek = coupling_matrix(layout)
    mask, pinned_pol = _pinned(layout, vector)
    lam = state.lambdas.copy()
    lam[mask] = np.column_stack(
        [np.zeros(mask.sum()), np.zeros(mask.sum()), -pinned_pol[mask]]
    )
    zones = np.array([c.zone for c in layout.cells])
    new = _advance(lam, mask, zones, params, ek, state.time)
    return CoherenceState(lambdas=new, time=state.time + params.time_step)


def _advance(
    lam: np.ndarray,
    pinned: np.ndarray,
    zones: np.ndarray,
    params: CoherenceParams,
    ek: np.ndarray,
    t: float,
) -> np.ndarray:
    """One Euler step over a frozen previous state (Jacobi update)."""
    phase = (t / params.period_time) % 1.0
    gam = np.array([gamma_phase(params.clock, z, phase) for z in range(4)])[zones]

    pol = -lam[:, 2]
    energy = ek @ pol
    gx = -2.0 * gam / HBAR
    gz = energy / HBAR
    mag = np.sqrt(gx * gx + gz * gz)
    th = np.tanh(HBAR * mag / (2.0 * K_BOLTZMANN * params.temperature))
    with np.errstate(invalid="ignore", divide="ignore"):
        ss_x = np.where(mag > 0, -(gx / mag) * th, 0.0)
        ss_z = np.where(mag > 0, -(gz / mag) * th, 0.0)

    # Gamma x lambda with Gamma = (gx, 0, gz)
    cx = -gz * lam[:, 1]
    cy = gz * lam[:, 0] - gx * lam[:, 2]
    cz = gx * lam[:, 1]
    inv_tau = 1.0 / params.relaxation_time
    dx = cx - (lam[:, 0] - ss_x) * inv_tau
    dy = cy - lam[:, 1] * inv_tau
    dz = cz - (lam[:, 2] - ss_z) * inv_tau

    delta = np.column_stack([dx, dy, dz]) * params.time_step
    delta[pinned] = 0.0
    step_size = float(np.max(np.linalg.norm(delta, axis=1), initial=0.0))
    if step_size > 0.5:
        raise StepStabilityError(
            f"|delta lambda| = {step_size:.3f} in one step; reduce time_step below "
            f"{params.time_step:.3e} s"
        )
    new = lam + delta
    norms = np.linalg.norm(new, axis=1)
    drift = norms > 1.0
    if np.any(drift):
        new[drift] /= norms[drift, None]
    return new


def simulate_coherence(
    layout: Layout,
    vectors: Sequence[dict[str, int]],
    params: CoherenceParams | None = None,
) -> Trace:
    """Integrate the coherence dynamics through one clock period per vector.

    Windows are independent (fresh unpolarized start) so results match the
    bistable engine's scheduling semantics; the trace is sampled on the same
    samples_per_period grid as the clock.
    """
    params = params or CoherenceParams()
    issues = validate(layout)
    if issues:
        raise LayoutError(f"layout {layout.name!r} does not validate: {issues[0]}")
    _check_vectors(layout, vectors)

    ek = coupling_matrix(layout)
    cells = layout.cells
    n = len(cells)
    n_samples = params.clock.samples_per_period
    steps_per_window = int(round(params.period_time / params.time_step))
    record_every = steps_per_window / n_samples

    labeled = [c for c in cells if c.label is not None]
    labels = [c.label for c in labeled]
    label_idx = [i for i, c in enumerate(cells) if c.label is not None]

    total = n_samples * len(vectors)
    series = {lab: np.empty(total) for lab in labels}
    gamma = np.empty((4, total))

    zones = np.array([c.zone for c in cells])
    for w, vec in enumerate(vectors):
        mask, pinned_pol = _pinned(layout, vec)
        lam = np.zeros((n, 3))
        lam[mask, 2] = -pinned_pol[mask]
        next_record = record_every
        rec = 0
        for k in range(steps_per_window):
            lam = _advance(lam, mask, zones, params, ek, k * params.time_step)
            if k + 1 >= next_record and rec < n_samples:
                s = w * n_samples + rec
                pol = -lam[:, 2]
                for lab, i in zip(labels, label_idx):
                    series[lab][s] = pol[i]
                phase = ((k + 1) / steps_per_window) % 1.0
                for z in range(4):
                    gamma[z, s] = gamma_phase(params.clock, z, phase)
                rec += 1
                next_record += record_every
        while rec < n_samples:  # guard against rounding shortfall
            s = w * n_samples + rec
            pol = -lam[:, 2]
            for lab, i in zip(labels, label_idx):
                series[lab][s] = pol[i]
            for z in range(4):
                gamma[z, s] = gamma_phase(params.clock, z, 1.0)
            rec += 1

    return Trace(
        samples_per_period=n_samples,
        schedule=[dict(v) for v in vectors],
        labels=labels,
        label_zones={c.label: c.zone for c in labeled},
        series=series,
        gamma=gamma,
    )
