"""Reflection-profile synthesis for steering one or several beams off the aperture."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .surface import TWO_PI, ComplexProfile, PhaseProfile, UnitCellGrid, wrap_phase

# |S_mn| below this is treated as full cancellation
DESTRUCTIVE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class BeamTarget:
    """Reflected-beam direction: polar angle from the surface normal and azimuth."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0 <= self.theta < math.pi / 2:
            raise ValueError(f"theta={self.theta} outside [0, pi/2)")
        phi = float(self.phi) % TWO_PI
        object.__setattr__(self, "phi", 0.0 if phi >= TWO_PI else phi)

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float) -> "BeamTarget":
        return cls(math.radians(theta_deg), math.radians(phi_deg))

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


@dataclass(frozen=True)
class IncidentWave:
    theta_i: float = 0.0
    phi_i: float = 0.0

    def __post_init__(self):
        if not 0 <= self.theta_i < math.pi / 2:
            raise ValueError(f"theta_i={self.theta_i} outside [0, pi/2)")
        if not 0 <= self.phi_i < TWO_PI:
            raise ValueError(f"phi_i={self.phi_i} outside [0, 2*pi)")


NORMAL_INCIDENCE = IncidentWave()


@dataclass(frozen=True)
class TdmBudget:
    user_groups: int
    user_group_delay: float
    reconfiguration_time: float

    def __post_init__(self):
        if self.user_groups < 1:
            raise ValueError("at least one user group is required")
        if self.user_group_delay < 0 or self.reconfiguration_time < 0:
            raise ValueError("delays must be non-negative")
        if self.user_group_delay + self.reconfiguration_time <= 0:
            raise ValueError("per-group slot length must be positive")


def _gradient_phase(grid: UnitCellGrid, target: BeamTarget, incidence: IncidentWave) -> np.ndarray:
    """Unwrapped linear phase for one beam (momentum matching along x and y)."""
    m, n = grid.cell_indices()
    kx = math.cos(target.phi) * math.sin(target.theta) - math.cos(incidence.phi_i) * math.sin(incidence.theta_i)
    ky = math.sin(target.phi) * math.sin(target.theta) - math.sin(incidence.phi_i) * math.sin(incidence.theta_i)
    return TWO_PI * grid.cell_size / grid.wavelength * (m * kx + n * ky)


def single_beam_profile(grid: UnitCellGrid, target: BeamTarget,
                        incidence: IncidentWave = NORMAL_INCIDENCE) -> PhaseProfile:
    return PhaseProfile(grid, _gradient_phase(grid, target, incidence))


def _check_targets(targets: Sequence[BeamTarget]) -> list[BeamTarget]:
    targets = list(targets)
    if not targets:
        raise ValueError("at least one beam target is required")
    if len(set(targets)) != len(targets):
        raise ValueError("beam targets must be pairwise distinct")
    return targets


def beam_sum(grid: UnitCellGrid, targets: Sequence[BeamTarget], weights=None,
             incidence: IncidentWave = NORMAL_INCIDENCE) -> np.ndarray:
    """Per-cell phasor sum ``S_mn = sum_k w_k exp(j Phi_mn(k))`` (un-normalized)."""
    targets = _check_targets(targets)
    if weights is None:
        weights = np.ones(len(targets))
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(targets),) or np.any(weights < 0):
        raise ValueError("weights must be one non-negative value per target")
    # summed in a canonical target order so permutations give bit-identical output
    order = sorted(range(len(targets)), key=lambda i: (targets[i].theta, targets[i].phi, weights[i]))
    total = np.zeros(grid.shape, dtype=complex)
    for i in order:
        total += weights[i] * np.exp(1j * _gradient_phase(grid, targets[i], incidence))
    return total


def _phase_of(total: np.ndarray) -> np.ndarray:
    phase = np.angle(total)
    return np.where(np.abs(total) < DESTRUCTIVE_THRESHOLD, 0.0, wrap_phase(phase))


def superpose(grid: UnitCellGrid, targets: Sequence[BeamTarget], weights=None,
              incidence: IncidentWave = NORMAL_INCIDENCE) -> ComplexProfile:
    """Amplitude/phase multi-beam profile.

    The amplitude is ``|S_mn|`` normalized by its aperture maximum; cells where
    the phasors cancel get amplitude 0 and phase 0.
    """
    total = beam_sum(grid, targets, weights, incidence)
    if len(targets) == 1:
        return ComplexProfile(grid, np.ones(grid.shape), _gradient_phase(grid, targets[0], incidence))
    mag = np.abs(total)
    peak = mag.max()
    if peak < DESTRUCTIVE_THRESHOLD:
        raise ValueError("beam phasors cancel over the whole aperture")
    amplitude = np.where(mag < DESTRUCTIVE_THRESHOLD, 0.0, mag / peak)
    return ComplexProfile(grid, amplitude, _phase_of(total))


def phase_only_profile(grid: UnitCellGrid, targets: Sequence[BeamTarget], weights=None,
                       incidence: IncidentWave = NORMAL_INCIDENCE) -> PhaseProfile:
    """Multi-beam profile with every cell amplitude forced to one.

    Keeps only ``arg(S_mn)``, which is the per-cell ``1/Gamma_mn`` rescaling of
    the beam sum.
    """
    total = beam_sum(grid, targets, weights, incidence)
    if len(targets) == 1:
        # exact reduction to the single-beam gradient, no round trip through angle()
        return single_beam_profile(grid, targets[0], incidence)
    return PhaseProfile(grid, _phase_of(total))


def destructive_cells(grid: UnitCellGrid, targets: Sequence[BeamTarget], weights=None,
                      incidence: IncidentWave = NORMAL_INCIDENCE) -> int:
    return int(np.count_nonzero(np.abs(beam_sum(grid, targets, weights, incidence)) < DESTRUCTIVE_THRESHOLD))


def band_edges(length: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(length)`` into ``parts`` contiguous bands; earlier bands take the remainder."""
    if parts < 1 or parts > length:
        raise ValueError(f"cannot split {length} cells into {parts} bands")
    base, extra = divmod(length, parts)
    edges, start = [], 0
    for k in range(parts):
        stop = start + base + (1 if k < extra else 0)
        edges.append((start, stop))
        start = stop
    return edges


def sdm_partition_profile(grid: UnitCellGrid, targets: Sequence[BeamTarget], axis: str = "row",
                          incidence: IncidentWave = NORMAL_INCIDENCE) -> PhaseProfile:
    """Space-division profile: band ``k`` of the aperture steers towards target ``k``.

    ``axis="row"`` splits along the m index, ``"column"`` along n.
    """
    targets = _check_targets(targets)
    if axis not in ("row", "column"):
        raise ValueError("axis must be 'row' or 'column'")
    length = grid.m_count if axis == "row" else grid.n_count
    phase = np.empty(grid.shape)
    for target, (lo, hi) in zip(targets, band_edges(length, len(targets))):
        band = _gradient_phase(grid, target, incidence)
        if axis == "row":
            phase[lo:hi, :] = band[lo:hi, :]
        else:
            phase[:, lo:hi] = band[:, lo:hi]
    return PhaseProfile(grid, phase)


def tdm_subframe_length(budget: TdmBudget) -> float:
    """Subframe length ``N * (UGD + R)`` in seconds."""
    return budget.user_groups * (budget.user_group_delay + budget.reconfiguration_time)


def tdm_within_budget(budget: TdmBudget, limit: float = 1e-3) -> bool:
    # relative slack absorbs float rounding of e.g. 10 * 100e-6
    return tdm_subframe_length(budget) <= limit * (1 + 1e-12)
