"""Array-factor far field of a coded aperture and the metrics derived from it."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .surface import TWO_PI, ComplexProfile, PhaseProfile, UnitCellGrid

LOG_FLOOR_DB = -120.0
DEFAULT_RESOLUTION_DEG = 0.5
_CHUNK = 200_000  # directions per block when evaluating the field


class DegeneratePatternError(ValueError):
    """The field carries no power, so normalized metrics are undefined."""


class PeakShortfallWarning(UserWarning):
    """Fewer local maxima exist than were requested."""


@dataclass(frozen=True)
class AngleGrid:
    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        for name, arr in (("theta", theta), ("phi", phi)):
            if arr.ndim != 1 or arr.size < 2:
                raise ValueError(f"{name} needs at least two samples")
            if np.any(np.diff(arr) <= 0):
                raise ValueError(f"{name} samples must be strictly increasing")
        if theta[0] < 0 or theta[-1] > math.pi / 2 + 1e-12:
            raise ValueError("theta samples must lie in [0, pi/2]")
        if phi[0] < 0 or phi[-1] >= TWO_PI:
            raise ValueError("phi samples must lie in [0, 2*pi)")
        theta.setflags(write=False)
        phi.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def uniform(cls, resolution_deg: float = DEFAULT_RESOLUTION_DEG) -> "AngleGrid":
        if resolution_deg <= 0:
            raise ValueError("resolution must be positive")
        step = math.radians(resolution_deg)
        n_theta = int(round((math.pi / 2) / step)) + 1
        n_phi = int(round(TWO_PI / step))
        return cls(np.linspace(0.0, math.pi / 2, n_theta),
                   np.linspace(0.0, TWO_PI, n_phi, endpoint=False))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.theta.size, self.phi.size)

    @property
    def step(self) -> float:
        """Coarsest sample spacing over both axes, in radians."""
        return float(max(np.diff(self.theta).max(), np.diff(self.phi).max()))

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.theta, self.phi, indexing="ij")


@dataclass(frozen=True)
class Pattern:
    angles: AngleGrid
    field: np.ndarray
    grid: UnitCellGrid
    coefficients: np.ndarray
    element_factor: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.field.shape != self.angles.shape:
            raise ValueError("field shape does not match the angle grid")
        if not np.all(np.isfinite(self.field)):
            raise ValueError("field contains non-finite values")

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.field)

    def scaled(self, factor: float) -> "Pattern":
        return Pattern(self.angles, self.field * factor, self.grid, self.coefficients * factor,
                       self.element_factor, dict(self.metadata))


@dataclass(frozen=True)
class Peak:
    theta: float
    phi: float
    level_db: float  # relative to the global maximum


@dataclass(frozen=True)
class PatternMetrics:
    directivity_dbi: float
    realized_gain_dbi: float
    peak_directions: list
    sidelobe_level_db: float
    specular_level_db: float

    def to_dict(self) -> dict:
        return {
            "directivity_dbi": self.directivity_dbi,
            "realized_gain_dbi": self.realized_gain_dbi,
            "peak_directions": [
                {"theta_deg": math.degrees(p.theta), "phi_deg": math.degrees(p.phi), "level_db": p.level_db}
                for p in self.peak_directions
            ],
            "sidelobe_level_db": self.sidelobe_level_db,
            "specular_level_db": self.specular_level_db,
        }


def _coefficients(profile) -> np.ndarray:
    if isinstance(profile, (PhaseProfile, ComplexProfile)):
        return profile.coefficients()
    return np.asarray(profile, dtype=complex)


def _phase_ladder(step_phase: np.ndarray, count: int) -> np.ndarray:
    """``exp(-j * step_phase * (i + 1/2))`` for i = 0..count-1, built by repeated products."""
    half = np.exp(-0.5j * step_phase)
    ladder = np.empty((step_phase.size, count), dtype=complex)
    ladder[:, 0] = half
    if count > 1:
        ladder[:, 1:] = half[:, None] * half[:, None]
        np.cumprod(ladder, axis=1, out=ladder)
    return ladder


def array_factor(coefficients: np.ndarray, grid: UnitCellGrid, theta, phi,
                 element_factor: bool = False) -> np.ndarray:
    """Far field ``sum_mn A_mn exp(j Psi_mn) exp(-j k0 zeta_mn(theta, phi))`` at arbitrary directions.

    The observation phase enters with a negative sign so that a positive
    gradient ``Phi_mn`` steers the main lobe to ``(theta_r, phi_r)`` itself.
    """
    coefficients = np.asarray(coefficients, dtype=complex)
    if coefficients.shape != grid.shape:
        raise ValueError(f"profile shape {coefficients.shape} does not match grid {grid.shape}")
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    out_shape = theta.shape
    u = (np.sin(theta) * np.cos(phi)).ravel()
    v = (np.sin(theta) * np.sin(phi)).ravel()
    kd = grid.wavenumber * grid.cell_size
    out = np.empty(u.size, dtype=complex)
    for start in range(0, u.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        pm = _phase_ladder(kd * u[sl], grid.m_count)
        pn = _phase_ladder(kd * v[sl], grid.n_count)
        out[sl] = np.einsum("pm,pm->p", pm @ coefficients, pn)
    out = out.reshape(out_shape)
    if element_factor:
        out = out * np.cos(theta)
    return out


def radiation_pattern(profile, grid: UnitCellGrid, angles: AngleGrid | None = None,
                      element_factor: bool = False, metadata: dict | None = None) -> Pattern:
    """Sample the far field of ``profile`` over ``angles`` (default 0.5 deg hemisphere grid).

    Phase-only profiles are treated as unit amplitude.
    """
    angles = angles or AngleGrid.uniform()
    coefficients = _coefficients(profile)
    th, ph = angles.mesh()
    field_ = array_factor(coefficients, grid, th, ph, element_factor)
    return Pattern(angles, field_, grid, coefficients, element_factor, dict(metadata or {}))


def radiated_power(pattern: Pattern) -> float:
    """Hemisphere integral of ``|E|^2 sin(theta)`` (trapezoid in theta, periodic in phi)."""
    angles = pattern.angles
    power = np.abs(pattern.field) ** 2 * np.sin(angles.theta)[:, None]
    phi_closed = np.append(angles.phi, angles.phi[0] + TWO_PI)
    power = np.concatenate([power, power[:, :1]], axis=1)
    inner = np.trapezoid(power, phi_closed, axis=1)
    return float(np.trapezoid(inner, angles.theta))


def _db10(x: float) -> float:
    return 10.0 * math.log10(x) if x > 0 else LOG_FLOOR_DB


def directivity(pattern: Pattern) -> float:
    """Peak directivity in dBi over the sampled hemisphere."""
    total = radiated_power(pattern)
    if not total > 0:
        raise DegeneratePatternError("pattern carries no power")
    peak = float(np.max(np.abs(pattern.field)) ** 2)
    return _db10(4 * math.pi * peak / total)


def directive_gain(pattern: Pattern, theta, phi) -> np.ndarray:
    """Directivity in dBi toward arbitrary directions, normalized by the sampled hemisphere power."""
    total = radiated_power(pattern)
    if not total > 0:
        raise DegeneratePatternError("pattern carries no power")
    e = array_factor(pattern.coefficients, pattern.grid, theta, phi, pattern.element_factor)
    ratio = 4 * math.pi * np.abs(e) ** 2 / total
    with np.errstate(divide="ignore"):
        return np.maximum(10 * np.log10(ratio), LOG_FLOOR_DB)


def amplitude_loss_db(profile) -> float:
    """``10 log10(sum |A|^2 / (M N))``; zero for phase-only profiles."""
    if isinstance(profile, PhaseProfile):
        return 0.0
    amp = np.abs(_coefficients(profile))
    return _db10(float(np.mean(amp ** 2)))


def realization_offset_db(profile, efficiency: float) -> float:
    if not 0 < efficiency <= 1:
        raise ValueError("efficiency must be in (0, 1]")
    return 10 * math.log10(efficiency) + amplitude_loss_db(profile)


def realized_gain(pattern: Pattern, profile, efficiency: float = 1.0) -> float:
    """Directivity plus efficiency and amplitude-taper losses, in dBi."""
    return directivity(pattern) + realization_offset_db(profile, efficiency)


def nominal_beamwidth(grid: UnitCellGrid) -> float:
    return grid.wavelength / (grid.m_count * grid.cell_size)


def angular_separation(theta1, phi1, theta2, phi2) -> np.ndarray:
    """Great-circle angle between two directions."""
    c = (np.sin(theta1) * np.sin(theta2) * np.cos(np.asarray(phi1) - phi2)
         + np.cos(theta1) * np.cos(theta2))
    return np.arccos(np.clip(c, -1.0, 1.0))


def _local_maxima(mag: np.ndarray) -> np.ndarray:
    """Boolean mask of samples not exceeded by any of their 8 neighbours.

    phi wraps around; the theta = 0 row is one physical point whose neighbours
    are the whole next ring.
    """
    padded = np.pad(mag, ((1, 1), (0, 0)), mode="edge")
    padded = np.concatenate([padded[:, -1:], padded, padded[:, :1]], axis=1)
    mask = np.ones(mag.shape, dtype=bool)
    rows, cols = mag.shape
    for dt in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dt == 0 and dp == 0:
                continue
            mask &= mag >= padded[1 + dt:1 + dt + rows, 1 + dp:1 + dp + cols]
    return mask


def peak_directions(pattern: Pattern, count: int, separation: float | None = None) -> list[Peak]:
    """The ``count`` strongest local maxima of ``|E|``, at least one beamwidth apart, strongest first."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if separation is None:
        separation = nominal_beamwidth(pattern.grid)
    mag = np.abs(pattern.field)
    theta = pattern.angles.theta
    mask = _local_maxima(mag)
    if theta[0] == 0.0:
        mask[0, :] = False
        if mag[0, 0] >= mag[1, :].max():
            mask[0, 0] = True
    ti, pi_ = np.nonzero(mask)
    levels = mag[ti, pi_]
    order = np.argsort(-levels, kind="stable")
    top = float(mag.max())
    chosen: list[Peak] = []
    for idx in order:
        th, ph = float(theta[ti[idx]]), float(pattern.angles.phi[pi_[idx]])
        if th == 0.0:
            ph = 0.0
        if any(angular_separation(th, ph, p.theta, p.phi) < separation for p in chosen):
            continue
        level = 20 * math.log10(levels[idx] / top) if levels[idx] > 0 else LOG_FLOOR_DB
        chosen.append(Peak(th, ph, max(level, LOG_FLOOR_DB)))
        if len(chosen) == count:
            break
    if len(chosen) < count:
        warnings.warn(f"requested {count} peaks, found {len(chosen)}", PeakShortfallWarning, stacklevel=2)
    return chosen


def specular_level(pattern: Pattern) -> float:
    """Field at theta = 0 relative to the global maximum, in dB."""
    theta = pattern.angles.theta
    if theta[0] != 0.0:
        raise ValueError("angle grid does not sample theta = 0")
    mag = np.abs(pattern.field)
    top = float(mag.max())
    if top == 0:
        return LOG_FLOOR_DB
    spec = float(mag[0, 0])
    if spec <= 0:
        return LOG_FLOOR_DB
    return max(min(20 * math.log10(spec / top), 0.0), LOG_FLOOR_DB)


def sidelobe_level(pattern: Pattern, targets: Sequence | None = None, max_peaks: int = 64) -> float:
    """Strongest lobe that is not an intended beam, relative to the global maximum (dB).

    With ``targets`` given, lobes within one beamwidth of any target are
    intended beams; otherwise only the strongest lobe is.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PeakShortfallWarning)
        peaks = peak_directions(pattern, max_peaks)
    width = nominal_beamwidth(pattern.grid)
    if targets:
        side = [p for p in peaks
                if all(angular_separation(p.theta, p.phi, t.theta, t.phi) >= width for t in targets)]
    else:
        side = peaks[1:]
    if not side:
        return LOG_FLOOR_DB
    return min(side[0].level_db, 0.0)


def pattern_metrics(pattern: Pattern, profile, efficiency: float = 1.0, targets: Sequence | None = None,
                    peak_count: int | None = None) -> PatternMetrics:
    count = peak_count or max(1, len(targets or ()))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PeakShortfallWarning)
        peaks = peak_directions(pattern, count)
    d = directivity(pattern)
    return PatternMetrics(
        directivity_dbi=d,
        realized_gain_dbi=d + realization_offset_db(profile, efficiency),
        peak_directions=peaks,
        sidelobe_level_db=sidelobe_level(pattern, targets),
        specular_level_db=specular_level(pattern),
    )
