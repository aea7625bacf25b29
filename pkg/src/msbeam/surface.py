"""Metasurface aperture geometry and its discrete phase states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s
TWO_PI = 2.0 * np.pi


def wrap_phase(phase):
    """Map angles onto [0, 2*pi)."""
    out = np.mod(phase, TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    return np.where(out >= TWO_PI, 0.0, out)


def circular_distance(a, b):
    """Shortest angular distance between two phases, in [0, pi]."""
    d = np.abs(np.mod(np.asarray(a) - np.asarray(b), TWO_PI))
    return np.minimum(d, TWO_PI - d)


def _frozen(arr, dtype=float) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class UnitCellGrid:
    """M x N aperture of square unit cells.

    Cell ``(m, n)`` (1-based) is centred at ``((m - 1/2) D_u, (n - 1/2) D_u)``.
    """

    m_count: int
    n_count: int
    cell_size: float
    wavelength: float
    frequency: float

    def __post_init__(self):
        if self.m_count < 1 or self.n_count < 1:
            raise ValueError("grid needs at least one cell along each axis")
        if self.cell_size <= 0 or self.wavelength <= 0 or self.frequency <= 0:
            raise ValueError("cell size, wavelength and frequency must be positive")
        if not math.isclose(self.wavelength, SPEED_OF_LIGHT / self.frequency, rel_tol=1e-9):
            raise ValueError("wavelength must equal c / frequency")
        if self.cell_size >= self.wavelength / 2:
            raise ValueError("cell size must stay below half a wavelength (point-source model)")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m_count, self.n_count)

    @property
    def wavenumber(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def aperture_size(self) -> tuple[float, float]:
        return (self.m_count * self.cell_size, self.n_count * self.cell_size)

    def cell_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """1-based (m, n) index matrices, each of shape (M, N)."""
        m = np.arange(1, self.m_count + 1, dtype=float)
        n = np.arange(1, self.n_count + 1, dtype=float)
        return np.meshgrid(m, n, indexing="ij")

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        m, n = self.cell_indices()
        return (m - 0.5) * self.cell_size, (n - 0.5) * self.cell_size


def build_grid(m_count: int, n_count: int, cell_size_in_wavelengths: float,
               frequency: float) -> UnitCellGrid:
    if not 0 < cell_size_in_wavelengths < 0.5:
        raise ValueError(
            f"cell size of {cell_size_in_wavelengths} wavelengths violates the "
            "point-source assumption (must be in (0, 0.5))")
    wavelength = SPEED_OF_LIGHT / frequency
    return UnitCellGrid(int(m_count), int(n_count), cell_size_in_wavelengths * wavelength,
                        wavelength, float(frequency))


@dataclass(frozen=True)
class StateCodebook:
    state_count: int
    phases: tuple[float, ...]

    def __post_init__(self):
        if self.state_count < 2:
            raise ValueError("a codebook needs at least two states")
        if len(self.phases) != self.state_count:
            raise ValueError("one phase per state is required")
        wrapped = wrap_phase(np.asarray(self.phases, dtype=float))
        for i in range(self.state_count):
            for j in range(i + 1, self.state_count):
                if circular_distance(wrapped[i], wrapped[j]) < 1e-12:
                    raise ValueError("codebook phases must be distinct modulo 2*pi")
        object.__setattr__(self, "phases", tuple(float(p) for p in wrapped))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.phases)


def canonical_codebook(state_count: int) -> StateCodebook:
    """Uniform codebook with phases ``2*pi*s / state_count``."""
    if state_count < 2:
        raise ValueError("state_count must be >= 2")
    return StateCodebook(state_count, tuple(TWO_PI * s / state_count for s in range(state_count)))


@dataclass(frozen=True)
class PhaseProfile:
    """Unit-amplitude reflection profile; phases in [0, 2*pi)."""

    grid: UnitCellGrid
    phase: np.ndarray

    def __post_init__(self):
        phase = np.asarray(self.phase, dtype=float)
        if phase.shape != self.grid.shape:
            raise ValueError(f"phase matrix shape {phase.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(phase)):
            raise ValueError("phase matrix contains non-finite entries")
        object.__setattr__(self, "phase", _frozen(wrap_phase(phase)))

    @property
    def amplitude(self) -> np.ndarray:
        return np.ones(self.grid.shape)

    def coefficients(self) -> np.ndarray:
        return np.exp(1j * self.phase)


@dataclass(frozen=True)
class ComplexProfile:
    """Amplitude-and-phase reflection profile with amplitudes in [0, 1]."""

    grid: UnitCellGrid
    amplitude: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        amplitude = np.asarray(self.amplitude, dtype=float)
        phase = np.asarray(self.phase, dtype=float)
        if amplitude.shape != self.grid.shape or phase.shape != self.grid.shape:
            raise ValueError("amplitude/phase shapes must match the grid")
        if not (np.all(np.isfinite(amplitude)) and np.all(np.isfinite(phase))):
            raise ValueError("profile contains non-finite entries")
        if np.any(amplitude < 0) or np.any(amplitude > 1 + 1e-12):
            raise ValueError("amplitudes must lie in [0, 1]")
        object.__setattr__(self, "amplitude", _frozen(np.clip(amplitude, 0.0, 1.0)))
        object.__setattr__(self, "phase", _frozen(wrap_phase(phase)))

    def coefficients(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phase)


@dataclass(frozen=True)
class DielectricState:
    relative_permittivity: float
    slab_thickness: float

    def __post_init__(self):
        if self.relative_permittivity < 1:
            raise ValueError("relative permittivity must be >= 1")
        if self.slab_thickness <= 0:
            raise ValueError("slab thickness must be positive")


def dielectric_reflection_phase(state: DielectricState, frequency: float) -> float:
    """Round-trip phase ``2 k l`` accumulated in a grounded slab, mod 2*pi.

    Stored as the non-negative accumulated phase; the physical coefficient is
    ``exp(-j * phase)``. Only differences between states matter downstream.
    """
    k0 = TWO_PI * frequency / SPEED_OF_LIGHT
    k = k0 * math.sqrt(state.relative_permittivity)
    return float(wrap_phase(2.0 * k * state.slab_thickness))


def relative_state_phases(permittivities, slab_thickness: float, frequency: float) -> np.ndarray:
    """Slab phases referenced to the first permittivity, wrapped to [0, 2*pi)."""
    phases = np.array([dielectric_reflection_phase(DielectricState(e, slab_thickness), frequency)
                       for e in permittivities])
    return wrap_phase(phases - phases[0])


def quantize_profile(profile: PhaseProfile, codebook: StateCodebook) -> tuple[PhaseProfile, np.ndarray]:
    """Snap every cell to the nearest codebook phase (circular distance).

    Ties go to the lower state index. Returns the quantized profile and the
    integer state matrix.
    """
    states = codebook.as_array()
    dist = circular_distance(profile.phase[..., None], states)
    # argmin returns the first minimum, so exact ties resolve to the lower index;
    # rounding noise below 1e-12 rad is treated as a tie as well
    best = dist.min(axis=-1, keepdims=True)
    index = np.argmax(dist <= best + 1e-12, axis=-1)
    return PhaseProfile(profile.grid, states[index]), index.astype(int)
