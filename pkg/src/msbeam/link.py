"""Radio-link budget from pathloss through fading to Shannon throughput."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .surface import SPEED_OF_LIGHT

NOISE_DENSITY_DBM_HZ = -174.0
MIN_DISTANCE_M = 1.0


@dataclass(frozen=True)
class RadioNode:
    """A transmitter or receiver. Position is (x, y, height) in metres."""

    position: tuple[float, float, float]
    tx_power_dbm: float = 0.0
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    frequency_hz: float = 28e9
    bandwidth_hz: float = 400e6

    def __post_init__(self):
        if len(self.position) != 3:
            raise ValueError("position must be (x, y, height)")
        object.__setattr__(self, "position", tuple(float(p) for p in self.position))
        if self.position[2] < 0:
            raise ValueError("height must be non-negative")
        if self.frequency_hz <= 0 or self.bandwidth_hz <= 0:
            raise ValueError("frequency and bandwidth must be positive")


@dataclass(frozen=True)
class RisNode:
    position: tuple[float, float, float]
    efficiency: float = 0.9
    rx_gain_dbi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(float(p) for p in self.position))
        if not 0 < self.efficiency <= 1:
            raise ValueError("efficiency must be in (0, 1]")


@dataclass(frozen=True)
class LinkResult:
    pathloss_db: float
    received_power_dbm: float
    noise_power_dbm: float
    snr_db: float
    throughput_bps: float


@dataclass(frozen=True)
class FadingSpec:
    kind: str  # "LoS" (Ricean) or "NLoS" (Rayleigh)
    ricean_k_db: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("LoS", "NLoS"):
            raise ValueError("fading kind must be 'LoS' or 'NLoS'")


def distance_3d(a, b) -> float:
    return float(math.dist(a, b))


def _check_distance(d: float):
    if d < MIN_DISTANCE_M:
        raise ValueError(f"distance {d} m below the {MIN_DISTANCE_M} m model validity limit")


def _check_frequency(f: float):
    if f <= 0:
        raise ValueError("frequency must be positive")


def pathloss_umi(frequency_hz: float, distance_3d_m: float, exponent: float) -> float:
    """Close-in free-space reference model; ``frequency_hz`` in Hz."""
    _check_distance(distance_3d_m)
    _check_frequency(frequency_hz)
    return (20 * math.log10(4 * math.pi * frequency_hz / SPEED_OF_LIGHT)
            + 10 * exponent * math.log10(distance_3d_m))


def pathloss_inh_los(frequency_ghz: float, distance_3d_m: float) -> float:
    """Indoor-office LoS pathloss; ``frequency_ghz`` in GHz."""
    _check_distance(distance_3d_m)
    _check_frequency(frequency_ghz)
    return 32.4 + 20 * math.log10(frequency_ghz) + 17.3 * math.log10(distance_3d_m)


def pathloss_inh_nlos(frequency_ghz: float, distance_3d_m: float) -> float:
    """Indoor-office NLoS pathloss, never below the LoS value; ``frequency_ghz`` in GHz."""
    nlos = 38.3 * math.log10(distance_3d_m) + 17.30 + 24.9 * math.log10(frequency_ghz)
    return max(pathloss_inh_los(frequency_ghz, distance_3d_m), nlos)


@dataclass(frozen=True)
class PathlossModel:
    """Selects one of the pathloss formulas; always called with frequency in Hz."""

    kind: str  # "ci", "inh_los" or "inh_nlos"
    exponent: float | None = None

    def __post_init__(self):
        if self.kind not in ("ci", "inh_los", "inh_nlos"):
            raise ValueError(f"unknown pathloss model {self.kind!r}")
        if self.kind == "ci" and self.exponent is None:
            raise ValueError("the close-in model needs a pathloss exponent")

    def __call__(self, frequency_hz: float, distance_3d_m: float) -> float:
        if self.kind == "ci":
            return pathloss_umi(frequency_hz, distance_3d_m, self.exponent)
        if self.kind == "inh_los":
            return pathloss_inh_los(frequency_hz / 1e9, distance_3d_m)
        return pathloss_inh_nlos(frequency_hz / 1e9, distance_3d_m)


def link_budget(tx_power_dbm: float, tx_gain_dbi: float, rx_gain_dbi: float,
                pathloss_db: float, other_losses_db: float = 0.0) -> float:
    """Received power ``Pt + Gt + Gr - PL - Lo`` in dBm."""
    return tx_power_dbm + tx_gain_dbi + rx_gain_dbi - pathloss_db - other_losses_db


def noise_power(bandwidth_hz: float, density_dbm_hz: float = NOISE_DENSITY_DBM_HZ,
                noise_figure_db: float = 0.0) -> float:
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return density_dbm_hz + 10 * math.log10(bandwidth_hz) + noise_figure_db


def shannon_throughput(bandwidth_hz: float, snr_db):
    """``B log2(1 + SNR)`` in bit/s; accepts scalar or array SNR in dB."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return bandwidth_hz * np.log2(1.0 + np.power(10.0, np.asarray(snr_db, dtype=float) / 10.0))


def fading_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator number ``index`` derived from ``seed``.

    Streams are ``SeedSequence(seed).spawn(index + 1)[index]`` so parallel
    workers can each take their own index.
    """
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(index + 1)[index])


def fading_sample(spec: FadingSpec, stream: np.random.Generator | None = None, size=None):
    """Unit-mean fast-fading power gain: Ricean for LoS, Rayleigh (exponential) for NLoS."""
    rng = stream if stream is not None else np.random.default_rng(spec.seed)
    scatter = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2)
    if spec.kind == "NLoS":
        return np.abs(scatter) ** 2
    k = 10 ** (spec.ricean_k_db / 10)
    if math.isinf(k):
        return np.ones(size) if size is not None else 1.0
    los_phase = rng.uniform(0, 2 * math.pi, size)
    h = math.sqrt(k / (k + 1)) * np.exp(1j * los_phase) + math.sqrt(1 / (k + 1)) * scatter
    return np.abs(h) ** 2


def _result(pathloss_db: float, received_dbm, bandwidth_hz: float, density: float, nf: float) -> LinkResult:
    noise = noise_power(bandwidth_hz, density, nf)
    snr = received_dbm - noise
    return LinkResult(float(pathloss_db), float(received_dbm), float(noise), float(snr),
                      float(shannon_throughput(bandwidth_hz, snr)))


def direct_link(tx: RadioNode, ue: RadioNode, pathloss: PathlossModel, fading_gain_db: float = 0.0,
                bandwidth_hz: float | None = None, density_dbm_hz: float = NOISE_DENSITY_DBM_HZ,
                noise_figure_db: float = 0.0, other_losses_db: float = 0.0) -> LinkResult:
    pl = pathloss(tx.frequency_hz, distance_3d(tx.position, ue.position))
    pr = link_budget(tx.tx_power_dbm, tx.tx_gain_dbi, ue.rx_gain_dbi, pl, other_losses_db) + fading_gain_db
    return _result(pl, pr, bandwidth_hz or tx.bandwidth_hz, density_dbm_hz, noise_figure_db)


def cascade_ris_link(tx: RadioNode, ris: RisNode, ue: RadioNode, ris_beam_gain_dbi: float,
                     efficiency: float | None = None, fading=None, pathloss: PathlossModel | None = None,
                     bandwidth_hz: float | None = None, density_dbm_hz: float = NOISE_DENSITY_DBM_HZ,
                     noise_figure_db: float = 0.0, other_losses_db: float = 0.0,
                     hop_pathloss_db: tuple[float, float] | None = None) -> LinkResult:
    """Two-hop budget transmitter -> surface -> UE.

    ``fading`` is ``None`` or a pair of ``FadingSpec`` (or pre-drawn linear
    gains) for the two hops. ``hop_pathloss_db`` overrides the geometric
    pathloss of both hops. The reported pathloss is the sum over hops.
    """
    eff = ris.efficiency if efficiency is None else efficiency
    if not 0 < eff <= 1:
        raise ValueError("efficiency must be in (0, 1]")
    if hop_pathloss_db is None:
        if pathloss is None:
            raise ValueError("a pathloss model or explicit hop pathloss is required")
        pl1 = pathloss(tx.frequency_hz, distance_3d(tx.position, ris.position))
        pl2 = pathloss(tx.frequency_hz, distance_3d(ris.position, ue.position))
    else:
        pl1, pl2 = hop_pathloss_db
    fade_db = 0.0
    if fading is not None:
        for item in fading:
            gain = fading_sample(item) if isinstance(item, FadingSpec) else item
            fade_db += 10 * math.log10(max(float(gain), 1e-300))
    incident = link_budget(tx.tx_power_dbm, tx.tx_gain_dbi, ris.rx_gain_dbi, pl1)
    pr = (incident + 10 * math.log10(eff) + ris_beam_gain_dbi - pl2 + ue.rx_gain_dbi
          - other_losses_db + fade_db)
    return _result(pl1 + pl2, pr, bandwidth_hz or tx.bandwidth_hz, density_dbm_hz, noise_figure_db)
