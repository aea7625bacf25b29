"""Indoor-office and urban-micro deployments with per-method throughput sweeps."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from . import coding, farfield
from .coding import BeamTarget
from .link import (FadingSpec, LinkResult, PathlossModel, RadioNode, RisNode, cascade_ris_link,
                   direct_link, fading_sample, fading_stream)
from .surface import ComplexProfile, PhaseProfile, StateCodebook, UnitCellGrid, build_grid, canonical_codebook, quantize_profile

SCHEMA_VERSION = 1
METHODS = ("phase_only", "amp_phs", "sdm")
DEFAULT_UE_DISTANCES_M = (5.0, 4.0, 3.0, 3.0, 4.0, 5.0, 6.0, 7.0)
MAX_UES = len(DEFAULT_UE_DISTANCES_M)

TABLE_EXPONENTS = {
    "indoor": {"bs_los": 1.7, "bs_nlos": 3.8},
    "umi": {"bs_los": 2.1, "bs_nlos": 3.2, "mcbs_los": 2.0, "mcbs_nlos": 2.9},
}


@dataclass(frozen=True)
class UePlacement:
    """A UE seen from the surface: distance, azimuth about the surface normal, elevation."""

    distance_m: float
    azimuth_deg: float
    elevation_deg: float = 0.0
    rx_gain_dbi: float = 0.0

    def direction(self) -> BeamTarget:
        """Local spherical direction (theta from the normal, phi from the horizontal axis)."""
        a, e = math.radians(self.azimuth_deg), math.radians(self.elevation_deg)
        ux, uy, uz = math.sin(a) * math.cos(e), math.sin(e), math.cos(a) * math.cos(e)
        theta = math.acos(max(-1.0, min(1.0, uz)))
        phi = math.atan2(uy, ux) % (2 * math.pi) if theta > 0 else 0.0
        return BeamTarget(theta, phi)


@dataclass(frozen=True)
class RisConfig:
    position: tuple[float, float, float]
    grid: UnitCellGrid
    codebook: StateCodebook
    efficiency: float = 0.9
    rx_gain_dbi: float = 0.0

    def node(self) -> RisNode:
        return RisNode(self.position, self.efficiency, self.rx_gain_dbi)


@dataclass(frozen=True)
class Scenario:
    kind: str
    bs: RadioNode
    ris: RisConfig
    ues: tuple[UePlacement, ...]
    pathloss_exponents: dict
    mcbs: RadioNode | None = None
    bandwidth_mode: str = "broadcast"
    noise_figure_db: float = 0.0
    noise_density_dbm_hz: float = -174.0
    direct_path_blocked: bool = True
    ricean_k_db: float = 10.0
    angle_resolution_deg: float = farfield.DEFAULT_RESOLUTION_DEG
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("indoor", "umi"):
            raise ValueError("scenario kind must be 'indoor' or 'umi'")
        if self.kind == "indoor" and self.mcbs is not None:
            raise ValueError("indoor scenarios have no macro-cell base station")
        if self.kind == "umi" and self.mcbs is None:
            raise ValueError("UMi scenarios need exactly one macro-cell base station")
        if not self.ues:
            raise ValueError("at least one UE is required")
        if self.bandwidth_mode not in ("broadcast", "unicast"):
            raise ValueError("bandwidth_mode must be 'broadcast' or 'unicast'")
        required = TABLE_EXPONENTS[self.kind]
        missing = set(required) - set(self.pathloss_exponents)
        if missing:
            raise ValueError(f"missing pathloss exponents: {sorted(missing)}")
        object.__setattr__(self, "ues", tuple(self.ues))

    @property
    def hop_pathloss(self) -> PathlossModel:
        """LoS model used on both surface hops."""
        if self.kind == "indoor":
            return PathlossModel("inh_los")
        return PathlossModel("ci", self.pathloss_exponents["bs_los"])

    @property
    def mcbs_pathloss(self) -> PathlossModel:
        return PathlossModel("ci", self.pathloss_exponents["mcbs_nlos"])

    def surface_axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """World-frame (horizontal, vertical, normal) unit vectors of the surface.

        The surface is vertical and faces the serving base station, so the
        incident wave arrives along the normal in azimuth.
        """
        dx = self.bs.position[0] - self.ris.position[0]
        dy = self.bs.position[1] - self.ris.position[1]
        norm = math.hypot(dx, dy) or 1.0
        normal = np.array([dx / norm, dy / norm, 0.0])
        vertical = np.array([0.0, 0.0, 1.0])
        horizontal = np.cross(vertical, normal)
        return horizontal, vertical, normal

    def ue_position(self, ue: UePlacement, offset_m: float = 0.0) -> tuple[float, float, float]:
        h, v, n = self.surface_axes()
        t = ue.direction()
        local = np.array([math.sin(t.theta) * math.cos(t.phi), math.sin(t.theta) * math.sin(t.phi),
                          math.cos(t.theta)])
        world = local[0] * h + local[1] * v + local[2] * n
        pos = np.asarray(self.ris.position) + (ue.distance_m + offset_m) * world
        return (float(pos[0]), float(pos[1]), float(max(pos[2], 0.0)))

    def with_bandwidth(self, bandwidth_hz: float, note: dict | None = None) -> "Scenario":
        meta = dict(self.metadata)
        if note:
            meta["bandwidth_calibration"] = note
        return replace(self, bs=replace(self.bs, bandwidth_hz=bandwidth_hz), metadata=meta)


def default_ue_placements(distances=DEFAULT_UE_DISTANCES_M, span_deg: float = 60.0,
                          elevation_deg: float = 0.0, rx_gain_dbi: float = 0.0) -> tuple[UePlacement, ...]:
    """UEs at the given surface distances, spread evenly in azimuth over [-span, +span]."""
    az = np.linspace(-span_deg, span_deg, len(distances)) if len(distances) > 1 else np.array([0.0])
    return tuple(UePlacement(float(d), float(a), elevation_deg, rx_gain_dbi) for d, a in zip(distances, az))


_ALLOWED_OVERRIDES = {
    "ue_count", "ue_distances_m", "ue_span_deg", "ue_elevation_deg", "ue_rx_gain_dbi",
    "ris_m_count", "ris_n_count", "ris_cell_size_wavelengths", "ris_states", "ris_efficiency",
    "bs_bandwidth_hz", "mcbs_bandwidth_hz", "bandwidth_mode", "noise_figure_db", "ricean_k_db",
    "angle_resolution_deg", "include_mcbs",
}


def _build(kind: str, bs: RadioNode, ris_position, mcbs: RadioNode | None, overrides: dict | None) -> Scenario:
    o = dict(overrides or {})
    unknown = set(o) - _ALLOWED_OVERRIDES
    if unknown:
        raise ValueError(f"unknown scenario overrides: {sorted(unknown)}")
    distances = tuple(o.get("ue_distances_m", DEFAULT_UE_DISTANCES_M))
    ues = default_ue_placements(distances, o.get("ue_span_deg", 60.0), o.get("ue_elevation_deg", 0.0),
                                o.get("ue_rx_gain_dbi", 0.0))
    count = int(o.get("ue_count", len(ues)))
    if not 1 <= count <= len(ues):
        raise ValueError(f"ue_count must be in [1, {len(ues)}]")
    grid = build_grid(int(o.get("ris_m_count", 24)), int(o.get("ris_n_count", 24)),
                      float(o.get("ris_cell_size_wavelengths", 1 / 3)), bs.frequency_hz)
    ris = RisConfig(tuple(ris_position), grid, canonical_codebook(int(o.get("ris_states", 4))),
                    float(o.get("ris_efficiency", 0.9)))
    if "bs_bandwidth_hz" in o:
        bs = replace(bs, bandwidth_hz=float(o["bs_bandwidth_hz"]))
    if mcbs is not None:
        if "mcbs_bandwidth_hz" in o:
            mcbs = replace(mcbs, bandwidth_hz=float(o["mcbs_bandwidth_hz"]))
        if not o.get("include_mcbs", True):
            mcbs = None
    return Scenario(
        kind=kind, bs=bs, ris=ris, ues=ues[:count], pathloss_exponents=dict(TABLE_EXPONENTS[kind]),
        mcbs=mcbs, bandwidth_mode=o.get("bandwidth_mode", "broadcast"),
        noise_figure_db=float(o.get("noise_figure_db", 0.0)), ricean_k_db=float(o.get("ricean_k_db", 10.0)),
        angle_resolution_deg=float(o.get("angle_resolution_deg", farfield.DEFAULT_RESOLUTION_DEG)),
    )


def build_indoor(overrides: dict | None = None) -> Scenario:
    """Indoor office: 28 GHz BS at the origin (10 m), surface at (10, 100) (5 m), UEs around the surface."""
    bs = RadioNode((0.0, 0.0, 10.0), tx_power_dbm=37.0, tx_gain_dbi=30.0, frequency_hz=28e9, bandwidth_hz=400e6)
    return _build("indoor", bs, (10.0, 100.0, 5.0), None, overrides)


def build_umi(overrides: dict | None = None) -> Scenario:
    """Urban micro: macro cell at the origin (25 m, 3.55 GHz), SCBS at (10, 2000), surface at (20, 2100)."""
    scbs = RadioNode((10.0, 2000.0, 10.0), tx_power_dbm=37.0, tx_gain_dbi=30.0, frequency_hz=28e9,
                     bandwidth_hz=400e6)
    mcbs = RadioNode((0.0, 0.0, 25.0), tx_power_dbm=49.0, tx_gain_dbi=17.0, frequency_hz=3.55e9,
                     bandwidth_hz=100e6)
    return _build("umi", scbs, (20.0, 2100.0, 5.0), mcbs, overrides)


@dataclass(frozen=True)
class UeResult:
    ue_index: int
    distance_m: float
    beam_gain_dbi: float
    ris_link: LinkResult
    mcbs_link: LinkResult | None = None

    @property
    def throughput_bps(self) -> float:
        extra = self.mcbs_link.throughput_bps if self.mcbs_link is not None else 0.0
        return self.ris_link.throughput_bps + extra


@dataclass(frozen=True)
class ThroughputReport:
    method: str
    ue_count: int
    offset_m: float
    per_ue: tuple[UeResult, ...]
    metadata: dict = field(default_factory=dict)

    @property
    def total_throughput_bps(self) -> float:
        return float(math.fsum(u.throughput_bps for u in self.per_ue))

    @property
    def ris_throughput_bps(self) -> float:
        return float(math.fsum(u.ris_link.throughput_bps for u in self.per_ue))

    @property
    def mcbs_throughput_bps(self) -> float:
        return float(math.fsum(u.mcbs_link.throughput_bps for u in self.per_ue if u.mcbs_link is not None))


def synthesize(scenario: Scenario, method: str, targets: Sequence[BeamTarget]):
    """Quantized surface profile for ``method``; amp/phs keeps its continuous amplitude."""
    grid, codebook = scenario.ris.grid, scenario.ris.codebook
    if method == "phase_only":
        return quantize_profile(coding.phase_only_profile(grid, targets), codebook)[0]
    if method == "amp_phs":
        cplx = coding.superpose(grid, targets)
        q, _ = quantize_profile(PhaseProfile(grid, cplx.phase), codebook)
        return ComplexProfile(grid, cplx.amplitude, q.phase)
    if method == "sdm":
        return quantize_profile(coding.sdm_partition_profile(grid, targets, "row"), codebook)[0]
    raise ValueError(f"unknown coding method {method!r}; expected one of {METHODS}")


def beam_gains(scenario: Scenario, method: str, ue_count: int) -> np.ndarray:
    """Per-UE surface gain (dBi, amplitude losses included, efficiency excluded)."""
    ues = scenario.ues[:ue_count]
    targets = [u.direction() for u in ues]
    profile = synthesize(scenario, method, targets)
    pattern = farfield.radiation_pattern(profile, scenario.ris.grid,
                                         farfield.AngleGrid.uniform(scenario.angle_resolution_deg))
    theta = np.array([t.theta for t in targets])
    phi = np.array([t.phi for t in targets])
    return farfield.directive_gain(pattern, theta, phi) + farfield.amplitude_loss_db(profile)


def _mc_link(result: LinkResult, gains: np.ndarray, bandwidth_hz: float) -> LinkResult:
    """Replace a deterministic link by its fading average (ergodic throughput)."""
    lin = 10 ** (result.snr_db / 10) * gains
    mean_power = 10 * math.log10(float(np.mean(gains)))
    thr = float(np.mean(bandwidth_hz * np.log2(1 + lin)))
    return LinkResult(result.pathloss_db, result.received_power_dbm + mean_power, result.noise_power_dbm,
                      result.snr_db + mean_power, thr)


def evaluate(scenario: Scenario, method: str, ue_count: int, offset_m: float = 0.0, *,
             fading: bool = False, drops: int = 10_000, seed: int = 0, stream_index: int = 0,
             gains_dbi: np.ndarray | None = None) -> ThroughputReport:
    if method not in METHODS:
        raise ValueError(f"unknown coding method {method!r}; expected one of {METHODS}")
    if not 1 <= ue_count <= len(scenario.ues):
        raise ValueError(f"ue_count must be in [1, {len(scenario.ues)}]")
    if offset_m < 0:
        raise ValueError("distance offset must be non-negative")
    if gains_dbi is None:
        gains_dbi = beam_gains(scenario, method, ue_count)
    ris = scenario.ris.node()
    split = ue_count if scenario.bandwidth_mode == "unicast" else 1
    b_sc = scenario.bs.bandwidth_hz / split
    b_mc = scenario.mcbs.bandwidth_hz / split if scenario.mcbs is not None else None
    rng = fading_stream(seed, stream_index) if fading else None
    los = FadingSpec("LoS", scenario.ricean_k_db, seed)
    nlos = FadingSpec("NLoS", seed=seed)
    per_ue = []
    for i, (ue, gain) in enumerate(zip(scenario.ues[:ue_count], gains_dbi)):
        pos = scenario.ue_position(ue, offset_m)
        node = RadioNode(pos, rx_gain_dbi=ue.rx_gain_dbi, frequency_hz=scenario.bs.frequency_hz,
                         bandwidth_hz=b_sc)
        link = cascade_ris_link(scenario.bs, ris, node, float(gain), pathloss=scenario.hop_pathloss,
                                bandwidth_hz=b_sc, density_dbm_hz=scenario.noise_density_dbm_hz,
                                noise_figure_db=scenario.noise_figure_db)
        if fading:
            g = fading_sample(los, rng, drops) * fading_sample(los, rng, drops)
            link = _mc_link(link, g, b_sc)
        mc = None
        if scenario.mcbs is not None:
            mc = direct_link(scenario.mcbs, node, scenario.mcbs_pathloss, bandwidth_hz=b_mc,
                             density_dbm_hz=scenario.noise_density_dbm_hz,
                             noise_figure_db=scenario.noise_figure_db)
            if fading:
                mc = _mc_link(mc, fading_sample(nlos, rng, drops), b_mc)
        per_ue.append(UeResult(i, ue.distance_m + offset_m, float(gain), link, mc))
    meta = {"bandwidth_hz": scenario.bs.bandwidth_hz, "bandwidth_mode": scenario.bandwidth_mode,
            "fading": fading, "seed": seed, **scenario.metadata}
    if scenario.mcbs is not None:
        meta["mcbs_bandwidth_hz"] = scenario.mcbs.bandwidth_hz
    return ThroughputReport(method, ue_count, float(offset_m), tuple(per_ue), meta)


def calibrate_bandwidth(scenario: Scenario, target_bps: float, method: str = "phase_only",
                        bounds_hz: tuple[float, float] = (1e3, 1e11)) -> Scenario:
    """Solve for the serving-cell bandwidth that gives ``target_bps`` to a lone UE at zero offset.

    The surface-path throughput is monotone in bandwidth, so a bracketing root
    finder suffices. The result is recorded in the scenario metadata.
    """
    gains = beam_gains(scenario, method, 1)

    def excess(b):
        rep = evaluate(scenario.with_bandwidth(b), method, 1, 0.0, gains_dbi=gains)
        return rep.ris_throughput_bps - target_bps

    lo, hi = bounds_hz
    if excess(lo) > 0 or excess(hi) < 0:
        raise ValueError("target throughput not reachable within the bandwidth bounds")
    bandwidth = brentq(excess, lo, hi, xtol=1.0, rtol=1e-12)
    note = {"target_bps": target_bps, "method": method, "ue_count": 1, "offset_m": 0.0,
            "bandwidth_hz": bandwidth}
    return scenario.with_bandwidth(bandwidth, note)


def sweep(scenario: Scenario, methods: Sequence[str], ue_counts: Sequence[int],
          offsets_m: Sequence[float], *, fading: bool = False, drops: int = 10_000,
          seed: int = 0) -> list[ThroughputReport]:
    """Evaluate the Cartesian product method x K x offset, in input order.

    Each cell gets fading stream ``index`` derived from ``seed``.
    """
    methods, ue_counts, offsets_m = list(methods), list(ue_counts), list(offsets_m)
    if not methods or not ue_counts or not offsets_m:
        raise ValueError("sweep ranges must be non-empty")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown coding method {m!r}")
    gain_cache: dict = {}
    out = []
    for index, (method, k, off) in enumerate(itertools.product(methods, ue_counts, offsets_m)):
        key = (method, k)
        if key not in gain_cache:
            gain_cache[key] = beam_gains(scenario, method, k)
        out.append(evaluate(scenario, method, k, off, fading=fading, drops=drops, seed=seed,
                            stream_index=index, gains_dbi=gain_cache[key]))
    return out


# --- scenario files -------------------------------------------------------------------------------

def _node_dict(node: RadioNode) -> dict:
    x, y, h = node.position
    return {"x_m": x, "y_m": y, "height_m": h, "tx_power_dbm": node.tx_power_dbm,
            "tx_gain_dbi": node.tx_gain_dbi, "frequency_hz": node.frequency_hz,
            "bandwidth_hz": node.bandwidth_hz}


def scenario_to_dict(s: Scenario) -> dict:
    x, y, h = s.ris.position
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": s.kind,
        "bs": _node_dict(s.bs),
        "ris": {"x_m": x, "y_m": y, "height_m": h, "m_count": s.ris.grid.m_count,
                "n_count": s.ris.grid.n_count,
                "cell_size_wavelengths": s.ris.grid.cell_size / s.ris.grid.wavelength,
                "n_states": s.ris.codebook.state_count, "efficiency": s.ris.efficiency},
        "ues": [{"distance_m": u.distance_m, "azimuth_deg": u.azimuth_deg, "elevation_deg": u.elevation_deg,
                 "rx_gain_dbi": u.rx_gain_dbi} for u in s.ues],
        "pathloss_exponents": dict(s.pathloss_exponents),
        "bandwidth_mode": s.bandwidth_mode,
        "noise_figure_db": s.noise_figure_db,
        "noise_density_dbm_hz": s.noise_density_dbm_hz,
        "ricean_k_db": s.ricean_k_db,
        "angle_resolution_deg": s.angle_resolution_deg,
    }
    if s.mcbs is not None:
        out["mcbs"] = _node_dict(s.mcbs)
    if s.metadata:
        out["metadata"] = dict(s.metadata)
    return out


_TOP_KEYS = {"schema_version", "kind", "bs", "ris", "ues", "pathloss_exponents", "bandwidth_mode",
             "noise_figure_db", "noise_density_dbm_hz", "ricean_k_db", "angle_resolution_deg", "mcbs",
             "metadata"}
_NODE_KEYS = {"x_m", "y_m", "height_m", "tx_power_dbm", "tx_gain_dbi", "frequency_hz", "bandwidth_hz"}
_RIS_KEYS = {"x_m", "y_m", "height_m", "m_count", "n_count", "cell_size_wavelengths", "n_states", "efficiency"}
_UE_KEYS = {"distance_m", "azimuth_deg", "elevation_deg", "rx_gain_dbi"}


def _reject_unknown(d: dict, allowed: set, where: str):
    if not isinstance(d, dict):
        raise ValueError(f"{where} must be an object")
    extra = set(d) - allowed
    if extra:
        raise ValueError(f"unknown keys in {where}: {sorted(extra)}")


def _node_from(d: dict, where: str) -> RadioNode:
    _reject_unknown(d, _NODE_KEYS, where)
    return RadioNode((d["x_m"], d["y_m"], d["height_m"]), tx_power_dbm=d["tx_power_dbm"],
                     tx_gain_dbi=d["tx_gain_dbi"], frequency_hz=d["frequency_hz"],
                     bandwidth_hz=d["bandwidth_hz"])


def scenario_from_dict(d: dict) -> Scenario:
    _reject_unknown(d, _TOP_KEYS, "scenario")
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported or missing schema_version (expected {SCHEMA_VERSION})")
    try:
        bs = _node_from(d["bs"], "bs")
        r = d["ris"]
        _reject_unknown(r, _RIS_KEYS, "ris")
        grid = build_grid(r["m_count"], r["n_count"], r["cell_size_wavelengths"], bs.frequency_hz)
        ris = RisConfig((r["x_m"], r["y_m"], r["height_m"]), grid, canonical_codebook(r["n_states"]),
                        r.get("efficiency", 0.9))
        ues = []
        for i, u in enumerate(d["ues"]):
            _reject_unknown(u, _UE_KEYS, f"ues[{i}]")
            ues.append(UePlacement(u["distance_m"], u["azimuth_deg"], u.get("elevation_deg", 0.0),
                                   u.get("rx_gain_dbi", 0.0)))
        mcbs = _node_from(d["mcbs"], "mcbs") if "mcbs" in d else None
        return Scenario(
            kind=d["kind"], bs=bs, ris=ris, ues=tuple(ues), pathloss_exponents=dict(d["pathloss_exponents"]),
            mcbs=mcbs, bandwidth_mode=d.get("bandwidth_mode", "broadcast"),
            noise_figure_db=d.get("noise_figure_db", 0.0), noise_density_dbm_hz=d.get("noise_density_dbm_hz", -174.0),
            ricean_k_db=d.get("ricean_k_db", 10.0),
            angle_resolution_deg=d.get("angle_resolution_deg", farfield.DEFAULT_RESOLUTION_DEG),
            metadata=dict(d.get("metadata", {})),
        )
    except KeyError as exc:
        raise ValueError(f"missing scenario key: {exc.args[0]}") from None
    except TypeError as exc:
        raise ValueError(f"malformed scenario: {exc}") from None


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def bundled_scenario(kind: str) -> Scenario:
    """Default indoor or UMi scenario shipped with the package."""
    if kind not in ("indoor", "umi"):
        raise ValueError("bundled scenarios are 'indoor' and 'umi'")
    text = resources.files("msbeam").joinpath("data", f"{kind}.json").read_text(encoding="utf-8")
    return scenario_from_dict(json.loads(text))


# --- reports -------------------------------------------------------------------------------------

REPORT_COLUMNS = ("schema_version", "method", "K", "offset_m", "ue_index", "snr_db", "throughput_bps")


def report_rows(reports: Sequence[ThroughputReport]) -> list[list]:
    """Flat CSV rows: one per UE, then a totals row (``ue_index = total``) per report."""
    rows = []
    for rep in reports:
        for u in rep.per_ue:
            rows.append([SCHEMA_VERSION, rep.method, rep.ue_count, rep.offset_m, u.ue_index,
                         u.ris_link.snr_db, u.throughput_bps])
        rows.append([SCHEMA_VERSION, rep.method, rep.ue_count, rep.offset_m, "total", "",
                     rep.total_throughput_bps])
    return rows


def report_to_dict(rep: ThroughputReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "method": rep.method,
        "K": rep.ue_count,
        "offset_m": rep.offset_m,
        "total_throughput_bps": rep.total_throughput_bps,
        "ris_throughput_bps": rep.ris_throughput_bps,
        "mcbs_throughput_bps": rep.mcbs_throughput_bps,
        "per_ue": [{"ue_index": u.ue_index, "distance_m": u.distance_m, "beam_gain_dbi": u.beam_gain_dbi,
                    "ris_link": asdict(u.ris_link),
                    "mcbs_link": asdict(u.mcbs_link) if u.mcbs_link is not None else None,
                    "throughput_bps": u.throughput_bps} for u in rep.per_ue],
        "metadata": rep.metadata,
    }
