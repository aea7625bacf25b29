"""File formats for beam targets, state matrices and far-field results."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .coding import BeamTarget
from .farfield import LOG_FLOOR_DB, Pattern, PatternMetrics
from .surface import StateCodebook, UnitCellGrid, PhaseProfile


def parse_targets(text: str) -> list[BeamTarget]:
    """Targets from ``[{"theta_deg": .., "phi_deg": ..}, ...]``."""
    data = json.loads(text)
    if not isinstance(data, list) or not data:
        raise ValueError("targets file must be a non-empty JSON list")
    out = []
    for i, item in enumerate(data):
        if not isinstance(item, dict) or set(item) != {"theta_deg", "phi_deg"}:
            raise ValueError(f"target {i} must have exactly the keys theta_deg and phi_deg")
        out.append(BeamTarget.from_degrees(float(item["theta_deg"]), float(item["phi_deg"])))
    return out


def load_targets(path) -> list[BeamTarget]:
    return parse_targets(Path(path).read_text(encoding="utf-8"))


def targets_to_json(targets) -> str:
    return json.dumps([{"theta_deg": math.degrees(t.theta), "phi_deg": math.degrees(t.phi)} for t in targets],
                      indent=2)


def _matrix_csv(matrix, fmt=repr) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(matrix):
        writer.writerow([fmt(v.item()) for v in row])
    return buf.getvalue()


def state_matrix_csv(states: np.ndarray) -> str:
    """Integer state matrix, one CSV row per m index."""
    return _matrix_csv(np.asarray(states, dtype=int), str)


def state_matrix_json(states: np.ndarray, n_states: int, amplitude: np.ndarray | None = None) -> str:
    states = np.asarray(states, dtype=int)
    doc = {"m_count": int(states.shape[0]), "n_count": int(states.shape[1]), "n_states": int(n_states),
           "states": states.tolist()}
    if amplitude is not None:
        doc["amplitude"] = np.asarray(amplitude, dtype=float).tolist()
    return json.dumps(doc, indent=1)


def parse_state_matrix(text: str, n_states: int | None = None) -> tuple[np.ndarray, int | None, np.ndarray | None]:
    """Read a state matrix from its CSV or JSON form.

    Returns ``(states, n_states, amplitude)``; CSV carries neither state count
    nor amplitude.
    """
    stripped = text.lstrip()
    amplitude = None
    if stripped.startswith("{"):
        doc = json.loads(text)
        states = np.asarray(doc["states"], dtype=int)
        if states.shape != (doc["m_count"], doc["n_count"]):
            raise ValueError("state matrix dimensions disagree with m_count/n_count")
        file_states = int(doc["n_states"])
        if n_states is not None and n_states != file_states:
            raise ValueError(f"file encodes {file_states} states, {n_states} requested")
        n_states = file_states
        if "amplitude" in doc:
            amplitude = np.asarray(doc["amplitude"], dtype=float)
    else:
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("state matrix CSV must be a non-empty rectangular table")
        states = np.array([[int(v) for v in r] for r in rows], dtype=int)
    if n_states is not None and (states.min() < 0 or states.max() >= n_states):
        raise ValueError("state index outside the codebook")
    return states, n_states, amplitude


def profile_from_states(grid: UnitCellGrid, states: np.ndarray, codebook: StateCodebook) -> PhaseProfile:
    states = np.asarray(states, dtype=int)
    if states.shape != grid.shape:
        raise ValueError(f"state matrix {states.shape} does not match grid {grid.shape}")
    if states.min() < 0 or states.max() >= codebook.state_count:
        raise ValueError("state index outside the codebook")
    return PhaseProfile(grid, codebook.as_array()[states])


def profile_csv(phase: np.ndarray) -> str:
    """Phase matrix in radians."""
    return _matrix_csv(np.asarray(phase, dtype=float))


def pattern_csv(pattern: Pattern) -> str:
    mag = np.abs(pattern.field)
    top = mag.max()
    with np.errstate(divide="ignore"):
        rel = 20 * np.log10(mag / top) if top > 0 else np.full(mag.shape, LOG_FLOOR_DB)
    rel = np.maximum(rel, LOG_FLOOR_DB)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta_deg", "phi_deg", "re", "im", "magnitude_db"])
    th_deg = np.degrees(pattern.angles.theta)
    ph_deg = np.degrees(pattern.angles.phi)
    for i, th in enumerate(th_deg):
        for j, ph in enumerate(ph_deg):
            e = pattern.field[i, j]
            writer.writerow([repr(float(th)), repr(float(ph)), repr(float(e.real)), repr(float(e.imag)),
                             repr(float(rel[i, j]))])
    return buf.getvalue()


def metrics_json(metrics: PatternMetrics, extra: dict | None = None) -> str:
    doc = metrics.to_dict()
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2)
