import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_array_equal

from msbeam.link import (
    FadingSpec,
    PathlossModel,
    RadioNode,
    RisNode,
    cascade_ris_link,
    direct_link,
    fading_sample,
    fading_stream,
    link_budget,
    noise_power,
    pathloss_inh_los,
    pathloss_inh_nlos,
    pathloss_umi,
    shannon_throughput,
)
from msbeam.surface import SPEED_OF_LIGHT


def test_ci_pathloss_values():
    fspl_1m = 20 * math.log10(4 * math.pi * 28e9 / SPEED_OF_LIGHT)
    assert pathloss_umi(28e9, 1, 2.1) == pytest.approx(fspl_1m, abs=1e-12)
    # the rounded reference values 61.38 / 82.38 dB use c = 3e8 m/s; the exact
    # speed of light moves them by +0.006 dB
    assert 20 * math.log10(4 * math.pi * 28e9 / 3e8) == pytest.approx(61.38, abs=0.005)
    assert pathloss_umi(28e9, 1, 2.1) == pytest.approx(61.38, abs=0.02)
    assert pathloss_umi(28e9, 10, 2.1) == pytest.approx(82.38, abs=0.02)
    assert pathloss_umi(28e9, 10, 2.1) - pathloss_umi(28e9, 1, 2.1) == pytest.approx(21.0, abs=1e-12)
    assert pathloss_umi(28e9, 20, 2.1) - pathloss_umi(28e9, 10, 2.1) == pytest.approx(
        10 * 2.1 * math.log10(2), abs=1e-12)


def test_indoor_pathloss_values():
    assert pathloss_inh_los(28, 1) == pytest.approx(61.34, abs=0.01)
    assert pathloss_inh_los(28, 100) == pytest.approx(95.94, abs=0.01)
    assert pathloss_inh_nlos(28, 100) == pytest.approx(129.93, abs=0.01)
    assert pathloss_inh_nlos(28, 1) == pytest.approx(61.34, abs=0.01)


def test_distance_below_one_metre_rejected():
    for f in (lambda: pathloss_umi(28e9, 0.5, 2), lambda: pathloss_inh_los(28, 0.99),
              lambda: pathloss_inh_nlos(28, 0.1)):
        with pytest.raises(ValueError):
            f()


def test_model_units_are_hz():
    assert PathlossModel("inh_los")(28e9, 100) == pathloss_inh_los(28, 100)
    assert PathlossModel("ci", 2.9)(3.55e9, 50) == pathloss_umi(3.55e9, 50, 2.9)
    with pytest.raises(ValueError):
        PathlossModel("ci")
    with pytest.raises(ValueError):
        PathlossModel("free")


distances = st.floats(1, 5000)
freqs_ghz = st.floats(0.5, 100)


@given(distances, distances, freqs_ghz)
def test_pathloss_monotone_in_distance(d1, d2, f):
    lo, hi = sorted((d1, d2))
    if hi - lo < 1e-6 * hi:
        return
    assert pathloss_inh_los(f, lo) < pathloss_inh_los(f, hi)
    assert pathloss_inh_nlos(f, lo) < pathloss_inh_nlos(f, hi)
    assert pathloss_umi(f * 1e9, lo, 2.1) < pathloss_umi(f * 1e9, hi, 2.1)


@given(distances, freqs_ghz, freqs_ghz)
def test_pathloss_monotone_in_frequency(d, f1, f2):
    lo, hi = sorted((f1, f2))
    if hi - lo < 1e-6 * hi:
        return
    assert pathloss_inh_los(lo, d) < pathloss_inh_los(hi, d)
    assert pathloss_inh_nlos(lo, d) < pathloss_inh_nlos(hi, d)
    assert pathloss_umi(lo * 1e9, d, 2.1) < pathloss_umi(hi * 1e9, d, 2.1)
    assert pathloss_inh_nlos(lo, d) >= pathloss_inh_los(lo, d)


def test_indoor_nlos_continuous_across_crossover():
    d = np.linspace(1, 3, 200_001)
    pl = np.array([pathloss_inh_nlos(28, x) for x in d])
    # maximum step is bounded by the steeper branch slope times the sample spacing
    slope = 38.3 / math.log(10)
    assert np.max(np.abs(np.diff(pl))) <= slope * (d[1] - d[0]) * 1.001
    los = np.array([pathloss_inh_los(28, x) for x in d])
    assert np.any(pl == los) and np.any(pl > los)


def test_link_budget_and_noise():
    assert link_budget(37, 30, 0, 95.94, 0) == pytest.approx(-28.94)
    assert link_budget(20, 0, 0, 0) == 20
    assert link_budget(20, 5, 3, 50, 3) == link_budget(20, 5, 3, 50) - 3
    assert noise_power(400e6) == pytest.approx(-87.98, abs=0.01)
    assert noise_power(1) == -174
    assert noise_power(100e6) == pytest.approx(-94.0, abs=1e-9)
    assert noise_power(100e6, noise_figure_db=7) == pytest.approx(-87.0, abs=1e-9)


@given(st.floats(-200, 100), st.floats(-50, 50), st.floats(-50, 50), st.floats(0, 300), st.floats(-10, 10))
def test_link_budget_affine(pt, gt, gr, pl, delta):
    base = link_budget(pt, gt, gr, pl)
    assert link_budget(pt + delta, gt, gr, pl) == pytest.approx(base + delta, abs=1e-9)
    assert link_budget(pt, gt, gr, pl + delta) == pytest.approx(base - delta, abs=1e-9)


def test_shannon_values():
    assert shannon_throughput(1, 0) == pytest.approx(1.0)
    assert shannon_throughput(400e6, 20) == pytest.approx(400e6 * math.log2(101), rel=1e-12)
    assert shannon_throughput(400e6, 20) == pytest.approx(2.665e9, rel=1e-3)
    assert shannon_throughput(1e6, -300) < 1e-20
    with pytest.raises(ValueError):
        shannon_throughput(0, 10)


@given(st.floats(1, 1e9), st.floats(-30, 40), st.floats(0.01, 10))
def test_shannon_monotone(b, snr, step):
    assert shannon_throughput(b * (1 + step), snr) > shannon_throughput(b, snr)
    assert shannon_throughput(b, snr + step) > shannon_throughput(b, snr)


@pytest.mark.parametrize("kind", ["LoS", "NLoS"])
def test_fading_unit_mean(kind):
    g = fading_sample(FadingSpec(kind, 10.0, seed=0), fading_stream(0), 1_000_000)
    assert abs(g.mean() - 1.0) < 0.01
    assert np.all(g >= 0)


def test_fading_determinism_and_limits():
    spec = FadingSpec("LoS", 10.0, seed=7)
    assert_array_equal(fading_sample(spec, size=100), fading_sample(spec, size=100))
    a = fading_sample(spec, fading_stream(7, 0), 100)
    b = fading_sample(spec, fading_stream(7, 1), 100)
    assert not np.array_equal(a, b)
    assert_array_equal(fading_sample(FadingSpec("LoS", math.inf), size=5), np.ones(5))
    # Rayleigh power is exponential: variance equals the squared mean
    g = fading_sample(FadingSpec("NLoS"), fading_stream(1), 400_000)
    assert g.var() == pytest.approx(1.0, abs=0.02)
    with pytest.raises(ValueError):
        FadingSpec("rician")


def test_ricean_variance_matches_k_factor():
    k = 10.0
    g = fading_sample(FadingSpec("LoS", 10.0), fading_stream(2), 400_000)
    # Ricean power variance (2K + 1) / (K + 1)^2 for unit mean
    assert g.var() == pytest.approx((2 * k + 1) / (k + 1) ** 2, rel=0.03)


BS = RadioNode((0.0, 0.0, 10.0), tx_power_dbm=37, tx_gain_dbi=30, frequency_hz=28e9, bandwidth_hz=400e6)


def test_degenerate_cascade():
    ue = RadioNode((1.0, 1.0, 1.0), rx_gain_dbi=2.0)
    r = cascade_ris_link(BS, RisNode((5, 5, 5), efficiency=1.0), ue, 0.0, hop_pathloss_db=(0.0, 0.0))
    assert r.received_power_dbm == pytest.approx(37 + 30 + 2)
    assert r.snr_db == pytest.approx(r.received_power_dbm - r.noise_power_dbm)
    with pytest.raises(ValueError):
        cascade_ris_link(BS, RisNode((5, 5, 5)), ue, 0.0, efficiency=0.0, hop_pathloss_db=(0, 0))
    with pytest.raises(ValueError):
        RisNode((0, 0, 0), efficiency=0.0)


def test_cascade_chains_hop_budgets():
    ris = RisNode((0.0, 100.0, 10.0), efficiency=0.9)
    ue = RadioNode((0.0, 97.0, 10.0))
    gain = 27.0
    r = cascade_ris_link(BS, ris, ue, gain, pathloss=PathlossModel("inh_los"))
    pl1, pl2 = pathloss_inh_los(28, 100), pathloss_inh_los(28, 3)
    manual = link_budget(37, 30, 0, pl1) + 10 * math.log10(0.9) + gain - pl2
    assert r.pathloss_db == pytest.approx(pl1 + pl2, abs=1e-12)
    assert r.received_power_dbm == pytest.approx(manual, abs=1e-12)
    assert r.noise_power_dbm == pytest.approx(-87.98, abs=0.01)
    assert r.throughput_bps == pytest.approx(shannon_throughput(400e6, manual - noise_power(400e6)))


def test_cascade_fading_terms_add_in_db():
    ris = RisNode((0.0, 100.0, 10.0))
    ue = RadioNode((0.0, 97.0, 10.0))
    base = cascade_ris_link(BS, ris, ue, 20.0, pathloss=PathlossModel("inh_los"))
    faded = cascade_ris_link(BS, ris, ue, 20.0, pathloss=PathlossModel("inh_los"), fading=(2.0, 0.5))
    assert faded.received_power_dbm == pytest.approx(base.received_power_dbm, abs=1e-12)
    faded = cascade_ris_link(BS, ris, ue, 20.0, pathloss=PathlossModel("inh_los"), fading=(10.0, 1.0))
    assert faded.received_power_dbm == pytest.approx(base.received_power_dbm + 10, abs=1e-12)


def test_direct_link():
    mc = RadioNode((0.0, 0.0, 25.0), tx_power_dbm=49, tx_gain_dbi=17, frequency_hz=3.55e9, bandwidth_hz=100e6)
    ue = RadioNode((0.0, 100.0, 25.0))
    r = direct_link(mc, ue, PathlossModel("ci", 2.9))
    assert r.pathloss_db == pytest.approx(pathloss_umi(3.55e9, 100, 2.9))
    assert r.received_power_dbm == pytest.approx(66 - r.pathloss_db)
    assert r.noise_power_dbm == pytest.approx(-94.0)
