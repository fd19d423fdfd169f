import numpy as np
import pytest

from deorbitsim.analysis import (
    STANDARD_BANDS,
    Band,
    BandSpec,
    EegChannelRecord,
    band_power,
    band_powers,
    engagement_index,
    task_load_index,
)
from deorbitsim.errors import DataError


def tone(freq: float, rate: float = 128.0, duration: float = 30.0, amp: float = 1.0):
    t = np.arange(int(duration * rate)) / rate
    return amp * np.sin(2 * np.pi * freq * t)


def record(samples, rate=128.0, label="C1"):
    return EegChannelRecord(label=label, samples=samples, rate=rate)


class TestBandSpec:
    def test_standard_bands_match_study(self):
        bands = {b.name: (b.lo, b.hi) for b in STANDARD_BANDS.all()}
        assert bands == {
            "theta": (4.0, 8.0),
            "alpha": (8.0, 12.0),
            "beta": (16.0, 25.0),
            "gamma": (25.0, 45.0),
        }

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            BandSpec(theta=Band("theta", 4, 9), alpha=Band("alpha", 8, 12))

    def test_rejects_bad_band(self):
        with pytest.raises(ValueError):
            Band("x", 8, 8)


class TestBandPower:
    def test_zero_signal_zero_everywhere(self):
        rec = record(np.zeros(128 * 10))
        for band in STANDARD_BANDS.all():
            assert band_power(rec, band) == 0.0

    def test_alpha_tone_dominates(self):
        rec = record(tone(10.0))
        powers = band_powers(rec)
        for name in ("theta", "beta", "gamma"):
            assert powers["alpha"] > 20.0 * powers[name]

    def test_beta_tone_dominates(self):
        rec = record(tone(20.0))
        powers = band_powers(rec)
        for name in ("theta", "alpha", "gamma"):
            assert powers["beta"] > 20.0 * powers[name]

    def test_two_tone_near_additivity(self):
        a = tone(6.0)
        b = tone(20.0)
        p_sum = band_powers(record(a + b))
        p_a = band_powers(record(a))
        p_b = band_powers(record(b))
        assert p_sum["theta"] == pytest.approx(p_a["theta"] + p_b["theta"], rel=0.05)
        assert p_sum["beta"] == pytest.approx(p_a["beta"] + p_b["beta"], rel=0.05)

    def test_parseval_sanity(self, rng):
        x = rng.normal(size=128 * 60)
        rec = record(x)
        from deorbitsim.analysis.eeg import psd

        freqs, density = psd(rec)
        total = np.trapezoid(density, freqs)
        assert total == pytest.approx(float(np.var(x)), rel=0.10)

    def test_short_record_rejected(self):
        with pytest.raises(DataError):
            band_power(record(np.zeros(100)), STANDARD_BANDS.alpha)

    def test_non_finite_rejected(self):
        with pytest.raises(DataError):
            record(np.array([0.0, np.nan, 1.0]))

    def test_bad_rate_rejected(self):
        with pytest.raises(DataError):
            EegChannelRecord(label="x", samples=np.zeros(10), rate=0.0)


class TestIndices:
    def test_engagement_direct(self):
        assert engagement_index(1.0, 1.0, 2.0) == pytest.approx(1.0)

    def test_engagement_zero_beta(self):
        assert engagement_index(1.0, 1.0, 0.0) == 0.0

    def test_engagement_scale_invariant(self):
        a = engagement_index(1.5, 2.5, 3.5)
        b = engagement_index(15.0, 25.0, 35.0)
        assert a == pytest.approx(b, rel=1e-12)

    def test_engagement_domain_error(self):
        with pytest.raises(DataError):
            engagement_index(0.0, 0.0, 1.0)

    def test_tli_equal_powers(self):
        assert task_load_index(2.0, 2.0) == pytest.approx(1.0)

    def test_tli_linear_in_theta(self):
        assert task_load_index(4.0, 2.0) == pytest.approx(2.0 * task_load_index(2.0, 2.0))

    def test_tli_zero_theta(self):
        assert task_load_index(0.0, 2.0) == 0.0

    def test_tli_domain_error(self):
        with pytest.raises(DataError):
            task_load_index(1.0, 0.0)
