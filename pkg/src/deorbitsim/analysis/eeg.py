"""EEG band power and workload indices.

Band power is the averaged-periodogram (Welch) power spectral density in
uV^2/Hz, averaged over the band's frequency bins. Bands follow the study
headset's processing: theta 4-8, alpha 8-12, beta 16-25, gamma 25-45 Hz,
with bins assigned half-open (lo <= f < hi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal

from ..errors import DataError


@dataclass(frozen=True)
class Band:
    name: str
    lo: float
    hi: float

    def __post_init__(self):
        if not (0 <= self.lo < self.hi):
            raise ValueError("band bounds must satisfy 0 <= lo < hi")


@dataclass(frozen=True)
class BandSpec:
    theta: Band = Band("theta", 4.0, 8.0)
    alpha: Band = Band("alpha", 8.0, 12.0)
    beta: Band = Band("beta", 16.0, 25.0)
    gamma: Band = Band("gamma", 25.0, 45.0)

    def __post_init__(self):
        bands = self.all()
        for a, b in zip(bands, bands[1:]):
            if a.hi > b.lo:
                raise ValueError("bands must be non-overlapping and ascending")

    def all(self) -> tuple[Band, Band, Band, Band]:
        return (self.theta, self.alpha, self.beta, self.gamma)


STANDARD_BANDS = BandSpec()


@dataclass(frozen=True)
class EegChannelRecord:
    label: str
    samples: np.ndarray  # uV
    rate: float = 128.0  # Hz

    def __post_init__(self):
        if self.rate <= 0:
            raise DataError("sample rate must be positive")
        s = np.asarray(self.samples, dtype=float)
        if not np.all(np.isfinite(s)):
            raise DataError(f"channel {self.label}: non-finite samples")
        object.__setattr__(self, "samples", s)


def psd(rec: EegChannelRecord, window: float = 2.0, overlap: float = 0.5):
    """Welch PSD (freqs, uV^2/Hz) with Hann-tapered segments."""
    nperseg = int(round(window * rec.rate))
    if len(rec.samples) < nperseg:
        raise DataError(
            f"channel {rec.label}: record shorter than the {window} s analysis window"
        )
    return signal.welch(
        rec.samples,
        fs=rec.rate,
        window="hann",
        nperseg=nperseg,
        noverlap=int(nperseg * overlap),
    )


def band_power(
    rec: EegChannelRecord, band: Band, window: float = 2.0, overlap: float = 0.5
) -> float:
    """Mean PSD over the band's bins, in uV^2/Hz."""
    freqs, density = psd(rec, window=window, overlap=overlap)
    mask = (freqs >= band.lo) & (freqs < band.hi)
    if not np.any(mask):
        raise DataError(f"no frequency bins inside band {band.name}")
    return float(density[mask].mean())


def band_powers(
    rec: EegChannelRecord, bands: BandSpec = STANDARD_BANDS,
    window: float = 2.0, overlap: float = 0.5,
) -> dict[str, float]:
    freqs, density = psd(rec, window=window, overlap=overlap)
    out: dict[str, float] = {}
    for band in bands.all():
        mask = (freqs >= band.lo) & (freqs < band.hi)
        if not np.any(mask):
            raise DataError(f"no frequency bins inside band {band.name}")
        out[band.name] = float(density[mask].mean())
    return out


def engagement_index(theta_p: float, alpha_p: float, beta_p: float) -> float:
    """beta / (alpha + theta), the standard EEG engagement ratio."""
    if min(theta_p, alpha_p, beta_p) < 0:
        raise DataError("band powers must be non-negative")
    denom = alpha_p + theta_p
    if denom == 0:
        raise DataError("engagement index undefined: alpha + theta is zero")
    return beta_p / denom


def task_load_index(frontal_theta_p: float, parietal_alpha_p: float) -> float:
    """Frontal-theta to parietal-alpha power ratio."""
    if frontal_theta_p < 0:
        raise DataError("band powers must be non-negative")
    if parietal_alpha_p <= 0:
        raise DataError("task load index undefined: parietal alpha must be positive")
    return frontal_theta_p / parietal_alpha_p
