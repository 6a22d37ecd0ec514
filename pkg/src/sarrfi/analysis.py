"""Measurement helpers: error metrics, rank curves, spectrograms, support boxes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft
from scipy.sparse.linalg import svds

from .core import ComplexMatrix

DB_FLOOR = -120.0


def _as_array(x):
    return x.data if isinstance(x, ComplexMatrix) else np.asarray(x)


def relative_error(ref, est):
    """Squared Frobenius ratio ||ref - est||_F^2 / ||ref||_F^2.

    Invariant under a simultaneous global phase rotation of both arguments.
    """
    a, b = _as_array(ref), _as_array(est)
    denom = np.linalg.norm(a) ** 2
    if denom == 0:
        raise ValueError("reference matrix is identically zero")
    return float(np.linalg.norm(a - b) ** 2 / denom)


def singular_values(m, k_max=None, rng=None):
    """Leading singular values, descending. Full spectrum when k_max is None.

    Large matrices with k_max well under min(shape) go through a Lanczos
    solver with a deterministic start vector; pass rng to randomize it
    reproducibly.
    """
    a = _as_array(m)
    lo = min(a.shape)
    if k_max is None or k_max >= lo or lo <= 256:
        s = np.linalg.svd(a, compute_uv=False)
        return s if k_max is None else s[:k_max]
    if rng is None:
        v0 = np.ones(lo)
    else:
        v0 = rng.standard_normal(lo)
    s = svds(a, k=k_max, return_singular_vectors=False, v0=v0)
    return np.sort(s)[::-1]


def rank_error_curve(m, k_max, rng=None):
    """[(k, error(k))] for k = 1..k_max with error(k) = tail sum of sigma^2.

    error(k) = (||m||_F^2 - sum_{i<=k} sigma_i^2) / ||m||_F^2, clipped at 0
    so rounding can never produce a negative tail.
    """
    a = _as_array(m)
    if not 1 <= k_max <= min(a.shape):
        raise ValueError(f"k_max must be in 1..{min(a.shape)}")
    s = singular_values(a, k_max, rng=rng)
    total = float(np.linalg.norm(a) ** 2)
    if total == 0:
        raise ValueError("matrix is identically zero")
    head = np.cumsum(s ** 2)
    err = np.maximum(total - head, 0.0) / total
    return [(k + 1, float(err[k])) for k in range(k_max)]


@dataclass(frozen=True)
class Spectrogram:
    """Short-time spectra in dB relative to the strongest bin.

    values has one row per frame; freq bins run from -fs/2 upward. time_axis
    stamps each frame with its window centre.
    """

    values: np.ndarray
    time_start: float
    time_step: float
    freq_start: float
    freq_step: float

    def times(self):
        return self.time_start + self.time_step * np.arange(self.values.shape[0])

    def freqs(self):
        return self.freq_start + self.freq_step * np.arange(self.values.shape[1])


def stft(signal, sample_rate, window_len=None, hop=None, floor_db=DB_FLOOR):
    """Rectangular-window short-time Fourier magnitude in dB.

    Defaults: window_len = len(signal)//32, hop = window_len//4. The complex
    FFT keeps the signed frequency axis, which the ridge of a chirp needs.
    All-zero input returns a uniform floor_db sheet.
    """
    x = np.asarray(signal).ravel()
    n = x.size
    if window_len is None:
        window_len = max(n // 32, 4)
    if hop is None:
        hop = max(window_len // 4, 1)
    if window_len > n:
        raise ValueError("window longer than the signal")
    n_frames = 1 + (n - window_len) // hop
    idx = np.arange(window_len)[None, :] + hop * np.arange(n_frames)[:, None]
    frames = x[idx]
    spec = sfft.fftshift(sfft.fft(frames, axis=1, norm="ortho"), axes=1)
    mag = np.abs(spec)
    peak = mag.max()
    if peak == 0:
        values = np.full(mag.shape, floor_db)
    else:
        with np.errstate(divide="ignore"):
            values = 20 * np.log10(mag / peak)
        values = np.maximum(values, floor_db)
    return Spectrogram(
        values=values,
        time_start=(window_len / 2) / sample_rate,
        time_step=hop / sample_rate,
        freq_start=-(window_len // 2) * (sample_rate / window_len),
        freq_step=sample_rate / window_len,
    )


def ridge_slope(spec, keep_db=20.0, centroid_bins=None):
    """Least-squares slope [Hz/s] of the spectrogram ridge.

    Frames more than keep_db below the loudest frame are left out so the fit
    only sees the chirp, not the silence around it; the analyzed segment
    should cover a single ridge. Per frame, the ridge is the power-weighted
    centroid of the bins around the peak, taken circularly so a peak at the
    band edge is not dragged to the other side. The frame-to-frame track is
    then unwrapped by whole periods, which keeps a chirp that crosses the
    folding frequency linear.
    """
    peaks_db = spec.values.max(axis=1)
    keep = peaks_db >= peaks_db.max() - keep_db
    if keep.sum() < 2:
        raise ValueError("fewer than two frames above the energy cut")
    vals = spec.values[keep]
    n = vals.shape[1]
    if centroid_bins is None:
        centroid_bins = max(1, n // 16)
    off = np.arange(-centroid_bins, centroid_bins + 1)
    period = n * spec.freq_step
    ridge = np.empty(vals.shape[0])
    for i, row in enumerate(vals):
        p = int(np.argmax(row))
        w = 10.0 ** (row[(p + off) % n] / 10.0)
        ridge[i] = spec.freq_start + spec.freq_step * (
            p + np.sum(w * off) / np.sum(w)
        )
    for i in range(1, ridge.size):
        ridge[i] += period * np.round((ridge[i - 1] - ridge[i]) / period)
    slope = np.polyfit(spec.times()[keep], ridge, 1)[0]
    return float(slope)


@dataclass(frozen=True)
class SupportBox:
    """Bounding box (inclusive pixel indices) and energy centroid of a mask."""

    row_min: int
    row_max: int
    col_min: int
    col_max: int
    centroid_row: float
    centroid_col: float

    @property
    def row_extent(self):
        return self.row_max - self.row_min

    @property
    def col_extent(self):
        return self.col_max - self.col_min


def measure_support(img, threshold_db=20.0):
    """Box and centroid of pixels within threshold_db of the image maximum."""
    a = np.abs(_as_array(img))
    peak = a.max()
    if peak == 0:
        raise ValueError("cannot measure support of an all-zero image")
    mask = a >= peak * 10 ** (-threshold_db / 20)
    rows = np.where(mask.any(axis=1))[0]
    cols = np.where(mask.any(axis=0))[0]
    w = np.where(mask, a ** 2, 0.0)
    total = w.sum()
    ri = np.arange(a.shape[0])
    ci = np.arange(a.shape[1])
    return SupportBox(
        row_min=int(rows[0]), row_max=int(rows[-1]),
        col_min=int(cols[0]), col_max=int(cols[-1]),
        centroid_row=float((w.sum(axis=1) * ri).sum() / total),
        centroid_col=float((w.sum(axis=0) * ci).sum() / total),
    )
