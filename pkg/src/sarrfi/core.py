"""Shared types for the interference simulation and mitigation chain.

Everything downstream passes complex sample matrices tagged with their
processing domain plus the two physical axes (slow time eta, fast time tau).
Configs are frozen dataclasses validated on construction; JSON mirrors use
the field names verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.constants import c as C

DOMAIN_TAGS = ("raw", "wavenumber", "range-doppler", "image")


class ConfigError(ValueError):
    """A config value violates one of its documented invariants."""


@dataclass(frozen=True)
class Axis:
    """Uniform sample axis, value(i) = start + i*step. step is in seconds."""

    start: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError(f"axis step must be > 0, got {self.step}")

    def values(self, n):
        return self.start + self.step * np.arange(n)

    def to_index(self, value):
        return (np.asarray(value, dtype=float) - self.start) / self.step

    def from_index(self, index):
        return self.start + self.step * np.asarray(index, dtype=float)


@dataclass(frozen=True)
class ComplexMatrix:
    """2-D complex samples, rows = azimuth (slow time), cols = range (fast time).

    data is complex128 in memory regardless of on-disk width. Treat instances
    as immutable: operations return new matrices and never write in place.
    """

    data: np.ndarray
    axis_eta: Axis
    axis_tau: Axis
    domain_tag: str

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise ConfigError(f"matrix data must be 2-D, got shape {arr.shape}")
        if self.domain_tag not in DOMAIN_TAGS:
            raise ConfigError(f"unknown domain tag {self.domain_tag!r}")
        if arr.dtype != np.complex128:
            arr = arr.astype(np.complex128)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def eta_values(self):
        return self.axis_eta.values(self.rows)

    def tau_values(self):
        return self.axis_tau.values(self.cols)

    def energy(self):
        return float(np.sum(np.abs(self.data) ** 2))

    def with_data(self, data, domain_tag=None, axis_eta=None, axis_tau=None):
        return ComplexMatrix(
            data=data,
            axis_eta=axis_eta if axis_eta is not None else self.axis_eta,
            axis_tau=axis_tau if axis_tau is not None else self.axis_tau,
            domain_tag=domain_tag if domain_tag is not None else self.domain_tag,
        )


def axis_to_pixel(m, eta, tau):
    """Map physical coordinates to fractional (row, col) pixels of m."""
    return float(m.axis_eta.to_index(eta)), float(m.axis_tau.to_index(tau))


def pixel_to_axis(m, row, col):
    """Inverse of axis_to_pixel; accepts fractional pixel positions."""
    return float(m.axis_eta.from_index(row)), float(m.axis_tau.from_index(col))


@dataclass(frozen=True)
class RadarConfig:
    """Stripmap geometry and sampling for one simulated acquisition.

    Fields
    ------
    f0 : carrier frequency [Hz]
    K_r : transmitted chirp rate [Hz/s]
    T : transmitted pulse duration [s]
    V : platform speed [m/s]
    B_p : processed Doppler bandwidth [Hz]
    prf : pulse repetition frequency [Hz]
    f_s : range sampling rate [Hz]
    R_ref : reference slant range of the focuser [m]
    squint_deg : squint angle [deg], positive looks forward
    N_a, N_r : grid size, azimuth rows by range columns
    eta0 : slow time of the first pulse [s]
    tau0 : fast time of the first range sample [s]
    """

    f0: float
    K_r: float
    T: float
    V: float
    B_p: float
    prf: float
    f_s: float
    R_ref: float
    squint_deg: float
    N_a: int
    N_r: int
    eta0: float
    tau0: float

    def __post_init__(self):
        if self.f0 <= 0 or self.T <= 0 or self.V <= 0 or self.R_ref <= 0:
            raise ConfigError("f0, T, V, R_ref must all be positive")
        if self.K_r == 0:
            raise ConfigError("K_r must be nonzero")
        if not self.B_p > 0:
            raise ConfigError("B_p must be positive")
        if self.prf < self.B_p:
            raise ConfigError(f"prf {self.prf} must be >= processed band B_p {self.B_p}")
        if self.f_s < abs(self.K_r) * self.T:
            raise ConfigError(
                f"f_s {self.f_s} under chirp bandwidth {abs(self.K_r) * self.T}"
            )
        if self.N_a < 2 or self.N_r < 2:
            raise ConfigError("grid must be at least 2x2")
        # Doppler band edge must stay inside the hyperbolic domain of D(f_eta).
        f_edge = abs(self.f_etac) + self.prf / 2
        if C * f_edge >= 2 * self.V * self.f0:
            raise ConfigError("Doppler band exceeds the hyperbolic domain c*f < 2*V*f0")

    @property
    def wavelength(self):
        return C / self.f0

    @property
    def f_etac(self):
        """Doppler centroid 2*V*sin(squint)*f0/c [Hz]."""
        return 2 * self.V * math.sin(math.radians(self.squint_deg)) * self.f0 / C

    @property
    def eta_axis(self):
        return Axis(self.eta0, 1.0 / self.prf)

    @property
    def tau_axis(self):
        return Axis(self.tau0, 1.0 / self.f_s)

    @property
    def image_tau_axis(self):
        """Output range axis, zero at the reference range R_ref."""
        return Axis(-(self.N_r // 2) / self.f_s, 1.0 / self.f_s)


@dataclass(frozen=True)
class InterferenceConfig:
    """One LFM interference pulse folded into a single received echo line.

    gamma_i is the complex amplitude; pulse_index selects the raw row.
    R_i is the interferer slant range, f_i0 its baseband frequency offset.
    """

    K_i: float
    T_i: float
    f_i0: float
    R_i: float
    gamma_i: complex
    pulse_index: int

    def __post_init__(self):
        if not self.T_i > 0:
            raise ConfigError("T_i must be positive")
        if self.R_i <= 0:
            raise ConfigError("R_i must be positive")
        if self.pulse_index < 0:
            raise ConfigError("pulse_index must be >= 0")
        object.__setattr__(self, "gamma_i", complex(self.gamma_i))


def validate_pair(cfg, icfg):
    """Cross checks that need both configs: row index and receiver band."""
    if icfg.pulse_index >= cfg.N_a:
        raise ConfigError(
            f"pulse_index {icfg.pulse_index} outside grid of {cfg.N_a} pulses"
        )
    if abs(icfg.f_i0) + abs(icfg.K_i) * icfg.T_i / 2 > cfg.f_s / 2:
        raise ConfigError("interference spectrum falls outside the sampled band")


@dataclass(frozen=True)
class PixelFootprint:
    """Footprint of predict_footprint in fractional pixels of a given grid."""

    row: float
    col: float
    d_row: float
    d_col: float
    row_start: float
    row_end: float
    col_start: float
    col_end: float


@dataclass(frozen=True)
class ArtefactFootprint:
    """Closed-form image-domain location and extent of one interference pulse.

    eta_i/tau_i: centre slow/fast time of the artefact in image coordinates.
    d_eta: exact azimuth extent eta_end - eta_start; d_eta_approx is the
    B_p/K_a shorthand. d_tau: range extent |(K_r - K_i)/K_r| * T_i.
    px is attached when a target grid was supplied.
    """

    eta_i: float
    tau_i: float
    d_eta: float
    d_tau: float
    eta_start: float
    eta_end: float
    d_eta_approx: float
    px: Optional[PixelFootprint] = None


@dataclass(frozen=True)
class TileReport:
    """Per-tile diagnostics from a blockwise mitigation run."""

    row0: int
    col0: int
    rows: int
    cols: int
    sigma_head: tuple
    iters: int
    feas: float


@dataclass(frozen=True)
class LowRankSplit:
    """Y = J + I split: J low-rank interference estimate, I the residual image.

    sigma holds the singular values computed by the last decomposition,
    iters the iteration count (1 for plain PCA), feas the final relative
    constraint residual ||Y - J - I||_F / ||Y||_F.
    """

    J: ComplexMatrix
    I: ComplexMatrix
    sigma: tuple
    iters: int
    feas: float
    converged: bool = True
    tiles: Optional[tuple] = None
    feas_history: Optional[tuple] = None


# --- JSON mirrors -----------------------------------------------------------

_RADAR_FIELDS = (
    "f0", "K_r", "T", "V", "B_p", "prf", "f_s", "R_ref",
    "squint_deg", "N_a", "N_r", "eta0", "tau0",
)
_INTERF_FIELDS = ("K_i", "T_i", "f_i0", "R_i", "gamma_i", "pulse_index")


def _complex_from_json(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ConfigError(f"cannot read complex value from {v!r}")


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def radar_config_from_dict(d):
    missing = [k for k in _RADAR_FIELDS if k not in d]
    if missing:
        raise ConfigError(f"radar config missing fields: {missing}")
    kwargs = {k: d[k] for k in _RADAR_FIELDS}
    kwargs["N_a"] = int(kwargs["N_a"])
    kwargs["N_r"] = int(kwargs["N_r"])
    return RadarConfig(**kwargs)


def interference_config_from_dict(d):
    missing = [k for k in _INTERF_FIELDS if k not in d]
    if missing:
        raise ConfigError(f"interference config missing fields: {missing}")
    kwargs = {k: d[k] for k in _INTERF_FIELDS}
    kwargs["gamma_i"] = _complex_from_json(kwargs["gamma_i"])
    kwargs["pulse_index"] = int(kwargs["pulse_index"])
    return InterferenceConfig(**kwargs)


def radar_config_to_dict(cfg):
    return {k: getattr(cfg, k) for k in _RADAR_FIELDS}


def interference_config_to_dict(icfg):
    d = {k: getattr(icfg, k) for k in _INTERF_FIELDS}
    d["gamma_i"] = complex_to_json(d["gamma_i"])
    return d
