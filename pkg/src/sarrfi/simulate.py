"""Raw echo synthesis: point scatterers plus one-pulse LFM interference.

The echo model is the demodulated stripmap return of isotropic point
scatterers on a stop-and-go trajectory. There is no antenna pattern; instead
each scatterer contributes only on pulses whose instantaneous Doppler lies
inside the processed band f_etac +- B_p/2, which plays the role of the
azimuth beam limits and keeps the azimuth spectrum strictly inside one PRF
interval of the Doppler-centred grid.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C

from .core import ComplexMatrix, ConfigError, validate_pair

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointScatterer:
    """Ideal point target at along-track position x0 [m], closest range R0 [m]."""

    gamma0: complex
    x0: float
    R0: float

    def __post_init__(self):
        if self.R0 <= 0:
            raise ConfigError("scatterer R0 must be positive")
        object.__setattr__(self, "gamma0", complex(self.gamma0))


@dataclass(frozen=True)
class Scene:
    scatterers: tuple

    def __post_init__(self):
        object.__setattr__(self, "scatterers", tuple(self.scatterers))


def scene_from_dict(d):
    items = d.get("scatterers")
    if items is None:
        raise ConfigError("scene config needs a 'scatterers' list")
    out = []
    for s in items:
        g = s["gamma0"]
        if isinstance(g, (list, tuple)):
            g = complex(float(g[0]), float(g[1]))
        out.append(PointScatterer(gamma0=complex(g), x0=float(s["x0"]), R0=float(s["R0"])))
    return Scene(scatterers=out)


def slant_range(cfg, scat, eta):
    """Hyperbolic range history sqrt((V*eta - x0)^2 + R0^2)."""
    return np.sqrt((cfg.V * np.asarray(eta) - scat.x0) ** 2 + scat.R0 ** 2)


def instantaneous_doppler(cfg, scat, eta):
    """2*V*(x0 - V*eta)*f0 / (c*R(eta)), the per-pulse Doppler of one target."""
    r = slant_range(cfg, scat, eta)
    return 2 * cfg.V * (scat.x0 - cfg.V * np.asarray(eta)) * cfg.f0 / (C * r)


def simulate_echo(scene, cfg):
    """Synthesize the raw data matrix for a scene of point scatterers.

    Returns a ComplexMatrix in the raw domain on the grid spelled out by cfg.
    Scatterers whose Doppler gate intersects no pulse are skipped with a
    warning; they are legal configs, just invisible.
    """
    eta = cfg.eta_axis.values(cfg.N_a)
    tau = cfg.tau_axis.values(cfg.N_r)
    data = np.zeros((cfg.N_a, cfg.N_r), dtype=np.complex128)
    fdc = cfg.f_etac
    for scat in scene.scatterers:
        fd = instantaneous_doppler(cfg, scat, eta)
        gate = np.abs(fd - fdc) <= cfg.B_p / 2
        if not gate.any():
            log.warning(
                "scatterer at x0=%.1f R0=%.1f never enters the Doppler gate", scat.x0, scat.R0
            )
            continue
        r = slant_range(cfg, scat, eta[gate])
        delay = 2 * r / C
        u = tau[None, :] - delay[:, None]
        env = np.abs(u) <= cfg.T / 2
        phase = np.exp(1j * np.pi * cfg.K_r * u * u) * np.exp(
            -4j * np.pi * cfg.f0 * r / C
        )[:, None]
        data[gate] += scat.gamma0 * env * phase
    return ComplexMatrix(
        data=data, axis_eta=cfg.eta_axis, axis_tau=cfg.tau_axis, domain_tag="raw"
    )


def interference_row(cfg, icfg):
    """The complex samples the interference adds to its single raw row."""
    tau = cfg.tau_axis.values(cfg.N_r)
    u = tau - 2 * icfg.R_i / C
    env = np.abs(u) <= icfg.T_i / 2
    f_i = cfg.f0 + icfg.f_i0
    return (
        icfg.gamma_i
        * env
        * np.exp(1j * np.pi * icfg.K_i * u * u)
        * np.exp(2j * np.pi * icfg.f_i0 * tau)
        * np.exp(-4j * np.pi * f_i * icfg.R_i / C)
    )


def inject_interference(raw, cfg, icfg):
    """Add one LFM interference pulse to row icfg.pulse_index of raw.

    Pure function: returns a new matrix. Raises ConfigError when the
    interference never overlaps the sampled fast-time window.
    """
    if raw.domain_tag != "raw":
        raise ConfigError(f"can only inject into raw data, got {raw.domain_tag!r}")
    if (raw.rows, raw.cols) != (cfg.N_a, cfg.N_r):
        raise ConfigError("raw matrix shape disagrees with cfg grid")
    validate_pair(cfg, icfg)
    t_lo = 2 * icfg.R_i / C - icfg.T_i / 2
    t_hi = 2 * icfg.R_i / C + icfg.T_i / 2
    w_lo = cfg.tau0
    w_hi = cfg.tau0 + (cfg.N_r - 1) / cfg.f_s
    if t_hi < w_lo or t_lo > w_hi:
        raise ConfigError(
            f"interference window [{t_lo:.3e}, {t_hi:.3e}] misses sampled range "
            f"[{w_lo:.3e}, {w_hi:.3e}]"
        )
    data = raw.data.copy()
    data[icfg.pulse_index] += interference_row(cfg, icfg)
    return raw.with_data(data)
