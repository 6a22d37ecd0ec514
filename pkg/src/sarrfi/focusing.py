"""Approximated omega-K focusing.

Five steps: 2-D forward FFT, reference function multiply at the reference
range, range IFFT, residual azimuth matched filter per range gate, azimuth
IFFT. All transforms are unitary (norm="ortho") so every stage holds the same
energy. The two phase multiplies are strictly unit modulus.

Grid conventions worth spelling out once:

* The azimuth spectrum is interpreted on a Doppler grid centred at the
  centroid f_etac: every FFT bin frequency is unfolded by a whole number of
  PRFs into (f_etac - prf/2, f_etac + prf/2]. On grid-aligned sample times
  the unfolded and folded complex exponentials agree exactly, so no explicit
  time-domain deramp is needed.
* The range DFT references phases to the first sample. The reference multiply
  therefore carries one extra linear phase that rebases fast time from the
  raw window (starting at tau0) onto the output axis, whose zero is the
  two-way delay of R_ref. Output range time tau then maps to slant range via
  R0 = R_ref + c*tau/2, which feeds the per-gate azimuth filter.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft
from scipy.constants import c as C

from .core import Axis, ComplexMatrix, ConfigError

log = logging.getLogger(__name__)


def d_factor(f_eta, cfg):
    """Hyperbolic Doppler factor sqrt(1 - c^2 f_eta^2 / (4 V^2 f0^2)).

    Raises ValueError outside the domain c*|f_eta| < 2*V*f0.
    """
    x = C * np.asarray(f_eta, dtype=float) / (2 * cfg.V * cfg.f0)
    arg = 1.0 - x * x
    if np.any(arg <= 0):
        raise ValueError("f_eta outside the hyperbolic domain c*|f_eta| < 2*V*f0")
    return np.sqrt(arg)


def lfm_spectrum(K, T, f):
    """Stationary-phase spectrum of rect(t/T)*exp(j*pi*K*t^2).

    rect((f)/(K*T)) * exp(-j*pi*f^2/K), zero outside |f| <= |K|*T/2.
    """
    if K == 0:
        raise ValueError("chirp rate K must be nonzero")
    f = np.asarray(f, dtype=float)
    env = np.abs(f) <= abs(K) * T / 2
    return env * np.exp(-1j * np.pi * f * f / K)


def unfold_doppler(f_fold, f_etac, prf):
    """Shift folded FFT bin frequencies by whole PRFs to land nearest f_etac."""
    f_fold = np.asarray(f_fold, dtype=float)
    return f_fold + prf * np.round((f_etac - f_fold) / prf)


@dataclass(frozen=True)
class FocusPlan:
    """Precomputed grids for focusing one cfg: frequency axes, range gates."""

    f_eta: np.ndarray        # unfolded Doppler per azimuth FFT bin [Hz]
    f_tau: np.ndarray        # baseband range frequency per range FFT bin [Hz]
    R0: np.ndarray           # slant range per output gate [m]
    tau_image: Axis          # output fast-time axis, zero at R_ref

    @classmethod
    def for_config(cls, cfg):
        f_eta = unfold_doppler(sfft.fftfreq(cfg.N_a, d=1.0 / cfg.prf), cfg.f_etac, cfg.prf)
        f_tau = sfft.fftfreq(cfg.N_r, d=1.0 / cfg.f_s)
        tau_image = cfg.image_tau_axis
        R0 = cfg.R_ref + C * tau_image.values(cfg.N_r) / 2
        return cls(f_eta=f_eta, f_tau=f_tau, R0=R0, tau_image=tau_image)


def reference_phase(plan, cfg):
    """Step-2 phase: bulk focus at R_ref plus range compression plus rebase."""
    fe = plan.f_eta[:, None]
    ft = plan.f_tau[None, :]
    root = np.sqrt((cfg.f0 + ft) ** 2 - (C * fe) ** 2 / (4 * cfg.V ** 2))
    theta = (4 * np.pi * cfg.R_ref / C) * root + np.pi * ft * ft / cfg.K_r
    # rebase: raw fast time starts at tau0, output fast time at tau_image.start
    theta = theta - 2 * np.pi * plan.f_tau[None, :] * (cfg.tau0 - plan.tau_image.start)
    return theta


def azimuth_match_phase(plan, cfg):
    """Step-4 phase 4*pi*(R0 - R_ref)*f0*D(f_eta)/c per range gate."""
    d = d_factor(plan.f_eta, cfg)
    return (4 * np.pi * cfg.f0 / C) * np.outer(d, plan.R0 - cfg.R_ref)


def focus_omegak(raw, cfg, capture=None, workers=None):
    """Focus a raw matrix to an image with the approximated omega-K chain.

    Parameters
    ----------
    raw : ComplexMatrix in the raw domain, shape (cfg.N_a, cfg.N_r).
    capture : optional callable (stage_name, ComplexMatrix) -> None invoked
        with "wavenumber" after the reference multiply and "range-doppler"
        after the range IFFT plus azimuth matched filter. Captured matrices
        are sorted into monotonic frequency order for inspection.
    workers : forwarded to scipy.fft for multithreaded transforms.
    """
    if raw.domain_tag != "raw":
        raise ConfigError(f"focus_omegak expects raw data, got {raw.domain_tag!r}")
    if (raw.rows, raw.cols) != (cfg.N_a, cfg.N_r):
        raise ConfigError("raw matrix shape disagrees with cfg grid")
    plan = FocusPlan.for_config(cfg)

    s = sfft.fft(raw.data, axis=0, norm="ortho", workers=workers)
    s = sfft.fft(s, axis=1, norm="ortho", workers=workers)
    s *= np.exp(1j * reference_phase(plan, cfg))
    if capture is not None:
        capture("wavenumber", _sorted_spectrum(s, plan, cfg, both=True))

    s = sfft.ifft(s, axis=1, norm="ortho", workers=workers)
    s *= np.exp(1j * azimuth_match_phase(plan, cfg))
    if capture is not None:
        capture("range-doppler", _sorted_spectrum(s, plan, cfg, both=False))

    img = sfft.ifft(s, axis=0, norm="ortho", workers=workers)
    return ComplexMatrix(
        data=img, axis_eta=raw.axis_eta, axis_tau=plan.tau_image, domain_tag="image"
    )


def _sorted_spectrum(s, plan, cfg, both):
    """Reorder spectral rows (and cols) so the stored axes increase."""
    ri = np.argsort(plan.f_eta)
    eta_axis = Axis(float(plan.f_eta[ri[0]]), cfg.prf / cfg.N_a)
    if both:
        ci = np.argsort(plan.f_tau)
        data = s[np.ix_(ri, ci)]
        tau_axis = Axis(float(plan.f_tau[ci[0]]), cfg.f_s / cfg.N_r)
        return ComplexMatrix(data=data, axis_eta=eta_axis, axis_tau=tau_axis,
                             domain_tag="wavenumber")
    data = s[ri]
    return ComplexMatrix(data=data, axis_eta=eta_axis, axis_tau=plan.tau_image,
                         domain_tag="range-doppler")
