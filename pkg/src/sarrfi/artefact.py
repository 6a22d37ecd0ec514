"""Closed-form model of the focused interference artefact.

A single LFM pulse that enters the receiver spreads, after omega-K focusing,
into a two-dimensional chirp patch. This module predicts where the patch
lands and how wide it is, evaluates the stationary-phase closed form on an
image grid, builds its separable rank-one factorization, and bounds the rank
of the Taylor-expanded residual coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C

from .core import ArtefactFootprint, ComplexMatrix, PixelFootprint, validate_pair
from .focusing import d_factor


class SincModeError(ValueError):
    """Raised when K_r == K_i: compression degenerates to a sinc, and the
    dispersed-chirp model here does not apply."""


def k_i_prime(K_r, K_i):
    """Effective range rate K_i*K_r/(K_r - K_i) of the mismatched compression."""
    if K_r == K_i:
        raise SincModeError("K_r == K_i collapses the artefact to a sinc ridge")
    return K_i * K_r / (K_r - K_i)


def doppler_rate(cfg, R0):
    """Azimuth FM rate K_a = 2 V^2 f0 / (c R0) at slant range R0."""
    return 2 * cfg.V ** 2 * cfg.f0 / (C * R0)


@dataclass(frozen=True)
class DerivedRates:
    K_a: float         # azimuth FM rate at the interferer range R_i
    K_a_ref: float     # azimuth FM rate at the focuser reference range
    K_i_prime: float


def derived_rates(cfg, icfg):
    return DerivedRates(
        K_a=doppler_rate(cfg, icfg.R_i),
        K_a_ref=doppler_rate(cfg, cfg.R_ref),
        K_i_prime=k_i_prime(cfg.K_r, icfg.K_i),
    )


def doppler_to_eta(cfg, R0, f_eta):
    """Invert the azimuth time-frequency map 2 V^2 f0 eta / (c sqrt(R0^2 + V^2 eta^2)).

    eta(f) = f / (K_a * sqrt(1 - c^2 f^2 / (4 V^2 f0^2))) with K_a taken at R0.
    """
    return np.asarray(f_eta, dtype=float) / (doppler_rate(cfg, R0) * d_factor(f_eta, cfg))


def eta_to_doppler(cfg, R0, eta):
    """Forward azimuth time-frequency map at slant range R0."""
    eta = np.asarray(eta, dtype=float)
    return 2 * cfg.V ** 2 * cfg.f0 * eta / (C * np.sqrt(R0 ** 2 + cfg.V ** 2 * eta ** 2))


def predict_footprint(cfg, icfg, grid=None):
    """Predict the image-domain box occupied by one interference pulse.

    The azimuth centre and edges come from the exact map doppler_to_eta at
    the interferer range; the range centre is
    tau_i = 2 (R_i/c - R_ref/(c D(f_etac)) - f_i0/K_i) on the image fast-time
    axis and the range extent is |(K_r - K_i)/K_r| * T_i. Passing an image
    grid attaches fractional pixel coordinates.
    """
    validate_pair(cfg, icfg)
    fdc = cfg.f_etac
    eta_i = float(doppler_to_eta(cfg, icfg.R_i, fdc))
    eta_start = float(doppler_to_eta(cfg, icfg.R_i, fdc - cfg.B_p / 2))
    eta_end = float(doppler_to_eta(cfg, icfg.R_i, fdc + cfg.B_p / 2))
    d_eta = eta_end - eta_start
    d_eta_approx = cfg.B_p / doppler_rate(cfg, icfg.R_i)
    if icfg.K_i == 0:
        if icfg.f_i0 != 0:
            raise ValueError("f_i0 offset undefined for a zero-rate interference pulse")
        shift = 0.0
    else:
        shift = icfg.f_i0 / icfg.K_i
    tau_i = 2 * (icfg.R_i / C - cfg.R_ref / (C * float(d_factor(fdc, cfg))) - shift)
    d_tau = abs((cfg.K_r - icfg.K_i) / cfg.K_r) * icfg.T_i
    px = None
    if grid is not None:
        r0, c0 = grid.axis_eta.to_index(eta_i), grid.axis_tau.to_index(tau_i)
        px = PixelFootprint(
            row=float(r0),
            col=float(c0),
            d_row=d_eta / grid.axis_eta.step,
            d_col=d_tau / grid.axis_tau.step,
            row_start=float(grid.axis_eta.to_index(eta_start)),
            row_end=float(grid.axis_eta.to_index(eta_end)),
            col_start=float(grid.axis_tau.to_index(tau_i - d_tau / 2)),
            col_end=float(grid.axis_tau.to_index(tau_i + d_tau / 2)),
        )
    return ArtefactFootprint(
        eta_i=eta_i, tau_i=tau_i, d_eta=d_eta, d_tau=d_tau,
        eta_start=eta_start, eta_end=eta_end, d_eta_approx=d_eta_approx, px=px,
    )


def _image_axes(cfg, grid):
    if grid is not None:
        return grid.axis_eta, grid.axis_tau, grid.rows, grid.cols
    return cfg.eta_axis, cfg.image_tau_axis, cfg.N_a, cfg.N_r


def constant_phase(cfg, icfg):
    """Residual constant C = -4 pi R_i (f_i - f_i0)/c - pi f_i0^2/K_i.

    With f_i = f0 + f_i0 the first term is just the carrier round trip.
    Kept so complex comparisons against simulation differ by one global
    phase only.
    """
    phase = -4 * np.pi * icfg.R_i * cfg.f0 / C
    if icfg.f_i0 != 0:
        if icfg.K_i == 0:
            raise ValueError("f_i0 offset undefined for a zero-rate interference pulse")
        phase -= np.pi * icfg.f_i0 ** 2 / icfg.K_i
    return phase


def artefact_closed_form(cfg, icfg, grid=None):
    """Evaluate the stationary-phase artefact model on an image grid.

    gamma_i * rect over the exact azimuth gate * rect over the dispersed
    range window * exp(j (pi K_i' (tau - tau_i)^2 + pi K_a eta^2
    + 4 pi R0 f0 / c + C)), everything evaluated at R0 = R_i.
    """
    fp = predict_footprint(cfg, icfg)
    rates = derived_rates(cfg, icfg)
    eta_axis, tau_axis, rows, cols = _image_axes(cfg, grid)
    eta = eta_axis.values(rows)
    tau = tau_axis.values(cols)
    az_gate = np.abs(eta_to_doppler(cfg, icfg.R_i, eta) - cfg.f_etac) <= cfg.B_p / 2
    rg_width = abs(icfg.K_i / rates.K_i_prime) * icfg.T_i
    rg_gate = np.abs(tau - fp.tau_i) <= rg_width / 2
    phase_rg = np.pi * rates.K_i_prime * (tau - fp.tau_i) ** 2
    phase_az = np.pi * rates.K_a * eta ** 2
    const = 4 * np.pi * icfg.R_i * cfg.f0 / C + constant_phase(cfg, icfg)
    data = (
        icfg.gamma_i
        * np.outer(az_gate * np.exp(1j * phase_az), rg_gate * np.exp(1j * phase_rg))
        * np.exp(1j * const)
    )
    return ComplexMatrix(data=data, axis_eta=eta_axis, axis_tau=tau_axis, domain_tag="image")


def rank1_model(cfg, icfg, grid=None):
    """Separable factors (u, v) of the artefact with azimuth terms frozen at R_ref.

    u(eta) = rect((K_a_ref eta - f_etac)/B_p) exp(j pi K_a_ref eta^2 + j C)
    v(tau) = rect((tau - tau_i)/((K_i/K_i') T_i)) exp(j pi K_i' (tau - tau_i)^2
             + j 4 pi R_i f0 / c)

    The product gamma_i * outer(u, v) estimates the artefact.
    """
    fp = predict_footprint(cfg, icfg)
    rates = derived_rates(cfg, icfg)
    eta_axis, tau_axis, rows, cols = _image_axes(cfg, grid)
    eta = eta_axis.values(rows)
    tau = tau_axis.values(cols)
    u_gate = np.abs(rates.K_a_ref * eta - cfg.f_etac) <= cfg.B_p / 2
    u = u_gate * np.exp(1j * (np.pi * rates.K_a_ref * eta ** 2 + constant_phase(cfg, icfg)))
    rg_width = abs(icfg.K_i / rates.K_i_prime) * icfg.T_i
    v_gate = np.abs(tau - fp.tau_i) <= rg_width / 2
    v = v_gate * np.exp(
        1j * (np.pi * rates.K_i_prime * (tau - fp.tau_i) ** 2 + 4 * np.pi * icfg.R_i * cfg.f0 / C)
    )
    return u, v


def rank1_estimate(cfg, icfg, grid=None):
    """gamma_i * outer(u, v) as a ComplexMatrix on the image grid."""
    u, v = rank1_model(cfg, icfg, grid)
    eta_axis, tau_axis, _, _ = _image_axes(cfg, grid)
    return ComplexMatrix(
        data=icfg.gamma_i * np.outer(u, v),
        axis_eta=eta_axis, axis_tau=tau_axis, domain_tag="image",
    )


def least_squares_scale(model, target):
    """Complex alpha minimizing ||target - alpha*model||_F.

    The closed form keeps absolute phase only up to one global constant and
    makes no statement about absolute amplitude after unitary focusing, so
    comparisons against simulation fit this one scalar first.
    """
    a = model.data if isinstance(model, ComplexMatrix) else np.asarray(model)
    b = target.data if isinstance(target, ComplexMatrix) else np.asarray(target)
    denom = np.vdot(a, a)
    if denom == 0:
        raise ValueError("model is identically zero")
    return complex(np.vdot(a, b) / denom)


def taylor_rank_bound(n):
    """Separable-term count of the order-n Taylor coupling expansion.

    sum_{p=1..n} sum_{q=0..p} C(p, q) terms, i.e. sum of 2^p.
    """
    if n < 1:
        raise ValueError("expansion order must be >= 1")
    return sum(sum(math.comb(p, q) for q in range(p + 1)) for p in range(1, n + 1))
