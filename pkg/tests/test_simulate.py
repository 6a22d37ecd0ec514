"""Raw echo synthesis: gates, phase law, linearity, interference injection."""

import numpy as np
import pytest
from scipy.constants import c as C

from sarrfi import (
    ConfigError,
    PointScatterer,
    Scene,
    inject_interference,
    instantaneous_doppler,
    interference_row,
    simulate_echo,
    slant_range,
)
from profiles import small_cfg, small_interf


def _one(cfg, x0=0.0, R0=1e5, gamma0=1.0):
    return Scene(scatterers=(PointScatterer(gamma0=gamma0, x0=x0, R0=R0),))


def test_empty_scene_is_all_zero():
    cfg = small_cfg(n_a=64, n_r=64)
    raw = simulate_echo(Scene(scatterers=()), cfg)
    assert raw.domain_tag == "raw"
    assert not raw.data.any()


def test_row_matches_scalar_echo_model():
    # Re-derive one gated row with scalar math straight from the echo law
    # gamma * rect((tau-2R/c)/T) * exp(j pi K_r (tau-2R/c)^2) * exp(-4j pi f0 R / c).
    cfg = small_cfg()
    scene = _one(cfg, x0=40.0, R0=1e5 + 30.0, gamma0=0.7 - 0.2j)
    raw = simulate_echo(scene, cfg).data

    scat = scene.scatterers[0]
    m = 130
    eta = cfg.eta0 + m / cfg.prf
    r = float(slant_range(cfg, scat, eta))
    tau = cfg.tau0 + np.arange(cfg.N_r) / cfg.f_s
    u = tau - 2 * r / C
    expect = np.where(
        np.abs(u) <= cfg.T / 2,
        scat.gamma0 * np.exp(1j * np.pi * cfg.K_r * u * u) * np.exp(-4j * np.pi * cfg.f0 * r / C),
        0.0,
    )
    fd = float(instantaneous_doppler(cfg, scat, eta))
    assert abs(fd - cfg.f_etac) <= cfg.B_p / 2  # row is inside the gate
    assert np.allclose(raw[m], expect, atol=1e-12)


def test_doppler_gate_is_hard():
    cfg = small_cfg()
    scene = _one(cfg)
    raw = simulate_echo(scene, cfg).data
    eta = cfg.eta0 + np.arange(cfg.N_a) / cfg.prf
    fd = instantaneous_doppler(cfg, scene.scatterers[0], eta)
    inside = np.abs(fd - cfg.f_etac) <= cfg.B_p / 2
    row_energy = np.abs(raw).sum(axis=1)
    assert np.all(row_energy[~inside] == 0.0)
    assert np.all(row_energy[inside] > 0.0)
    # gate width in rows ~ B_p/K_a * prf
    assert 70 <= inside.sum() <= 100


def test_scatterer_outside_gate_leaves_data_empty():
    cfg = small_cfg(n_a=64)
    # beam centre crossing far outside the sampled slow-time window
    raw = simulate_echo(_one(cfg, x0=7100.0 * 5.0), cfg)
    assert not raw.data.any()


def test_echo_is_linear_in_the_scene():
    cfg = small_cfg()
    a = PointScatterer(gamma0=1.0, x0=-60.0, R0=1e5 - 40.0)
    b = PointScatterer(gamma0=0.3 + 1j, x0=90.0, R0=1e5 + 55.0)
    both = simulate_echo(Scene(scatterers=(a, b)), cfg).data
    parts = (simulate_echo(Scene(scatterers=(a,)), cfg).data
             + simulate_echo(Scene(scatterers=(b,)), cfg).data)
    scale = np.abs(both).max()
    assert np.allclose(both, parts, atol=1e-12 * scale)


def test_gamma_scales_echo_exactly():
    cfg = small_cfg(n_a=96)
    base = simulate_echo(_one(cfg, gamma0=1.0), cfg).data
    scaled = simulate_echo(_one(cfg, gamma0=2.0 - 1.0j), cfg).data
    assert np.allclose(scaled, (2.0 - 1.0j) * base, atol=1e-12)


def test_interference_touches_one_row_only():
    cfg = small_cfg()
    icfg = small_interf(gamma_i=0.5 + 0.5j)
    raw = simulate_echo(_one(cfg), cfg)
    dirty = inject_interference(raw, cfg, icfg)
    diff = dirty.data - raw.data
    hit = np.where(np.abs(diff).sum(axis=1) > 0)[0]
    assert hit.tolist() == [icfg.pulse_index]
    # on an empty scene the injected row is bit-exact
    empty = simulate_echo(Scene(scatterers=()), cfg)
    only = inject_interference(empty, cfg, icfg)
    assert np.array_equal(only.data[icfg.pulse_index], interference_row(cfg, icfg))


def test_interference_row_matches_scalar_model():
    cfg = small_cfg()
    icfg = small_interf(gamma_i=1.2, f_i0=2e5)
    row = interference_row(cfg, icfg)
    tau = cfg.tau0 + np.arange(cfg.N_r) / cfg.f_s
    u = tau - 2 * icfg.R_i / C
    f_i = cfg.f0 + icfg.f_i0
    expect = np.where(
        np.abs(u) <= icfg.T_i / 2,
        icfg.gamma_i
        * np.exp(1j * np.pi * icfg.K_i * u * u)
        * np.exp(2j * np.pi * icfg.f_i0 * tau)
        * np.exp(-4j * np.pi * f_i * icfg.R_i / C),
        0.0,
    )
    assert np.allclose(row, expect, atol=1e-12)
    width = int(round(icfg.T_i * cfg.f_s))
    assert width - 2 <= np.count_nonzero(row) <= width + 2


def test_inject_rejects_missed_window_and_wrong_domain():
    cfg = small_cfg(n_a=64, n_r=64)
    raw = simulate_echo(Scene(scatterers=()), cfg)
    far = small_interf(n_a=64)
    far = type(far)(K_i=far.K_i, T_i=far.T_i, f_i0=far.f_i0,
                    R_i=2e5, gamma_i=far.gamma_i, pulse_index=far.pulse_index)
    with pytest.raises(ConfigError):
        inject_interference(raw, cfg, far)
    img = raw.with_data(raw.data)
    object.__setattr__(img, "domain_tag", "image")
    with pytest.raises(ConfigError):
        inject_interference(img, cfg, small_interf(n_a=64))
