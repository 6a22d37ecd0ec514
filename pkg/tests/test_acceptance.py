"""Release gate: nine numbered end-to-end checks, one verdict line each.

Every check pins its tolerance in the assertion and prints the measured
numbers before asserting, so a red line always comes with the evidence.
Checks 1 and 2 are currently red and are left asserting their stated
tolerances: the focused artefact grows Fresnel skirts past the flat-gate
support model, and the measured edges sit tens of pixels outside the
predicted box. The numbers are printed by the failing tests.
"""

import subprocess
import time
from dataclasses import replace
from types import SimpleNamespace

import numpy as np
import pytest
from scipy.sparse.linalg import svds

from sarrfi import (
    Axis,
    ComplexMatrix,
    PointScatterer,
    RpcaOptions,
    Scene,
    c_band_interference,
    c_band_profile,
    doppler_rate,
    focus_omegak,
    inject_interference,
    k_i_prime,
    least_squares_scale,
    measure_support,
    pca_mitigate,
    predict_footprint,
    rank1_estimate,
    rank_error_curve,
    relative_error,
    ridge_slope,
    rpca_mitigate,
    simulate_artefact,
    simulate_echo,
    singular_values,
    soft_threshold,
    stft,
    svt,
)
from profiles import small_cfg, small_interf

SQUINTS = (0.6, 0.0, -0.6)
RANGE_EXTENT_S = 2.475e-5  # |(K_r - K_i)/K_r| * T_i for the reference profile


def _image(data):
    return ComplexMatrix(data=np.asarray(data, dtype=np.complex128),
                         axis_eta=Axis(0.0, 1.0), axis_tau=Axis(0.0, 1.0),
                         domain_tag="image")


@pytest.fixture(scope="module")
def artefact_images():
    """Reference-profile artefact, simulated and focused, per squint."""
    out = {}
    for sq in SQUINTS:
        cfg = c_band_profile(sq)
        icfg = c_band_interference()
        t0 = time.perf_counter()
        img = simulate_artefact(cfg, icfg)
        wall = time.perf_counter() - t0
        fp = predict_footprint(cfg, icfg, grid=img)
        out[sq] = SimpleNamespace(cfg=cfg, icfg=icfg, img=img, fp=fp, wall=wall)
    return out


def test_criterion_1_footprint_box_matches_prediction(artefact_images):
    rows = []
    for sq in SQUINTS:
        e = artefact_images[sq]
        box = measure_support(e.img, threshold_db=20.0)
        px = e.fp.px
        offsets = (box.row_min - px.row_start, box.row_max - px.row_end,
                   box.col_min - px.col_start, box.col_max - px.col_end)
        extent_s = (box.col_max - box.col_min) / e.cfg.f_s
        rows.append((sq, offsets, extent_s, e.wall))
        print(f"criterion 1 squint {sq:+.1f}: edge offsets px "
              f"({offsets[0]:+.1f}, {offsets[1]:+.1f}, {offsets[2]:+.1f}, "
              f"{offsets[3]:+.1f}), range extent {extent_s:.4e} s "
              f"(target {RANGE_EXTENT_S:.4e} +-2%), sim+focus {e.wall:.1f} s")
    for sq, offsets, extent_s, wall in rows:
        assert wall <= 120.0
        for off in offsets:
            assert abs(off) <= 2.0, f"squint {sq}: -20 dB edge {off:+.1f} px out"
        assert abs(extent_s - RANGE_EXTENT_S) <= 0.02 * RANGE_EXTENT_S


def test_criterion_2_rank1_error_brackets(artefact_images):
    e = artefact_images[0.0]
    err1 = rank_error_curve(e.img, 1, rng=np.random.default_rng(7))[0][1]

    est = rank1_estimate(e.cfg, e.icfg, grid=e.img)
    vs_img = relative_error(e.img, est.data * least_squares_scale(est, e.img))

    v0 = np.random.default_rng(7).standard_normal(min(e.img.data.shape))
    u, s, vh = svds(e.img.data, k=1, v0=v0)
    pca1 = (u * s) @ vh
    vs_pca1 = relative_error(pca1, est.data * least_squares_scale(est, pca1))

    print(f"criterion 2: rank-1 truncation error {err1:.4f} (window 0.03..0.12), "
          f"closed-form vs image {vs_img:.4f}, "
          f"closed-form vs top singular pair {vs_pca1:.4f} (limit 0.02)")
    assert 0.03 <= err1 <= 0.12
    assert vs_pca1 <= 0.02


def test_criterion_3_low_rank_sufficiency(artefact_images):
    e = artefact_images[0.6]
    curve = rank_error_curve(e.img, 40, rng=np.random.default_rng(7))
    errs = dict(curve)
    s = singular_values(e.img, 100, rng=np.random.default_rng(7))
    print(f"criterion 3: error(30) {errs[30]:.3e} (limit 1e-5), "
          f"sigma40/sigma1 {s[39] / s[0]:.3e} (limit 1e-3)")
    assert errs[30] <= 1e-5
    tail = [err for _, err in curve]
    assert all(a >= b - 1e-15 for a, b in zip(tail, tail[1:]))
    assert s[39] < 1e-3 * s[0]


def test_criterion_4_pca_truncation_is_optimal():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        y = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        k = int(rng.integers(1, 8))
        split = pca_mitigate(_image(y), rank=k)
        s = np.linalg.svd(y, compute_uv=False)
        tail = float(np.sum(s[k:] ** 2))
        resid = float(np.linalg.norm(y - split.J.data) ** 2)
        worst = max(worst, abs(resid - tail) / tail)
        assert abs(resid - tail) <= 1e-10 * tail
    print(f"criterion 4: worst relative gap to the singular tail {worst:.2e}")


def test_criterion_5_rpca_recovers_benchmark_split():
    rng = np.random.default_rng(7)
    u = rng.standard_normal((20, 2)) + 1j * rng.standard_normal((20, 2))
    v = rng.standard_normal((20, 2)) + 1j * rng.standard_normal((20, 2))
    u /= np.linalg.norm(u, axis=0)
    v /= np.linalg.norm(v, axis=0)
    low = u @ v.conj().T
    mask = rng.random((20, 20)) < 0.05
    phases = np.exp(2j * np.pi * rng.random((20, 20)))
    sparse = np.where(mask, 5.0 * phases, 0.0)

    t0 = time.perf_counter()
    split = rpca_mitigate(_image(low + sparse),
                          RpcaOptions(mu=1.0 / np.sqrt(20)))
    wall = time.perf_counter() - t0
    rec = np.linalg.norm(split.J.data - low, "fro") / np.linalg.norm(low, "fro")
    print(f"criterion 5: recovery {rec:.3e} (limit 1e-3), iters {split.iters} "
          f"(limit 40), feas {split.feas:.2e} (limit 1e-7), {wall * 1e3:.0f} ms")
    assert rec <= 1e-3
    assert split.iters <= 40
    assert split.feas <= 1e-7
    assert wall <= 1.0


def test_criterion_6_mitigation_on_five_scatterer_scene():
    c = 299792458.0
    cfg = small_cfg(n_a=512, n_r=512)
    icfg = small_interf(n_a=512)
    stub = SimpleNamespace(axis_eta=cfg.eta_axis, axis_tau=cfg.image_tau_axis)
    fp = predict_footprint(cfg, icfg, grid=stub)

    # two scatterers inside the artefact box, three outside
    rows = np.array([fp.px.row, fp.px.row, 80.0, 430.0, 256.0])
    cols = np.array([fp.px.col - 60.0, fp.px.col + 60.0, 100.0, 400.0, 60.0])
    eta_c = cfg.eta0 + rows / cfg.prf
    tau_img = cfg.image_tau_axis.start + cols / cfg.f_s
    r0 = tau_img * c / 2 + cfg.R_ref
    x0 = cfg.V * eta_c
    scene = Scene(scatterers=tuple(
        PointScatterer(gamma0=1.0, x0=float(x), R0=float(r))
        for x, r in zip(x0, r0)))

    echo = simulate_echo(scene, cfg)
    e_scene = float(np.vdot(echo.data, echo.data).real)
    probe = inject_interference(echo, cfg, icfg)
    e_unit = float(np.vdot(probe.data - echo.data, probe.data - echo.data).real)
    gamma = np.sqrt(100.0 * e_scene / e_unit)  # SIR -20 dB
    dirty = inject_interference(echo, cfg, replace(icfg, gamma_i=complex(gamma)))

    clean_img = focus_omegak(echo, cfg)
    dirty_img = focus_omegak(dirty, cfg)

    box = np.s_[int(fp.px.row_start):int(np.ceil(fp.px.row_end)) + 1,
                int(fp.px.col_start):int(np.ceil(fp.px.col_end)) + 1]
    pca = pca_mitigate(dirty_img, rank=40)
    e_before = float(np.vdot(dirty_img.data[box], dirty_img.data[box]).real)
    e_after = float(np.vdot(pca.I.data[box], pca.I.data[box]).real)
    drop_db = 10 * np.log10(e_before / e_after)

    rsplit = rpca_mitigate(dirty_img)

    def peak(img, r, col, h=6):
        rr, cc = int(round(r)), int(round(col))
        win = img[max(rr - h, 0):rr + h + 1, max(cc - h, 0):cc + h + 1]
        return float(np.abs(win).max())

    errs = []
    for r, col in zip(rows, cols):
        p_ref = peak(clean_img.data, r, col)
        p_rpca = peak(rsplit.I.data, r, col)
        errs.append(abs(p_rpca - p_ref) / p_ref)
    print(f"criterion 6: box energy drop after rank-40 removal {drop_db:.1f} dB "
          f"(limit 20), worst peak shift after sparse split "
          f"{max(errs) * 100:.1f}% (limit 10%)")
    assert drop_db >= 20.0
    for i, err in enumerate(errs):
        assert err <= 0.10, f"scatterer {i}: peak off by {err * 100:.1f}%"


def test_criterion_7_prox_operators_exact_and_non_expansive():
    shrunk, _ = svt(np.diag([5.0, 1.0]).astype(complex), 2.0)
    assert np.abs(shrunk - np.diag([3.0, 0.0])).max() <= 1e-12
    soft = soft_threshold(np.array([3.0 + 4.0j]), 2.0)
    assert abs(soft[0] - (1.8 + 2.4j)) <= 1e-12
    rng = np.random.default_rng(23)
    for _ in range(100):
        a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        t = float(rng.uniform(0.1, 3.0))
        gap = np.linalg.norm(a - b, "fro")
        assert np.linalg.norm(soft_threshold(a, t) - soft_threshold(b, t),
                              "fro") <= gap + 1e-12
        assert np.linalg.norm(svt(a, t)[0] - svt(b, t)[0],
                              "fro") <= gap + 1e-12
    print("criterion 7: analytic prox cases exact, 100 pairs non-expansive")


def test_criterion_8_ridge_slopes_recover_chirp_rates(artefact_images):
    worst_r = worst_a = 0.0
    for sq in SQUINTS:
        e = artefact_images[sq]
        px = e.fp.px
        kp = k_i_prime(e.cfg.K_r, e.icfg.K_i)
        ka = doppler_rate(e.cfg, e.icfg.R_i)

        r0, c0 = int(round(px.row)), int(round(px.col))
        pad_c = int(0.1 * px.d_col)
        c_lo = max(0, int(px.col_start) - pad_c)
        c_hi = min(e.img.cols, int(px.col_end) + pad_c)
        # window matched to the chirp: sqrt(f_s / |K'_i|) is about 61 samples
        sl_r = ridge_slope(stft(e.img.data[r0, c_lo:c_hi], e.cfg.f_s,
                                window_len=64, hop=16))
        err_r = abs(sl_r - kp) / abs(kp)

        pad_r = int(0.1 * px.d_row)
        r_lo = max(0, int(px.row_start) - pad_r)
        r_hi = min(e.img.rows, int(px.row_end) + pad_r)
        sl_a = ridge_slope(stft(e.img.data[r_lo:r_hi, c0], e.cfg.prf))
        err_a = abs(sl_a - ka) / abs(ka)

        print(f"criterion 8 squint {sq:+.1f}: range rate {sl_r:.4e} "
              f"({err_r * 100:.2f}% of {kp:.4e}), azimuth rate {sl_a:.4e} "
              f"({err_a * 100:.2f}% of {ka:.4e})")
        worst_r = max(worst_r, err_r)
        worst_a = max(worst_a, err_a)
    assert worst_r <= 0.10
    assert worst_a <= 0.10


def test_criterion_9_repro_reports_are_byte_identical(tmp_path):
    payloads = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        run = subprocess.run(
            ["sar-rfi", "repro", "--seed", "7", "--out", str(out)],
            capture_output=True, text=True, timeout=600)
        assert run.returncode == 0, run.stderr[-800:]
        payloads.append(out.read_bytes())
    print(f"criterion 9: two runs, {len(payloads[0])} bytes each, identical "
          f"{payloads[0] == payloads[1]}")
    assert payloads[0] == payloads[1]
