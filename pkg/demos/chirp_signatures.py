"""Read the artefact's chirp rates off its spectrogram ridges.

After focusing, the artefact keeps a residual range chirp at the composite
rate K_i K_r / (K_r - K_i) and sweeps in azimuth at the Doppler rate of the
interferer's range. Both slopes are measurable from short-time spectra of a
single image line, which is how you would fingerprint an interferer in a
real product.
"""

import numpy as np

from sarrfi import (c_band_interference, c_band_profile, doppler_rate,
                    k_i_prime, predict_footprint, ridge_slope,
                    simulate_artefact, stft)

cfg = c_band_profile(0.6, n_a=4096, n_r=2048)
icfg = c_band_interference(4096)
img = simulate_artefact(cfg, icfg)
fp = predict_footprint(cfg, icfg, grid=img)

kp = k_i_prime(cfg.K_r, icfg.K_i)
ka = doppler_rate(cfg, icfg.R_i)

r0, c0 = int(round(fp.px.row)), int(round(fp.px.col))
pad_c = int(0.1 * fp.px.d_col)
c_lo, c_hi = int(fp.px.col_start) - pad_c, int(fp.px.col_end) + pad_c
# window ~ sqrt(f_s/|K'_i|) samples rides the chirp with the least smearing
spec = stft(img.data[r0, c_lo:c_hi], cfg.f_s, window_len=64, hop=16)
est = ridge_slope(spec)
print(f"range ridge:   {est:+.4e} Hz/s  (composite rate {kp:+.4e}, "
      f"off by {abs(est - kp) / abs(kp) * 100:.2f}%)")

pad_r = int(0.1 * fp.px.d_row)
r_lo, r_hi = int(fp.px.row_start) - pad_r, int(fp.px.row_end) + pad_r
spec = stft(img.data[r_lo:r_hi, c0], cfg.prf)
est = ridge_slope(spec)
print(f"azimuth ridge: {est:+.4e} Hz/s  (Doppler rate   {ka:+.4e}, "
      f"off by {abs(est - ka) / abs(ka) * 100:.2f}%)")
print(f"spectrogram grid: {spec.values.shape[0]} frames x "
      f"{spec.values.shape[1]} bins")
