"""Small C-band test profiles shared across test modules.

Same physics as the full-size reference profile but on grids a few hundred
pixels across, so a simulate+focus round trip costs milliseconds. The grid
must keep the whole artefact box inside: the azimuth gate spans
B_p/K_a * prf ~ 86 rows and the range smear spans 75 columns at these
numbers, hence the 256-pixel default.
"""

from scipy.constants import c as C

from sarrfi import InterferenceConfig, RadarConfig


def small_cfg(squint_deg=0.0, n_a=256, n_r=256, prf=1300.0, f_s=6.25e6):
    return RadarConfig(
        f0=5.4e9, K_r=5e11, T=1e-5, V=7100.0, B_p=1200.0,
        prf=prf, f_s=f_s, R_ref=1e5, squint_deg=squint_deg,
        N_a=n_a, N_r=n_r,
        eta0=-n_a / (2 * prf),
        tau0=2 * 1e5 / C - (n_r // 2) / f_s,
    )


def small_interf(n_a=256, gamma_i=1.0, f_i0=0.0):
    return InterferenceConfig(
        K_i=-2.5e11, T_i=8e-6, f_i0=f_i0, R_i=1e5,
        gamma_i=gamma_i, pulse_index=n_a // 2,
    )
