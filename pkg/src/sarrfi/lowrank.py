"""Low-rank interference removal: truncated SVD and robust PCA.

Both mitigators split the focused image Y into J (low-rank interference
estimate) and I (recovered image) with Y = J + I. PCA keeps the top K
singular components; robust PCA solves the principal component pursuit
program min ||J||_* + mu ||I||_1 s.t. J + I = Y with the inexact augmented
Lagrangian method, whose two prox steps are singular value thresholding and
complex soft thresholding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Axis, ComplexMatrix, LowRankSplit, TileReport

log = logging.getLogger(__name__)


def _as_matrix(y):
    if isinstance(y, ComplexMatrix):
        return y
    arr = np.asarray(y, dtype=np.complex128)
    return ComplexMatrix(
        data=arr, axis_eta=Axis(0.0, 1.0), axis_tau=Axis(0.0, 1.0), domain_tag="image"
    )


def svd(m):
    """Full SVD: returns (U, sigma, V) with m = U @ diag(sigma) @ V^H."""
    a = m.data if isinstance(m, ComplexMatrix) else np.asarray(m)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return u, s, vh.conj().T


def pca_mitigate(y, rank):
    """Remove the top-`rank` singular components of y.

    Ties at the truncation boundary keep the first `rank` columns in LAPACK
    order. I is computed as y - J elementwise, exactly as written.
    """
    m = _as_matrix(y)
    if not 0 < rank <= min(m.rows, m.cols):
        raise ValueError(f"rank must be in 1..{min(m.rows, m.cols)}, got {rank}")
    u, s, v = svd(m)
    j = (u[:, :rank] * s[:rank]) @ v[:, :rank].conj().T
    i = m.data - j
    return LowRankSplit(
        J=m.with_data(j),
        I=m.with_data(i),
        sigma=tuple(float(x) for x in s),
        iters=1,
        feas=0.0,
        converged=True,
    )


def soft_threshold(x, t):
    """Complex soft threshold x * max(1 - t/|x|, 0); phase preserving."""
    if t < 0:
        raise ValueError("threshold must be >= 0")
    x = np.asarray(x)
    mag = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(mag > t, 1.0 - t / np.where(mag > 0, mag, 1.0), 0.0)
    return x * scale


def svt(x, t):
    """Singular value thresholding: shrink the spectrum of x by t.

    Returns (result, sigma) where sigma are the unshrunk singular values.
    """
    u, s, vh = np.linalg.svd(np.asarray(x), full_matrices=False)
    keep = np.maximum(s - t, 0.0)
    return (u * keep) @ vh, s


@dataclass(frozen=True)
class RpcaOptions:
    """Knobs of the inexact ALM solver.

    mu defaults to 1/sqrt(max(rows, cols)); rho0 to 1.25/sigma_1(Y). rho
    grows by rho_growth per iteration, capped at 1e7*rho0.
    """

    mu: Optional[float] = None
    rho0: Optional[float] = None
    rho_growth: float = 1.6
    max_iters: int = 40
    tol: float = 1e-7


def rpca_mitigate(y, opts=None):
    """Principal component pursuit split of y via inexact ALM.

    Iterates J <- svt(Y - I + Xi/rho, 1/rho), I <- soft(Y - J + Xi/rho,
    mu/rho), Xi <- Xi + rho (Y - J - I), growing rho each pass, until the
    relative constraint residual drops under opts.tol or max_iters is hit.
    """
    m = _as_matrix(y)
    opts = opts or RpcaOptions()
    Y = m.data
    norm_y = np.linalg.norm(Y)
    if norm_y == 0:
        z = m.with_data(np.zeros_like(Y))
        return LowRankSplit(J=z, I=z, sigma=(), iters=0, feas=0.0, converged=True)
    mu = opts.mu if opts.mu is not None else 1.0 / np.sqrt(max(Y.shape))
    sigma1 = np.linalg.norm(Y, 2)
    rho0 = opts.rho0 if opts.rho0 is not None else 1.25 / sigma1
    rho, rho_cap = rho0, 1e7 * rho0
    # dual ascent start, scaled so the first multiplier step is feasible-ish
    xi = Y / max(sigma1, np.abs(Y).max() / mu)
    J = np.zeros_like(Y)
    I = np.zeros_like(Y)
    sigma = ()
    feas = np.inf
    iters = 0
    history = []
    for iters in range(1, opts.max_iters + 1):
        J, s = svt(Y - I + xi / rho, 1.0 / rho)
        if not np.all(np.isfinite(J)):
            raise FloatingPointError(f"rpca diverged at iteration {iters}")
        sigma = tuple(float(v) for v in s)
        I = soft_threshold(Y - J + xi / rho, mu / rho)
        resid = Y - J - I
        xi = xi + rho * resid
        feas = float(np.linalg.norm(resid) / norm_y)
        history.append(feas)
        if feas <= opts.tol:
            break
        rho = min(rho * opts.rho_growth, rho_cap)
    converged = feas <= opts.tol
    if not converged:
        log.warning("rpca stopped at feas=%.3e after %d iters", feas, iters)
    return LowRankSplit(
        J=m.with_data(J), I=m.with_data(I),
        sigma=sigma, iters=iters, feas=feas, converged=converged,
        feas_history=tuple(history),
    )


def blockwise(y, block, fn):
    """Apply a mitigation fn tile by tile and reassemble the split.

    block is (rows, cols); the partition is non-overlapping with smaller
    edge tiles. fn maps a ComplexMatrix tile to a LowRankSplit. Per-tile
    diagnostics land in the result's tiles tuple; a tile failure is reraised
    with its grid coordinates prepended.
    """
    m = _as_matrix(y)
    br, bc = int(block[0]), int(block[1])
    if br < 2 or bc < 2:
        raise ValueError("block dims must be >= 2")
    J = np.empty_like(m.data)
    I = np.empty_like(m.data)
    tiles = []
    worst_feas = 0.0
    total_iters = 0
    all_converged = True
    for r0 in range(0, m.rows, br):
        for c0 in range(0, m.cols, bc):
            sub = m.data[r0:r0 + br, c0:c0 + bc]
            tile = ComplexMatrix(
                data=sub,
                axis_eta=Axis(m.axis_eta.from_index(r0), m.axis_eta.step),
                axis_tau=Axis(m.axis_tau.from_index(c0), m.axis_tau.step),
                domain_tag=m.domain_tag,
            )
            try:
                split = fn(tile)
            except Exception as exc:
                raise RuntimeError(f"tile at ({r0}, {c0}) failed: {exc}") from exc
            J[r0:r0 + br, c0:c0 + bc] = split.J.data
            I[r0:r0 + br, c0:c0 + bc] = split.I.data
            tiles.append(TileReport(
                row0=r0, col0=c0, rows=sub.shape[0], cols=sub.shape[1],
                sigma_head=tuple(split.sigma[:8]), iters=split.iters,
                feas=split.feas,
            ))
            worst_feas = max(worst_feas, split.feas)
            total_iters += split.iters
            all_converged = all_converged and split.converged
    return LowRankSplit(
        J=m.with_data(J), I=m.with_data(I),
        sigma=tiles[0].sigma_head if tiles else (),
        iters=total_iters, feas=worst_feas, converged=all_converged,
        tiles=tuple(tiles),
    )
