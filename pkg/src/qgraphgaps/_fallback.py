"""numpy implementations of the compiled kernels in ``_core.pyx``."""

from __future__ import annotations

import numpy as np


def secular_batch(kl: np.ndarray, sb: np.ndarray, z: np.ndarray,
                  thetas: np.ndarray) -> np.ndarray:
    """det(I - diag(exp(i(theta.z_b + k l_b))) Sb) for every row of ``thetas``."""
    phase = np.exp(1j * (thetas @ z.T + kl[None, :]))
    nb = sb.shape[0]
    mats = np.eye(nb, dtype=np.complex128)[None] - phase[:, :, None] * sb[None]
    return np.linalg.det(mats)


def bracket(k, ell):
    x = np.asarray(k, dtype=float) * ell
    u = 0.5 * x - 0.5 * np.pi * np.floor(x / np.pi)
    u = np.where(u < 0.0, u + 0.5 * np.pi, u)
    return np.where(u >= 0.5 * np.pi, u - 0.5 * np.pi, u)


def gap_margin(ks: np.ndarray, a: float, b: float, alpha: float) -> np.ndarray:
    ks = np.asarray(ks, dtype=float)
    ua, ub = bracket(ks, a), bracket(ks, b)
    singular = (ua == 0.0) | (ub == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        if alpha > 0:
            lhs = np.tan(ua) + np.tan(ub)
        else:
            lhs = 1.0 / np.tan(ua) + 1.0 / np.tan(ub)
        out = abs(alpha) / (2.0 * ks) - lhs
    out[singular] = -np.inf
    return out


def gamma_terms(eta: float, scale: float, mmax: int, sign: int):
    m = np.arange(1, mmax + 1, dtype=float)
    x = m * eta
    d = x - np.floor(x)
    if sign < 0:
        d = np.where(d > 0, 1.0 - d, 0.0)
    return scale * m * np.tan(0.5 * np.pi * d), d
