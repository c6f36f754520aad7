"""Fractional Brownian motion on a uniform grid.

The generator targets the exact closed-form covariance

    Cov(B_s, B_t) = (|s|**2H + |t|**2H - |t - s|**2H) / 2

by synthesizing fractional Gaussian noise (the increment process) and taking
cumulative sums.  The primary route is circulant embedding of the increment
autocovariance (exact in distribution whenever the even embedding is
nonnegative definite); a dense Cholesky factorization is the fallback for the
rare non-definite cases.  A non-definite embedding with no feasible fallback
raises :class:`EmbeddingError` -- negative eigenvalues are never truncated
silently.

Noise convention: a path with ``points = m`` increments always consumes one
block of ``2 m`` standard normals, in order, regardless of the synthesis
route (the embedding needs all ``2 m``; the Hurst-1/2 shortcut and the
Cholesky route use the first ``m``).  Fixed block sizes keep counter-based
streams aligned across methods.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "EmbeddingError",
    "FbmPath",
    "fbm_covariance",
    "increment_autocovariance",
    "fgn_from_noise",
    "fbm_path",
    "holder_ratio",
]

# Dense Cholesky above this many increments is not worth the cubic cost.
_CHOLESKY_LIMIT = 4096
# Relative tolerance under which embedding eigenvalues count as zero.
_EIG_RTOL = 1e-12


class EmbeddingError(RuntimeError):
    """Raised when no exact synthesis route exists for the requested grid."""


def _check_hurst(hurst: float) -> None:
    if not 0.0 < hurst < 1.0:
        raise ValueError("hurst must lie in (0, 1)")


def fbm_covariance(s, t, hurst: float):
    """Closed-form covariance of fractional Brownian motion at times s, t."""
    _check_hurst(hurst)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s < 0.0) or np.any(t < 0.0):
        raise ValueError("times must be >= 0")
    h2 = 2.0 * hurst
    out = 0.5 * (np.abs(s) ** h2 + np.abs(t) ** h2 - np.abs(t - s) ** h2)
    return out if out.ndim else float(out)


def increment_autocovariance(hurst: float, lags, spacing: float = 1.0):
    """Autocovariance of the increment process at integer lags."""
    _check_hurst(hurst)
    if spacing <= 0.0:
        raise ValueError("spacing must be > 0")
    j = np.abs(np.asarray(lags, dtype=float))
    h2 = 2.0 * hurst
    c = 0.5 * ((j + 1.0) ** h2 - 2.0 * j**h2 + np.abs(j - 1.0) ** h2)
    c = c * spacing**h2
    return c if c.ndim else float(c)


@lru_cache(maxsize=64)
def _embedding_coefficients(hurst: float, points: int):
    """Unit-spacing synthesis coefficients, or None if not nonneg. definite.

    For the even circulant embedding of length ``L = 2 * points`` with first
    row ``[c_0 .. c_m, c_{m-1} .. c_1]`` the eigenvalues are the real FFT of
    the row; the returned array ``a`` of length ``m + 1`` holds
    ``a_0 = sqrt(lambda_0 / L)``, ``a_m = sqrt(lambda_m / L)`` and
    ``a_j = sqrt(lambda_j / (2 L))`` in between.
    """
    m = points
    c = increment_autocovariance(hurst, np.arange(m + 1))
    row = np.concatenate([c, c[m - 1 : 0 : -1]])
    lam = np.fft.fft(row).real
    tol = _EIG_RTOL * float(lam.max(initial=0.0))
    if lam.min() < -tol:
        return None
    lam = np.clip(lam[: m + 1], 0.0, None)
    length = 2 * m
    coef = np.sqrt(lam / (2.0 * length))
    coef[0] = np.sqrt(lam[0] / length)
    coef[m] = np.sqrt(lam[m] / length)
    return coef


@lru_cache(maxsize=16)
def _cholesky_factor(hurst: float, points: int) -> np.ndarray:
    """Unit-spacing lower Cholesky factor of the increment covariance."""
    c = increment_autocovariance(hurst, np.arange(points))
    idx = np.arange(points)
    cov = c[np.abs(idx[:, None] - idx[None, :])]
    return np.linalg.cholesky(cov)


def _resolve_method(hurst: float, points: int, method: str) -> str:
    if method not in ("auto", "davies-harte", "cholesky"):
        raise ValueError("method must be 'auto', 'davies-harte' or 'cholesky'")
    if method == "cholesky":
        if points > _CHOLESKY_LIMIT:
            raise EmbeddingError(
                f"cholesky synthesis limited to {_CHOLESKY_LIMIT} increments"
            )
        return "cholesky"
    definite = _embedding_coefficients(hurst, points) is not None
    if definite:
        return "davies-harte"
    if method == "davies-harte":
        raise EmbeddingError(
            "circulant embedding is not nonnegative definite for "
            f"hurst={hurst}, points={points}"
        )
    if points > _CHOLESKY_LIMIT:
        raise EmbeddingError(
            "circulant embedding not nonnegative definite and grid too large "
            "for the dense fallback"
        )
    return "cholesky"


def fgn_from_noise(
    hurst: float,
    points: int,
    spacing: float,
    noise: np.ndarray,
    method: str = "auto",
) -> np.ndarray:
    """Map a block of ``2 * points`` standard normals to one fGn vector.

    ``noise`` may be ``(2m,)`` or batched ``(r, 2m)``; the transform is linear
    and applied row-wise.  Which route runs is decided by ``(hurst, points,
    method)`` alone, so equal inputs always give bitwise-equal outputs.
    """
    _check_hurst(hurst)
    if points < 1:
        raise ValueError("points must be >= 1")
    if spacing <= 0.0:
        raise ValueError("spacing must be > 0")
    noise = np.asarray(noise, dtype=float)
    if noise.shape[-1] != 2 * points:
        raise ValueError("noise block must have length 2 * points")
    if method not in ("auto", "davies-harte", "cholesky"):
        raise ValueError("method must be 'auto', 'davies-harte' or 'cholesky'")
    m = points
    scale = spacing**hurst
    if hurst == 0.5:
        return noise[..., :m] * scale
    route = _resolve_method(hurst, m, method)
    if route == "cholesky":
        factor = _cholesky_factor(hurst, m)
        return (noise[..., :m] @ factor.T) * scale
    coef = _embedding_coefficients(hurst, m)
    g1 = noise[..., :m]
    g2 = noise[..., m:]
    w = np.zeros(noise.shape[:-1] + (2 * m,), dtype=complex)
    w[..., 0] = coef[0] * g1[..., 0]
    if m > 1:
        w[..., 1:m] = coef[1:m] * (g1[..., 1:m] + 1j * g2[..., 1:m])
        w[..., m + 1 :] = np.conj(w[..., 1:m])[..., ::-1]
    w[..., m] = coef[m] * g2[..., 0]
    z = np.fft.fft(w, axis=-1)
    return z[..., :m].real * scale


@dataclass(frozen=True)
class FbmPath:
    """One fBm sample on the closed uniform grid 0 = t_0 < ... < t_m = T."""

    hurst: float
    horizon: float
    values: np.ndarray

    @property
    def points(self) -> int:
        return len(self.values) - 1

    @property
    def spacing(self) -> float:
        return self.horizon / self.points

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.points + 1) * self.spacing


def fbm_path(
    hurst: float,
    horizon: float,
    points: int,
    stream,
    method: str = "auto",
) -> FbmPath:
    """Sample one fBm path with ``points`` increments on [0, horizon].

    Consumes exactly ``2 * points`` normals from ``stream``; the first value
    is exactly 0.
    """
    _check_hurst(hurst)
    if horizon <= 0.0:
        raise ValueError("horizon must be > 0")
    if points < 1:
        raise ValueError("points must be >= 1")
    noise = stream.gaussian(2 * points)
    fgn = fgn_from_noise(hurst, points, horizon / points, noise, method=method)
    values = np.empty(points + 1)
    values[0] = 0.0
    np.cumsum(fgn, out=values[1:])
    return FbmPath(hurst=hurst, horizon=horizon, values=values)


def holder_ratio(path: FbmPath, exponent: float) -> float:
    """Largest increment ratio ``|v_i - v_j| / |t_i - t_j|**exponent``."""
    if exponent <= 0.0:
        raise ValueError("exponent must be > 0")
    values = path.values
    m = len(values) - 1
    if m < 1:
        raise ValueError("path needs at least one increment")
    d = path.spacing
    best = 0.0
    for lag in range(1, m + 1):
        num = float(np.max(np.abs(values[lag:] - values[:-lag])))
        best = max(best, num / (lag * d) ** exponent)
    return best
