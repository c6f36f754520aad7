"""Deterministic, splittable random streams and the base samplers.

Everything downstream of this module is reproducible because every variate is a
fixed positional transform of the raw 64-bit counter output of a Philox-4x64
bit generator:

* stream identity: the Philox key words are ``(seed, substream_id)``, both
  64-bit.  Child streams derive a fresh ``substream_id`` with a SplitMix64
  finalizer (see :func:`_mix64`), so ``(seed, substream_id)`` pairs never need
  central coordination.
* uniforms: ``u = ((raw >> 11) + 0.5) * 2**-53`` which lies strictly inside
  ``(0, 1)`` (one raw word per uniform).
* exponential(1): ``-log(u)``.
* standard normal: the inverse-CDF transform ``ndtri(u)`` (one uniform per
  variate; rejection-free so counter positions stay aligned).
* Laplace(0, 1/2) (density ``exp(-2|x|)``): inverse CDF,
  ``log(2u)/2`` for ``u < 1/2`` and ``-log(2(1-u))/2`` otherwise.
* Rademacher: ``+1`` when ``u >= 1/2`` else ``-1`` (exactly unbiased because
  the uniform lattice is symmetric around 1/2).

Raw words are consumed strictly left to right, and splitting one ``raw`` call
into several yields the identical sequence, so higher layers may document draw
*order* alone and remain bitwise reproducible.  The ``uniform_to_*`` helpers
are the single source of the transforms; batched drivers apply them to raw
blocks and get bitwise the same variates as the stream methods.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import Philox
from scipy.special import ndtri

__all__ = [
    "RandomStream",
    "poisson_arrivals",
    "sample_gaussian",
    "sample_laplace_half",
    "sample_rademacher",
    "raw_to_uniform",
    "uniform_to_exponential",
    "uniform_to_gaussian",
    "uniform_to_laplace_half",
    "uniform_to_rademacher",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    """SplitMix64 finalizer (bijective on 64-bit words)."""
    z &= _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def _mix64(parent: int, child: int) -> int:
    """Derive a child substream id from (parent id, child index)."""
    return _splitmix64((parent + _GOLDEN * (child + 1)) & _MASK64)


# -- positional transforms (single source of truth) ---------------------------


def raw_to_uniform(raw: np.ndarray) -> np.ndarray:
    """Map raw 64-bit words to uniforms strictly inside (0, 1)."""
    return ((raw >> np.uint64(11)) + 0.5) * 2.0**-53


def uniform_to_exponential(u: np.ndarray) -> np.ndarray:
    """Unit-rate exponential via ``-log(u)``."""
    return -np.log(u)


def uniform_to_gaussian(u: np.ndarray) -> np.ndarray:
    """Standard normal via the inverse CDF."""
    return ndtri(u)


def uniform_to_laplace_half(u: np.ndarray) -> np.ndarray:
    """Laplace(0, 1/2) via the inverse CDF (density ``exp(-2|x|)``)."""
    return np.where(u < 0.5, 0.5 * np.log(2.0 * u), -0.5 * np.log(2.0 * (1.0 - u)))


def uniform_to_rademacher(u: np.ndarray) -> np.ndarray:
    """Sign +-1, ``+1`` iff ``u >= 1/2``."""
    return np.where(u >= 0.5, 1.0, -1.0)


@dataclass(frozen=True)
class RandomStream:
    """A seeded, splittable source of variates.

    Parameters
    ----------
    seed : int
        Master seed (reduced mod 2**64).
    substream_id : int
        Substream selector (reduced mod 2**64).  Independent streams for the
        same seed are obtained via :meth:`substream`.
    """

    seed: int
    substream_id: int = 0
    _bitgen: Philox = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        key = (self.seed & _MASK64) | ((self.substream_id & _MASK64) << 64)
        object.__setattr__(self, "_bitgen", Philox(key=key))

    # -- stream algebra ---------------------------------------------------

    def substream(self, child: int) -> "RandomStream":
        """Deterministic independent child stream for index ``child >= 0``."""
        if child < 0:
            raise ValueError("substream index must be >= 0")
        return RandomStream(self.seed & _MASK64, _mix64(self.substream_id, child))

    # -- raw layers --------------------------------------------------------

    def raw(self, size: int) -> np.ndarray:
        """Next ``size`` raw 64-bit counter words."""
        return self._bitgen.random_raw(size)

    def uniform(self, size: int | None = None):
        """Uniforms strictly inside (0, 1), one raw word each."""
        u = raw_to_uniform(self.raw(1 if size is None else int(size)))
        return float(u[0]) if size is None else u

    # -- documented variates ------------------------------------------------

    def exponential(self, size: int | None = None):
        """Unit-rate exponentials."""
        x = uniform_to_exponential(self.uniform(1 if size is None else size))
        return float(x[0]) if size is None else x

    def gaussian(self, size: int | None = None):
        """Standard normals."""
        x = uniform_to_gaussian(self.uniform(1 if size is None else size))
        return float(x[0]) if size is None else x

    def laplace_half(self, size: int | None = None):
        """Laplace(0, 1/2) variates, density ``exp(-2|x|)``."""
        x = uniform_to_laplace_half(self.uniform(1 if size is None else size))
        return float(x[0]) if size is None else x

    def rademacher(self, size: int | None = None):
        """Signs +-1 with equal probability."""
        x = uniform_to_rademacher(self.uniform(1 if size is None else size))
        return float(x[0]) if size is None else x


# -- module-level operations -------------------------------------------------


def poisson_arrivals(count: int, stream) -> np.ndarray:
    """First ``count`` arrival times of a unit-rate Poisson process.

    Cumulative sums of i.i.d. unit exponentials drawn from ``stream``; the
    result is strictly increasing and positive.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    return np.cumsum(stream.exponential(count))


def sample_gaussian(stream, size: int | None = None):
    """Standard normal variate(s) from ``stream``."""
    return stream.gaussian(size)


def sample_laplace_half(stream, size: int | None = None):
    """Laplace(0, 1/2) variate(s) (density ``exp(-2|x|)``) from ``stream``."""
    return stream.laplace_half(size)


def sample_rademacher(stream, size: int | None = None):
    """Rademacher sign(s) from ``stream``."""
    return stream.rademacher(size)
