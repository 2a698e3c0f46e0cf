"""Hankel function of the first kind and order zero.

Power series for J0 and Y0 below ``Constants.HANKEL_SWITCHOVER`` and the
large-argument asymptotic expansion above it, truncated at its smallest term.
"""

import math
from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aeroimaging.config.constants import Constants
from aeroimaging.errors import DomainError

EULER_GAMMA = 0.5772156649015329


def _series(t: NDArray[np.float64]) -> NDArray[np.complex128]:
    """J0 + i Y0 from the ascending series (accurate for small and moderate t)."""
    k = np.arange(1, Constants.HANKEL_SERIES_TERMS + 1, dtype=np.float64)
    quarter_sq = (0.25 * t * t)[..., np.newaxis]
    # terms[..., k-1] = (-t^2/4)^k / (k!)^2
    terms = np.cumprod(-quarter_sq / (k * k), axis=-1)
    harmonic = np.cumsum(1.0 / k)

    j0 = 1.0 + terms.sum(axis=-1)
    y0 = (2.0 / math.pi) * ((np.log(0.5 * t) + EULER_GAMMA) * j0 - (harmonic * terms).sum(axis=-1))
    return j0 + 1j * y0


def _asymptotic(t: NDArray[np.float64]) -> NDArray[np.complex128]:
    """Hankel's expansion sqrt(2/(pi t)) e^{i(t - pi/4)} sum_k i^k a_k / t^k."""
    k = np.arange(1, Constants.HANKEL_ASYMPTOTIC_MAX_TERMS + 1, dtype=np.float64)
    ratios = 1j * (-((2.0 * k - 1.0) ** 2)) / (8.0 * k * t[..., np.newaxis])
    terms = np.concatenate(
        [np.ones(t.shape + (1,), dtype=np.complex128), np.cumprod(ratios, axis=-1)], axis=-1
    )

    # The series diverges: keep terms before the smallest one.
    smallest = np.argmin(np.abs(terms), axis=-1)
    cutoff = np.maximum(smallest, Constants.HANKEL_ASYMPTOTIC_MIN_TERMS)
    index = np.arange(terms.shape[-1])
    keep = index < cutoff[..., np.newaxis]
    total = np.where(keep, terms, 0.0).sum(axis=-1)

    result: NDArray[np.complex128] = (
        np.sqrt(2.0 / (math.pi * t)) * np.exp(1j * (t - 0.25 * math.pi)) * total
    )
    return result


@overload
def hankel_h1_0(t: float) -> complex: ...


@overload
def hankel_h1_0(t: NDArray[np.float64]) -> NDArray[np.complex128]: ...


def hankel_h1_0(t: ArrayLike) -> complex | NDArray[np.complex128]:
    """Evaluate H0^(1)(t) = J0(t) + i Y0(t) for t > 0.

    Args:
        t: Positive argument, scalar or array.

    Returns:
        Complex value(s); a Python ``complex`` for scalar input.

    Raises:
        DomainError: If any argument is not a positive finite number.
    """
    arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("Hankel function H0^(1) requires finite arguments t > 0")

    flat = arr.reshape(-1)
    out = np.empty(flat.shape, dtype=np.complex128)
    small = flat < Constants.HANKEL_SWITCHOVER
    if np.any(small):
        out[small] = _series(flat[small])
    if np.any(~small):
        out[~small] = _asymptotic(flat[~small])

    if arr.ndim == 0:
        return complex(out[0])
    return out.reshape(arr.shape)
