"""Slow reference values used to certify the fast implementations."""

import cmath
from collections.abc import Sequence

import mpmath
import numpy as np
from numpy.typing import ArrayLike

ORACLE_DPS = 60


def _series_j0(t: mpmath.mpf) -> mpmath.mpf:
    quarter = t * t / 4
    term = mpmath.mpf(1)
    total = term
    k = 0
    while True:
        k += 1
        term = -term * quarter / (k * k)
        total += term
        if abs(term) < mpmath.mpf(10) ** (-ORACLE_DPS + 5) * max(abs(total), 1):
            return total


def _series_y0(t: mpmath.mpf, j0: mpmath.mpf) -> mpmath.mpf:
    quarter = t * t / 4
    term = mpmath.mpf(1)
    harmonic = mpmath.mpf(0)
    total = mpmath.mpf(0)
    k = 0
    while True:
        k += 1
        term = -term * quarter / (k * k)
        harmonic += mpmath.mpf(1) / k
        contribution = harmonic * term
        total -= contribution
        if abs(contribution) < mpmath.mpf(10) ** (-ORACLE_DPS + 5) * max(abs(total), 1):
            break
    return (2 / mpmath.pi) * ((mpmath.log(t / 2) + mpmath.euler) * j0 + total)


def bessel_j0_oracle(t: float) -> mpmath.mpf:
    """J0(t) from its ascending series at high precision."""
    with mpmath.workdps(ORACLE_DPS):
        return _series_j0(mpmath.mpf(t))


def bessel_y0_oracle(t: float) -> mpmath.mpf:
    """Y0(t) from its ascending series at high precision."""
    with mpmath.workdps(ORACLE_DPS):
        x = mpmath.mpf(t)
        return _series_y0(x, _series_j0(x))


def hankel_oracle(t: float) -> complex:
    """H0^(1)(t) = J0(t) + i Y0(t) rounded to double precision."""
    with mpmath.workdps(ORACLE_DPS):
        x = mpmath.mpf(t)
        j0 = _series_j0(x)
        y0 = _series_y0(x, j0)
        return complex(float(j0), float(y0))


def wronskian_defect(t: float) -> float:
    """|J0 Y0' - J0' Y0 - 2/(pi t)| with derivatives of the series oracles."""
    with mpmath.workdps(ORACLE_DPS):
        x = mpmath.mpf(t)
        j0 = _series_j0(x)
        y0 = _series_y0(x, j0)
        dj0 = mpmath.diff(_series_j0, x)
        dy0 = mpmath.diff(lambda s: _series_y0(s, _series_j0(s)), x)
        return float(abs(j0 * dy0 - dj0 * y0 - 2 / (mpmath.pi * x)))


def rectangle_plane_wave_integral(
    wavevector: ArrayLike, lower: Sequence[float], upper: Sequence[float]
) -> complex:
    """Exact integral of exp(i w.y) over an axis-aligned box.

    Axes with ``lower == upper`` are not integrated; they contribute the phase
    factor at that coordinate (a planar region embedded in 3D).
    """
    w = np.asarray(wavevector, dtype=np.float64)
    result = complex(1.0)
    for wi, a, b in zip(w, lower, upper, strict=True):
        if a == b:
            result *= cmath.exp(1j * wi * a)
        elif wi == 0.0:
            result *= b - a
        else:
            result *= (cmath.exp(1j * wi * b) - cmath.exp(1j * wi * a)) / (1j * wi)
    return result
