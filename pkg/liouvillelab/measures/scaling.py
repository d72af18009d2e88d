# scaling.py - scaling statistics of atomic measures
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from dataclasses import dataclass
import math

import numpy as np

from ..constants import POINTS_PER_DECADE
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from .base import interval_mass


@dataclass(frozen=True)
class ScalingStats:
    """Mean density and local dimension estimate of a measure at a point."""

    Z_hat: float
    alpha_hat: float
    fit_range: tuple
    residual: float


def geometric_grid(lo, hi, per_decade=POINTS_PER_DECADE):
    """Return a geometric grid from `lo` to `hi` with `per_decade` points per
    decade (and at least two points).

    """
    if not 0 < lo < hi:
        raise InvalidArgument('geometric grid needs 0 < lo < hi')
    n = max(2, int(math.ceil(per_decade * math.log10(hi / lo))) + 1)
    return np.geomspace(lo, hi, n)


def loglog_slope(x, y):
    """Least-squares slope of ``log y`` against ``log x``.

    Returns ``(slope, intercept, rms_residual)``.

    """
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = math.sqrt(float(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return float(slope), float(intercept), residual


def ball_masses(measure, a, radii):
    """Return ``nu([a - r, a + r])`` for each radius in `radii`."""
    lo = np.searchsorted(measure.positions, a - np.asarray(radii), 'left')
    hi = np.searchsorted(measure.positions, a + np.asarray(radii), 'right')
    cumulative = np.concatenate(([0.0], np.cumsum(measure.masses)))
    return cumulative[hi] - cumulative[lo]


def scaling_stats(measure, a, r_min, r_max):
    """Estimate the mean density ``Z`` and the local dimension at `a`.

    ``Z_hat`` is the mass of the window divided by its length; ``alpha_hat``
    is the least-squares slope of ``log nu(a - r, a + r)`` against ``log r``
    over a geometric grid of radii in ``[r_min, r_max]``.

    """
    L = measure.half_length
    if not measure.resolution <= r_min < r_max <= L:
        raise InvalidArgument('fit range must satisfy resolution <= r_min <'
                              ' r_max <= L, got [{}, {}]'.format(r_min, r_max))
    if not -L < a < L:
        raise InvalidArgument('anchor {} is not interior to the'
                              ' window'.format(a))
    radii = geometric_grid(r_min, r_max)
    masses = ball_masses(measure, a, radii)
    if np.any(masses <= 0):
        raise DegenerateInput('no mass within radius {} of'
                              ' {}'.format(radii[np.argmin(masses)], a))
    slope, _, residual = loglog_slope(radii, masses)
    z_hat = interval_mass(measure, -L, L) / (2 * L)
    return ScalingStats(z_hat, slope, (float(r_min), float(r_max)), residual)
