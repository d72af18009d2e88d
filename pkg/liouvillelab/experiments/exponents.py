# exponents.py - level-set dimensions and short-time exponents
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Exponents read off the small scales of a measure at an anchor.

All of them are slopes on log-log plots over the *resolution window*
``[1, RESOLUTION_SAFETY * eps ** -(1 + alpha)]`` of spectral parameters,
``eps`` being the resolution of the measure and ``alpha`` its local dimension
at the anchor; outside it the atomization shows and the slopes revert to
trivial values.  Times are the reciprocals of spectral parameters and radii
are ``V^-1(1 / lam)``.

"""
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..constants import RESOLUTION_SAFETY
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..krein import anchor_strings
from ..krein import survival
from ..krein import two_sided_h
from ..krein import volume_function
from ..measures import geometric_grid
from ..measures import loglog_slope
from ..measures import scaling_stats

#: The exponents ``beta`` scanned by the shell-integral route of
#: :func:`short_time_exponent`.
BETA_GRID = np.linspace(0.05, 0.95, 91)

#: Trapezoid nodes per shell of the shell-integral route.
SHELL_NODES = 16


def multifractal_alpha(gamma, q):
    """Local dimension ``1 + (1/2 - q) gamma**2 / 2`` of a boundary Liouville
    measure at ``nu_q``-typical points.

    """
    return 1 + (0.5 - q) * gamma * gamma / 2


def local_dimension(measure, a):
    """Estimate the local dimension of `measure` at `a` from ball masses
    between a few resolutions and unit distance.

    """
    L = measure.half_length
    r_min = 4 * measure.resolution
    r_max = min(1.0, (L - abs(a)) / 2)
    if not r_min < r_max:
        raise DegenerateInput('no scales between the resolution {} and the'
                              ' window edge'.format(measure.resolution))
    return scaling_stats(measure, a, r_min, r_max).alpha_hat


def resolution_window(measure, a, alpha=None):
    """Return ``(1, lam_max)``, the spectral parameters over which slopes of
    `measure` at `a` are trusted.

    """
    if alpha is None:
        alpha = local_dimension(measure, a)
    top = RESOLUTION_SAFETY * measure.resolution ** -(1 + alpha)
    if not top > 1:
        raise DegenerateInput('the resolution {} leaves no window of spectral'
                              ' parameters'.format(measure.resolution))
    return 1.0, float(top)


def _spectral_range(measure, a, lambda_lo, lambda_hi):
    lo, hi = resolution_window(measure, a)
    if lambda_lo is None:
        lambda_lo = lo
    if lambda_hi is None:
        lambda_hi = hi
    if not (lo * (1 - 1e-9) <= lambda_lo < lambda_hi <= hi * (1 + 1e-9)):
        raise InvalidArgument('spectral range [{}, {}] leaves the resolution'
                              ' window [{}, {}]'.format(lambda_lo, lambda_hi,
                                                        lo, hi))
    return lambda_lo, lambda_hi


def two_sided_correspondence(measure, a, lams):
    """``h_{nu,a}`` at every value in `lams`, strings killed at the window
    edges.

    """
    s_plus, s_minus, anchor_mass = anchor_strings(measure, a, 'dirichlet')
    return two_sided_h(s_plus, s_minus, anchor_mass, lams)


def level_set_dimension(measure, a, lambda_lo=None, lambda_hi=None):
    """Return the dimension of the level set at `a`, the least-squares slope
    of ``-log h(lam)`` against ``log lam`` over ``[lambda_lo, lambda_hi]``.

    The range defaults to the resolution window and must lie inside it.

    """
    lambda_lo, lambda_hi = _spectral_range(measure, a, lambda_lo, lambda_hi)
    lams = geometric_grid(lambda_lo, lambda_hi)
    h = two_sided_correspondence(measure, a, lams)
    slope, _, residual = loglog_slope(lams, h)
    logging.debug('Level set at %g: slope %g over [%g, %g] (residual %g)', a,
                  -slope, lambda_lo, lambda_hi, residual)
    return -slope


class ShortTimeExponent(NamedTuple):
    """The critical exponent of ``int_0+ t**-beta p(t; a, a) dt`` by the
    correspondence slope and by the shell integrals of the volume function.

    """

    h_route: float
    volume_route: float

    @property
    def estimate(self):
        return self.h_route

    @property
    def discrepancy(self):
        return abs(self.h_route - self.volume_route)


def shell_growth(volume, r_lo, r_hi, betas=BETA_GRID):
    """Return the growth exponents of ``int V(x)**-beta dx`` over geometric
    shells of radii in ``[r_lo, r_hi]``, one per ``beta``.

    A shell integral behaves like ``r**g`` at small radii; the integral down
    to zero converges exactly when ``g > 0``.

    """
    radii = geometric_grid(r_lo, r_hi)
    n_shells = len(radii) - 1
    fine = np.geomspace(radii[0], radii[-1], SHELL_NODES * n_shells + 1)
    log_volume = np.log(volume(fine))
    betas = np.asarray(betas, dtype=float)
    # dx = x dlog(x)
    integrand = np.exp(-betas[:, None] * log_volume[None, :]) * fine
    total = cumulative_trapezoid(integrand, np.log(fine), axis=1, initial=0)
    shells = np.diff(total[:, ::SHELL_NODES], axis=1)
    middles = np.sqrt(radii[:-1] * radii[1:])
    return np.array([loglog_slope(middles, row)[0] for row in shells])


def crossover(betas, growth):
    """Return the ``beta`` at which `growth` first turns non-positive,
    interpolating linearly between grid points.

    """
    negative = np.flatnonzero(growth <= 0)
    if len(negative) == 0 or negative[0] == 0:
        raise DegenerateInput('no finiteness crossover on the beta grid'
                              ' [{}, {}]'.format(betas[0], betas[-1]))
    i = negative[0]
    g0, g1 = growth[i - 1], growth[i]
    return float(betas[i - 1] + (betas[i] - betas[i - 1]) * g0 / (g0 - g1))


def short_time_exponent(measure, a, lambda_lo=None, lambda_hi=None):
    """Return the :class:`ShortTimeExponent` of `measure` at `a`.

    The shell route scans ``beta`` over :data:`BETA_GRID` on the radii
    ``V^-1(1 / lam)`` of the same spectral range, ``phi(t) = t**-beta``.

    """
    lambda_lo, lambda_hi = _spectral_range(measure, a, lambda_lo, lambda_hi)
    h_route = level_set_dimension(measure, a, lambda_lo, lambda_hi)
    volume = volume_function(measure, a)
    r_lo, r_hi = volume.inverse([1 / lambda_hi, 1 / lambda_lo])
    r_hi = min(float(r_hi), volume.r_max)
    if not r_lo < r_hi:
        raise DegenerateInput('no radii left between {} and {}'.format(
            r_lo, r_hi))
    growth = shell_growth(volume, float(r_lo), r_hi)
    volume_route = crossover(BETA_GRID, growth)
    logging.debug('Short-time exponent at %g: %g by h, %g by shells', a,
                  h_route, volume_route)
    return ShortTimeExponent(h_route, volume_route)


def excursion_short_time(spec_star, measure, a, lambda_lo=None,
                         lambda_hi=None):
    """Return the slope of ``log n(t < zeta < inf)`` against ``-log t`` for
    ``t`` in ``[1 / lambda_hi, 1 / lambda_lo]``.

    `spec_star` is the ``dirichlet-at-0`` decomposition of a string of
    `measure` anchored at `a`; its atom at ``xi = 0`` (excursions that never
    return) is left out.

    """
    lambda_lo, lambda_hi = _spectral_range(measure, a, lambda_lo, lambda_hi)
    times = geometric_grid(1 / lambda_hi, 1 / lambda_lo)
    lost = float(np.sum(spec_star.weights[spec_star.xi == 0]))
    tail = survival(spec_star, times) - lost
    if np.any(tail <= 0):
        raise DegenerateInput('excursion lifetimes vanish on the time'
                              ' window')
    slope, _, residual = loglog_slope(times, tail)
    logging.debug('Excursion lifetimes at %g: exponent %g (residual %g)', a,
                  -slope, residual)
    return -slope


def mean_and_error(values):
    """Return the mean of `values` and its standard error."""
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return math.nan, math.nan
    if len(values) == 1:
        return float(values[0]), 0.0
    return (float(np.mean(values)),
            float(np.std(values, ddof=1) / math.sqrt(len(values))))
