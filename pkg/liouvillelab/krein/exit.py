# exit.py - exit times from an interval: Kac moments and eigenvalue bounds
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Moments of the exit time ``H`` of ``(a, b)`` started at 0.

The Green operator of the interval with killing at both ends is ``G f =
A^-1 M f`` on the atoms strictly inside, ``A`` being the stiffness matrix and
``M`` the masses.  Kac's formula gives ``E[H^n] = n! (G^n 1)(0)``, evaluated by
repeated banded solves; between atoms the moments are affine in the start
point.

"""
from dataclasses import dataclass
import logging
import math

import numpy as np
from scipy.linalg import solve_banded

from ..errors import DegenerateInput
from ..errors import InvalidArgument
from .jacobi import lowest_eigenvalue
from .jacobi import stiffness
from .jacobi import stiffness_bands


@dataclass(frozen=True)
class ExitStats:
    """Exit time moments ``E[H^n]`` for ``n = 1..n_max`` with the constants
    bounding the exponential moments of ``H``.

    """

    moments: tuple
    C: float
    C_tilde: float
    lambda_min: float
    exp_moment_bound: float
    balance: float = 1.0

    @property
    def sandwich(self):
        """``(C_tilde, 1 / lambda_min, 4 C_tilde)``."""
        return (self.C_tilde, 1 / self.lambda_min, 4 * self.C_tilde)

    @property
    def sandwich_holds(self):
        lo, mid, hi = self.sandwich
        return lo * (1 - 1e-9) <= mid <= hi * (1 + 1e-9)

    @property
    def bounds_hold(self):
        """``balance * C_tilde <= 1 / lambda_min <= 4 C_tilde``.

        The lower constant of :attr:`sandwich` needs the mass near the start
        point to be spread out; a single atom at 0 in ``(-1, 1)`` has ``1 /
        lambda_min = C_tilde / 2``.  With ``balance = min(-a, b) / (b - a)``
        the lower bound holds for every measure.

        """
        lo, mid, hi = self.sandwich
        return self.balance * lo * (1 - 1e-9) <= mid <= hi * (1 + 1e-9)


def _interior(measure, a, b):
    L = measure.half_length
    if not a < 0 < b:
        raise InvalidArgument('the interval ({}, {}) must contain the'
                              ' start point 0'.format(a, b))
    if a < -L or b > L:
        raise InvalidArgument('the interval ({}, {}) leaves the'
                              ' window'.format(a, b))
    lo = np.searchsorted(measure.positions, a, side='right')
    hi = np.searchsorted(measure.positions, b, side='left')
    if hi <= lo:
        raise DegenerateInput('no atoms inside ({}, {})'.format(a, b))
    return measure.positions[lo:hi], measure.masses[lo:hi]


def _banded(sites, a, b, shift=0.0, masses=None):
    diagonal, off_diagonal = stiffness_bands(sites, sites[0] - a,
                                             b - sites[-1])
    if shift:
        diagonal = diagonal - shift * masses
    bands = np.zeros((3, len(sites)))
    bands[0, 1:] = off_diagonal
    bands[1] = diagonal
    bands[2, :-1] = off_diagonal
    return bands


def _at_origin(sites, values, a, b):
    return float(np.interp(0.0, np.concatenate(([a], sites, [b])),
                           np.concatenate(([0.0], values, [0.0]))))


def exit_constants(sites, masses, a, b):
    """Return ``(C, C_tilde)`` of the atoms inside ``(a, b)``.

    ``C = sum (b - x)(x - a) m / (b - a)`` is the mean exit time weighted by
    the Green kernel at its worst point; ``C_tilde`` is the larger of the
    suprema of ``(x - a) nu([x, 0])`` over atoms left of 0 and ``(b - x)
    nu([0, x])`` over atoms right of 0.

    """
    C = float(np.sum((b - sites) * (sites - a) * masses) / (b - a))
    left = sites <= 0
    right = sites >= 0
    C_tilde = 0.0
    if np.any(left):
        # nu([x_k, 0]) for the left atoms is a reversed cumulative sum.
        tail = np.cumsum(masses[left][::-1])[::-1]
        C_tilde = max(C_tilde, float(np.max((sites[left] - a) * tail)))
    if np.any(right):
        head = np.cumsum(masses[right])
        C_tilde = max(C_tilde, float(np.max((b - sites[right]) * head)))
    return C, C_tilde


def kac_exit(measure, a, b, n_max):
    """Return the :class:`ExitStats` of the exit from ``(a, b)`` started at 0.
    """
    if int(n_max) != n_max or n_max < 0:
        raise InvalidArgument('n_max must be a non-negative integer')
    sites, masses = _interior(measure, a, b)
    bands = _banded(sites, a, b)
    u = np.ones(len(sites))
    moments = []
    for n in range(1, int(n_max) + 1):
        u = n * solve_banded((1, 1), bands, masses * u)
        moments.append(_at_origin(sites, u, a, b))
    C, C_tilde = exit_constants(sites, masses, a, b)
    diagonal, off_diagonal = stiffness(sites, masses, sites[0] - a,
                                       b - sites[-1])
    lambda_min = lowest_eigenvalue(diagonal, off_diagonal)
    logging.debug('Exit from (%g, %g) over %d atoms: C=%g, C~=%g,'
                  ' lambda_min=%g', a, b, len(sites), C, C_tilde, lambda_min)
    return ExitStats(tuple(moments), C, C_tilde, lambda_min, 1 / C,
                     min(-a, b) / (b - a))


def kac_exponential_moment(stats, lam):
    """Return ``sum_n lam**n E[H^n] / n!`` over the available moments."""
    if lam >= stats.lambda_min:
        logging.warning('E[exp(%g H)] is infinite beyond lambda_min = %g',
                        lam, stats.lambda_min)
    total = 1.0
    for n, moment in enumerate(stats.moments, start=1):
        total += lam ** n * moment / math.factorial(n)
    return total


def exit_exponential_moment(measure, a, b, lam):
    """Return ``E[exp(lam H)]`` exactly by solving ``(A - lam M) v = A 1``.
    """
    sites, masses = _interior(measure, a, b)
    diagonal, off_diagonal = stiffness(sites, masses, sites[0] - a,
                                       b - sites[-1])
    if lam >= lowest_eigenvalue(diagonal, off_diagonal):
        raise InvalidArgument('E[exp(lam H)] is infinite for lam >='
                              ' lambda_min')
    # A 1 is the coupling to the boundary values v(a) = v(b) = 1.
    rhs = np.zeros(len(sites))
    rhs[0] += 1 / (sites[0] - a)
    rhs[-1] += 1 / (b - sites[-1])
    v = solve_banded((1, 1), _banded(sites, a, b, lam, masses), rhs)
    knots = np.concatenate(([a], sites, [b]))
    return float(np.interp(0.0, knots, np.concatenate(([1.0], v, [1.0]))))
