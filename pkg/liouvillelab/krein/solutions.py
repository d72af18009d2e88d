# solutions.py - the fundamental solutions of a string and its correspondence
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""The solutions ``phi`` and ``psi`` of ``u(x) = u(0) + u'(0) x +
lam * int_0^x dy int_[0,y] u dm`` and the Krein correspondence.

``phi`` starts with ``phi(0) = 1, phi'(0-) = 0`` and ``psi`` with ``psi(0) = 0,
psi'(0) = 1``.  For an atomic string both are affine between atoms and their
slopes jump by ``lam * m_i * u(xi_i)`` at each atom; slopes are reported
right-continuous.  The state is rescaled whenever it grows beyond
:data:`~liouvillelab.constants.RESCALE_THRESHOLD`; the accumulated logarithm
of the scale factor is carried in ``log_scale`` so that ratios stay exact.

"""
from dataclasses import dataclass
import math
from typing import NamedTuple
from typing import Optional

import numpy as np

from ..constants import RESCALE_THRESHOLD
from ..errors import InvalidArgument


@dataclass(frozen=True)
class PhiPsiValue:
    """``phi``, ``psi`` and their right slopes at `x`, each divided by
    ``exp(log_scale)``.

    """

    phi: float
    phi_slope: float
    psi: float
    psi_slope: float
    x: float
    lam: float
    log_scale: float = 0.0

    def scaled(self):
        """Return the four values multiplied back by ``exp(log_scale)``
        (this may overflow to infinity).

        """
        factor = math.exp(self.log_scale) if self.log_scale < 709 else math.inf
        return (self.phi * factor, self.phi_slope * factor,
                self.psi * factor, self.psi_slope * factor)

    @property
    def wronskian(self):
        return self.phi * self.psi_slope - self.phi_slope * self.psi

    @property
    def wronskian_defect(self):
        """Relative deviation of ``phi psi' - phi' psi`` from 1."""
        target = math.exp(-2 * self.log_scale)
        size = abs(self.phi * self.psi_slope) + abs(self.phi_slope * self.psi)
        return abs(self.wronskian - target) / max(target, size)


class KreinValue(NamedTuple):
    """Dirichlet and Neumann terminations of the correspondence at the
    truncation length; they bracket the value of the infinite string.

    """

    h_dirichlet: float
    h_neumann: Optional[float]

    @property
    def h(self):
        return self.h_dirichlet

    @property
    def bracket(self):
        if self.h_neumann is None:
            return (self.h_dirichlet, math.inf)
        return tuple(sorted((self.h_dirichlet, self.h_neumann)))

    @property
    def bracket_width(self):
        if self.h_neumann is None:
            return math.inf
        return abs(self.h_neumann - self.h_dirichlet)


def propagate(s, lams, x=None):
    """Propagate ``phi`` and ``psi`` of `s` to `x` for every value in `lams`.

    Returns ``(phi, phi', psi, psi', log_scale)`` as arrays shaped like
    `lams`; `x` defaults to the truncation length.

    """
    lams = np.asarray(lams, dtype=float)
    shape = lams.shape
    lams = lams.reshape(-1)
    x = s.length if x is None else float(x)
    phi = np.ones_like(lams)
    dphi = lams * s.origin_mass
    psi = np.zeros_like(lams)
    dpsi = np.ones_like(lams)
    log_scale = np.zeros_like(lams)
    position = 0.0
    stop = np.searchsorted(s.distances, x, side='right')
    for distance, mass in zip(s.distances[:stop], s.masses[:stop]):
        gap = distance - position
        phi = phi + gap * dphi
        psi = psi + gap * dpsi
        dphi = dphi + lams * mass * phi
        dpsi = dpsi + lams * mass * psi
        position = distance
        size = np.maximum(np.maximum(np.abs(phi), np.abs(dphi)),
                          np.maximum(np.abs(psi), np.abs(dpsi)))
        if np.any(size > RESCALE_THRESHOLD):
            factor = np.where(size > RESCALE_THRESHOLD, size, 1.0)
            phi, dphi = phi / factor, dphi / factor
            psi, dpsi = psi / factor, dpsi / factor
            log_scale = log_scale + np.log(factor)
    gap = x - position
    phi = phi + gap * dphi
    psi = psi + gap * dpsi
    return tuple(v.reshape(shape) for v in (phi, dphi, psi, dpsi, log_scale))


def _check_position(s, x):
    if not 0 <= x <= s.length * (1 + 1e-12):
        raise InvalidArgument('position {} outside [0, {}]'.format(x,
                                                                   s.length))


def eval_phi_psi(s, lam, x):
    """Return the :class:`PhiPsiValue` of `s` at ``(x, lam)``."""
    _check_position(s, x)
    values = propagate(s, [float(lam)], min(float(x), s.length))
    phi, dphi, psi, dpsi, log_scale = (float(v[0]) for v in values)
    return PhiPsiValue(phi, dphi, psi, dpsi, float(x), float(lam), log_scale)


def _check_lambda(lams):
    lams = np.asarray(lams, dtype=float)
    if np.any(~(lams > 0)):
        raise InvalidArgument('spectral parameter must be positive')
    return lams


def krein_h(s, lam):
    """Return the :class:`KreinValue` of `s` at ``lam > 0``.

    ``h_dirichlet = psi / phi`` and ``h_neumann = psi' / phi'`` at the
    truncation length; the Neumann value is absent when ``phi'`` vanishes.

    """
    _check_lambda(lam)
    phi, dphi, psi, dpsi, _ = propagate(s, [float(lam)])
    h_neumann = float(dpsi[0] / dphi[0]) if dphi[0] != 0 else None
    return KreinValue(float(psi[0] / phi[0]), h_neumann)


def string_h(s, lams):
    """Return the correspondence of `s` itself, the termination matching its
    boundary condition, for every value in `lams`.

    """
    lams = _check_lambda(lams)
    phi, dphi, psi, dpsi, _ = propagate(s, lams)
    if s.boundary == 'dirichlet':
        return psi / phi
    return dpsi / dphi


def two_sided_h(s_plus, s_minus, anchor_mass, lams):
    """Return the resolvent diagonal at the anchor of a two-sided string,
    ``1 / (1/h_plus + 1/h_minus + lam * anchor_mass)``.

    """
    lams = _check_lambda(lams)
    inverse = (1 / string_h(s_plus, lams) + 1 / string_h(s_minus, lams)
               + lams * anchor_mass)
    return 1 / inverse


def excursion_hitting_laplace(s, lam, x):
    """Return ``n(exp(-lam H_x)) = 1 / psi(x, lam)`` for excursions away from
    the anchor of `s` (``lam = 0`` gives ``1 / x``).

    """
    if lam < 0:
        raise InvalidArgument('spectral parameter must be non-negative')
    if not x > 0:
        raise InvalidArgument('level must be positive')
    value = eval_phi_psi(s, lam, x)
    return math.exp(-value.log_scale) / value.psi
