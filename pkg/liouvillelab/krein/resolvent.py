# resolvent.py - resolvent kernel and hitting transforms on the full line
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""The resolvent of the two-sided string glued at an anchor.

For ``x <= y`` (signed distances from the anchor) the resolvent kernel is
``g(x, y) = h * u_l(x) * u_r(y)`` where ``u_r`` satisfies the boundary
condition of the plus string, ``u_l`` that of the minus string, both equal 1
at the anchor, and ``1/h = 1/h_plus + 1/h_minus + lam * nu({a})``.  Arguments
in the other order are swapped.

The solution satisfying a boundary condition is propagated backwards from the
truncation length, so that it is never formed as a difference of two growing
solutions.

"""
import math

from ..constants import RESCALE_THRESHOLD
from ..errors import InvalidArgument
from .solutions import propagate


def _check(s_plus, s_minus, lam):
    if not lam > 0:
        raise InvalidArgument('spectral parameter must be positive')
    if s_plus.direction != 'plus' or s_minus.direction != 'minus':
        raise InvalidArgument('expected a plus string and a minus string')
    if s_plus.anchor != s_minus.anchor:
        raise InvalidArgument('the two strings have different anchors')


def _backward(s, lam, z):
    """Return ``(log w(z)/w(0), w'(0+)/w(0))`` for the solution `w` of `s`
    that satisfies its boundary condition at the truncation length.

    """
    if not 0 <= z <= s.length * (1 + 1e-12):
        raise InvalidArgument('position {} outside the string of length'
                              ' {}'.format(z, s.length))
    if s.boundary == 'dirichlet':
        w, dw = 0.0, -1.0
    else:
        w, dw = 1.0, 0.0
    position, log_scale = s.length, 0.0
    at_z = None
    for distance, mass in zip(s.distances[::-1], s.masses[::-1]):
        if at_z is None and z >= distance:
            at_z = (w - (position - z) * dw, log_scale)
        w = w - (position - distance) * dw
        dw = dw - lam * mass * w
        position = distance
        size = max(abs(w), abs(dw))
        if size > RESCALE_THRESHOLD:
            w, dw = w / size, dw / size
            log_scale += math.log(size)
    if at_z is None:
        at_z = (w - (position - z) * dw, log_scale)
    w0 = w - position * dw
    if at_z[0] <= 0:
        return -math.inf, dw / w0
    return math.log(at_z[0] / w0) + at_z[1] - log_scale, dw / w0


def _forward(s, lam, z, slope):
    """Return ``log (phi(z) + slope * psi(z))`` for the continuation across
    the anchor.

    ``phi`` already carries the jump of ``s.origin_mass``, so `slope` is the
    derivative at the anchor without it.

    """
    if not 0 <= z <= s.length * (1 + 1e-12):
        raise InvalidArgument('position {} outside the string of length'
                              ' {}'.format(z, s.length))
    phi, _, psi, _, log_scale = propagate(s, [lam], min(z, s.length))
    return math.log(phi[0] + slope * psi[0]) + log_scale[0]


class _Glued:
    """Boundary solutions of a glued pair of strings at one ``lam``."""

    def __init__(self, s_plus, s_minus, lam, anchor_mass):
        _check(s_plus, s_minus, lam)
        self.s_plus, self.s_minus, self.lam = s_plus, s_minus, lam
        self.anchor_mass = (anchor_mass + s_plus.origin_mass
                            + s_minus.origin_mass)
        self.inv_plus = -_backward(s_plus, lam, 0.0)[1]
        self.inv_minus = -_backward(s_minus, lam, 0.0)[1]
        self.inverse_h = (self.inv_plus + self.inv_minus
                          + lam * self.anchor_mass)

    @property
    def h(self):
        return 1 / self.inverse_h

    def log_left(self, z):
        """``log u_l`` at signed distance `z`."""
        if z <= 0:
            return _backward(self.s_minus, self.lam, -z)[0]
        slope = self.inv_minus + self.lam * (self.anchor_mass
                                             - self.s_plus.origin_mass)
        return _forward(self.s_plus, self.lam, z, slope)

    def log_right(self, z):
        """``log u_r`` at signed distance `z`."""
        if z >= 0:
            return _backward(self.s_plus, self.lam, z)[0]
        slope = self.inv_plus + self.lam * (self.anchor_mass
                                            - self.s_minus.origin_mass)
        return _forward(self.s_minus, self.lam, -z, slope)


def resolvent_full_line(s_plus, s_minus, lam, x, y, anchor_mass=0.0):
    """Return the resolvent kernel ``g(x, y)`` at positions `x` and `y`.

    `anchor_mass` is the mass of an atom sitting exactly at the anchor, which
    the one-sided strings leave out.

    """
    glued = _Glued(s_plus, s_minus, lam, anchor_mass)
    a = s_plus.anchor
    lo, hi = sorted((x - a, y - a))
    return glued.h * math.exp(glued.log_left(lo) + glued.log_right(hi))


def hitting_laplace(s_plus, s_minus, lam, a, b, anchor_mass=0.0):
    """Return ``E^a exp(-lam H_b) = g(a, b) / g(b, b)``."""
    glued = _Glued(s_plus, s_minus, lam, anchor_mass)
    za, zb = a - s_plus.anchor, b - s_plus.anchor
    if za <= zb:
        value = math.exp(glued.log_left(za) - glued.log_left(zb))
    else:
        value = math.exp(glued.log_right(za) - glued.log_right(zb))
    return min(value, 1.0)


def inverse_local_time_exponent(s_plus, s_minus, lam, anchor_mass=0.0):
    """Return ``1 / h(lam)``, the Laplace exponent of the inverse local time
    at the anchor.

    """
    return _Glued(s_plus, s_minus, lam, anchor_mass).inverse_h
