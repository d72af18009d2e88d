# strings.py - Stieltjes strings, dual strings and volume functions
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Krein strings with finitely many point masses.

A :class:`StieltjesString` is the one-sided mass function
``m(x) = nu([a, a + x])`` (direction ``plus``) or ``nu([a - x, a])``
(direction ``minus``) of an atomic measure, cut at a truncation length
``Lambda`` where either a Dirichlet (killing) or a Neumann (reflecting)
condition is imposed.

Internally a string is also a Stieltjes sequence: the alternating list
``[g1, m1, g2, m2, ..., gN, mN]`` of gaps and masses, followed by the tail gap
``Lambda - xN`` when the string is Dirichlet at ``Lambda``.  Its Krein
correspondence is the continued fraction::

    h(lam) = g1 + 1/(lam*m1 + 1/(g2 + 1/(lam*m2 + ...)))

and the dual string, whose correspondence is ``1 / (lam * h(lam))``, is the
string of the sequence ``[0, g1, m1, g2, ...]``: gaps and masses trade places
and the leading gap becomes a mass sitting at distance zero
(:attr:`StieltjesString.origin_mass`).

"""
from dataclasses import dataclass
from dataclasses import field
import logging

import numpy as np

from ..constants import FLOAT_FORMAT
from ..errors import DegenerateInput
from ..errors import InvalidArgument

#: Boundary conditions at the truncation length.
BOUNDARIES = ('dirichlet', 'neumann')

#: The two sides of an anchor.
DIRECTIONS = ('plus', 'minus')

FNV_OFFSET = 0xcbf29ce484222325
FNV_PRIME = 0x100000001b3
MASK64 = 0xffffffffffffffff


def fnv1a_64(data):
    """Return the 64-bit FNV-1a hash of the bytes `data`."""
    value = FNV_OFFSET
    for byte in data:
        value = ((value ^ byte) * FNV_PRIME) & MASK64
    return value


def _frozen(values):
    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class StieltjesString:
    """A string made of point masses at increasing distances from an anchor.

    `distances` and `masses` describe the atoms at strictly positive distance;
    `origin_mass` is an optional atom at distance zero (dual strings have one).
    `meta` records provenance such as the binning width of a coarsened string.

    """

    anchor: float
    direction: str
    distances: np.ndarray
    masses: np.ndarray
    length: float
    boundary: str = 'dirichlet'
    origin_mass: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        distances = _frozen(self.distances)
        masses = _frozen(self.masses)
        object.__setattr__(self, 'distances', distances)
        object.__setattr__(self, 'masses', masses)
        object.__setattr__(self, 'length', float(self.length))
        object.__setattr__(self, 'origin_mass', float(self.origin_mass))
        if self.direction not in DIRECTIONS:
            raise InvalidArgument('direction must be plus or minus')
        if self.boundary not in BOUNDARIES:
            raise InvalidArgument('boundary must be dirichlet or neumann')
        if distances.shape != masses.shape:
            raise InvalidArgument('distances and masses differ in length')
        if len(distances) == 0 and self.origin_mass <= 0:
            raise DegenerateInput('a string needs at least one atom')
        if len(distances) and distances[0] <= 0:
            raise InvalidArgument('atom distances must be positive')
        if np.any(np.diff(distances) <= 0):
            raise InvalidArgument('atom distances must be strictly'
                                  ' increasing')
        if np.any(masses <= 0) or self.origin_mass < 0:
            raise InvalidArgument('atom masses must be positive')
        if not self.length > 0:
            raise InvalidArgument('truncation length must be positive')
        if len(distances) and distances[-1] > self.length * (1 + 1e-12):
            raise InvalidArgument('atoms beyond the truncation length')

    def __len__(self):
        return len(self.distances)

    def __eq__(self, other):
        if not isinstance(other, StieltjesString):
            return NotImplemented
        return (self.anchor == other.anchor
                and self.direction == other.direction
                and self.boundary == other.boundary
                and self.length == other.length
                and self.origin_mass == other.origin_mass
                and np.array_equal(self.distances, other.distances)
                and np.array_equal(self.masses, other.masses))

    __hash__ = None

    @property
    def total_mass(self):
        return self.origin_mass + float(np.sum(self.masses))

    @property
    def leading_gap(self):
        if self.origin_mass > 0 or len(self.distances) == 0:
            return 0.0
        return float(self.distances[0])

    @property
    def tail_gap(self):
        last = self.distances[-1] if len(self.distances) else 0.0
        return self.length - float(last)

    def atoms(self):
        return list(zip(self.distances.tolist(), self.masses.tolist()))

    def cumulative_mass(self, x):
        """Return ``m(x)``, the mass of ``[0, x]`` (right-continuous)."""
        k = np.searchsorted(self.distances, x, side='right')
        return self.origin_mass + float(np.sum(self.masses[:k]))

    def sequence(self):
        """Return the Stieltjes sequence ``[g1, m1, g2, m2, ...]``.

        A Dirichlet string ends with its tail gap, a Neumann string with its
        last mass.

        """
        seq = []
        if self.origin_mass > 0:
            seq += [0.0, self.origin_mass]
        previous = 0.0
        for distance, mass in zip(self.distances, self.masses):
            seq += [float(distance) - previous, float(mass)]
            previous = float(distance)
        if self.boundary == 'dirichlet':
            seq.append(self.length - previous)
        return seq

    def canonical_bytes(self):
        fields = [repr(float(self.anchor)), self.direction, self.boundary,
                  FLOAT_FORMAT % self.length, FLOAT_FORMAT % self.origin_mass]
        atoms = ';'.join('{},{}'.format(FLOAT_FORMAT % d, FLOAT_FORMAT % m)
                         for d, m in zip(self.distances, self.masses))
        return ('|'.join(fields) + '|' + atoms).encode('ascii')

    def digest(self):
        """Return the FNV-1a hash of the canonical atom serialization as a
        16-digit hexadecimal string.

        """
        return '{:016x}'.format(fnv1a_64(self.canonical_bytes()))


def from_sequence(seq, anchor=0.0, direction='plus', neumann_tail=None,
                  meta=None):
    """Build the string of a Stieltjes sequence.

    An odd-length sequence ends with a gap and gives a Dirichlet string; an
    even-length one ends with a mass and gives a Neumann string whose length
    is the position of its last atom, or that position plus `neumann_tail`.

    """
    seq = [float(v) for v in seq]
    while len(seq) >= 2 and seq[0] == 0 and seq[1] == 0:
        seq = seq[2:]
    origin_mass = 0.0
    if len(seq) >= 2 and seq[0] == 0:
        origin_mass = seq[1]
        seq = seq[2:]
    distances, masses = [], []
    position = 0.0
    for i in range(0, len(seq) - 1, 2):
        position += seq[i]
        if seq[i + 1] > 0:
            distances.append(position)
            masses.append(seq[i + 1])
    if len(seq) % 2:
        return StieltjesString(anchor, direction, distances, masses,
                               position + seq[-1], 'dirichlet', origin_mass,
                               dict(meta or {}))
    length = position + (neumann_tail or 0.0)
    if length <= 0:
        length = max(origin_mass, 1.0)
    return StieltjesString(anchor, direction, distances, masses, length,
                           'neumann', origin_mass, dict(meta or {}))


def dual(s):
    """Return the dual string of `s`.

    Gaps and masses are exchanged and the boundary condition toggles, so that
    ``lam * h(lam) * h_dual(lam) == 1``.  The operation is an involution on
    Dirichlet strings; a Neumann string comes back with its length reset to
    the position of its last atom.

    """
    seq = [0.0] + s.sequence()
    neumann_tail = None
    if len(seq) % 2 == 0 and seq[-1] == 0:
        # A Dirichlet string with an atom exactly at its length: the dual
        # keeps the last gap as a reflecting tail without mass.
        seq.pop()
        neumann_tail = seq.pop()
    meta = {'dual_of': s.digest()}
    return from_sequence(seq, s.anchor, s.direction, neumann_tail, meta)


def to_string(measure, a, direction, length, boundary='dirichlet'):
    """Cut the one-sided string of `measure` at anchor `a`.

    The atoms strictly on the chosen side of `a` and within distance `length`
    are re-anchored as distances; masses are preserved.

    """
    L = measure.half_length
    if not -L <= a <= L:
        raise InvalidArgument('anchor {} outside the window'.format(a))
    if direction not in DIRECTIONS:
        raise InvalidArgument('direction must be plus or minus')
    if not length > 0:
        raise InvalidArgument('truncation length must be positive')
    reach = L - a if direction == 'plus' else a + L
    if length > reach * (1 + 1e-12) + 1e-12:
        raise InvalidArgument('truncation length {} reaches beyond the window'
                              ' (at most {})'.format(length, reach))
    positions = measure.positions
    if direction == 'plus':
        lo = np.searchsorted(positions, a, side='right')
        hi = np.searchsorted(positions, a + length, side='right')
        distances = positions[lo:hi] - a
        masses = measure.masses[lo:hi]
    else:
        lo = np.searchsorted(positions, a - length, side='left')
        hi = np.searchsorted(positions, a, side='left')
        distances = (a - positions[lo:hi])[::-1]
        masses = measure.masses[lo:hi][::-1]
    keep = distances > 0
    distances, masses = distances[keep], masses[keep]
    if len(distances) == 0:
        raise DegenerateInput('no atoms within {} of {} on the {}'
                              ' side'.format(length, a, direction))
    length = min(length, reach)
    if distances[-1] > length:
        length = float(distances[-1])
    meta = {'resolution': measure.resolution}
    return StieltjesString(a, direction, distances, masses, length, boundary,
                           0.0, meta)


def anchor_strings(measure, a, boundary='dirichlet'):
    """Return ``(s_plus, s_minus, anchor_mass)`` for the whole window.

    Both strings reach the window edge; `anchor_mass` is the mass of an atom
    sitting exactly at `a` (zero if there is none).

    """
    L = measure.half_length
    s_plus = to_string(measure, a, 'plus', L - a, boundary)
    s_minus = to_string(measure, a, 'minus', a + L, boundary)
    index = measure.atom_at(a)
    anchor_mass = 0.0 if index is None else float(measure.masses[index])
    return s_plus, s_minus, anchor_mass


def coarsen_string(s, max_atoms):
    """Bin the atoms of `s` into at most `max_atoms` cells of equal width.

    Mass is preserved per cell and the merged atom sits at the centre of mass
    of the cell; the binning width is recorded in the returned string's meta.

    """
    if len(s) <= max_atoms:
        return s
    width = s.length / max_atoms
    cells = np.minimum(np.floor(s.distances / width).astype(np.int64),
                       max_atoms - 1)
    _, starts = np.unique(cells, return_index=True)
    masses = np.add.reduceat(s.masses, starts)
    distances = np.add.reduceat(s.masses * s.distances, starts) / masses
    meta = dict(s.meta)
    meta['binning_width'] = width
    logging.warning('Coarsened a %d-atom string to %d atoms (bins of width'
                    ' %g)', len(s), len(distances), width)
    return StieltjesString(s.anchor, s.direction, distances, masses,
                           s.length, s.boundary, s.origin_mass, meta)


class VolumeFunction:
    """``V(r) = integral of m(x) dx over [0, r]`` for the two-sided mass
    function ``m(x) = nu([a - x, a + x])``.

    ``m`` is a step function, so ``V`` is piecewise linear and both ``V`` and
    its inverse are evaluated exactly.  Values are trustworthy up to
    :attr:`r_max`, the distance from the anchor to the nearer window edge.

    """

    def __init__(self, measure, a):
        distances = np.abs(measure.positions - a)
        order = np.argsort(distances, kind='stable')
        self.breakpoints = distances[order]
        masses = measure.masses[order]
        self.cum_mass = np.cumsum(masses)
        self.cum_moment = np.cumsum(masses * self.breakpoints)
        self.values = self.cum_mass * self.breakpoints - self.cum_moment
        self.r_max = measure.half_length - abs(a)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        k = np.searchsorted(self.breakpoints, r, side='right') - 1
        safe = np.maximum(k, 0)
        value = self.cum_mass[safe] * r - self.cum_moment[safe]
        return np.where(k >= 0, value, 0.0)

    def inverse(self, eta):
        eta = np.asarray(eta, dtype=float)
        if np.any(eta <= 0):
            raise InvalidArgument('V is only inverted at positive values')
        k = np.searchsorted(self.values, eta, side='right') - 1
        k = np.clip(k, 0, len(self.values) - 1)
        return (eta + self.cum_moment[k]) / self.cum_mass[k]

    def mass_within(self, r):
        """Return ``m(r)`` for each radius in `r`."""
        k = np.searchsorted(self.breakpoints, np.asarray(r), side='right')
        padded = np.concatenate(([0.0], self.cum_mass))
        return padded[k]


def volume_function(measure, a):
    """Return the :class:`VolumeFunction` of `measure` at `a`."""
    return VolumeFunction(measure, a)
