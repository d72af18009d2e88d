# base.py - atomic speed measures on a window of the line
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Finite atomic approximations of a speed measure.

Every measure handled by this package is an :class:`AtomicMeasure`: a strictly
increasing list of atom positions inside a window ``[-L, L]`` together with
strictly positive masses.  A continuum measure without atoms is represented by
many atoms of mass of the order of the grid spacing, and every consumer is
told the resolution below which the atomization shows.

Reference measures are built here (:func:`build_lebesgue`,
:func:`manual_measure`); sampled boundary Liouville measures come from
:mod:`liouvillelab.measures.gmc`.

"""
from dataclasses import dataclass
from dataclasses import field
import logging
import math

import numpy as np

from ..errors import DegenerateInput
from ..errors import InvalidArgument


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """An immutable atomic measure on the window ``[-L, L]``.

    `meta` is the provenance record; it always has a ``kind`` key (one of
    ``'lebesgue'``, ``'manual'``, ``'gmc'``, ``'scaled'``, ``'coarsened'``)
    and a ``resolution`` key, the length scale below which the measure is
    known to be an artifact of the atomization.

    """

    positions: np.ndarray
    masses: np.ndarray
    half_length: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        positions = _frozen(self.positions)
        masses = _frozen(self.masses)
        object.__setattr__(self, 'positions', positions)
        object.__setattr__(self, 'masses', masses)
        object.__setattr__(self, 'half_length', float(self.half_length))
        if positions.ndim != 1 or positions.shape != masses.shape:
            raise InvalidArgument('positions and masses must be matching'
                                  ' one-dimensional sequences')
        if len(positions) == 0:
            raise DegenerateInput('a measure needs at least one atom')
        if np.any(np.diff(positions) <= 0):
            raise InvalidArgument('atom positions must be strictly increasing')
        if not np.all(np.isfinite(masses)) or np.any(masses <= 0):
            raise InvalidArgument('atom masses must be finite and positive')
        L = self.half_length
        if positions[0] < -L or positions[-1] > L:
            raise InvalidArgument('atoms must lie inside the window'
                                  ' [-{0}, {0}]'.format(L))

    def __len__(self):
        return len(self.positions)

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return (self.half_length == other.half_length
                and np.array_equal(self.positions, other.positions)
                and np.array_equal(self.masses, other.masses)
                and self.meta == other.meta)

    __hash__ = None

    @property
    def kind(self):
        return self.meta.get('kind', 'manual')

    @property
    def window(self):
        return (-self.half_length, self.half_length)

    @property
    def resolution(self):
        return float(self.meta.get('resolution', self.min_gap))

    @property
    def min_gap(self):
        if len(self.positions) < 2:
            return 2 * self.half_length
        return float(np.min(np.diff(self.positions)))

    @property
    def total_mass(self):
        return float(np.sum(self.masses))

    def atoms(self):
        """Return the atoms as a list of ``(position, mass)`` pairs."""
        return list(zip(self.positions.tolist(), self.masses.tolist()))

    def nearest_atom(self, x):
        """Return the index of the atom closest to `x` (ties go left)."""
        i = int(np.searchsorted(self.positions, x))
        if i == 0:
            return 0
        if i == len(self.positions):
            return i - 1
        left, right = self.positions[i - 1], self.positions[i]
        return i - 1 if x - left <= right - x else i

    def atom_at(self, x, tol=1e-12):
        """Return the index of the atom at `x`, or ``None``."""
        i = self.nearest_atom(x)
        scale = max(1.0, abs(x))
        if abs(self.positions[i] - x) <= tol * scale:
            return i
        return None


def _grid(L, delta):
    if not (L > 0 and delta > 0):
        raise InvalidArgument('L and delta must be positive')
    if delta > L:
        raise InvalidArgument('grid spacing {} exceeds the half length'
                              ' {}'.format(delta, L))
    # A small slack keeps 2L/delta from rounding one cell short.
    n = int(math.floor(2 * L / delta + 1e-9))
    offset = (2 * L - n * delta) / 2
    return -L + offset + (np.arange(n) + 0.5) * delta


def build_lebesgue(L, delta):
    """Return the midpoint quantization of Lebesgue measure on ``[-L, L]``.

    Cells of width `delta` tile the window (centred when ``2L / delta`` is not
    an integer, dropping the partial cell), and each cell carries an atom of
    mass `delta` at its midpoint.

    """
    positions = _grid(L, delta)
    masses = np.full(len(positions), float(delta))
    meta = {'kind': 'lebesgue', 'delta': float(delta),
            'resolution': float(delta)}
    return AtomicMeasure(positions, masses, L, meta)


def manual_measure(atoms, L, resolution=None):
    """Return a hand-built measure from ``(position, mass)`` pairs."""
    atoms = sorted(atoms)
    if not atoms:
        raise DegenerateInput('a measure needs at least one atom')
    positions, masses = zip(*atoms)
    meta = {'kind': 'manual'}
    if resolution is not None:
        meta['resolution'] = float(resolution)
    return AtomicMeasure(positions, masses, L, meta)


def interval_mass(measure, a, b):
    """Return the mass of the closed interval ``[a, b]``."""
    if a > b:
        raise InvalidArgument('empty interval [{}, {}]'.format(a, b))
    lo = np.searchsorted(measure.positions, a, side='left')
    hi = np.searchsorted(measure.positions, b, side='right')
    return float(np.sum(measure.masses[lo:hi]))


def scale_measure(measure, c):
    """Return the measure with every mass multiplied by `c` > 0."""
    if not c > 0:
        raise InvalidArgument('scale factor must be positive')
    meta = dict(measure.meta)
    meta['kind'] = 'scaled'
    meta['scale'] = float(c) * float(measure.meta.get('scale', 1.0))
    meta['base_kind'] = measure.meta.get('base_kind', measure.kind)
    meta['resolution'] = measure.resolution
    return AtomicMeasure(measure.positions, measure.masses * c,
                         measure.half_length, meta)


def normalize_measure(measure):
    """Return the measure rescaled to unit mass density over its window."""
    z = measure.total_mass / (2 * measure.half_length)
    return scale_measure(measure, 1 / z)


def coarsen_measure(measure, width):
    """Bin the atoms into cells of length `width` tiling the window.

    Mass is preserved per cell and the merged atom sits at the centre of mass
    of the atoms it replaces.

    """
    if not width > 0:
        raise InvalidArgument('binning width must be positive')
    L = measure.half_length
    cells = np.floor((measure.positions + L) / width).astype(np.int64)
    keys, starts = np.unique(cells, return_index=True)
    masses = np.add.reduceat(measure.masses, starts)
    moments = np.add.reduceat(measure.masses * measure.positions, starts)
    positions = moments / masses
    meta = dict(measure.meta)
    meta['kind'] = 'coarsened'
    meta['base_kind'] = measure.meta.get('base_kind', measure.kind)
    meta['binning_width'] = float(width)
    meta['resolution'] = max(measure.resolution, float(width))
    logging.debug('Coarsened %d atoms to %d with bins of width %g',
                  len(measure), len(keys), width)
    return AtomicMeasure(positions, masses, L, meta)


def sample_anchor(measure, rng, q=0, margin=0.5):
    """Draw an anchor point typical for ``nu_q``.

    ``q=0`` draws uniformly (Lebesgue-typical) from the central part of the
    window, ``q=1`` draws an atom with probability proportional to its mass
    (``nu``-typical) and returns its position.  `margin` is the fraction of the
    half length kept free on both sides.

    """
    L = measure.half_length * (1 - margin)
    if q == 0:
        return float(rng.uniform(-L, L))
    if q == 1:
        lo = np.searchsorted(measure.positions, -L, side='left')
        hi = np.searchsorted(measure.positions, L, side='right')
        if hi <= lo:
            raise DegenerateInput('no atoms in the central window')
        weights = measure.masses[lo:hi] / np.sum(measure.masses[lo:hi])
        return float(measure.positions[lo + rng.choice(hi - lo, p=weights)])
    raise InvalidArgument('only q in {0, 1} can be drawn exactly')
