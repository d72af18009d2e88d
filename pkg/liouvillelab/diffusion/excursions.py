# excursions.py - excursions away from an anchor and the inverse local time
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import csv
from dataclasses import dataclass
import io
import logging

import numpy as np

from ..constants import FLOAT_FORMAT
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..safeio import locked_write_text


@dataclass(frozen=True, eq=False)
class ExcursionSet:
    """Completed excursions of a path away from the anchor atom.

    Entry ``i`` starts when the anchor's local time is
    ``start_local_time[i]`` and lasts ``lifetime[i]``; ``maximum[i]`` is its
    largest distance from the anchor, ``sign[i]`` is +1 above and -1 below,
    and ``argmax_time[i]`` is the time (from its start) at which it sits in
    the middle of its stay at the farthest atom.  `discarded` counts the
    incomplete pieces at the ends of the path.

    """

    anchor: float
    anchor_index: int
    start_local_time: np.ndarray
    lifetime: np.ndarray
    maximum: np.ndarray
    sign: np.ndarray
    argmax_time: np.ndarray
    total_local_time: float
    discarded: int = 0

    def __len__(self):
        return len(self.lifetime)

    def select(self, sign):
        """Return a boolean mask of the excursions on one side."""
        return self.sign == (1 if sign in (1, '+', 'plus') else -1)

    def rate_above(self, levels, sign=None):
        """Number of excursions with maximum at least each level, per unit of
        local time at the anchor.

        """
        maxima = self.maximum if sign is None else \
            self.maximum[self.select(sign)]
        maxima = np.sort(maxima)
        levels = np.asarray(levels, dtype=float)
        counts = len(maxima) - np.searchsorted(maxima, levels * (1 - 1e-12),
                                               side='left')
        return counts / self.total_local_time

    def argmax_fraction(self):
        """``argmax_time / lifetime`` of every excursion."""
        return self.argmax_time / self.lifetime


def _anchor_index(path, a):
    index = path.measure.atom_at(a)
    if index is None:
        raise InvalidArgument('anchor {} is not an atom of the'
                              ' measure'.format(a))
    return index


def extract_excursions(path, a):
    """Harvest the excursions of `path` away from the atom at `a`."""
    index = _anchor_index(path, a)
    indices = path.atom_indices
    times = path.event_times
    at = indices == index
    if not at.any():
        raise DegenerateInput('the path never visits {}'.format(a))
    mass = path.measure.masses[index]
    local = np.cumsum(np.where(at, path.holding_times, 0.0)) / mass
    total_local_time = float(local[-1])
    # Excursions leave the anchor at `starts` and come back at `ends`.
    starts = np.flatnonzero(at[:-1] & ~at[1:]) + 1
    ends = np.flatnonzero(~at[:-1] & at[1:]) + 1
    discarded = int(not at[0])
    if not at[0]:
        ends = ends[1:]
    if len(starts) > len(ends):
        starts = starts[:len(ends)]
        discarded += 1
    empty = np.zeros(0)
    if len(starts) == 0:
        return ExcursionSet(float(path.measure.positions[index]), index,
                            empty, empty, empty, np.zeros(0, dtype=int),
                            empty, total_local_time, discarded)
    lengths = ends - starts
    offsets = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    member = (np.arange(int(np.sum(lengths)))
              - np.repeat(offsets, lengths) + np.repeat(starts, lengths))
    anchor = path.measure.positions[index]
    distance = np.abs(path.positions[member] - anchor)
    maximum = np.maximum.reduceat(distance, offsets)
    at_max = distance == np.repeat(maximum, lengths)
    first = np.minimum.reduceat(np.where(at_max, member, len(times)),
                                offsets)
    last = np.maximum.reduceat(np.where(at_max, member, -1), offsets)
    argmax_time = (times[first] + times[last + 1]) / 2 - times[starts]
    sign = np.where(path.positions[starts] > anchor, 1, -1)
    logging.debug('Harvested %d excursions from %g (%d discarded)',
                  len(starts), anchor, discarded)
    return ExcursionSet(float(anchor), index, local[starts - 1],
                        times[ends] - times[starts], maximum, sign,
                        argmax_time, total_local_time, discarded)


def inverse_local_time_samples(path, a, grid):
    """Return ``inf {t : L(t, a) > l}`` for every local time ``l`` in `grid`.
    """
    index = _anchor_index(path, a)
    grid = np.asarray(grid, dtype=float)
    at = np.flatnonzero(path.atom_indices == index)
    if len(at) == 0:
        raise DegenerateInput('the path never visits {}'.format(a))
    mass = path.measure.masses[index]
    after = np.cumsum(path.holding_times[at]) / mass
    if np.any(grid < 0) or np.any(grid >= after[-1]):
        raise InvalidArgument('local times must lie in [0, {})'.format(
            after[-1]))
    sojourn = np.searchsorted(after, grid, side='right')
    before = np.concatenate(([0.0], after[:-1]))[sojourn]
    return path.event_times[at[sojourn]] + (grid - before) * mass


def write_excursions_csv(filename, excursions):
    """Write CSV rows ``start_local_time, lifetime, max, sign``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(('start_local_time', 'lifetime', 'max', 'sign'))
    for row in zip(excursions.start_local_time, excursions.lifetime,
                   excursions.maximum, excursions.sign):
        writer.writerow((FLOAT_FORMAT % row[0], FLOAT_FORMAT % row[1],
                         FLOAT_FORMAT % row[2], '+' if row[3] > 0 else '-'))
    locked_write_text(filename, buffer.getvalue())
