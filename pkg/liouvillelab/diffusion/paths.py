# paths.py - exact single-path simulation of the gap diffusion
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Single trajectories of the diffusion with speed measure ``nu``.

For an atomic measure the diffusion with generator ``(d/dnu)(d/dx)`` is a
nearest-neighbour jump process on the atoms: from atom ``k`` it jumps to
``k +- 1`` at rate ``1 / (m_k * gap)``, the gap being the distance to that
neighbour.  The outermost atoms only jump inwards, so the window edges are
reflecting.  :func:`simulate_gap_diffusion` draws exact trajectories event by
event; :func:`simulate_time_change_oracle` builds an independent approximation
by time-changing a fine random walk with the additive functional
``A(t) = sum m_k L(t, x_k)``.

Local time is time spent at an atom divided by its mass, so that the
occupation identity ``int_0^T f(w_s) ds = sum f(x_k) L(T, x_k) m_k`` holds
exactly.

"""
import csv
from dataclasses import dataclass
import io
import logging

import numpy as np

from ..constants import FLOAT_FORMAT
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..safeio import locked_write_text

#: Random variates are drawn in blocks of this size by the event loops.
DRAW_BLOCK = 1 << 16


@dataclass(frozen=True, eq=False)
class PathRecord:
    """An immutable trajectory on ``[0, total_time]``.

    The path sits at atom ``atom_indices[i]`` from ``event_times[i]`` for
    ``holding_times[i]`` (the last holding time is cut at `total_time`).
    `occupation` is the time spent at every atom of `measure`;
    `edge_contacts` counts the visits to the outermost atoms and
    `snapped_from` is the requested start point when it was not an atom.

    """

    measure: object
    event_times: np.ndarray
    atom_indices: np.ndarray
    holding_times: np.ndarray
    occupation: np.ndarray
    total_time: float
    seed: int
    edge_contacts: int = 0
    snapped_from: float = None

    def __post_init__(self):
        for name in ('event_times', 'atom_indices', 'holding_times',
                     'occupation'):
            getattr(self, name).setflags(write=False)

    def __len__(self):
        return len(self.event_times)

    @property
    def positions(self):
        return self.measure.positions[self.atom_indices]

    @property
    def local_time(self):
        """Local time ``L(T, x_k)`` at every atom."""
        return self.occupation / self.measure.masses

    def local_time_at(self, index):
        return float(self.occupation[index] / self.measure.masses[index])

    def position_at(self, t):
        """Return the position of the path at time(s) `t`."""
        k = np.searchsorted(self.event_times, t, side='right') - 1
        return self.positions[np.clip(k, 0, len(self) - 1)]


def jump_rates(measure):
    """Return the rates ``(left, right)`` of the jumps out of every atom."""
    if len(measure) < 2:
        raise DegenerateInput('the diffusion needs at least two atoms')
    inverse = 1 / np.diff(measure.positions)
    left = np.concatenate(([0.0], inverse)) / measure.masses
    right = np.concatenate((inverse, [0.0])) / measure.masses
    return left, right


def start_atom(measure, x0):
    """Return ``(index, snapped_from)`` of the atom a path starts at."""
    L = measure.half_length
    if not -L <= x0 <= L:
        raise InvalidArgument('start point {} outside the window'.format(x0))
    index = measure.atom_at(x0)
    if index is not None:
        return index, None
    index = measure.nearest_atom(x0)
    logging.warning('Start point %g is not an atom; snapped to %g', x0,
                    measure.positions[index])
    return index, float(x0)


def _check_time(T):
    if not T > 0:
        raise InvalidArgument('time horizon must be positive')


def simulate_gap_diffusion(measure, x0, T, seed):
    """Simulate the gap diffusion of `measure` from `x0` on ``[0, T]``."""
    _check_time(T)
    left, right = jump_rates(measure)
    total = (left + right).tolist()
    p_right = (right / (left + right)).tolist()
    index, snapped_from = start_atom(measure, x0)
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    times, indices, holds = [], [], []
    t = 0.0
    done = False
    while not done:
        exponentials = rng.standard_exponential(DRAW_BLOCK).tolist()
        uniforms = rng.random(DRAW_BLOCK).tolist()
        for e, u in zip(exponentials, uniforms):
            hold = e / total[index]
            times.append(t)
            indices.append(index)
            if t + hold >= T:
                holds.append(T - t)
                done = True
                break
            holds.append(hold)
            t += hold
            index = index + 1 if u < p_right[index] else index - 1
    path = _record(measure, times, indices, holds, T, seed, snapped_from)
    if path.edge_contacts:
        logging.warning('Path touched the window edge %d times',
                        path.edge_contacts)
    logging.debug('Simulated %d events up to T=%g (seed %d)', len(path), T,
                  seed)
    return path


def _record(measure, times, indices, holds, T, seed, snapped_from):
    indices = np.array(indices, dtype=np.int64)
    holds = np.array(holds, dtype=float)
    occupation = np.bincount(indices, weights=holds, minlength=len(measure))
    last = len(measure) - 1
    edges = int(np.count_nonzero((indices == 0) | (indices == last)))
    return PathRecord(measure, np.array(times, dtype=float), indices, holds,
                      occupation, float(T), int(seed), edges, snapped_from)


def walk_lattice(measure, walk_step=None):
    """Return ``(step, n_points, site_atom)`` of the random walk lattice.

    The lattice has spacing `step` and covers the window; ``site_atom[i]`` is
    the atom assigned to lattice point ``i`` (the nearest one), or -1.

    """
    if walk_step is None:
        walk_step = measure.min_gap / 2
    if not 0 < walk_step <= measure.min_gap * (1 + 1e-12):
        raise InvalidArgument('walk step {} is coarser than the smallest gap'
                              ' {}'.format(walk_step, measure.min_gap))
    L = measure.half_length
    n_points = int(np.floor(2 * L / walk_step + 1e-9)) + 1
    sites = np.rint((measure.positions + L) / walk_step).astype(np.int64)
    sites = np.clip(sites, 0, n_points - 1)
    if np.any(np.diff(sites) <= 0):
        raise InvalidArgument('walk step {} cannot separate the'
                              ' atoms'.format(walk_step))
    site_atom = np.full(n_points, -1, dtype=np.int64)
    site_atom[sites] = np.arange(len(measure))
    return float(walk_step), n_points, site_atom


def fold(j, n_points):
    """Reflect unconstrained lattice indices `j` into ``[0, n_points - 1]``."""
    period = 2 * (n_points - 1)
    r = np.mod(j, period)
    return np.where(r > n_points - 1, period - r, r)


def simulate_time_change_oracle(measure, x0, T, seed, walk_step=None):
    """Approximate the diffusion by time-changing a reflecting random walk.

    The walk moves by `walk_step` every ``walk_step**2 / 2`` units of time
    (a Brownian surrogate for the generator ``d^2/dx^2``); every visit to the
    lattice point of atom ``k`` adds ``m_k * walk_step / 2`` to the clock
    ``A``.  The returned path sits at atom ``k`` while ``A`` runs through the
    increments collected there, up to ``A = T``.

    """
    _check_time(T)
    if len(measure) < 2:
        raise DegenerateInput('the diffusion needs at least two atoms')
    step, n_points, site_atom = walk_lattice(measure, walk_step)
    index, snapped_from = start_atom(measure, x0)
    j = int(np.flatnonzero(site_atom == index)[0])
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    increments = measure.masses * step / 2
    times, indices, holds = [], [], []
    clock = 0.0
    done = False
    while not done:
        steps = rng.integers(0, 2, DRAW_BLOCK) * 2 - 1
        visited = fold(j + np.concatenate(([0], np.cumsum(steps[:-1]))),
                       n_points)
        j += int(np.sum(steps))
        atoms = site_atom[visited]
        atoms = atoms[atoms >= 0]
        if len(atoms) == 0:
            continue
        gains = increments[atoms]
        ends = clock + np.cumsum(gains)
        cut = int(np.searchsorted(ends, T, side='left'))
        if cut < len(atoms):
            atoms, gains = atoms[:cut + 1], gains[:cut + 1].copy()
            gains[-1] = T - (ends[cut] - gains[-1])
            done = True
        # Consecutive visits to one atom form a single sojourn.
        firsts = np.flatnonzero(np.concatenate(([True],
                                                atoms[1:] != atoms[:-1])))
        durations = np.add.reduceat(gains, firsts)
        starts = clock + np.concatenate(([0.0], np.cumsum(gains)))[firsts]
        sojourns = atoms[firsts]
        if indices and sojourns[0] == indices[-1]:
            holds[-1] += float(durations[0])
            starts, sojourns, durations = starts[1:], sojourns[1:], \
                durations[1:]
        times.extend(starts.tolist())
        indices.extend(sojourns.tolist())
        holds.extend(durations.tolist())
        clock += float(np.sum(gains))
    path = _record(measure, times, indices, holds, T, seed, snapped_from)
    logging.debug('Time-changed walk: %d sojourns up to T=%g (seed %d)',
                  len(path), T, seed)
    return path


def write_path_csv(filename, path):
    """Write `path` as CSV rows ``event_time, atom_index, position``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(('event_time', 'atom_index', 'position'))
    for t, k, x in zip(path.event_times, path.atom_indices, path.positions):
        writer.writerow((FLOAT_FORMAT % t, int(k), FLOAT_FORMAT % x))
    locked_write_text(filename, buffer.getvalue())
