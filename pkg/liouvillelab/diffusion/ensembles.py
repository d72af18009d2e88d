# ensembles.py - batched samplers over many independent replicas
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Vectorized samplers for marginals and hitting times.

Replicas are split into chunks of :data:`~liouvillelab.constants.CHUNK_SIZE`;
chunk ``c`` draws from ``default_rng(SeedSequence(seed, spawn_key=(c,)))`` and
results are concatenated in chunk order, so the output is a function of the
seed alone, whatever the number of worker threads.

"""
from concurrent.futures import ThreadPoolExecutor
import logging
import os

import numpy as np

from ..constants import CHUNK_SIZE
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from .paths import fold
from .paths import jump_rates
from .paths import start_atom
from .paths import walk_lattice

#: Lattice steps taken at once by every replica of the time-change sampler.
WALK_BLOCK = 256


def _chunk_rng(seed, chunk):
    return np.random.default_rng(np.random.SeedSequence(int(seed),
                                                        spawn_key=(chunk,)))


def run_chunks(sample, n_paths, seed, threads=None):
    """Call ``sample(rng, size)`` per chunk and concatenate the results."""
    if int(n_paths) != n_paths or n_paths < 1:
        raise InvalidArgument('the number of paths must be a positive'
                              ' integer')
    sizes = [min(CHUNK_SIZE, n_paths - start)
             for start in range(0, int(n_paths), CHUNK_SIZE)]
    tasks = [(_chunk_rng(seed, c), size) for c, size in enumerate(sizes)]
    threads = threads or os.cpu_count() or 1
    logging.debug('Sampling %d replicas in %d chunks on %d threads', n_paths,
                  len(sizes), min(threads, len(sizes)))
    if threads == 1 or len(tasks) == 1:
        results = [sample(rng, size) for rng, size in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(lambda task: sample(*task), tasks))
    return np.concatenate(results)


def _check_times(times):
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times <= 0) or np.any(np.diff(times) <= 0):
        raise InvalidArgument('sampling times must be positive and'
                              ' increasing')
    return times


def sample_gap_positions(measure, x0, times, n_paths, seed, threads=None):
    """Return the positions of `n_paths` gap diffusions at `times`, shape
    ``(n_paths, len(times))``.

    """
    times = _check_times(times)
    left, right = jump_rates(measure)
    total = left + right
    p_right = right / total
    start, _ = start_atom(measure, x0)
    positions = measure.positions
    n_times = len(times)

    def sample(rng, size):
        k = np.full(size, start)
        t = np.zeros(size)
        slot = np.zeros(size, dtype=np.int64)
        out = np.empty((size, n_times))
        active = np.arange(size)
        while active.size:
            here = k[active]
            later = t[active] + rng.standard_exponential(active.size) / \
                total[here]
            while True:
                s = slot[active]
                due = (s < n_times) & (times[np.minimum(s, n_times - 1)]
                                       < later)
                if not due.any():
                    break
                rows = active[due]
                out[rows, s[due]] = positions[here[due]]
                slot[rows] += 1
            t[active] = later
            up = rng.random(active.size) < p_right[here]
            k[active] = here + np.where(up, 1, -1)
            active = active[slot[active] < n_times]
        return out

    return run_chunks(sample, n_paths, seed, threads)


def sample_time_change_positions(measure, x0, times, n_paths, seed,
                                 threads=None, walk_step=None):
    """Return the positions at `times` of `n_paths` time-changed random
    walks (see :func:`~liouvillelab.diffusion.simulate_time_change_oracle`).

    """
    times = _check_times(times)
    if len(measure) < 2:
        raise DegenerateInput('the diffusion needs at least two atoms')
    step, n_points, site_atom = walk_lattice(measure, walk_step)
    index, _ = start_atom(measure, x0)
    start = int(np.flatnonzero(site_atom == index)[0])
    gains_at = np.where(site_atom >= 0,
                        measure.masses[site_atom] * step / 2, 0.0)
    positions = np.where(site_atom >= 0, measure.positions[site_atom], 0.0)
    n_times = len(times)

    def sample(rng, size):
        j = np.full(size, start, dtype=np.int64)
        clock = np.zeros(size)
        slot = np.zeros(size, dtype=np.int64)
        out = np.empty((size, n_times))
        active = np.arange(size)
        while active.size:
            steps = rng.integers(0, 2, (active.size, WALK_BLOCK)) * 2 - 1
            walked = np.cumsum(steps, axis=1)
            visited = fold(j[active, None] + walked - steps, n_points)
            ends = clock[active, None] + np.cumsum(gains_at[visited], axis=1)
            while True:
                s = slot[active]
                target = times[np.minimum(s, n_times - 1)]
                due = (s < n_times) & (ends[:, -1] > target)
                if not due.any():
                    break
                crossing = np.argmax(ends[due] > target[due, None], axis=1)
                rows = active[due]
                out[rows, s[due]] = positions[visited[due, crossing]]
                slot[rows] += 1
            j[active] += walked[:, -1]
            clock[active] = ends[:, -1]
            active = active[slot[active] < n_times]
        return out

    return run_chunks(sample, n_paths, seed, threads)


def sample_hitting_times(measure, x0, n_paths, seed, a=None, b=None,
                         horizon=np.inf, threads=None):
    """Return first exit times of the gap diffusion from ``(a, b)``.

    The diffusion runs on the atoms strictly inside the interval and is
    killed when it jumps to `a` or `b` (rates use the distances to `a` and
    `b`); a missing end is the reflecting window edge.  Paths still inside at
    `horizon` are reported as ``inf``.

    """
    if a is None and b is None:
        raise InvalidArgument('at least one end of the interval is needed')
    lo = 0 if a is None else int(np.searchsorted(measure.positions, a,
                                                 side='right'))
    hi = len(measure) if b is None else int(np.searchsorted(measure.positions,
                                                            b, side='left'))
    if hi <= lo:
        raise DegenerateInput('no atoms inside ({}, {})'.format(a, b))
    if not ((a is None or a < x0) and (b is None or x0 < b)):
        raise InvalidArgument('start point {} outside ({}, {})'.format(x0, a,
                                                                       b))
    sites = measure.positions[lo:hi]
    masses = measure.masses[lo:hi]
    inverse = 1 / np.diff(sites)
    left_end = [0.0] if a is None else [1 / (sites[0] - a)]
    right_end = [0.0] if b is None else [1 / (b - sites[-1])]
    left = np.concatenate((left_end, inverse)) / masses
    right = np.concatenate((inverse, right_end)) / masses
    total = left + right
    p_right = right / total
    start = int(np.clip(measure.nearest_atom(x0), lo, hi - 1)) - lo
    n_sites = len(sites)

    def sample(rng, size):
        k = np.full(size, start)
        t = np.zeros(size)
        out = np.full(size, np.inf)
        active = np.arange(size)
        while active.size:
            here = k[active]
            t[active] += rng.standard_exponential(active.size) / total[here]
            late = t[active] > horizon
            up = rng.random(active.size) < p_right[here]
            moved = here + np.where(up, 1, -1)
            exited = ~late & ((moved < 0) | (moved >= n_sites))
            out[active[exited]] = t[active[exited]]
            k[active] = moved
            active = active[~late & ~exited]
        return out

    return run_chunks(sample, n_paths, seed, threads)
