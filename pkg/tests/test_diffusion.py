# test_diffusion.py - unit tests for the liouvillelab.diffusion package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import math
import os
import tempfile
import unittest

import numpy as np

from liouvillelab.diffusion import PathRecord
from liouvillelab.diffusion import extract_excursions
from liouvillelab.diffusion import inverse_local_time_samples
from liouvillelab.diffusion import jump_rates
from liouvillelab.diffusion import sample_gap_positions
from liouvillelab.diffusion import sample_hitting_times
from liouvillelab.diffusion import sample_time_change_positions
from liouvillelab.diffusion import simulate_gap_diffusion
from liouvillelab.diffusion import simulate_time_change_oracle
from liouvillelab.diffusion import write_excursions_csv
from liouvillelab.diffusion import write_path_csv
from liouvillelab.diffusion.paths import fold
from liouvillelab.errors import DegenerateInput
from liouvillelab.errors import InvalidArgument
from liouvillelab.measures import build_lebesgue
from liouvillelab.measures import manual_measure


def three_atoms():
    return manual_measure([(-1.0, 1.0), (0.0, 1.0), (1.0, 1.0)], 2.0)


def hand_path():
    """0 -> +1 -> 0 -> -1 -> 0 -> +1, holding 1, 2, 1, 2, 1, 1."""
    measure = three_atoms()
    indices = np.array([1, 2, 1, 0, 1, 2])
    holds = np.array([1.0, 2.0, 1.0, 2.0, 1.0, 1.0])
    times = np.concatenate(([0.0], np.cumsum(holds)[:-1]))
    occupation = np.bincount(indices, weights=holds, minlength=3)
    return PathRecord(measure, times, indices, holds, occupation, 8.0, 0)


class PathTest(unittest.TestCase):

    def test_jump_rates(self):
        m = manual_measure([(-0.5, 2.0), (0.5, 1.0)], 1.0)
        left, right = jump_rates(m)
        np.testing.assert_allclose(left, [0.0, 1.0])
        np.testing.assert_allclose(right, [0.5, 0.0])
        self.assertRaises(DegenerateInput, jump_rates,
                          manual_measure([(0.0, 1.0)], 1.0))

    def test_deterministic(self):
        m = three_atoms()
        first = simulate_gap_diffusion(m, 0.0, 50.0, 3)
        second = simulate_gap_diffusion(m, 0.0, 50.0, 3)
        np.testing.assert_array_equal(first.event_times, second.event_times)
        np.testing.assert_array_equal(first.atom_indices, second.atom_indices)
        self.assertAlmostEqual(float(np.sum(first.occupation)), 50.0)
        self.assertEqual(first.position_at(0.0), 0.0)

    def test_snapped_start(self):
        path = simulate_gap_diffusion(three_atoms(), 0.3, 1.0, 1)
        self.assertEqual(path.snapped_from, 0.3)
        self.assertEqual(path.atom_indices[0], 1)
        self.assertRaises(InvalidArgument, simulate_gap_diffusion,
                          three_atoms(), 3.0, 1.0, 1)
        self.assertRaises(InvalidArgument, simulate_gap_diffusion,
                          three_atoms(), 0.0, 0.0, 1)

    def test_occupation_follows_masses(self):
        m = manual_measure([(-1.0, 1.0), (0.0, 2.0), (1.0, 1.0)], 2.0)
        for simulate in (simulate_gap_diffusion,
                         simulate_time_change_oracle):
            path = simulate(m, 0.0, 4000.0, 17)
            np.testing.assert_allclose(path.occupation / 4000.0,
                                       [0.25, 0.5, 0.25], atol=0.05)
            np.testing.assert_allclose(path.local_time,
                                       path.occupation / m.masses)

    def test_fold(self):
        np.testing.assert_array_equal(fold(np.array([-2, -1, 0, 4, 5, 9]), 5),
                                      [2, 1, 0, 4, 3, 1])


class EnsembleTest(unittest.TestCase):

    def test_two_atom_marginal(self):
        # Jumps at rate 1 both ways: P(right at t) = (1 - exp(-2t)) / 2.
        m = manual_measure([(-0.5, 1.0), (0.5, 1.0)], 1.0)
        positions = sample_gap_positions(m, -0.5, [0.5, 1.0], 20000, 5)
        self.assertEqual(positions.shape, (20000, 2))
        for column, t in enumerate((0.5, 1.0)):
            self.assertAlmostEqual(np.mean(positions[:, column] > 0),
                                   (1 - math.exp(-2 * t)) / 2, delta=0.015)

    def test_thread_count_independent(self):
        m = build_lebesgue(1.0, 0.1)
        one = sample_gap_positions(m, 0.05, [0.2, 0.4], 3000, 8, threads=1)
        four = sample_gap_positions(m, 0.05, [0.2, 0.4], 3000, 8, threads=4)
        np.testing.assert_array_equal(one, four)
        one = sample_time_change_positions(m, 0.05, [0.2], 2500, 8, threads=1)
        four = sample_time_change_positions(m, 0.05, [0.2], 2500, 8,
                                            threads=4)
        np.testing.assert_array_equal(one, four)

    def test_time_change_agrees_with_gap(self):
        m = build_lebesgue(1.0, 0.1)
        gap = sample_gap_positions(m, 0.05, [0.3], 8000, 1)
        walk = sample_time_change_positions(m, 0.05, [0.3], 8000, 2)
        self.assertAlmostEqual(np.mean(np.abs(gap)), np.mean(np.abs(walk)),
                               delta=0.02)

    def test_exit_time_single_atom(self):
        # Rate 2 out of the atom, then absorbed: H is exponential.
        m = manual_measure([(0.0, 1.0)], 1.0)
        times = sample_hitting_times(m, 0.0, 20000, 4, -1.0, 1.0)
        self.assertAlmostEqual(np.mean(times), 0.5, delta=0.02)

    def test_horizon_censors(self):
        m = build_lebesgue(1.0, 0.1)
        times = sample_hitting_times(m, 0.05, 100, 4, b=0.9, horizon=1e-6)
        self.assertTrue(np.all(np.isinf(times)))

    def test_hitting_arguments(self):
        m = build_lebesgue(1.0, 0.1)
        self.assertRaises(InvalidArgument, sample_hitting_times, m, 0.05, 10,
                          0)
        self.assertRaises(InvalidArgument, sample_hitting_times, m, 0.5, 10,
                          0, -0.5, 0.2)
        self.assertRaises(DegenerateInput, sample_hitting_times, m, 0.0, 10,
                          0, -0.01, 0.01)
        self.assertRaises(InvalidArgument, sample_gap_positions, m, 0.05,
                          [0.5, 0.2], 10, 0)
        self.assertRaises(InvalidArgument, sample_gap_positions, m, 0.05,
                          [0.5], 0, 0)


class ExcursionTest(unittest.TestCase):

    def test_hand_path(self):
        excursions = extract_excursions(hand_path(), 0.0)
        self.assertEqual(len(excursions), 2)
        self.assertEqual(excursions.discarded, 1)
        np.testing.assert_array_equal(excursions.sign, [1, -1])
        np.testing.assert_array_equal(excursions.lifetime, [2.0, 2.0])
        np.testing.assert_array_equal(excursions.maximum, [1.0, 1.0])
        np.testing.assert_array_equal(excursions.start_local_time, [1.0, 2.0])
        np.testing.assert_array_equal(excursions.argmax_fraction(),
                                      [0.5, 0.5])
        self.assertEqual(excursions.total_local_time, 3.0)
        self.assertAlmostEqual(excursions.rate_above([1.0], '+')[0], 1 / 3)
        self.assertEqual(excursions.rate_above([1.5])[0], 0.0)

    def test_anchor_must_be_atom(self):
        self.assertRaises(InvalidArgument, extract_excursions, hand_path(),
                          0.5)

    def test_inverse_local_time(self):
        samples = inverse_local_time_samples(hand_path(), 0.0,
                                             [0.0, 0.5, 1.5, 2.5])
        np.testing.assert_allclose(samples, [0.0, 0.5, 3.5, 6.5])
        self.assertRaises(InvalidArgument, inverse_local_time_samples,
                          hand_path(), 0.0, [3.0])

    def test_rate_per_unit_local_time(self):
        # Excursions reaching distance d come at rate 1 / d.
        m = build_lebesgue(2.0, 0.1)
        anchor = float(m.positions[m.nearest_atom(0.0)])
        excursions = extract_excursions(
            simulate_gap_diffusion(m, anchor, 3000.0, 9), anchor)
        rate = excursions.rate_above([0.5], '+')[0]
        self.assertAlmostEqual(rate * 0.5, 1.0, delta=0.15)


class CsvTest(unittest.TestCase):

    def setUp(self):
        self.filename = tempfile.mktemp('.csv', 'liouvillelabtest')

    def tearDown(self):
        for name in (self.filename, self.filename + '.lock'):
            if os.path.isfile(name):
                os.remove(name)

    def test_path_csv(self):
        write_path_csv(self.filename, hand_path())
        with open(self.filename) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'event_time,atom_index,position')
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[2], '1,2,1')

    def test_excursions_csv(self):
        write_excursions_csv(self.filename,
                             extract_excursions(hand_path(), 0.0))
        with open(self.filename) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'start_local_time,lifetime,max,sign')
        self.assertEqual(lines[1:], ['1,2,1,+', '2,2,1,-'])
