# test_measures.py - unit tests for the liouvillelab.measures package
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
from scipy.stats import ks_2samp

from liouvillelab.errors import DegenerateInput
from liouvillelab.errors import InvalidArgument
from liouvillelab.errors import ParseError
from liouvillelab.measures import AtomicMeasure
from liouvillelab.measures import GmcConfig
from liouvillelab.measures import build_lebesgue
from liouvillelab.measures import coarsen_measure
from liouvillelab.measures import derive_seed
from liouvillelab.measures import dumps_measure
from liouvillelab.measures import geometric_grid
from liouvillelab.measures import interval_mass
from liouvillelab.measures import kernel_values
from liouvillelab.measures import loads_measure
from liouvillelab.measures import loglog_slope
from liouvillelab.measures import manual_measure
from liouvillelab.measures import measure_sampled
from liouvillelab.measures import normalize_measure
from liouvillelab.measures import read_measure
from liouvillelab.measures import replicate_configs
from liouvillelab.measures import sample_anchor
from liouvillelab.measures import sample_boundary_liouville
from liouvillelab.measures import sample_gaussian_field
from liouvillelab.measures import scale_measure
from liouvillelab.measures import scaling_stats
from liouvillelab.measures import write_measure


class AtomicMeasureTest(unittest.TestCase):

    def test_lebesgue_grid(self):
        m = build_lebesgue(1.0, 0.25)
        self.assertEqual(len(m), 8)
        self.assertAlmostEqual(m.positions[0], -0.875)
        self.assertAlmostEqual(m.total_mass, 2.0)
        self.assertEqual(m.kind, 'lebesgue')
        self.assertEqual(m.resolution, 0.25)

    def test_lebesgue_partial_cell(self):
        # 2L / delta = 6.67: six cells, centred.
        m = build_lebesgue(1.0, 0.3)
        self.assertEqual(len(m), 6)
        self.assertAlmostEqual(m.positions[0], -m.positions[-1])

    def test_rejects_bad_atoms(self):
        self.assertRaises(InvalidArgument, AtomicMeasure, [0.5, 0.1],
                          [1.0, 1.0], 1.0)
        self.assertRaises(InvalidArgument, AtomicMeasure, [0.1], [0.0], 1.0)
        self.assertRaises(InvalidArgument, AtomicMeasure, [2.0], [1.0], 1.0)
        self.assertRaises(DegenerateInput, manual_measure, [], 1.0)

    def test_immutable(self):
        m = build_lebesgue(1.0, 0.5)
        with self.assertRaises(ValueError):
            m.masses[0] = 3.0

    def test_interval_mass_closed(self):
        m = manual_measure([(0.0, 1.0), (0.5, 2.0), (0.75, 4.0)], 1.0)
        self.assertEqual(interval_mass(m, 0.0, 0.5), 3.0)
        self.assertEqual(interval_mass(m, 0.1, 0.4), 0.0)
        self.assertRaises(InvalidArgument, interval_mass, m, 0.5, 0.0)

    def test_nearest_and_atom_at(self):
        m = manual_measure([(-0.5, 1.0), (0.5, 1.0)], 1.0)
        self.assertEqual(m.nearest_atom(0.0), 0)
        self.assertEqual(m.nearest_atom(0.3), 1)
        self.assertEqual(m.atom_at(0.5), 1)
        self.assertIsNone(m.atom_at(0.4))

    def test_scale_and_normalize(self):
        m = build_lebesgue(2.0, 0.5)
        scaled = scale_measure(m, 3.0)
        self.assertAlmostEqual(scaled.total_mass, 12.0)
        self.assertEqual(scaled.meta['base_kind'], 'lebesgue')
        self.assertAlmostEqual(normalize_measure(scaled).total_mass, 4.0)
        self.assertRaises(InvalidArgument, scale_measure, m, 0.0)

    def test_coarsen_preserves_mass(self):
        m = manual_measure([(-0.9, 2.0), (0.1, 1.0), (0.3, 3.0)], 1.0)
        coarse = coarsen_measure(m, 1.0)
        self.assertEqual(len(coarse), 2)
        self.assertAlmostEqual(coarse.total_mass, 6.0)
        self.assertAlmostEqual(coarse.positions[1], 0.25)
        self.assertEqual(coarse.meta['binning_width'], 1.0)

    def test_sample_anchor(self):
        m = build_lebesgue(4.0, 0.5)
        rng = np.random.default_rng(3)
        for q in (0, 1):
            a = sample_anchor(m, rng, q)
            self.assertLessEqual(abs(a), 2.0)
        self.assertIsNotNone(m.atom_at(sample_anchor(m, rng, 1)))
        self.assertRaises(InvalidArgument, sample_anchor, m, rng, 2)


class ScalingTest(unittest.TestCase):

    def test_lebesgue_dimension_one(self):
        stats = scaling_stats(build_lebesgue(4.0, 1e-3), 0.0, 0.01, 1.0)
        self.assertAlmostEqual(stats.Z_hat, 1.0, places=9)
        self.assertAlmostEqual(stats.alpha_hat, 1.0, delta=0.02)

    def test_fit_range_checked(self):
        m = build_lebesgue(1.0, 0.01)
        self.assertRaises(InvalidArgument, scaling_stats, m, 0.0, 0.001, 0.5)
        self.assertRaises(InvalidArgument, scaling_stats, m, 1.0, 0.1, 0.5)

    def test_grid_and_slope(self):
        grid = geometric_grid(1.0, 100.0, 8)
        self.assertEqual(len(grid), 17)
        slope, intercept, residual = loglog_slope(grid, 3 * grid ** -0.5)
        self.assertAlmostEqual(slope, -0.5)
        self.assertAlmostEqual(intercept, math.log(3))
        self.assertLess(residual, 1e-12)


class GmcTest(unittest.TestCase):

    def test_config_validation(self):
        self.assertRaises(InvalidArgument, GmcConfig, 1.5, 8, 4.0)
        self.assertRaises(InvalidArgument, GmcConfig, 1.0, 8, 0.5)
        self.assertRaises(InvalidArgument, GmcConfig, 1.0, 8, 4.0, 0.1)
        self.assertRaises(InvalidArgument, GmcConfig, 1.0, 8, 4.0,
                          kernel='gaussian')
        self.assertEqual(GmcConfig(1.0, 8, 4.0).delta, 2.0 ** -8)

    def test_determinism(self):
        cfg = GmcConfig(1.0, 7, 2.0, seed=11)
        self.assertEqual(sample_boundary_liouville(cfg),
                         sample_boundary_liouville(cfg))
        other = sample_boundary_liouville(GmcConfig(1.0, 7, 2.0, seed=12))
        self.assertFalse(np.array_equal(other.masses,
                                        sample_boundary_liouville(cfg).masses))

    def test_gamma_zero_is_lebesgue(self):
        m = sample_boundary_liouville(GmcConfig(0.0, 6, 2.0, seed=1))
        np.testing.assert_array_equal(m.positions,
                                      build_lebesgue(2.0, 2.0 ** -6).positions)
        self.assertTrue(np.all(m.masses == 2.0 ** -6))

    def test_kernel_truncation(self):
        cfg = GmcConfig(1.0, 6, 2.0)
        values = kernel_values(cfg, [0.5, 1.0, 1.5])
        self.assertAlmostEqual(values[0], math.log(2) - 0.5)
        self.assertEqual(values[1], 0.0)
        self.assertEqual(values[2], 0.0)
        sharp = GmcConfig(1.0, 6, 2.0, kernel='sharp-log-floor')
        self.assertAlmostEqual(kernel_values(sharp, [1.0])[0], math.log(4))

    def test_kernel_below_cutoff(self):
        cfg = GmcConfig(1.0, 6, 2.0)
        eps = 2.0 ** -6
        values = kernel_values(cfg, [0.0, eps / 2, eps])
        self.assertAlmostEqual(values[0], math.log(64))
        self.assertAlmostEqual(values[1], math.log(64) - 0.5 + eps / 2)
        self.assertAlmostEqual(values[2], math.log(64) - 1 + eps)
        sharp = GmcConfig(1.0, 6, 2.0, kernel='sharp-log-floor')
        values = kernel_values(sharp, [0.0, eps])
        self.assertAlmostEqual(values[0], math.log(256) + 1)
        self.assertAlmostEqual(values[1], math.log(256))

    def test_covariance_positive_definite(self):
        # Three points one grid step apart, and whole grids.
        for kernel in ('truncated-log-exact-pd', 'sharp-log-floor'):
            cfg = GmcConfig(1.0, 6, 2.0, kernel=kernel)
            step = 2.0 ** -6
            cov = kernel_values(cfg, np.subtract.outer(
                [0, step, 2 * step], [0, step, 2 * step]))
            self.assertGreater(np.linalg.eigvalsh(cov)[0], 0)
            _, _, variances = sample_gaussian_field(
                GmcConfig(1.0, 6, 2.0, kernel=kernel, method='cholesky'))
            self.assertEqual(variances[0], kernel_values(cfg, [0.0])[0])

    def test_methods_agree_in_law(self):
        for method in ('cholesky', 'circulant'):
            cfg = GmcConfig(1.0, 6, 2.0, seed=5, method=method)
            _, y, variances = sample_gaussian_field(cfg)
            self.assertAlmostEqual(variances[0], math.log(64), delta=1e-6)
            self.assertEqual(len(y), 256)

    def field_samples(self, method, n, seed=17):
        configs = replicate_configs(GmcConfig(1.0, 5, 1.0, seed=seed,
                                              method=method), n)
        return np.array([sample_gaussian_field(cfg)[1] for cfg in configs])

    def test_field_covariance(self):
        # Lags of 2, 4 and 8 grid steps at eps = delta = 1 / 32.
        cfg = GmcConfig(1.0, 5, 1.0)
        site = 20
        for method in ('cholesky', 'circulant'):
            y = self.field_samples(method, 600)
            for lag in (0, 2, 4, 8):
                products = y[:, site] * y[:, site + lag]
                error = np.std(products) / math.sqrt(len(products))
                expected = kernel_values(cfg, [lag * cfg.delta])[0]
                self.assertAlmostEqual(np.mean(products), expected,
                                       delta=3 * error)

    def test_methods_share_marginals(self):
        cholesky = self.field_samples('cholesky', 600)[:, 20]
        circulant = self.field_samples('circulant', 600, seed=18)[:, 20]
        self.assertGreater(ks_2samp(cholesky, circulant).pvalue, 0.001)

    def test_local_dimensions(self):
        # alpha = 1 + (1/2 - q) / 2 at gamma = 1: 1.25 at Lebesgue-typical
        # points, 0.75 at points typical for the measure itself.
        rng = np.random.default_rng(3)
        slopes = {0: [], 1: []}
        for cfg in replicate_configs(GmcConfig(1.0, 12, 2.0, seed=4,
                                               method='circulant'), 100):
            m = sample_boundary_liouville(cfg)
            for q in (0, 1):
                a = sample_anchor(m, rng, q)
                slopes[q].append(scaling_stats(m, a, 8 * cfg.eps,
                                               0.5).alpha_hat)
        for q, target in ((0, 1.25), (1, 0.75)):
            error = np.std(slopes[q]) / math.sqrt(len(slopes[q]))
            self.assertAlmostEqual(np.mean(slopes[q]), target,
                                   delta=max(0.15, 3 * error))
        self.assertGreater(np.mean(slopes[0]) - np.mean(slopes[1]), 0.3)

    def test_mean_mass(self):
        # Every atom has expectation delta, so Z_hat has mean 1.
        densities = [
            sample_boundary_liouville(cfg).total_mass / 32.0
            for cfg in replicate_configs(
                GmcConfig(1.0, 6, 16.0, seed=2, method='circulant'), 200)]
        self.assertAlmostEqual(np.mean(densities), 1.0, delta=0.05)

    def test_replicates(self):
        configs = replicate_configs(GmcConfig(1.0, 6, 2.0, seed=9), 3)
        seeds = [cfg.seed for cfg in configs]
        self.assertEqual(len(set(seeds)), 3)
        self.assertEqual(seeds[1], derive_seed(9, 1))

    def test_signal(self):
        seen = []

        def receiver(cfg, measure=None):
            seen.append(len(measure))

        measure_sampled.connect(receiver)
        try:
            sample_boundary_liouville(GmcConfig(1.0, 5, 1.0))
        finally:
            measure_sampled.disconnect(receiver)
        self.assertEqual(seen, [64])


class StorageTest(unittest.TestCase):

    def setUp(self):
        self.filename = tempfile.mktemp('.json', 'liouvillelabtest')

    def tearDown(self):
        for name in (self.filename, self.filename + '.lock'):
            if os.path.isfile(name):
                os.remove(name)

    def test_round_trip_exact(self):
        m = sample_boundary_liouville(GmcConfig(1.0, 6, 2.0, seed=7))
        write_measure(self.filename, m)
        self.assertEqual(read_measure(self.filename), m)

    def test_identical_files(self):
        m = sample_boundary_liouville(GmcConfig(1.0, 5, 1.0, seed=7))
        self.assertEqual(dumps_measure(m), dumps_measure(
            sample_boundary_liouville(GmcConfig(1.0, 5, 1.0, seed=7))))

    def test_parse_error_offset(self):
        raw = b'{"window": [-1, 1], "atoms": [[0, 1],, ]}'
        with self.assertRaises(ParseError) as context:
            loads_measure(raw, 'broken.json')
        self.assertEqual(context.exception.offset, raw.index(b',,') + 1)
        self.assertIn('broken.json', str(context.exception))

    def test_parse_rejects_invalid_atoms(self):
        raw = '{"window": [-1, 1], "atoms": [[0.5, 1], [0.1, 1]]}'
        self.assertRaises(ParseError, loads_measure, raw)
        raw = '{"window": [-1, 2], "atoms": [[0.5, 1]]}'
        self.assertRaises(ParseError, loads_measure, raw)
        self.assertRaises(ParseError, loads_measure, '{"atoms": []}')
