# test_experiments.py - unit tests for the liouvillelab.experiments package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import math
import os
import shutil
import tempfile
import unittest

import numpy as np

from liouvillelab.errors import DegenerateInput
from liouvillelab.errors import InvalidArgument
from liouvillelab.errors import ParseError
from liouvillelab.experiments import Check
from liouvillelab.experiments import Measurement
from liouvillelab.experiments import Report
from liouvillelab.experiments import SuiteConfig
from liouvillelab.experiments import check_completed
from liouvillelab.experiments import check_names
from liouvillelab.experiments import check_started
from liouvillelab.experiments import convolution_identity
from liouvillelab.experiments import fingerprint
from liouvillelab.experiments import heat_kernel_oracles
from liouvillelab.experiments import level_set_dimension
from liouvillelab.experiments import local_dimension
from liouvillelab.experiments import longtime_ratios
from liouvillelab.experiments import multifractal_alpha
from liouvillelab.experiments import read_report
from liouvillelab.experiments import run_check
from liouvillelab.experiments import run_theorem_suite
from liouvillelab.experiments import short_time_exponent
from liouvillelab.experiments import volume_sandwich
from liouvillelab.experiments import write_plot_data
from liouvillelab.experiments.exponents import crossover
from liouvillelab.experiments.exponents import mean_and_error
from liouvillelab.experiments.exponents import shell_growth
from liouvillelab.experiments.identities import chapman_kolmogorov_defect
from liouvillelab.experiments.identities import entrance_law_defect
from liouvillelab.experiments.identities import hitting_tail
from liouvillelab.experiments.identities import lebesgue_hitting_tail
from liouvillelab.experiments.identities import longtime_window
from liouvillelab.experiments.identities import random_string
from liouvillelab.experiments.identities import sandwich_holds
from liouvillelab.experiments.report import loads_report
from liouvillelab.experiments.report import make_check
from liouvillelab.krein import cached_decompose
from liouvillelab.measures import build_lebesgue


class ReportTest(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp(prefix='liouvillelabtest')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def report(self):
        checks = [make_check('first', 'level', Measurement(0.51, 0.5, 0.02)),
                  make_check('second', 'exit', Measurement(1.0, 2.0, 0.5)),
                  make_check('third', 'hv', Measurement(
                      math.inf, 0.0, 1.0, True, {'ratios': [1.0, math.nan]}))]
        return Report({'gamma': 1.0, 'seed': 3}, checks)

    def test_pass_and_fail(self):
        report = self.report()
        self.assertTrue(report['first'].passed)
        self.assertFalse(report['second'].passed)
        self.assertFalse(report.passed)
        self.assertEqual([c.name for c in report.failures], ['second'])
        self.assertEqual(len(report.by_tag('hv')), 1)
        self.assertRaises(KeyError, report.__getitem__, 'fourth')
        nan = make_check('nan', 'tol', Measurement(math.nan, 0.0, 1.0))
        self.assertFalse(nan.passed)

    def test_non_finite_values_are_null(self):
        document = self.report().to_dict()
        third = document['checks'][2]
        self.assertIsNone(third['estimate'])
        self.assertEqual(third['detail'], {'ratios': [1.0, None]})
        self.assertEqual(third['tol'], 1.0)

    def test_fingerprint(self):
        self.assertEqual(fingerprint({'a': 1, 'b': [2.0]}),
                         fingerprint({'b': [2.0], 'a': 1}))
        self.assertNotEqual(fingerprint({'a': 1}), fingerprint({'a': 2}))
        self.assertEqual(self.report().fingerprint,
                         fingerprint({'gamma': 1.0, 'seed': 3}))

    def test_round_trip(self):
        filename = os.path.join(self.directory, 'report.json')
        report = self.report()
        report.write(filename)
        stored = read_report(filename)
        self.assertEqual([c.name for c in stored], ['first', 'second',
                                                     'third'])
        self.assertEqual(stored['second'].target, 2.0)
        self.assertTrue(math.isnan(stored['third'].estimate))
        self.assertEqual(stored.fingerprint, report.fingerprint)
        self.assertNotIn('runtime_s', report.dumps(runtime=False))

    def test_parse_errors(self):
        raw = '{"checks": [}'
        with self.assertRaises(ParseError) as context:
            loads_report(raw, 'report.json')
        self.assertEqual(context.exception.offset, raw.index('}'))
        self.assertRaises(ParseError, loads_report, '{"config": {}}')
        self.assertRaises(ParseError, loads_report,
                          '{"checks": [{"name": "x"}]}')
        self.assertRaises(ParseError, loads_report, b'\xff\xfe')

    def test_errors_fail_the_check(self):
        check = run_check('broken', 'identity', lambda: 1 / 0)
        self.assertFalse(check.passed)
        self.assertIn('ZeroDivisionError', check.detail['error'])
        self.assertRaises(ValueError, run_check, 'x', 'nonsense',
                          lambda: Measurement(0, 0, 0))

    def test_signals(self):
        started, completed = [], []

        def on_start(name, tag=None):
            started.append((name, tag))

        def on_complete(check):
            completed.append(check.name)

        check_started.connect(on_start)
        check_completed.connect(on_complete)
        try:
            run_check('ok', 'tol', lambda: Measurement(1.0, 1.0, 0.0))
        finally:
            check_started.disconnect(on_start)
            check_completed.disconnect(on_complete)
        self.assertEqual(started, [('ok', 'tol')])
        self.assertEqual(completed, ['ok'])

    def test_plot_data(self):
        filename = os.path.join(self.directory, 'level.tsv')
        write_plot_data(filename, 'level', [1.0, 2.0], [0.5, 0.25])
        with open(filename) as f:
            self.assertEqual(f.read(),
                             '# check: level\nx\ty\n1\t0.5\n2\t0.25\n')

    def test_check_equality_ignores_plot(self):
        one = Check('a', 'tol', 1.0, 1.0, 0.0, True, plot=([1], [2]))
        self.assertEqual(one, Check('a', 'tol', 1.0, 1.0, 0.0, True))


class ExponentTest(unittest.TestCase):

    def test_multifractal_alpha(self):
        self.assertEqual(multifractal_alpha(0.0, 1), 1.0)
        self.assertEqual(multifractal_alpha(1.0, 0), 1.25)
        self.assertEqual(multifractal_alpha(1.0, 1), 0.75)

    def test_mean_and_error(self):
        mean, error = mean_and_error([1.0, 2.0, 3.0])
        self.assertEqual(mean, 2.0)
        self.assertAlmostEqual(error, 1 / math.sqrt(3))
        self.assertEqual(mean_and_error([4.0]), (4.0, 0.0))
        self.assertTrue(math.isnan(mean_and_error([])[0]))

    def test_crossover(self):
        self.assertAlmostEqual(crossover(np.array([0.1, 0.2, 0.3]),
                                         np.array([0.2, 0.1, -0.1])),
                               0.25)
        self.assertRaises(DegenerateInput, crossover, np.array([0.1, 0.2]),
                          np.array([0.1, 0.1]))
        self.assertRaises(DegenerateInput, crossover, np.array([0.1, 0.2]),
                          np.array([-0.1, -0.2]))

    def test_shell_growth_of_a_power(self):
        # int x**(-2 beta) dx over a shell grows like r**(1 - 2 beta).
        growth = shell_growth(lambda x: x * x, 1e-4, 1e-1, [0.25, 0.75])
        np.testing.assert_allclose(growth, [0.5, -0.5], atol=1e-6)

    def test_lebesgue_level_set(self):
        m = build_lebesgue(4.0, 1e-3)
        self.assertAlmostEqual(local_dimension(m, 0.0), 1.0, delta=0.02)
        self.assertAlmostEqual(level_set_dimension(m, 0.0), 0.5, delta=0.02)
        self.assertRaises(InvalidArgument, level_set_dimension, m, 0.0, 0.5,
                          10.0)

    def test_lebesgue_short_time(self):
        exponent = short_time_exponent(build_lebesgue(4.0, 1e-3), 0.0)
        self.assertAlmostEqual(exponent.h_route, 0.5, delta=0.03)
        self.assertAlmostEqual(exponent.volume_route, 0.5, delta=0.03)
        self.assertLess(exponent.discrepancy, 0.05)

    def test_coarse_measure_has_no_window(self):
        self.assertRaises(DegenerateInput, local_dimension,
                          build_lebesgue(1.0, 0.5), 0.0)


class IdentityTest(unittest.TestCase):

    def test_convolution_identity_on_random_strings(self):
        rng = np.random.default_rng(4)
        for boundary in ('neumann', 'dirichlet'):
            s = random_string(rng, 10, boundary)
            sigma = cached_decompose(s, 'neumann-at-0', keep_vectors=False)
            sigma_star = cached_decompose(s, 'dirichlet-at-0',
                                          keep_vectors=False)
            for t in (0.5, 2.0):
                self.assertAlmostEqual(
                    convolution_identity(sigma, sigma_star, t), 1.0,
                    places=6)
        self.assertRaises(InvalidArgument, convolution_identity, sigma,
                          sigma_star, 0.0)

    def test_semigroup_identities(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            s = random_string(rng, 20)
            star = cached_decompose(s, 'dirichlet-at-0')
            self.assertLess(entrance_law_defect(star, 0.3, 0.7), 1e-6)
            self.assertLess(chapman_kolmogorov_defect(star, 0.4, 0.9), 1e-6)
        self.assertRaises(InvalidArgument, entrance_law_defect,
                          cached_decompose(s, 'neumann-at-0'), 0.3, 0.7)

    def test_heat_kernel_oracles(self):
        for name, deviation in heat_kernel_oracles().items():
            self.assertLess(abs(deviation), 2e-3, name)

    def test_hitting_tail_matches_brownian(self):
        # Paths start at the atom -0.025, a distance 1.025 below the level.
        tail, error = hitting_tail(build_lebesgue(4.0, 0.05), 1.0,
                                   [0.25, 0.5], 4000, 6)
        np.testing.assert_allclose(tail,
                                   lebesgue_hitting_tail(
                                       np.array([0.25, 0.5]), 1.025),
                                   atol=0.04)
        self.assertTrue(np.all(error < 0.01))

    def test_volume_sandwich(self):
        ratios = volume_sandwich(build_lebesgue(4.0, 1e-3), 0.0)
        self.assertEqual(len(ratios), 20)
        self.assertTrue(sandwich_holds(ratios))
        self.assertFalse(sandwich_holds(np.array([0.1])))

    def test_longtime_window(self):
        m = build_lebesgue(8.0, 0.01)
        lo, hi = longtime_window(m, 0.0)
        self.assertAlmostEqual(lo, 1.0)
        self.assertAlmostEqual(hi, 8.0)
        self.assertRaises(InvalidArgument, longtime_window, m, 8.0)
        self.assertRaises(InvalidArgument, longtime_ratios, m, 0.0, [0.5])

    def test_lebesgue_longtime_ratios(self):
        r_p, r_n, z_hat = longtime_ratios(build_lebesgue(8.0, 0.01), 0.0,
                                          [1.0, 2.0])
        self.assertAlmostEqual(z_hat, 1.0)
        np.testing.assert_allclose(r_p, 1.0, atol=0.05)
        np.testing.assert_allclose(r_n, 1.0, atol=0.05)


class SuiteTest(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp(prefix='liouvillelabtest')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_config_validation(self):
        self.assertRaises(InvalidArgument, SuiteConfig, gamma=2.0)
        self.assertRaises(InvalidArgument, SuiteConfig, n_paths=0)
        self.assertRaises(InvalidArgument, SuiteConfig, t_grid=())
        self.assertRaises(InvalidArgument, SuiteConfig, threads=0)
        self.assertEqual(SuiteConfig.quick().depth_n, 8)
        self.assertEqual(SuiteConfig.quick(depth_n=9).depth_n, 9)

    def test_fingerprint_ignores_threads(self):
        one = SuiteConfig(threads=1, plot_dir='plots').to_dict()
        self.assertNotIn('threads', one)
        self.assertEqual(fingerprint(one),
                         fingerprint(SuiteConfig(threads=4).to_dict()))

    def test_check_names(self):
        names = check_names()
        self.assertEqual(len(names), 34)
        self.assertEqual(len(set(names)), 34)
        self.assertEqual(names[0], 'krein-closed-form')
        self.assertRaises(InvalidArgument, run_theorem_suite,
                          SuiteConfig.quick(), ['no-such-check'])

    def test_subset_is_reproducible(self):
        only = ['krein-closed-form', 'duality', 'kac-moments']
        out = os.path.join(self.directory, 'report.json')
        plots = os.path.join(self.directory, 'plots')
        serial = run_theorem_suite(
            SuiteConfig.quick(seed=5, threads=1, plot_dir=plots), only, out)
        parallel = run_theorem_suite(SuiteConfig.quick(seed=5, threads=3),
                                     only)
        self.assertEqual([c.name for c in serial], only)
        self.assertTrue(serial.passed)
        self.assertEqual(serial.dumps(runtime=False),
                         parallel.dumps(runtime=False))
        self.assertEqual(read_report(out).fingerprint, serial.fingerprint)
        self.assertTrue(os.path.isfile(os.path.join(
            plots, 'krein-closed-form.tsv')))

    def test_simulators_compared_at_two_times(self):
        report = run_theorem_suite(SuiteConfig.quick(seed=5, gamma=0.0,
                                                     threads=1),
                                   ['simulation-agreement'])
        check, = list(report)
        self.assertEqual(sorted(check.detail),
                         ['gmc@t=0.25', 'gmc@t=1', 'lebesgue@t=0.25',
                          'lebesgue@t=1'])
        self.assertEqual(check.estimate, max(check.detail.values()))
        self.assertTrue(check.passed)
