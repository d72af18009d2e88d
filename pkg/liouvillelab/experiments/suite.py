# suite.py - the verification suite
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Run every check of the package against one :class:`SuiteConfig`.

Checks are declared in :data:`SUITE`, each with the theorem tag it verifies.
They run as independent tasks on a thread pool; every task draws its random
numbers from a seed derived from the configuration seed and the position of
the check in :data:`SUITE`, so the report depends on the configuration alone.
A check that raises is recorded as failed, never propagated.

"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import replace
import logging
import math
import os
import threading
import time
from typing import Callable
from typing import NamedTuple

import numpy as np
from scipy.stats import ks_2samp

from ..constants import DEFAULT_ANCHOR_PAIRS
from ..constants import DEFAULT_MEASURE_SEEDS
from ..constants import DEFAULT_PATHS
from ..diffusion import extract_excursions
from ..diffusion import inverse_local_time_samples
from ..diffusion import sample_gap_positions
from ..diffusion import sample_hitting_times
from ..diffusion import sample_time_change_positions
from ..diffusion import simulate_gap_diffusion
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..errors import NumericDegeneracy
from ..krein import anchor_strings
from ..krein import cached_decompose
from ..krein import dual
from ..krein import eval_phi_psi
from ..krein import inverse_local_time_exponent
from ..krein import kac_exit
from ..krein import reconstruct_h
from ..krein import string_h
from ..krein import to_string
from ..measures import GmcConfig
from ..measures import build_lebesgue
from ..measures import derive_seed
from ..measures import geometric_grid
from ..measures import normalize_measure
from ..measures import replicate_configs
from ..measures import sample_anchor
from ..measures import sample_boundary_liouville
from ..measures import scale_measure
from .exponents import excursion_short_time
from .exponents import level_set_dimension
from .exponents import mean_and_error
from .exponents import multifractal_alpha
from .exponents import resolution_window
from .exponents import short_time_exponent
from .exponents import two_sided_correspondence
from .identities import hitting_ratio
from .identities import heat_kernel_oracles
from .identities import identity_suite
from .identities import lebesgue_string
from .identities import longtime_checks
from .identities import longtime_ratios
from .identities import random_measure
from .identities import random_string
from .identities import sandwich_holds
from .identities import volume_sandwich
from .report import Measurement
from .report import Report
from .report import check_completed
from .report import check_started
from .report import fingerprint
from .report import make_check
from .report import run_check
from .report import write_plot_data

#: Spectral parameters of the closed-form checks of the Lebesgue string.
CLOSED_FORM_LAMBDAS = (0.25, 1.0, 4.0, 25.0)

#: Spectral parameters of the reconstruction check.
RECONSTRUCTION_LAMBDAS = (0.1, 1.0, 10.0)

#: Spectral parameters of the inverse local time check.
SUBORDINATOR_LAMBDAS = (1.0, 4.0)


@dataclass(frozen=True)
class SuiteConfig:
    """Parameters and budgets of one run of the suite.

    The boundary Liouville measures use `gamma`, `depth_n`, `L`, `delta`,
    `kernel` and `method` as in :class:`~liouvillelab.measures.GmcConfig`.
    Monte Carlo runs on coarse measures: Lebesgue measure of spacing
    `mc_delta` and boundary Liouville measures of depth `mc_depth`.  The
    long-time checks use windows of half length `longtime_L` at depth
    `longtime_depth` and the times `t_grid`.  `threads` and `plot_dir` do not
    enter the fingerprint.

    """

    gamma: float = 1.0
    depth_n: int = 10
    L: float = 4.0
    delta: float = None
    kernel: str = 'truncated-log-exact-pd'
    method: str = 'auto'
    seed: int = 0
    lebesgue_delta: float = 1e-3
    closed_form_length: float = 60.0
    anchor_pairs: int = DEFAULT_ANCHOR_PAIRS
    measure_seeds: int = DEFAULT_MEASURE_SEEDS
    n_paths: int = DEFAULT_PATHS
    mc_delta: float = 0.05
    mc_depth: int = 5
    excursion_delta: float = 0.1
    excursion_time: float = 8000.0
    longtime_L: float = 8.0
    longtime_depth: int = 7
    t_grid: tuple = (1.0, 2.0, 4.0, 8.0)
    threads: int = None
    plot_dir: str = None

    def __post_init__(self):
        object.__setattr__(self, 't_grid',
                           tuple(float(t) for t in self.t_grid))
        # Validates gamma, depth, window, kernel, method and seed.
        self.gmc()
        self.gmc(depth_n=self.mc_depth, delta=None)
        self.gmc(depth_n=self.longtime_depth, L=self.longtime_L, delta=None)
        for name in ('anchor_pairs', 'measure_seeds', 'n_paths'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidArgument('{} must be a positive'
                                      ' integer'.format(name))
        for name in ('lebesgue_delta', 'closed_form_length', 'mc_delta',
                     'excursion_delta', 'excursion_time'):
            if not getattr(self, name) > 0:
                raise InvalidArgument('{} must be positive'.format(name))
        if not self.t_grid or min(self.t_grid) <= 0:
            raise InvalidArgument('t_grid must hold positive times')
        if self.threads is not None and self.threads < 1:
            raise InvalidArgument('threads must be positive')

    @classmethod
    def quick(cls, **changes):
        """A configuration with small budgets, for smoke runs."""
        values = dict(depth_n=8, lebesgue_delta=2e-3, closed_form_length=30.0,
                      anchor_pairs=4, measure_seeds=4, n_paths=2000,
                      excursion_time=2000.0, longtime_depth=6)
        values.update(changes)
        return cls(**values)

    def gmc(self, **changes):
        """Return the :class:`GmcConfig` of the suite with `changes`."""
        values = dict(gamma=self.gamma, depth_n=self.depth_n, L=self.L,
                      delta=self.delta, kernel=self.kernel, seed=self.seed,
                      method=self.method)
        values.update(changes)
        return GmcConfig(**values)

    def to_dict(self):
        result = asdict(self)
        del result['threads'], result['plot_dir']
        result['t_grid'] = list(self.t_grid)
        return result


class _Context:
    """Inputs shared by several checks, each built once."""

    def __init__(self, config):
        self.config = config
        self._lock = threading.Lock()
        self._locks = {}
        self._values = {}

    def memo(self, key, factory):
        with self._lock:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._values:
                self._values[key] = factory()
            return self._values[key]

    def lebesgue(self):
        cfg = self.config
        return self.memo('lebesgue', lambda: build_lebesgue(
            cfg.L, cfg.lebesgue_delta))

    def mc_lebesgue(self):
        cfg = self.config
        return self.memo('mc-lebesgue', lambda: build_lebesgue(
            cfg.L, cfg.mc_delta))

    def closed_form_string(self):
        cfg = self.config
        return self.memo('closed-form', lambda: lebesgue_string(
            cfg.closed_form_length, cfg.lebesgue_delta, 'dirichlet'))

    def anchor_rows(self, q):
        return self.memo(('anchors', q), lambda: _anchor_rows(self.config,
                                                              q))

    def excursion_path(self):
        return self.memo('excursion-path', lambda: _excursion_path(
            self.config))


def _anchor_rows(config, q):
    """Exponents at `anchor_pairs` (measure, anchor) pairs with anchors
    typical for ``nu_q``.

    """
    base = config.gmc(seed=derive_seed(config.seed, 1000 + q))
    rows, skipped = [], 0
    for gmc in replicate_configs(base, config.anchor_pairs):
        measure = sample_boundary_liouville(gmc)
        rng = np.random.default_rng(np.random.SeedSequence(gmc.seed))
        try:
            a = sample_anchor(measure, rng, q)
            row = {'anchor': a}
            if q == 1:
                exponent = short_time_exponent(measure, a)
                row['level'] = exponent.h_route
                row['volume'] = exponent.volume_route
                s_plus = to_string(measure, a, 'plus',
                                   measure.half_length - a, 'neumann')
                spec_star = cached_decompose(s_plus, 'dirichlet-at-0',
                                             keep_vectors=False)
                row['excursion'] = excursion_short_time(spec_star, measure, a)
                row['sandwich'] = sandwich_holds(volume_sandwich(measure, a))
            else:
                row['level'] = level_set_dimension(measure, a)
        except (DegenerateInput, InvalidArgument, NumericDegeneracy) as error:
            logging.warning('Skipping anchor pair (seed %d): %s', gmc.seed,
                            error)
            skipped += 1
            continue
        rows.append(row)
    if not rows:
        raise DegenerateInput('every anchor pair was skipped')
    return rows, skipped


def _excursion_path(config):
    measure = build_lebesgue(config.L, config.excursion_delta)
    anchor = float(measure.positions[measure.nearest_atom(0.0)])
    path = simulate_gap_diffusion(measure, anchor, config.excursion_time,
                                  derive_seed(config.seed, 999))
    return measure, anchor, path


def _averaged(values, target, nominal, detail=None):
    mean, error = mean_and_error(values)
    detail = dict(detail or {})
    detail.update(standard_error=error, samples=len(values))
    return Measurement(mean, target, max(nominal, 4 * error), detail=detail)


def _krein_closed_form(ctx, seed):
    s = ctx.closed_form_string()
    lams = np.array(CLOSED_FORM_LAMBDAS)
    h = string_h(s, lams)
    worst = float(np.max(np.abs(h * np.sqrt(lams) - 1)))
    return Measurement(worst, 0.0, 1e-3, plot=(lams, h))


def _wronskian(ctx, seed):
    s = ctx.closed_form_string()
    worst = max(eval_phi_psi(s, lam, s.length).wronskian_defect
                for lam in CLOSED_FORM_LAMBDAS)
    return Measurement(worst, 0.0, 1e-10)


def _duality(ctx, seed):
    s = ctx.closed_form_string()
    lams = np.array(CLOSED_FORM_LAMBDAS)
    product = lams * string_h(s, lams) * string_h(dual(s), lams)
    return Measurement(float(np.max(np.abs(product - 1))), 0.0, 1e-8)


def _spectral_reconstruction(ctx, seed):
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    worst = 0.0
    for _ in range(100):
        s = random_string(rng, 50)
        for bc in ('neumann-at-0', 'dirichlet-at-0'):
            spec = cached_decompose(s, bc)
            represented, direct = reconstruct_h(spec, s,
                                                RECONSTRUCTION_LAMBDAS)
            worst = max(worst, float(np.max(np.abs(represented - direct)
                                            / np.abs(direct))))
    return Measurement(worst, 0.0, 1e-8)


def _heat_kernel_oracles(ctx, seed):
    deviations = heat_kernel_oracles()
    worst = max(abs(v) for v in deviations.values())
    return Measurement(worst, 0.0, 2e-3, detail=deviations)


def _lebesgue_identities(ctx, seed):
    checks = identity_suite(ctx.lebesgue(), 0.0, seed,
                            mc_measure=ctx.mc_lebesgue(),
                            n_paths=ctx.config.n_paths, threads=1)
    return checks


def _kac_moments(ctx, seed):
    stats = kac_exit(ctx.lebesgue(), -1.0, 1.0, 2)
    first, second = stats.moments
    worst = max(abs(first - 0.5), abs(second - 5 / 12))
    return Measurement(worst, 0.0, 1e-3,
                       detail={'moments': [first, second]})


def _exit_monte_carlo(ctx, seed):
    measure = ctx.mc_lebesgue()
    exact = kac_exit(measure, -1.0, 1.0, 1).moments[0]
    times = sample_hitting_times(measure, 0.0, ctx.config.n_paths, seed,
                                 -1.0, 1.0, threads=1)
    error = float(np.std(times, ddof=1) / math.sqrt(len(times)))
    return Measurement(float(np.mean(times)), exact,
                       max(0.02 * exact, 4 * error),
                       detail={'standard_error': error})


def _kac_krein_random(ctx, seed):
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    failures = narrow = 0
    for _ in range(20):
        stats = kac_exit(random_measure(rng), -1.0, 1.0, 1)
        failures += not stats.bounds_hold
        narrow += not stats.sandwich_holds
    return Measurement(failures, 0, 0,
                       detail={'narrow_sandwich_violations': narrow})


def _level_lebesgue(ctx, seed):
    measure = ctx.lebesgue()
    lo, hi = resolution_window(measure, 0.0)
    lams = geometric_grid(lo, hi)
    estimate = level_set_dimension(measure, 0.0, lo, hi)
    return Measurement(estimate, 0.5, 0.02,
                       plot=(lams, two_sided_correspondence(measure, 0.0,
                                                            lams)))


def _target(config, q):
    return 1 / (1 + multifractal_alpha(config.gamma, q))


def _level_typical(q):
    def compute(ctx, seed):
        rows, skipped = ctx.anchor_rows(q)
        return _averaged([row['level'] for row in rows],
                         _target(ctx.config, q), 0.10, {'skipped': skipped})
    return compute


def _short_time_lebesgue(ctx, seed):
    exponent = short_time_exponent(ctx.lebesgue(), 0.0)
    both = (abs(exponent.h_route - 0.5) <= 0.03
            and abs(exponent.volume_route - 0.5) <= 0.03)
    return Measurement(exponent.volume_route, 0.5, 0.03, both,
                       {'h_route': exponent.h_route})


def _short_time_typical(ctx, seed):
    rows, skipped = ctx.anchor_rows(1)
    return _averaged([row['volume'] for row in rows], _target(ctx.config, 1),
                     0.10, {'skipped': skipped})


def _short_time_routes(ctx, seed):
    rows, _ = ctx.anchor_rows(1)
    gaps = [abs(row['level'] - row['volume']) for row in rows]
    return Measurement(float(np.mean(gaps)), 0.0, 0.05,
                       detail={'max': float(np.max(gaps))})


def _excursion_lebesgue(ctx, seed):
    measure = ctx.lebesgue()
    s_plus = to_string(measure, 0.0, 'plus', measure.half_length, 'neumann')
    spec_star = cached_decompose(s_plus, 'dirichlet-at-0',
                                 keep_vectors=False)
    return Measurement(excursion_short_time(spec_star, measure, 0.0), 0.5,
                       0.03)


def _excursion_typical(ctx, seed):
    rows, skipped = ctx.anchor_rows(1)
    return _averaged([row['excursion'] for row in rows],
                     _target(ctx.config, 1), 0.10, {'skipped': skipped})


def _excursion_consistency(ctx, seed):
    rows, _ = ctx.anchor_rows(1)
    gaps = [abs(row['excursion'] - row['level']) for row in rows]
    return Measurement(float(np.mean(gaps)), 0.0, 0.05,
                       detail={'max': float(np.max(gaps))})


def _sandwich_typical(ctx, seed):
    rows, _ = ctx.anchor_rows(1)
    failures = sum(not row['sandwich'] for row in rows)
    return Measurement(failures, 0, 0, detail={'strings': len(rows)})


def _longtime_scaled(ctx, seed):
    cfg = ctx.config
    eps = 2.0 ** -cfg.longtime_depth
    measure = scale_measure(build_lebesgue(cfg.longtime_L, eps), 4.0)
    mc_measure = scale_measure(build_lebesgue(cfg.longtime_L, cfg.mc_delta),
                               4.0)
    checks = longtime_checks(measure, 0.0, cfg.t_grid, mc_measure,
                             n_paths=cfg.n_paths, seed=seed, threads=1)
    return [replace(check, name=check.name + '-scaled') for check in checks]


def _longtime_measures(ctx):
    cfg = ctx.config

    def build():
        base = cfg.gmc(depth_n=cfg.longtime_depth, L=cfg.longtime_L,
                       delta=None, seed=derive_seed(cfg.seed, 2000))
        return [normalize_measure(sample_boundary_liouville(gmc))
                for gmc in replicate_configs(base, cfg.measure_seeds)]

    return ctx.memo('longtime-measures', build)


def _longtime_ratio_rows(ctx):
    cfg = ctx.config

    def build():
        rows = []
        for measure in _longtime_measures(ctx):
            r_p, r_n, z_hat = longtime_ratios(measure, 0.0, cfg.t_grid)
            rows.append((r_p[-1] * math.sqrt(z_hat),
                         r_n[-1] / math.sqrt(z_hat)))
        return rows

    return ctx.memo('longtime-ratios', build)


def _longtime_transition_gmc(ctx, seed):
    rows = _longtime_ratio_rows(ctx)
    return _averaged([row[0] for row in rows], 1.0, 0.10)


def _excursion_longtime_gmc(ctx, seed):
    rows = _longtime_ratio_rows(ctx)
    return _averaged([row[1] for row in rows], 1.0, 0.10)


def _hitting_longtime_gmc(ctx, seed):
    cfg = ctx.config
    gmc = cfg.gmc(depth_n=cfg.mc_depth, L=cfg.longtime_L, delta=None,
                  seed=derive_seed(cfg.seed, 3000))
    measure = normalize_measure(sample_boundary_liouville(gmc))
    reference = build_lebesgue(cfg.longtime_L, gmc.delta)
    ratio, error = hitting_ratio(measure, reference, 1.0, cfg.t_grid,
                                 cfg.n_paths, seed, threads=1)
    return Measurement(ratio[-1], 1.0, max(0.10, 4 * error[-1]),
                       detail={'standard_error': float(error[-1])},
                       plot=(np.array(cfg.t_grid), ratio))


#: Times at which the two simulators are compared in law.
AGREEMENT_TIMES = (0.25, 1.0)

#: Two-sample Kolmogorov-Smirnov critical value for four comparisons at a
#: joint level of 1%.
KS_CRITICAL = 1.83


def _simulation_agreement(ctx, seed):
    cfg = ctx.config
    gmc = cfg.gmc(depth_n=cfg.mc_depth, delta=None,
                  seed=derive_seed(cfg.seed, 4000))
    statistics = {}
    streams = np.random.SeedSequence(seed).generate_state(4)
    for k, (label, measure) in enumerate(
            (('lebesgue', ctx.mc_lebesgue()),
             ('gmc', sample_boundary_liouville(gmc)))):
        x0 = float(measure.positions[measure.nearest_atom(0.0)])
        gap = sample_gap_positions(measure, x0, AGREEMENT_TIMES, cfg.n_paths,
                                   int(streams[2 * k]), threads=1)
        walk = sample_time_change_positions(measure, x0, AGREEMENT_TIMES,
                                            cfg.n_paths,
                                            int(streams[2 * k + 1]),
                                            threads=1)
        for column, t in enumerate(AGREEMENT_TIMES):
            statistics['{}@t={:g}'.format(label, t)] = float(
                ks_2samp(gap[:, column], walk[:, column]).statistic)
    tol = max(0.05, KS_CRITICAL * math.sqrt(2 / cfg.n_paths))
    return Measurement(max(statistics.values()), 0.0, tol,
                       detail=statistics)


def _excursion_rate(ctx, seed):
    measure, anchor, path = ctx.excursion_path()
    excursions = extract_excursions(path, anchor)
    distances = measure.positions - anchor
    worst, worst_error = 0.0, 0.0
    for sign, side in ((1, '+'), (-1, '-')):
        d = sign * distances
        levels = d[(d >= 0.1 - 1e-9) & (d <= 1.0 + 1e-9)]
        rates = excursions.rate_above(levels, side)
        counts = rates * excursions.total_local_time
        deviation = np.abs(rates * levels - 1)
        worst = max(worst, float(np.max(deviation)))
        worst_error = max(worst_error,
                          float(np.max(1 / np.sqrt(np.maximum(counts, 1)))))
    return Measurement(worst, 0.0, max(0.10, 4 * worst_error),
                       detail={'excursions': len(excursions)},
                       plot=(levels, rates))


def _inverse_local_time(ctx, seed):
    measure, anchor, path = ctx.excursion_path()
    s_plus, s_minus, anchor_mass = anchor_strings(measure, anchor, 'neumann')
    total = path.local_time_at(measure.atom_at(anchor))
    worst, worst_error = 0.0, 0.0
    for lam in SUBORDINATOR_LAMBDAS:
        exponent = inverse_local_time_exponent(s_plus, s_minus, lam,
                                               anchor_mass)
        step = math.log(2) / exponent
        grid = np.arange(0.0, total - step, step)
        increments = np.diff(inverse_local_time_samples(path, anchor, grid))
        values = np.exp(-lam * increments)
        deviation = abs(float(np.mean(values)) / 0.5 - 1)
        error = float(np.std(values, ddof=1) / math.sqrt(len(values))) / 0.5
        worst, worst_error = max(worst, deviation), max(worst_error, error)
    return Measurement(worst, 0.0, max(0.05, 4 * worst_error))


def _time_reversal(ctx, seed):
    measure, anchor, path = ctx.excursion_path()
    fractions = extract_excursions(path, anchor).argmax_fraction()
    statistic = float(ks_2samp(fractions, 1 - fractions).statistic)
    return Measurement(statistic, 0.0, 0.05)


class Entry(NamedTuple):
    """A declared computation: one check, or a fragment of several checks
    named in order.

    """

    checks: tuple
    compute: Callable


def _single(name, tag, compute):
    return Entry(((name, tag),), compute)


#: Every check of the suite in declaration order.
SUITE = (
    _single('krein-closed-form', 'identity', _krein_closed_form),
    _single('wronskian', 'identity', _wronskian),
    _single('duality', 'identity', _duality),
    _single('spectral-reconstruction', 'identity', _spectral_reconstruction),
    _single('heat-kernel-oracles', 'identity', _heat_kernel_oracles),
    Entry((('convolution-identity', 'identity'),
           ('entrance-law', 'identity'),
           ('chapman-kolmogorov', 'identity'),
           ('volume-sandwich', 'hv'),
           ('kac-krein-sandwich', 'kac-krein'),
           ('kac-exponential-moment', 'exit')), _lebesgue_identities),
    _single('kac-moments', 'exit', _kac_moments),
    _single('exit-monte-carlo', 'exit', _exit_monte_carlo),
    _single('kac-krein-random', 'kac-krein', _kac_krein_random),
    _single('level-lebesgue', 'level', _level_lebesgue),
    _single('level-typical', 'level', _level_typical(1)),
    _single('level-uniform', 'level', _level_typical(0)),
    _single('short-time-lebesgue', 'stb', _short_time_lebesgue),
    _single('short-time-typical', 'stb', _short_time_typical),
    _single('short-time-routes', 'tol', _short_time_routes),
    _single('excursion-short-lebesgue', 'elshort', _excursion_lebesgue),
    _single('excursion-short-typical', 'elshort', _excursion_typical),
    _single('excursion-short-consistency', 'elshort',
            _excursion_consistency),
    _single('volume-sandwich-typical', 'hv', _sandwich_typical),
    Entry((('longtime-transition-scaled', 'ltt'),
           ('excursion-longtime-scaled', 'ellong'),
           ('hitting-longtime-scaled', 'lth')), _longtime_scaled),
    _single('longtime-transition-gmc', 'ltt', _longtime_transition_gmc),
    _single('excursion-longtime-gmc', 'ellong', _excursion_longtime_gmc),
    _single('hitting-longtime-gmc', 'lth', _hitting_longtime_gmc),
    _single('simulation-agreement', 'identity', _simulation_agreement),
    _single('excursion-rate', 'identity', _excursion_rate),
    _single('inverse-local-time', 'identity', _inverse_local_time),
    _single('time-reversal', 'identity', _time_reversal),
)


def check_names():
    """Return the names of every check of :data:`SUITE` in order."""
    return [name for entry in SUITE for name, _ in entry.checks]


def _run_fragment(entry, ctx, seed, digest):
    for name, tag in entry.checks:
        check_started.send(name, tag=tag)
    start = time.perf_counter()
    try:
        checks = entry.compute(ctx, seed)
    except Exception as exception:
        logging.warning('Checks %s raised %s: %s',
                        ', '.join(name for name, _ in entry.checks),
                        type(exception).__name__, exception)
        error = '{}: {}'.format(type(exception).__name__, exception)
        checks = [make_check(name, tag, Measurement(
            math.nan, math.nan, math.nan, False, {'error': error}))
            for name, tag in entry.checks]
    share = (time.perf_counter() - start) / len(checks)
    result = []
    for check, (name, tag) in zip(checks, entry.checks):
        check = replace(check, name=name, tag=tag, runtime=share,
                        fingerprint=digest)
        check_completed.send(check)
        result.append(check)
    return result


def _run_entry(entry, ctx, seed, digest):
    if len(entry.checks) > 1:
        return _run_fragment(entry, ctx, seed, digest)
    (name, tag), = entry.checks
    return [run_check(name, tag, lambda: entry.compute(ctx, seed), digest)]


def run_theorem_suite(config=None, only=None, out=None):
    """Run the suite and return its :class:`~liouvillelab.experiments.Report`.

    `only` restricts the run to the entries declaring one of the given check
    names.  The report is written to `out` and plot data to
    ``config.plot_dir`` when given.

    """
    config = SuiteConfig() if config is None else config
    digest = fingerprint(config.to_dict())
    selected = [(index, entry) for index, entry in enumerate(SUITE)
                if only is None
                or any(name in only for name, _ in entry.checks)]
    if only is not None:
        unknown = set(only) - set(check_names())
        if unknown:
            raise InvalidArgument('unknown checks: {}'.format(
                ', '.join(sorted(unknown))))
    ctx = _Context(config)
    threads = config.threads or os.cpu_count() or 1
    logging.info('Running %d suite entries on %d threads (fingerprint %s)',
                 len(selected), threads, digest[:12])

    def task(item):
        index, entry = item
        return _run_entry(entry, ctx, derive_seed(config.seed, index),
                          digest)

    if threads == 1:
        results = [task(item) for item in selected]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(task, selected))
    report = Report(config.to_dict(), [c for part in results for c in part],
                    digest)
    if config.plot_dir:
        os.makedirs(config.plot_dir, exist_ok=True)
        for check in report:
            if check.plot is not None:
                write_plot_data(os.path.join(config.plot_dir,
                                             check.name + '.tsv'),
                                check.name, *check.plot)
    if out is not None:
        report.write(out)
    logging.info('%d of %d checks passed', len(report) - len(report.failures),
                 len(report))
    return report
