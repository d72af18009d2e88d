# identities.py - closed forms, spectral identities and long-time ratios
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Identities every string satisfies, and the Brownian reference values the
long-time limits are measured against.

The Lebesgue references below use the conventions of this package: the
generator is ``(d/dm)(d/dx)``, so Lebesgue measure gives Brownian motion run at
twice the standard speed, and densities are taken with respect to the speed
measure.

"""
import logging
import math

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

from ..constants import DEFAULT_PATHS
from ..diffusion import sample_hitting_times
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..krein import StieltjesString
from ..krein import cached_decompose
from ..krein import exit_exponential_moment
from ..krein import heat_kernel
from ..krein import kac_exit
from ..krein import survival
from ..krein import to_string
from ..krein import two_sided_decompose
from ..krein import volume_function
from ..measures import build_lebesgue
from ..measures import manual_measure
from .exponents import two_sided_correspondence
from .report import Measurement
from .report import make_check

#: Lower and upper constants of the volume sandwich
#: ``h(1/eta) / 4 <= V^-1(eta) <= 64 h(1/eta)``.
SANDWICH = (0.25, 64.0)

#: Long-time checks start once the field has decorrelated (the kernels have
#: unit range).
MIXING_TIME = 1.0

#: Sites of a string kept by the semigroup identities.
IDENTITY_SITES = 64


def lebesgue_p(t):
    """``p(t; 0, 0)`` on the whole line."""
    return 1 / (2 * np.sqrt(np.pi * np.asarray(t, dtype=float)))


def lebesgue_p_one_sided(t):
    """``p(t; 0, 0)`` on the half line reflected at 0."""
    return 1 / np.sqrt(np.pi * np.asarray(t, dtype=float))


def lebesgue_n(t):
    """Density of excursion lifetimes, ``n(t)``."""
    t = np.asarray(t, dtype=float)
    return 1 / (2 * np.sqrt(np.pi) * t ** 1.5)


def lebesgue_survival(t):
    """``n(zeta > t)``."""
    return 1 / np.sqrt(np.pi * np.asarray(t, dtype=float))


def lebesgue_hitting_density(t, x):
    """``pi(t; x)``, the excursion entrance density at level `x`."""
    t = np.asarray(t, dtype=float)
    return x * np.exp(-x * x / (4 * t)) / (2 * np.sqrt(np.pi) * t ** 1.5)


def lebesgue_hitting_tail(t, d):
    """``P(H_d >= t)`` started at distance `d`."""
    return erf(d / (2 * np.sqrt(np.asarray(t, dtype=float))))


def lebesgue_string(length, delta, boundary='neumann'):
    """The one-sided string of the midpoint Lebesgue quantization with
    spacing `delta`, anchored at 0.

    """
    measure = build_lebesgue(length, delta)
    return to_string(measure, 0.0, 'plus', length, boundary)


def random_string(rng, n_max=50, boundary=None):
    """Draw a string of at most `n_max` atoms with gaps and masses uniform in
    ``[0.05, 1]``.

    """
    n = int(rng.integers(1, n_max + 1))
    distances = np.cumsum(rng.uniform(0.05, 1.0, n))
    masses = rng.uniform(0.05, 1.0, n)
    length = float(distances[-1] + rng.uniform(0.05, 1.0))
    if boundary is None:
        boundary = ('dirichlet', 'neumann')[int(rng.integers(2))]
    return StieltjesString(0.0, 'plus', distances, masses, length, boundary)


def random_measure(rng, n_min=5, n_max=40, L=1.0):
    """Draw atoms uniform in ``(-L, L)`` with masses uniform in
    ``[0.05, 1]``, including atoms on both sides of 0.

    """
    n = int(rng.integers(n_min, n_max + 1))
    positions = np.unique(rng.uniform(-L, L, n))
    if positions[0] >= 0 or positions[-1] <= 0:
        positions = np.unique(np.concatenate((positions, [-L / 2, L / 2])))
    masses = rng.uniform(0.05, 1.0, len(positions))
    return manual_measure(list(zip(positions, masses)), L)


def convolution_identity(spec, spec_star, t):
    """Return ``c* p(t) + c N(t) + int_0^t p(u) N(t - u) du``, which is 1.

    `spec` is the ``neumann-at-0`` and `spec_star` the ``dirichlet-at-0``
    decomposition of one string, ``p(u) = p(u; 0, 0)``, ``N(s) = n(zeta > s)``
    and ``c``, ``c*`` are their constants (the leading gap and the mass at the
    anchor; both vanish when the anchor is in the support and carries no
    mass).

    """
    if not t > 0:
        raise InvalidArgument('time must be positive')

    def p(u):
        return float(np.dot(np.exp(-u * spec.xi), spec.weights))

    def tail(s):
        return float(np.dot(np.exp(-s * spec_star.xi), spec_star.weights))

    # The algebraic weight carries the 1/sqrt singularities at both ends.
    def smooth(u):
        return p(u) * tail(t - u) * math.sqrt(u * (t - u))

    integral, error = quad(smooth, 0, t, weight='alg', wvar=(-0.5, -0.5),
                           epsabs=1e-9, epsrel=1e-9, limit=500)
    logging.debug('Convolution integral at t=%g: %g (+- %g)', t, integral,
                  error)
    return (spec_star.constant * p(t) + spec.constant * tail(t)
            + integral)


def _site_modes(spec):
    if spec.modes is None:
        raise InvalidArgument('the identity needs a decomposition with'
                              ' eigenfunctions')
    if len(spec.sites) > IDENTITY_SITES:
        raise InvalidArgument('the identities sum over every site; at most'
                              ' {} are supported'.format(IDENTITY_SITES))
    return spec.modes_at(spec.sites), spec.site_masses


def entrance_law_defect(spec_star, t, s):
    """Return the largest deviation, relative to the largest value, between
    ``sum_x pi(t; x) q(s; x, y) m_x`` and ``pi(t + s; y)`` over the sites
    ``y`` of the string.

    """
    if spec_star.bc != 'dirichlet-at-0':
        raise InvalidArgument('the entrance law lives on dirichlet-at-0'
                              ' decompositions')
    modes, masses = _site_modes(spec_star)
    slopes = spec_star.slopes
    entrance = modes @ (np.exp(-t * spec_star.xi) * slopes)
    q = (modes * np.exp(-s * spec_star.xi)) @ modes.T
    lhs = (masses * entrance) @ q
    rhs = modes @ (np.exp(-(t + s) * spec_star.xi) * slopes)
    scale = max(float(np.max(np.abs(rhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)


def chapman_kolmogorov_defect(spec, t, s):
    """Return the largest relative deviation between ``sum_z p(t; x, z)
    p(s; z, y) m_z`` and ``p(t + s; x, y)`` over the sites of the string.

    """
    modes, masses = _site_modes(spec)

    def kernel(time):
        return (modes * np.exp(-time * spec.xi)) @ modes.T

    lhs = kernel(t) @ (masses[:, None] * kernel(s))
    rhs = kernel(t + s)
    scale = max(float(np.max(np.abs(rhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)


def volume_sandwich(measure, a, n_eta=20):
    """Return ``V^-1(eta) / h(1/eta)`` at `n_eta` values of ``eta`` between
    the resolution and a quarter of the distance to the window edge.

    """
    volume = volume_function(measure, a)
    lo = float(volume(2 * measure.resolution))
    hi = float(volume(volume.r_max / 4))
    if not 0 < lo < hi:
        raise DegenerateInput('no volumes to test at {}'.format(a))
    etas = np.geomspace(lo, hi, n_eta)
    h = two_sided_correspondence(measure, a, 1 / etas)
    return volume.inverse(etas) / h


def sandwich_holds(ratios):
    lo, hi = SANDWICH
    return bool(np.all((ratios >= lo * (1 - 1e-9))
                       & (ratios <= hi * (1 + 1e-9))))


def kac_exponential_check(measure, n_paths, seed, a=-1.0, b=1.0,
                          factor=0.8, threads=None):
    """Compare Monte Carlo estimates of ``E[exp(lam H)]`` at ``lam = factor /
    C`` with the exact value.

    Returns ``(estimate, half_estimate, standard_error, exact, lam)``; the
    half estimate uses the first half of the paths only.

    """
    stats = kac_exit(measure, a, b, 1)
    lam = factor / stats.C
    exact = exit_exponential_moment(measure, a, b, lam)
    times = sample_hitting_times(measure, 0.0, n_paths, seed, a, b,
                                 threads=threads)
    values = np.exp(lam * times)
    half = float(np.mean(values[:len(values) // 2]))
    estimate = float(np.mean(values))
    error = float(np.std(values, ddof=1) / math.sqrt(len(values)))
    return estimate, half, error, exact, lam


def identity_suite(measure, a, seed=0, n_random=20, mc_measure=None,
                   n_paths=DEFAULT_PATHS, times=(0.5, 1.0, 2.0),
                   threads=None):
    """Evaluate the identities and sandwiches at `a` and return the checks.

    The semigroup identities run on `n_random` random strings drawn from
    `seed`; the exit-time checks use ``(-1, 1)``, with Monte Carlo on
    `mc_measure` (default `measure`).

    """
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    checks = []
    s_plus = to_string(measure, a, 'plus', measure.half_length - a,
                       'neumann')
    sigma = cached_decompose(s_plus, 'neumann-at-0', keep_vectors=False)
    sigma_star = cached_decompose(s_plus, 'dirichlet-at-0',
                                  keep_vectors=False)
    values = [convolution_identity(sigma, sigma_star, t) for t in times]
    worst = float(np.max(np.abs(np.subtract(values, 1.0))))
    checks.append(make_check('convolution-identity', 'identity',
                             Measurement(worst, 0.0, 1e-3,
                                         detail={'values': values})))
    strings = [random_string(rng, 20) for _ in range(n_random)]
    entrance = max(entrance_law_defect(cached_decompose(s, 'dirichlet-at-0'),
                                       0.3, 0.7) for s in strings)
    checks.append(make_check('entrance-law', 'identity',
                             Measurement(entrance, 0.0, 1e-6)))
    semigroup = max(chapman_kolmogorov_defect(cached_decompose(s, bc),
                                              0.4, 0.9)
                    for s in strings
                    for bc in ('neumann-at-0', 'dirichlet-at-0'))
    checks.append(make_check('chapman-kolmogorov', 'identity',
                             Measurement(semigroup, 0.0, 1e-6)))
    ratios = volume_sandwich(measure, a)
    checks.append(make_check('volume-sandwich', 'hv', Measurement(
        float(np.min(ratios)), SANDWICH[0], 0.0, sandwich_holds(ratios),
        {'max_ratio': float(np.max(ratios))})))
    stats = kac_exit(measure, -1.0, 1.0, 2)
    checks.append(make_check('kac-krein-sandwich', 'kac-krein', Measurement(
        1 / stats.lambda_min, stats.C_tilde, 3 * stats.C_tilde,
        stats.sandwich_holds, {'sandwich': list(stats.sandwich)})))
    mc_measure = measure if mc_measure is None else mc_measure
    estimate, half, error, exact, lam = kac_exponential_check(
        mc_measure, n_paths, int(rng.integers(2 ** 63)), threads=threads)
    checks.append(make_check('kac-exponential-moment', 'exit', Measurement(
        estimate, exact, max(0.05 * exact, 4 * error),
        detail={'lambda': lam, 'half_sample': half,
                'standard_error': error})))
    return checks


def longtime_window(measure, a):
    """Return ``(t_mix, t_edge)``: after the field decorrelates and before
    the window edges are felt from `a`.

    """
    L = measure.half_length
    if not -L < a < L:
        raise InvalidArgument('anchor {} is not interior to the'
                              ' window'.format(a))
    z_hat = measure.total_mass / (2 * L)
    return MIXING_TIME, z_hat * (L - abs(a)) ** 2 / 8


def _check_times(measure, a, t_grid):
    t_grid = np.asarray(t_grid, dtype=float)
    t_mix, t_edge = longtime_window(measure, a)
    if (len(t_grid) == 0 or np.min(t_grid) < t_mix * (1 - 1e-9)
            or np.max(t_grid) > t_edge * (1 + 1e-9)):
        raise InvalidArgument('times must lie in the validity window'
                              ' [{}, {}]'.format(t_mix, t_edge))
    return t_grid


def longtime_ratios(measure, a, t_grid):
    """Return ``(R_p, R_n, Z_hat)``: the heat kernel at `a` and the density of
    excursion lifetimes above `a` relative to their Lebesgue values at every
    time in `t_grid`.

    """
    t_grid = _check_times(measure, a, t_grid)
    xi_max = 60 / float(np.min(t_grid))
    spec = two_sided_decompose(measure, a, xi_max, keep_vectors=False)
    p = np.array([heat_kernel(spec, 'reflecting-p', t) for t in t_grid])
    s_plus = to_string(measure, a, 'plus', measure.half_length - a,
                       'neumann')
    spec_star = cached_decompose(s_plus, 'dirichlet-at-0', xi_max,
                                 keep_vectors=False)
    n = np.array([heat_kernel(spec_star, 'levy-n', t) for t in t_grid])
    z_hat = measure.total_mass / (2 * measure.half_length)
    return p / lebesgue_p(t_grid), n / lebesgue_n(t_grid), z_hat


def hitting_tail(measure, level, t_grid, n_paths, seed, threads=None):
    """Monte Carlo ``P(H_level >= t)`` from 0 for every time in `t_grid`,
    with its standard errors.

    """
    t_grid = np.asarray(t_grid, dtype=float)
    if level > 0:
        a, b = None, level
    else:
        a, b = level, None
    times = sample_hitting_times(measure, 0.0, n_paths, seed, a, b,
                                 horizon=float(np.max(t_grid)),
                                 threads=threads)
    tail = np.mean(times[:, None] >= t_grid[None, :], axis=0)
    return tail, np.sqrt(tail * (1 - tail) / n_paths)


def hitting_ratio(measure, reference, level, t_grid, n_paths, seed,
                  threads=None):
    """Return ``(R_H, standard_error)`` of the hitting tails of `measure`
    relative to `reference` at every time in `t_grid`.

    """
    streams = np.random.SeedSequence(int(seed)).generate_state(2)
    tail, error = hitting_tail(measure, level, t_grid, n_paths,
                               int(streams[0]), threads)
    ref, ref_error = hitting_tail(reference, level, t_grid, n_paths,
                                  int(streams[1]), threads)
    if np.any(ref <= 0):
        raise DegenerateInput('the reference never survives to the'
                              ' largest time')
    ratio = tail / ref
    relative = np.sqrt((error / np.maximum(tail, 1e-300)) ** 2
                       + (ref_error / ref) ** 2)
    return ratio, ratio * relative


def longtime_checks(measure, a, t_grid, mc_measure=None, level=1.0,
                    n_paths=DEFAULT_PATHS, seed=0, tolerance=0.10,
                    threads=None):
    """Return the long-time checks of `measure` at `a` at the largest time of
    `t_grid`.

    Under the mass scaling of Lebesgue measure by ``c`` the transition
    density scales like ``c**-1/2`` and the lifetime density and hitting tail
    like ``c**1/2``; the targets are these powers of ``Z_hat``.  The hitting
    ratio is estimated by Monte Carlo on `mc_measure` (default `measure`)
    against Lebesgue measure of the same spacing.

    """
    r_p, r_n, z_hat = longtime_ratios(measure, a, t_grid)
    t_grid = np.asarray(t_grid, dtype=float)
    checks = [
        make_check('longtime-transition', 'ltt', Measurement(
            r_p[-1], z_hat ** -0.5, tolerance * z_hat ** -0.5,
            detail={'z_hat': z_hat}, plot=(t_grid, r_p))),
        make_check('excursion-longtime', 'ellong', Measurement(
            r_n[-1], z_hat ** 0.5, tolerance * z_hat ** 0.5,
            detail={'z_hat': z_hat}, plot=(t_grid, r_n)))]
    mc_measure = measure if mc_measure is None else mc_measure
    spacing = float(mc_measure.meta.get('delta', mc_measure.min_gap))
    reference = build_lebesgue(mc_measure.half_length, spacing)
    mc_z = mc_measure.total_mass / reference.total_mass
    ratio, error = hitting_ratio(mc_measure, reference, level, t_grid,
                                 n_paths, seed, threads)
    target = mc_z ** 0.5
    checks.append(make_check('hitting-longtime', 'lth', Measurement(
        ratio[-1], target, max(tolerance * target, 4 * error[-1]),
        detail={'z_hat': mc_z, 'standard_error': float(error[-1])},
        plot=(t_grid, ratio))))
    return checks


def heat_kernel_oracles(length=8.0, delta=4e-3):
    """Return the deviations of ``p(1; 0, 0)``, ``n(1)``, ``pi(1; 1)`` and
    ``n(zeta > 1)`` of the Lebesgue string from their closed forms.

    """
    s = lebesgue_string(length, delta)
    sigma = cached_decompose(s, 'neumann-at-0', keep_vectors=True)
    sigma_star = cached_decompose(s, 'dirichlet-at-0', keep_vectors=True)
    return {'p': heat_kernel(sigma, 'reflecting-p', 1.0)
            - float(lebesgue_p_one_sided(1.0)),
            'n': heat_kernel(sigma_star, 'levy-n', 1.0)
            - float(lebesgue_n(1.0)),
            'pi': heat_kernel(sigma_star, 'hitting-pi', 1.0, 1.0)
            - float(lebesgue_hitting_density(1.0, 1.0)),
            'survival': survival(sigma_star, 1.0)
            - float(lebesgue_survival(1.0))}
