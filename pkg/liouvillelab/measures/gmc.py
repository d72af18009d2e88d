# gmc.py - sampled boundary Liouville (Gaussian multiplicative chaos) measures
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Sampling of boundary Liouville measures on a grid.

A centred Gaussian field ``Y`` with a log-correlated covariance kernel cut off
at ``eps = 2 ** -depth_n`` is sampled at the midpoints of a uniform grid of
spacing ``delta`` and turned into atoms of mass::

    delta * exp(g * Y(x) - g**2 / 2 * Var Y(x)),    g = gamma / sqrt(2)

The expectation of every atom mass is exactly ``delta``.  The coupling
``gamma / sqrt(2)`` makes the local dimension of the measure at ``nu_q``-typical
points ``1 + (1/2 - q) * gamma**2 / 2``.

Two kernels are available:

``truncated-log-exact-pd``
    ``K(d) = int_max(d, eps)^1 (1 - d/s) ds / s``: ``log(1/d) + d - 1`` for
    ``eps <= d <= 1``, ``log(1/eps) - d/eps + d`` below ``eps`` and 0 beyond
    1.  A mixture of triangle kernels, hence positive definite on the whole
    line with correlation length 1; circulant embedding of it is exact.

``sharp-log-floor``
    ``K(d) = log(2L / d)`` for ``d >= eps`` and ``log(2L/eps) + 1 - d/eps``
    below, the logarithm referenced to the window diameter.  It is the same
    mixture taken up to ``2L`` plus the triangle ``1 - d/2L``, positive
    definite on the window.  It is only factorized densely, with the jitter
    ladder of :data:`~liouvillelab.constants.JITTER_LADDER` as fallback.

"""
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import replace
import logging
import math

from blinker import signal
import numpy as np
from scipy import linalg as spla

from ..constants import CHOLESKY_MAX_POINTS
from ..constants import CIRCULANT_TOLERANCE
from ..constants import GAMMA_CRITICAL
from ..constants import JITTER_LADDER
from ..errors import InvalidArgument
from ..errors import NumericDegeneracy
from .base import AtomicMeasure
from .base import _grid

#: The two covariance kernels understood by :class:`GmcConfig`.
KERNELS = ('truncated-log-exact-pd', 'sharp-log-floor')

#: Field sampling methods; ``auto`` picks circulant embedding for the exactly
#: factorizable kernel on grids larger than
#: :data:`~liouvillelab.constants.CHOLESKY_MAX_POINTS`.
METHODS = ('auto', 'cholesky', 'circulant')

#: A signal that is emitted whenever a measure has been sampled.
#:
#: Subscribers receive the :class:`GmcConfig` as sender, along with a
#: ``measure`` keyword argument.
measure_sampled = signal('measure-sampled')


@dataclass(frozen=True)
class GmcConfig:
    """Parameters of a sampled boundary Liouville measure.

    `delta` defaults to the cutoff ``eps = 2 ** -depth_n``.

    """

    gamma: float
    depth_n: int
    L: float
    delta: float = None
    kernel: str = 'truncated-log-exact-pd'
    seed: int = 0
    method: str = 'auto'

    def __post_init__(self):
        if self.delta is None:
            object.__setattr__(self, 'delta', self.eps)
        if not 0 <= self.gamma < GAMMA_CRITICAL:
            raise InvalidArgument('gamma must lie in [0, sqrt(2)), got'
                                  ' {}'.format(self.gamma))
        if int(self.depth_n) != self.depth_n or self.depth_n < 1:
            raise InvalidArgument('depth_n must be a positive integer')
        if not 0 < self.delta <= self.eps:
            raise InvalidArgument('grid spacing must satisfy 0 < delta <='
                                  ' eps = {}'.format(self.eps))
        if not self.L >= 1:
            raise InvalidArgument('window half length must be at least 1')
        if self.kernel not in KERNELS:
            raise InvalidArgument('unknown kernel {!r}'.format(self.kernel))
        if self.method not in METHODS:
            raise InvalidArgument('unknown method {!r}'.format(self.method))
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidArgument('seed must be a 64-bit unsigned integer')

    @property
    def eps(self):
        return 2.0 ** -int(self.depth_n)

    @property
    def coupling(self):
        return self.gamma / math.sqrt(2)

    def to_dict(self):
        result = asdict(self)
        result['seed'] = int(self.seed)
        return result


def kernel_values(cfg, distances):
    """Evaluate the covariance kernel of `cfg` at `distances`.

    Below the cutoff both kernels are linear in the distance, continuous at
    ``eps``.

    """
    d = np.abs(np.asarray(distances, dtype=float))
    eps = cfg.eps
    floored = np.maximum(d, eps)
    if cfg.kernel == 'truncated-log-exact-pd':
        near = -math.log(eps) - d / eps + d
        far = -np.log(np.minimum(floored, 1)) + floored - 1
        return np.where(d < eps, near, np.where(d < 1, far, 0.0))
    near = math.log(2 * cfg.L / eps) + 1 - d / eps
    return np.where(d < eps, near, np.log(2 * cfg.L / floored))


def _resolve_method(cfg, n):
    if cfg.method != 'auto':
        return cfg.method
    if cfg.kernel == 'truncated-log-exact-pd' and n > CHOLESKY_MAX_POINTS:
        return 'circulant'
    return 'cholesky'


def _cholesky_factor(cov):
    scale = float(np.mean(np.diag(cov)))
    for jitter in JITTER_LADDER:
        try:
            factor = spla.cholesky(cov + jitter * scale * np.eye(len(cov)),
                                   lower=True)
        except np.linalg.LinAlgError:
            logging.warning('Covariance not factorizable with jitter %g',
                            jitter)
            continue
        return factor, jitter * scale
    raise NumericDegeneracy('covariance matrix is not positive definite even'
                            ' with diagonal jitter {}'.format(JITTER_LADDER[-1]))


def _sample_cholesky(cfg, column, rng):
    cov = spla.toeplitz(column)
    factor, jitter = _cholesky_factor(cov)
    y = factor @ rng.standard_normal(len(column))
    return y, np.full(len(column), column[0] + jitter)


def _sample_circulant(column, rng):
    n = len(column)
    if n < 3:
        return _sample_direct(column, rng)
    embedded = np.concatenate((column, column[-2:0:-1]))
    eigenvalues = np.real(np.fft.fft(embedded))
    if np.min(eigenvalues) < -CIRCULANT_TOLERANCE * np.max(eigenvalues):
        raise NumericDegeneracy('circulant embedding is not non-negative'
                                ' definite')
    eigenvalues = np.maximum(eigenvalues, 0)
    m = len(embedded)
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    y = np.real(np.fft.fft(z * np.sqrt(eigenvalues / m)))[:n]
    return y, np.full(n, column[0])


def _sample_direct(column, rng):
    y = rng.standard_normal(len(column)) * math.sqrt(column[0])
    return y, np.full(len(column), column[0])


def sample_gaussian_field(cfg):
    """Return ``(positions, Y, variances)`` for the field of `cfg`.

    The result is a deterministic function of `cfg`, including its seed.

    """
    positions = _grid(cfg.L, cfg.delta)
    column = kernel_values(cfg, positions - positions[0])
    rng = np.random.default_rng(np.random.SeedSequence(int(cfg.seed)))
    method = _resolve_method(cfg, len(positions))
    logging.debug('Sampling %d-point field with %s (%s kernel)',
                  len(positions), method, cfg.kernel)
    if method == 'circulant':
        if cfg.kernel != 'truncated-log-exact-pd':
            raise InvalidArgument('circulant embedding requires the'
                                  ' truncated-log-exact-pd kernel')
        y, variances = _sample_circulant(column, rng)
    else:
        y, variances = _sample_cholesky(cfg, column, rng)
    return positions, y, variances


def sample_boundary_liouville(cfg):
    """Sample the boundary Liouville measure described by `cfg`."""
    positions, y, variances = sample_gaussian_field(cfg)
    g = cfg.coupling
    if g == 0:
        masses = np.full(len(positions), float(cfg.delta))
    else:
        masses = cfg.delta * np.exp(g * y - 0.5 * g * g * variances)
    meta = {'kind': 'gmc', 'config': cfg.to_dict(),
            'method': _resolve_method(cfg, len(positions)),
            'seed': int(cfg.seed), 'resolution': cfg.eps,
            'delta': float(cfg.delta)}
    measure = AtomicMeasure(positions, masses, cfg.L, meta)
    measure_sampled.send(cfg, measure=measure)
    return measure


def derive_seed(seed, index):
    """Return the 64-bit seed of replicate `index` derived from `seed`."""
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(index),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def replicate_configs(cfg, n):
    """Return `n` copies of `cfg` with independent derived seeds."""
    return [replace(cfg, seed=derive_seed(cfg.seed, i)) for i in range(n)]
