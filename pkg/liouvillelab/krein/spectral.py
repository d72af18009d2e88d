# spectral.py - spectral measures and heat kernels of strings
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Spectral decompositions of atomic strings.

A string with reflecting (``neumann-at-0``) or absorbing (``dirichlet-at-0``)
anchor has finitely many eigenvalues ``xi_j``.  With ``u_j`` the eigenfunction
normalized in ``L2(dm)`` and positive at the anchor side,

``neumann-at-0`` (the measure ``sigma``)
    ``c_j = u_j(0)**2``, the weights of ``h(lam) = c + sum c_j / (lam + xi_j)``
    where ``c`` is the leading gap of the string;

``dirichlet-at-0`` (the measure ``sigma*``)
    ``c*_j = u_j'(0)**2 / xi_j``, the weights of
    ``1 / (lam h(lam)) = c* + sum c*_j / (lam + xi_j)`` where ``c*`` is the mass
    at the anchor.  A string killed at its length adds the atom ``1 / length``
    at ``xi = 0``.

The heat kernels of the diffusion on the string follow from the same data:
``p(t; x, y) = sum exp(-t xi_j) u_j(x) u_j(y)`` for the reflecting anchor, and
likewise ``q`` for the absorbing one, ``pi(t; x) = sum exp(-t xi_j) u_j'(0)
u_j(x)`` and ``n(t) = sum exp(-t xi_j) u_j'(0)**2``.

"""
from dataclasses import dataclass
from dataclasses import field
import json
import logging
import math

from blinker import signal
import numpy as np

from ..constants import FLOAT_FORMAT
from ..constants import MAX_EIGEN_ATOMS
from ..constants import MAX_MODE_SITES
from ..errors import InvalidArgument
from ..errors import ParseError
from ..measures import coarsen_measure
from ..safeio import locked_read_bytes
from ..safeio import locked_write_text
from .jacobi import stiffness
from .jacobi import string_system
from .jacobi import tridiagonal_eigen
from .solutions import krein_h
from .solutions import string_h
from .strings import coarsen_string
from .strings import fnv1a_64

#: Conditions at the anchor; ``two-sided`` is the reflecting diffusion on the
#: whole window observed at an interior anchor.
CONDITIONS = ('neumann-at-0', 'dirichlet-at-0', 'two-sided')

#: Heat kernel flavours understood by :func:`heat_kernel`.
MODES = ('reflecting-p', 'absorbing-q', 'htransform', 'hitting-pi', 'levy-n')

#: A signal that is emitted whenever a spectral decomposition is computed.
#:
#: Subscribers receive the :class:`SpectralDecomposition` as sender, along with
#: a ``source`` keyword argument (the string or measure decomposed).
spectrum_computed = signal('spectrum-computed')


def _frozen(values):
    if values is None:
        return None
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues `xi` with spectral weights `weights`.

    `modes` holds the ``L2(dm)``-normalized eigenfunctions at `knots` (one
    column per eigenvalue) when they were kept; `sites` and `site_masses` are
    the atoms the eigenproblem was solved on.  `origin` is the anchor in the
    coordinates of `knots`.

    """

    xi: np.ndarray
    weights: np.ndarray
    bc: str
    constant: float = 0.0
    string_hash: str = ''
    bracket_width: float = 0.0
    origin: float = 0.0
    knots: np.ndarray = None
    modes: np.ndarray = None
    sites: np.ndarray = None
    site_masses: np.ndarray = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ('xi', 'weights', 'knots', 'modes', 'sites',
                     'site_masses'):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.bc not in CONDITIONS:
            raise InvalidArgument('unknown condition {!r}'.format(self.bc))
        if self.xi.shape != self.weights.shape:
            raise InvalidArgument('eigenvalues and weights differ in length')

    def __len__(self):
        return len(self.xi)

    @property
    def pairs(self):
        return list(zip(self.xi.tolist(), self.weights.tolist()))

    @property
    def slopes(self):
        """``u_j'(0)`` for an absorbing anchor, from ``c*_j xi_j``."""
        return np.sqrt(self.xi * self.weights)

    def h(self, lams):
        """Evaluate ``constant + sum c_j / (lam + xi_j)`` at every ``lam``."""
        lams = np.asarray(lams, dtype=float)
        terms = self.weights / (lams[..., None] + self.xi)
        return self.constant + np.sum(terms, axis=-1)

    def modes_at(self, x):
        """Return the eigenfunctions at the points `x`, shape
        ``(len(x), len(self))``.

        """
        if self.modes is None:
            raise InvalidArgument('this decomposition was computed without'
                                  ' eigenfunctions')
        x = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.knots[0], self.knots[-1]
        if np.any(x < lo - 1e-12) or np.any(x > hi + 1e-12):
            raise InvalidArgument('points outside [{}, {}]'.format(lo, hi))
        if len(self.knots) == 1:
            return np.repeat(self.modes[:1], len(x), axis=0)
        k = np.clip(np.searchsorted(self.knots, x, side='right') - 1, 0,
                    len(self.knots) - 2)
        w = ((x - self.knots[k]) / (self.knots[k + 1] - self.knots[k]))
        w = np.clip(w, 0, 1)[:, None]
        return self.modes[k] * (1 - w) + self.modes[k + 1] * w


def _string_knots(s, system, bc0, u):
    knots, values = system.sites, u
    if knots[0] > 0:
        first = np.zeros_like(u[:1]) if bc0 == 'dirichlet-at-0' else u[:1]
        knots = np.concatenate(([0.0], knots))
        values = np.concatenate((first, values))
    if s.length > knots[-1]:
        last = np.zeros_like(u[:1]) if s.boundary == 'dirichlet' else u[-1:]
        knots = np.concatenate((knots, [s.length]))
        values = np.concatenate((values, last))
    return knots, values


def spectral_decompose(s, bc0, xi_max=None, keep_vectors=None):
    """Return the :class:`SpectralDecomposition` of the string `s`.

    `bc0` is ``neumann-at-0`` (``sigma``) or ``dirichlet-at-0`` (``sigma*``).
    Strings with more than :data:`~liouvillelab.constants.MAX_EIGEN_ATOMS`
    atoms are coarsened first.  `xi_max` keeps only the eigenvalues up to that
    value (the decomposition then no longer reconstructs ``h``).
    `keep_vectors` defaults to true for strings with at most
    :data:`~liouvillelab.constants.MAX_MODE_SITES` sites.

    """
    if bc0 not in CONDITIONS[:2]:
        raise InvalidArgument('unknown condition at the anchor'
                              ' {!r}'.format(bc0))
    source = s
    if len(s) > MAX_EIGEN_ATOMS:
        s = coarsen_string(s, MAX_EIGEN_ATOMS)
    system = string_system(s, bc0)
    if keep_vectors is None:
        keep_vectors = len(system.sites) <= MAX_MODE_SITES
    xi, first, vectors = tridiagonal_eigen(system.diagonal,
                                           system.off_diagonal, (0,), xi_max,
                                           keep_vectors)
    xi = np.maximum(xi, 0.0)
    sign = np.where(first[0] < 0, -1.0, 1.0)
    leading = first[0] ** 2 / system.masses[0]
    if bc0 == 'neumann-at-0':
        weights = leading
        constant = s.leading_gap
    else:
        weights = leading / (system.left_gap ** 2 * xi)
        constant = s.origin_mass
    knots = modes = None
    if vectors is not None:
        u = vectors * sign / np.sqrt(system.masses)[:, None]
        knots, modes = _string_knots(s, system, bc0, u)
    if bc0 == 'dirichlet-at-0' and s.boundary == 'dirichlet':
        xi = np.concatenate(([0.0], xi))
        weights = np.concatenate(([1 / s.length], weights))
        if modes is not None:
            modes = np.concatenate((np.zeros((len(knots), 1)), modes), axis=1)
    meta = {'anchor': float(s.anchor), 'direction': s.direction,
            'length': s.length, 'boundary': s.boundary}
    if 'binning_width' in s.meta:
        meta['binning_width'] = s.meta['binning_width']
    if xi_max is not None:
        meta['xi_max'] = float(xi_max)
    result = SpectralDecomposition(xi, weights, bc0, constant, source.digest(),
                                   krein_h(source, 1.0).bracket_width, 0.0,
                                   knots, modes, system.sites, system.masses,
                                   meta)
    logging.debug('Decomposed %d-site string %s (%s): %d eigenvalues',
                  len(system.sites), result.string_hash, bc0, len(xi))
    spectrum_computed.send(result, source=source)
    return result


def reconstruct_h(spec, s, lams):
    """Return ``(represented, direct)`` values of the correspondence that
    `spec` represents for the string `s`.

    """
    lams = np.asarray(lams, dtype=float)
    direct = string_h(s, lams)
    if spec.bc == 'dirichlet-at-0':
        direct = 1 / (lams * direct)
    return spec.h(lams), direct


def _measure_hash(measure, a):
    data = (measure.positions.tobytes() + measure.masses.tobytes()
            + repr(float(a)).encode('ascii'))
    return '{:016x}'.format(fnv1a_64(data))


def two_sided_decompose(measure, a, xi_max=None, keep_vectors=None):
    """Decompose the reflecting diffusion on the whole window of `measure`
    as seen from the anchor `a`.

    The weights ``c_j = u_j(a)**2`` represent the two-sided correspondence,
    ``1 / (1/h_plus + 1/h_minus + lam nu({a}))`` for Neumann strings to the
    window edges, and ``p(t; a, a) = sum c_j exp(-t xi_j)``.

    """
    L = measure.half_length
    if not -L <= a <= L:
        raise InvalidArgument('anchor {} outside the window'.format(a))
    if len(measure) > MAX_EIGEN_ATOMS:
        measure = coarsen_measure(measure, 2 * L / MAX_EIGEN_ATOMS)
        logging.warning('Coarsened the window to %d atoms for the two-sided'
                        ' eigensolve', len(measure))
    sites, masses = measure.positions, measure.masses
    index = measure.atom_at(a)
    right = int(np.searchsorted(sites, a, side='right'))
    if index is not None:
        rows, share, constant = [index], [1.0], 0.0
    elif right == 0:
        rows, share, constant = [0], [1.0], float(sites[0] - a)
    elif right == len(sites):
        rows, share, constant = [right - 1], [1.0], float(a - sites[-1])
    else:
        left_gap, right_gap = a - sites[right - 1], sites[right] - a
        rows = [right - 1, right]
        share = [right_gap / (left_gap + right_gap),
                 left_gap / (left_gap + right_gap)]
        constant = left_gap * right_gap / (left_gap + right_gap)
    diagonal, off_diagonal = stiffness(sites, masses)
    if keep_vectors is None:
        keep_vectors = len(sites) <= MAX_MODE_SITES
    xi, row_values, vectors = tridiagonal_eigen(diagonal, off_diagonal, rows,
                                                xi_max, keep_vectors)
    xi = np.maximum(xi, 0.0)
    u_rows = row_values / np.sqrt(masses[rows])[:, None]
    at_anchor = np.dot(share, u_rows)
    knots = modes = None
    if vectors is not None:
        knots, modes = sites, vectors / np.sqrt(masses)[:, None]
        if knots[0] > -L:
            knots = np.concatenate(([-L], knots))
            modes = np.concatenate((modes[:1], modes))
        if knots[-1] < L:
            knots = np.concatenate((knots, [L]))
            modes = np.concatenate((modes, modes[-1:]))
    anchor_mass = 0.0 if index is None else float(masses[index])
    meta = {'anchor': float(a), 'anchor_mass': anchor_mass,
            'half_length': L}
    if 'binning_width' in measure.meta:
        meta['binning_width'] = measure.meta['binning_width']
    result = SpectralDecomposition(xi, at_anchor ** 2, 'two-sided', constant,
                                   _measure_hash(measure, a), 0.0, float(a),
                                   knots, modes, sites, masses, meta)
    logging.debug('Decomposed the window at %g: %d eigenvalues', a, len(xi))
    spectrum_computed.send(result, source=measure)
    return result


def _require(spec, conditions, mode):
    if spec.bc not in conditions:
        raise InvalidArgument('{} needs a decomposition with {}, not'
                              ' {}'.format(mode, ' or '.join(conditions),
                                           spec.bc))


def heat_kernel(spec, mode, t, x=None, y=None):
    """Evaluate a heat kernel of the diffusion behind `spec` at time `t`.

    ``reflecting-p`` needs a reflecting anchor (``neumann-at-0`` or
    ``two-sided``) and defaults to ``x = y = origin``; ``absorbing-q``,
    ``htransform`` (``q / (x y)``), ``hitting-pi`` (only `x`) and ``levy-n``
    (no points) need ``dirichlet-at-0``.

    """
    if mode not in MODES:
        raise InvalidArgument('unknown heat kernel {!r}'.format(mode))
    if not t > 0:
        raise InvalidArgument('time must be positive')
    decay = np.exp(-t * spec.xi)
    if mode == 'reflecting-p':
        _require(spec, ('neumann-at-0', 'two-sided'), mode)
        x = spec.origin if x is None else x
        y = x if y is None else y
        if x == y == spec.origin:
            return float(np.dot(decay, spec.weights))
        ux, uy = spec.modes_at([x, y])
        return float(np.sum(decay * ux * uy))
    _require(spec, ('dirichlet-at-0',), mode)
    if mode == 'levy-n':
        return float(np.dot(decay, spec.xi * spec.weights))
    if x is None:
        raise InvalidArgument('{} needs a starting point'.format(mode))
    if mode == 'hitting-pi':
        ux = spec.modes_at([x])[0]
        return float(np.sum(decay * spec.slopes * ux))
    if y is None:
        raise InvalidArgument('{} needs two points'.format(mode))
    ux, uy = spec.modes_at([x, y])
    value = float(np.sum(decay * ux * uy))
    if mode == 'htransform':
        if not (x > 0 and y > 0):
            raise InvalidArgument('the h-transform needs x, y > 0')
        return value / (x * y)
    return value


def survival(spec_star, t):
    """Return ``n(zeta > t) = sum c*_j exp(-xi_j t)``, the excursion measure
    of lifetimes beyond `t`.

    """
    _require(spec_star, ('dirichlet-at-0',), 'survival')
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise InvalidArgument('time must be positive')
    values = np.exp(-t[..., None] * spec_star.xi) @ spec_star.weights
    return float(values) if values.ndim == 0 else values


def _number(x):
    return FLOAT_FORMAT % x if math.isfinite(x) else 'null'


def dumps_spectrum(spec):
    """Return the JSON text of the spectral measure of `spec`."""
    pairs = ',\n  '.join('[{},{}]'.format(_number(xi), _number(c))
                         for xi, c in zip(spec.xi, spec.weights))
    return ('{{"bc": {bc}, "constant": {constant},'
            ' "string_hash": {digest}, "bracket_width": {width},\n'
            ' "pairs": [\n  {pairs}]}}\n').format(
                bc=json.dumps(spec.bc), constant=_number(spec.constant),
                digest=json.dumps(spec.string_hash),
                width=_number(spec.bracket_width), pairs=pairs)


def loads_spectrum(raw, filename=None):
    """Parse spectra file contents into a decomposition without
    eigenfunctions.

    """
    if isinstance(raw, str):
        raw = raw.encode('utf-8')
    try:
        document = json.loads(raw.decode('utf-8'))
    except UnicodeDecodeError as exception:
        raise ParseError('not UTF-8 text', exception.start, filename)
    except json.JSONDecodeError as exception:
        offset = len(exception.doc[:exception.pos].encode('utf-8'))
        raise ParseError(exception.msg, offset, filename)
    if not isinstance(document, dict) or 'pairs' not in document:
        raise ParseError('missing key \'pairs\'', len(raw), filename)
    try:
        pairs = np.array(document['pairs'], dtype=float).reshape(-1, 2)
        width = document.get('bracket_width')
        spec = SpectralDecomposition(
            pairs[:, 0], pairs[:, 1], document.get('bc'),
            float(document.get('constant') or 0.0),
            str(document.get('string_hash', '')),
            math.inf if width is None else float(width))
    except (TypeError, ValueError) as exception:
        raise ParseError(str(exception), max(raw.find(b'"pairs"'), 0),
                         filename)
    return spec


def write_spectrum(filename, spec):
    """Write the spectral measure of `spec` to `filename` atomically."""
    logging.debug('Storing %d-pair spectrum to %s', len(spec), filename)
    locked_write_text(filename, dumps_spectrum(spec))


def read_spectrum(filename):
    logging.debug('Loading spectrum from %s', filename)
    return loads_spectrum(locked_read_bytes(filename), filename)
