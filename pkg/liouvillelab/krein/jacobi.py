# jacobi.py - tridiagonal realization of the string operator on atom sites
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""The operator ``-d/dm d/dx`` of an atomic string acts on the values of a
function at the atom sites, the function being affine in between.  With
``A`` the symmetric stiffness matrix (inverse gaps, plus the couplings to a
Dirichlet endpoint) and ``M`` the diagonal of masses, the eigenproblem
``A u = xi M u`` is solved in the symmetric form ``M^-1/2 A M^-1/2``, a Jacobi
matrix handed to LAPACK through :func:`scipy.linalg.eigh_tridiagonal`.

"""
import logging
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..errors import NumericDegeneracy

#: Eigenvectors are computed in blocks of this many when only a few of their
#: components are wanted.
EIGEN_BLOCK = 512


class JacobiSystem(NamedTuple):
    """Sites, masses and the symmetric tridiagonal matrix of a string."""

    sites: np.ndarray
    masses: np.ndarray
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    left_gap: float


def stiffness_bands(sites, left_gap=None, right_gap=None):
    """Return the bands ``(diagonal, off_diagonal)`` of the stiffness matrix.

    A `left_gap` (`right_gap`) couples the first (last) site to a Dirichlet
    point at that distance; ``None`` leaves the end reflecting.

    """
    sites = np.asarray(sites, dtype=float)
    gaps = np.diff(sites)
    if np.any(gaps <= 0):
        raise InvalidArgument('sites must be strictly increasing')
    inverse = 1 / gaps
    diagonal = np.zeros(len(sites))
    diagonal[:-1] += inverse
    diagonal[1:] += inverse
    if left_gap is not None:
        diagonal[0] += 1 / left_gap
    if right_gap is not None:
        diagonal[-1] += 1 / right_gap
    return diagonal, -inverse


def stiffness(sites, masses, left_gap=None, right_gap=None):
    """Return the Jacobi matrix ``M^-1/2 A M^-1/2`` as ``(diagonal,
    off_diagonal)``.

    """
    masses = np.asarray(masses, dtype=float)
    diagonal, off_diagonal = stiffness_bands(sites, left_gap, right_gap)
    root = np.sqrt(masses)
    return diagonal / masses, off_diagonal / (root[:-1] * root[1:])


def string_system(s, bc0):
    """Return the :class:`JacobiSystem` of `s` with condition `bc0` at the
    anchor.

    For ``neumann-at-0`` an atom at the anchor (``s.origin_mass``) is a site;
    for ``dirichlet-at-0`` the anchor is pinned and that atom is inert.  A site
    sitting exactly at a Dirichlet truncation length is pinned as well.

    """
    if bc0 == 'neumann-at-0':
        left_gap = None
        if s.origin_mass > 0:
            sites = np.concatenate(([0.0], s.distances))
            masses = np.concatenate(([s.origin_mass], s.masses))
        else:
            sites, masses = s.distances, s.masses
    elif bc0 == 'dirichlet-at-0':
        sites, masses = s.distances, s.masses
        left_gap = float(sites[0]) if len(sites) else None
    else:
        raise InvalidArgument('unknown condition at the anchor'
                              ' {!r}'.format(bc0))
    right_gap = None
    if s.boundary == 'dirichlet' and len(sites):
        if s.length - sites[-1] <= 1e-14 * s.length:
            sites, masses = sites[:-1], masses[:-1]
        if len(sites):
            right_gap = s.length - float(sites[-1])
    if len(sites) == 0:
        raise DegenerateInput('the string has no free sites for'
                              ' {}'.format(bc0))
    diagonal, off_diagonal = stiffness(sites, masses, left_gap, right_gap)
    return JacobiSystem(np.asarray(sites), np.asarray(masses), diagonal,
                        off_diagonal, left_gap or 0.0)


def tridiagonal_eigen(diagonal, off_diagonal, rows=(0,), xi_max=None,
                      keep_vectors=False):
    """Solve the symmetric tridiagonal eigenproblem.

    Returns ``(xi, row_values, vectors)``: the eigenvalues in increasing
    order (only those ``<= xi_max`` if given), the eigenvector components in
    `rows` and, if `keep_vectors`, the full eigenvector matrix (else
    ``None``).  Without `keep_vectors` the eigenvectors are computed in blocks
    so that memory stays linear in the matrix size.

    """
    diagonal = np.asarray(diagonal, dtype=float)
    off_diagonal = np.asarray(off_diagonal, dtype=float)
    rows = list(rows)
    n = len(diagonal)
    if n == 1:
        xi = diagonal.copy()
        if xi_max is not None:
            xi = xi[xi <= xi_max]
        vectors = np.ones((1, len(xi)))
        return xi, vectors[rows], vectors if keep_vectors else None
    options = {}
    if xi_max is not None:
        # The matrix is non-negative definite; -1 catches rounding below 0.
        options = dict(select='v', select_range=(-1.0, float(xi_max)))
    try:
        if keep_vectors or n <= EIGEN_BLOCK:
            xi, vectors = eigh_tridiagonal(diagonal, off_diagonal, **options)
            return xi, vectors[rows], vectors if keep_vectors else None
        xi = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                              **options)
        row_values = np.empty((len(rows), len(xi)))
        for lo in range(0, len(xi), EIGEN_BLOCK):
            hi = min(lo + EIGEN_BLOCK, len(xi)) - 1
            block, vectors = eigh_tridiagonal(diagonal, off_diagonal,
                                              select='i',
                                              select_range=(lo, hi))
            xi[lo:hi + 1] = block
            row_values[:, lo:hi + 1] = vectors[rows]
        logging.debug('Solved %d x %d Jacobi matrix in blocks of %d', n, n,
                      EIGEN_BLOCK)
        return xi, row_values, None
    except (np.linalg.LinAlgError, ValueError) as exception:
        raise NumericDegeneracy('tridiagonal eigensolver failed:'
                                ' {}'.format(exception))


def lowest_eigenvalue(diagonal, off_diagonal):
    """Return the smallest eigenvalue of the Jacobi matrix."""
    if len(diagonal) == 1:
        return float(diagonal[0])
    try:
        xi = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                              select='i', select_range=(0, 0))
    except (np.linalg.LinAlgError, ValueError) as exception:
        raise NumericDegeneracy('tridiagonal eigensolver failed:'
                                ' {}'.format(exception))
    return float(xi[0])
