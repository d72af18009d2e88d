# constants.py - numeric defaults shared by several modules
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import math

#: The critical coupling on the line; every :class:`GmcConfig` must have a
#: strictly smaller ``gamma``.
GAMMA_CRITICAL = math.sqrt(2)

#: Number of radii (or spectral parameters, or times) per decade on every
#: geometric grid used by a log-log fit.
POINTS_PER_DECADE = 8

#: Diagonal jitter ladder, relative to the mean variance, tried in order when a
#: covariance matrix refuses to factorize.
JITTER_LADDER = (0.0, 1e-12, 1e-10, 1e-8, 1e-6)

#: The ``auto`` sampling method switches from dense Cholesky factorization to
#: circulant embedding above this many grid points.
CHOLESKY_MAX_POINTS = 4096

#: Relative tolerance on negative circulant eigenvalues before the embedding
#: is declared not non-negative definite.
CIRCULANT_TOLERANCE = 1e-9

#: Strings with more atoms than this are coarsened by mass-preserving binning
#: before a dense tridiagonal eigensolve.
MAX_EIGEN_ATOMS = 8192

#: Eigenfunctions are kept for heat kernels at arbitrary points only when a
#: string has at most this many sites; larger decompositions keep the
#: spectral measure alone.
MAX_MODE_SITES = 2048

#: The phi/psi recursion rescales its state whenever a component exceeds this
#: magnitude, moving the excess into a shared logarithmic exponent.
RESCALE_THRESHOLD = 1e150

#: Spectral slopes are trusted only up to this fraction of the resolution
#: cutoff ``eps ** -(1 + alpha)``.
RESOLUTION_SAFETY = 0.1

#: Default Monte Carlo budget (paths) of the verification suite.
DEFAULT_PATHS = 10000

#: Default number of measure seeds averaged by the verification suite.
DEFAULT_MEASURE_SEEDS = 200

#: Default number of (seed, anchor) pairs for dimension and exponent checks.
DEFAULT_ANCHOR_PAIRS = 30

#: Replicas handled by one derived random stream in the batched samplers.
#: Results do not depend on the number of threads because chunks, not
#: threads, own the streams.
CHUNK_SIZE = 1024

#: The number of seconds for which to acquire a file lock. An exception is
#: raised if the file is still locked after this number of seconds.
DEFAULT_TIMEOUT = 20

#: Significant digits used for every floating point number in artifact files;
#: 17 digits round-trip IEEE doubles exactly.
FLOAT_FORMAT = '%.17g'
