# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from .caches import SpectrumCache
from .caches import cached_decompose
from .caches import default_cache
from .exit import ExitStats
from .exit import exit_exponential_moment
from .exit import kac_exit
from .exit import kac_exponential_moment
from .resolvent import hitting_laplace
from .resolvent import inverse_local_time_exponent
from .resolvent import resolvent_full_line
from .solutions import KreinValue
from .solutions import PhiPsiValue
from .solutions import eval_phi_psi
from .solutions import excursion_hitting_laplace
from .solutions import krein_h
from .solutions import propagate
from .solutions import string_h
from .solutions import two_sided_h
from .spectral import SpectralDecomposition
from .spectral import heat_kernel
from .spectral import read_spectrum
from .spectral import reconstruct_h
from .spectral import spectral_decompose
from .spectral import spectrum_computed
from .spectral import survival
from .spectral import two_sided_decompose
from .spectral import write_spectrum
from .strings import StieltjesString
from .strings import anchor_strings
from .strings import coarsen_string
from .strings import dual
from .strings import from_sequence
from .strings import to_string
from .strings import volume_function
