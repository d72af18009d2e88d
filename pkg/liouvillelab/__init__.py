# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from .errors import DegenerateInput
from .errors import InvalidArgument
from .errors import NumericDegeneracy
from .errors import ParseError
from .measures import AtomicMeasure
from .measures import GmcConfig
from .measures import build_lebesgue
from .measures import interval_mass
from .measures import sample_boundary_liouville
from .measures import scaling_stats
from .krein import StieltjesString
from .krein import SpectralDecomposition
from .krein import dual
from .krein import eval_phi_psi
from .krein import heat_kernel
from .krein import hitting_laplace
from .krein import kac_exit
from .krein import krein_h
from .krein import resolvent_full_line
from .krein import spectral_decompose
from .krein import survival
from .krein import to_string
from .diffusion import extract_excursions
from .diffusion import inverse_local_time_samples
from .diffusion import simulate_gap_diffusion
from .diffusion import simulate_time_change_oracle
from .experiments import Report
from .experiments import run_theorem_suite

__version__ = '0.1.0'
