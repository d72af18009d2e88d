# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from .exponents import ShortTimeExponent
from .exponents import excursion_short_time
from .exponents import level_set_dimension
from .exponents import local_dimension
from .exponents import multifractal_alpha
from .exponents import resolution_window
from .exponents import short_time_exponent
from .exponents import two_sided_correspondence
from .identities import convolution_identity
from .identities import heat_kernel_oracles
from .identities import identity_suite
from .identities import longtime_checks
from .identities import longtime_ratios
from .identities import volume_sandwich
from .report import Check
from .report import Measurement
from .report import Report
from .report import TAGS
from .report import check_completed
from .report import check_started
from .report import fingerprint
from .report import read_report
from .report import run_check
from .report import write_plot_data
from .suite import SUITE
from .suite import SuiteConfig
from .suite import check_names
from .suite import run_theorem_suite
