# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from .base import AtomicMeasure
from .base import build_lebesgue
from .base import coarsen_measure
from .base import interval_mass
from .base import manual_measure
from .base import normalize_measure
from .base import sample_anchor
from .base import scale_measure
from .gmc import GmcConfig
from .gmc import derive_seed
from .gmc import kernel_values
from .gmc import measure_sampled
from .gmc import replicate_configs
from .gmc import sample_boundary_liouville
from .gmc import sample_gaussian_field
from .scaling import ScalingStats
from .scaling import geometric_grid
from .scaling import loglog_slope
from .scaling import scaling_stats
from .storage import dumps_measure
from .storage import loads_measure
from .storage import read_measure
from .storage import write_measure
