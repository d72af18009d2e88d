# __init__.py - indicates that this directory is a Python package
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
from .ensembles import run_chunks
from .ensembles import sample_gap_positions
from .ensembles import sample_hitting_times
from .ensembles import sample_time_change_positions
from .excursions import ExcursionSet
from .excursions import extract_excursions
from .excursions import inverse_local_time_samples
from .excursions import write_excursions_csv
from .paths import PathRecord
from .paths import jump_rates
from .paths import simulate_gap_diffusion
from .paths import simulate_time_change_oracle
from .paths import write_path_csv
