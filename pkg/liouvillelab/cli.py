# cli.py - command-line front end
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""The ``liouvillelab`` command.

Subcommands::

    sample-measure   sample a boundary Liouville measure and store it
    krein            evaluate the correspondence at an anchor
    simulate         simulate a gap diffusion path
    excursions       extract the excursions of a simulated path
    verify           run the verification suite and store the report

Exit status is 0 on success, 1 when checks fail or a computation degenerates
and 2 on usage and parse errors.

"""
import argparse
from dataclasses import dataclass
import logging
import os
import sys

from .diffusion import extract_excursions
from .diffusion import simulate_gap_diffusion
from .diffusion import simulate_time_change_oracle
from .diffusion import write_excursions_csv
from .diffusion import write_path_csv
from .errors import DegenerateInput
from .errors import InvalidArgument
from .errors import NumericDegeneracy
from .errors import ParseError
from .experiments import SuiteConfig
from .experiments import check_completed
from .experiments import run_theorem_suite
from .krein import anchor_strings
from .krein import spectrum_computed
from .krein import two_sided_decompose
from .krein import two_sided_h
from .krein import write_spectrum
from .measures import GmcConfig
from .measures import dumps_measure
from .measures import measure_sampled
from .measures import read_measure
from .measures import sample_boundary_liouville
from .measures import write_measure

#: Subcommands in the order of the help text.
COMMANDS = ('sample-measure', 'krein', 'simulate', 'excursions', 'verify')

#: Subcommands that draw random numbers and so require ``--seed``.
STOCHASTIC = ('sample-measure', 'simulate', 'excursions', 'verify')

#: Levels at which ``excursions`` reports the rate of excursions reaching
#: them.
EXCURSION_LEVELS = (0.25, 0.5, 1.0)


@dataclass(frozen=True)
class CliConfig:
    command: str
    gamma: float = 1.0
    depth: int = None
    L: float = 4.0
    delta: float = None
    seed: int = None
    threads: int = None
    measure: str = None
    anchor: float = 0.0
    lam: float = 1.0
    out: str = None
    kernel: str = 'truncated-log-exact-pd'
    method: str = 'auto'
    side: str = '+'
    T: float = 100.0
    time_change: bool = False
    quick: bool = False
    plot_dir: str = None
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidArgument('unknown command {!r}'.format(self.command))
        needs_seed = (self.command in STOCHASTIC
                      or (self.command == 'krein' and self.measure is None))
        if needs_seed and self.seed is None:
            raise InvalidArgument('{} requires an explicit --seed'.format(
                self.command))
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise InvalidArgument('seed must be an unsigned 64-bit integer')
        if self.measure is not None and not os.path.isfile(self.measure):
            raise InvalidArgument('no measure file {}'.format(self.measure))
        if self.out is not None:
            directory = os.path.dirname(os.path.abspath(self.out))
            if not os.path.isdir(directory):
                raise InvalidArgument('no directory for {}'.format(self.out))
        if self.threads is not None and self.threads < 1:
            raise InvalidArgument('threads must be positive')
        if self.side not in ('+', '-'):
            raise InvalidArgument('side must be + or -')

    @classmethod
    def from_namespace(cls, namespace):
        values = {name: getattr(namespace, name)
                  for name in cls.__dataclass_fields__
                  if hasattr(namespace, name)}
        return cls(**values)

    def gmc(self):
        depth = SuiteConfig.depth_n if self.depth is None else self.depth
        return GmcConfig(self.gamma, depth, self.L, self.delta,
                         self.kernel, self.seed, self.method)

    def suite(self):
        values = dict(gamma=self.gamma, depth_n=self.depth, L=self.L,
                      delta=self.delta, kernel=self.kernel,
                      method=self.method, seed=self.seed,
                      threads=self.threads, plot_dir=self.plot_dir)
        # Unset options keep the defaults of the chosen budget.
        values = {name: value for name, value in values.items()
                  if value is not None}
        if self.quick:
            return SuiteConfig.quick(**values)
        return SuiteConfig(**values)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--gamma', type=float, default=1.0)
    common.add_argument('--depth', type=int,
                        help='dyadic depth (default 10, 8 with --quick)')
    common.add_argument('--L', type=float, default=4.0)
    common.add_argument('--delta', type=float)
    common.add_argument('--kernel', default='truncated-log-exact-pd',
                        choices=('truncated-log-exact-pd', 'sharp-log-floor'))
    common.add_argument('--method', default='auto',
                        choices=('auto', 'cholesky', 'circulant'))
    common.add_argument('--seed', type=int)
    common.add_argument('--threads', type=int)
    common.add_argument('--measure', help='read the measure from this file'
                        ' instead of sampling it')
    common.add_argument('--out')
    common.add_argument('--verbose', action='store_true')

    parser = argparse.ArgumentParser(
        prog='liouvillelab', description='Krein strings and gap diffusions'
        ' of boundary Liouville measures.')
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('sample-measure', parents=[common],
                        help='sample a measure and store it as JSON')
    krein = commands.add_parser('krein', parents=[common],
                                help='evaluate h at an anchor')
    krein.add_argument('--anchor', type=float, default=0.0)
    krein.add_argument('--lambda', dest='lam', type=float, default=1.0)
    simulate = commands.add_parser('simulate', parents=[common],
                                   help='simulate a path and store it as'
                                   ' CSV')
    simulate.add_argument('--anchor', type=float, default=0.0,
                          help='starting point')
    simulate.add_argument('--T', type=float, default=100.0)
    simulate.add_argument('--time-change', action='store_true',
                          help='use the time-changed walk')
    excursions = commands.add_parser('excursions', parents=[common],
                                     help='extract excursions from an'
                                     ' anchor and store them as CSV')
    excursions.add_argument('--anchor', type=float, default=0.0)
    excursions.add_argument('--T', type=float, default=100.0)
    excursions.add_argument('--side', default='+', choices=('+', '-'))
    verify = commands.add_parser('verify', parents=[common],
                                 help='run the verification suite')
    verify.add_argument('--quick', action='store_true',
                        help='use small budgets')
    verify.add_argument('--plot-dir', dest='plot_dir')
    return parser


def _log_check(check):
    logging.info('%-32s %-10s %s', check.name, check.tag,
                 'pass' if check.passed else 'FAIL')


def _log_measure(cfg, measure=None):
    logging.debug('Sampled %d atoms with seed %d', len(measure), cfg.seed)


def _log_spectrum(spec, source=None):
    logging.debug('Computed a %d-pair spectrum', len(spec))


def _measure(cfg):
    if cfg.measure is not None:
        return read_measure(cfg.measure)
    return sample_boundary_liouville(cfg.gmc())


def _sample_measure(cfg, stdout):
    measure = sample_boundary_liouville(cfg.gmc())
    if cfg.out is None:
        stdout.write(dumps_measure(measure))
    else:
        write_measure(cfg.out, measure)
    return 0


def _krein(cfg, stdout):
    measure = _measure(cfg)
    values = {}
    for boundary in ('dirichlet', 'neumann'):
        s_plus, s_minus, anchor_mass = anchor_strings(measure, cfg.anchor,
                                                      boundary)
        values[boundary] = float(two_sided_h(s_plus, s_minus, anchor_mass,
                                             [cfg.lam])[0])
    lo, hi = sorted(values.values())
    stdout.write('h_dirichlet\t{!r}\n'.format(values['dirichlet']))
    stdout.write('h_neumann\t{!r}\n'.format(values['neumann']))
    stdout.write('bracket\t{!r}\t{!r}\n'.format(lo, hi))
    if cfg.out is not None:
        write_spectrum(cfg.out, two_sided_decompose(measure, cfg.anchor,
                                                    keep_vectors=False))
    return 0


def _simulate(cfg, stdout):
    measure = _measure(cfg)
    simulate = (simulate_time_change_oracle if cfg.time_change
                else simulate_gap_diffusion)
    path = simulate(measure, cfg.anchor, cfg.T, cfg.seed)
    if cfg.out is not None:
        write_path_csv(cfg.out, path)
    stdout.write('events\t{}\nedge_contacts\t{}\n'.format(
        len(path), path.edge_contacts))
    return 0


def _excursions(cfg, stdout):
    measure = _measure(cfg)
    anchor = float(measure.positions[measure.nearest_atom(cfg.anchor)])
    path = simulate_gap_diffusion(measure, anchor, cfg.T, cfg.seed)
    excursions = extract_excursions(path, anchor)
    if cfg.out is not None:
        write_excursions_csv(cfg.out, excursions)
    rates = excursions.rate_above(EXCURSION_LEVELS, cfg.side)
    stdout.write('excursions\t{}\nlocal_time\t{!r}\n'.format(
        int(excursions.select(cfg.side).sum()),
        excursions.total_local_time))
    for level, rate in zip(EXCURSION_LEVELS, rates):
        stdout.write('rate_above\t{!r}\t{!r}\n'.format(level, float(rate)))
    return 0


def _verify(cfg, stdout):
    report = run_theorem_suite(cfg.suite(), out=cfg.out)
    for check in report:
        stdout.write('{}\t{}\t{}\n'.format(
            check.name, check.tag, 'pass' if check.passed else 'FAIL'))
    return 0 if report.passed else 1


_HANDLERS = {'sample-measure': _sample_measure, 'krein': _krein,
             'simulate': _simulate, 'excursions': _excursions,
             'verify': _verify}


def run(argv=None, stdout=None):
    """Run the command line `argv` and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        namespace = _parser().parse_args(argv)
    except SystemExit as exit:
        return exit.code if isinstance(exit.code, int) else 2
    logging.basicConfig(
        level=logging.DEBUG if namespace.verbose else logging.INFO,
        format='%(levelname)s %(message)s')
    try:
        cfg = CliConfig.from_namespace(namespace)
    except InvalidArgument as error:
        logging.error('%s', error)
        return 2
    check_completed.connect(_log_check)
    measure_sampled.connect(_log_measure)
    spectrum_computed.connect(_log_spectrum)
    try:
        return _HANDLERS[cfg.command](cfg, stdout)
    except (InvalidArgument, ParseError) as error:
        logging.error('%s', error)
        return 2
    except (DegenerateInput, NumericDegeneracy, OSError) as error:
        logging.error('%s', error)
        return 1
    finally:
        check_completed.disconnect(_log_check)
        measure_sampled.disconnect(_log_measure)
        spectrum_computed.disconnect(_log_spectrum)


def main():
    sys.exit(run())
