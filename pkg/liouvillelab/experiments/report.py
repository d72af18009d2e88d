# report.py - structured results of the verification suite
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Checks, reports and their files.

A :class:`Check` records one comparison of an estimate against a target with
a tolerance.  A :class:`Report` is the ordered list of checks of one run of
the suite, the configuration that produced it and the SHA-256 fingerprint of
that configuration.

"""
from dataclasses import dataclass
from dataclasses import field
import hashlib
import io
import json
import logging
import math
import time
from typing import NamedTuple

from blinker import signal

from ..constants import FLOAT_FORMAT
from ..errors import ParseError
from ..safeio import locked_read_bytes
from ..safeio import locked_write_text

#: Theorem tags a check may carry; ``identity`` marks closed-form identities
#: and internal consistency checks.
TAGS = ('level', 'stb', 'tol', 'ltt', 'lth', 'ellong', 'elshort', 'exit',
        'kac-krein', 'hv', 'identity')

#: A signal that is emitted when a check starts.
#:
#: Subscribers receive the name of the check as sender, along with a ``tag``
#: keyword argument.
check_started = signal('check-started')

#: A signal that is emitted when a check has completed (passed, failed or
#: errored).
#:
#: Subscribers receive the :class:`Check` as sender.
check_completed = signal('check-completed')


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _clean(value):
    """Replace non-finite floats by ``None`` throughout `value`."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, float):
        return _finite_or_none(value)
    if hasattr(value, 'item'):
        return _clean(value.item())
    return value


def fingerprint(config):
    """Return the SHA-256 hex digest of the canonical JSON of `config`."""
    text = json.dumps(_clean(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class Measurement(NamedTuple):
    """What a check computes: `passed` defaults to ``|estimate - target| <=
    tolerance``; `plot` is an optional ``(x, y)`` pair of sequences.

    """

    estimate: float
    target: float
    tolerance: float
    passed: bool = None
    detail: dict = None
    plot: tuple = None


@dataclass(frozen=True)
class Check:
    name: str
    tag: str
    estimate: float
    target: float
    tolerance: float
    passed: bool
    runtime: float = 0.0
    fingerprint: str = ''
    detail: dict = field(default_factory=dict)
    plot: tuple = field(default=None, compare=False, repr=False)

    def to_dict(self, runtime=True):
        result = {'name': self.name, 'tag': self.tag,
                  'estimate': _finite_or_none(self.estimate),
                  'target': _finite_or_none(self.target),
                  'tol': _finite_or_none(self.tolerance),
                  'pass': bool(self.passed)}
        if runtime:
            result['runtime_s'] = round(self.runtime, 6)
        if self.detail:
            result['detail'] = _clean(self.detail)
        return result


def within(estimate, target, tolerance):
    """``|estimate - target| <= tolerance``; false for non-finite values."""
    try:
        return bool(abs(float(estimate) - float(target)) <= tolerance)
    except (TypeError, ValueError):
        return False


def make_check(name, tag, measurement, runtime=0.0, fingerprint=''):
    """Turn a :class:`Measurement` into a :class:`Check`."""
    passed = measurement.passed
    if passed is None:
        passed = within(measurement.estimate, measurement.target,
                        measurement.tolerance)
    return Check(name, tag, float(measurement.estimate),
                 float(measurement.target), float(measurement.tolerance),
                 bool(passed), runtime, fingerprint,
                 dict(measurement.detail or {}), measurement.plot)


def run_check(name, tag, compute, fingerprint=''):
    """Run ``compute()`` (which returns a :class:`Measurement`) as a check.

    An exception raised by `compute` fails the check and is recorded in its
    detail instead of propagating.

    """
    if tag not in TAGS:
        raise ValueError('unknown tag {!r}'.format(tag))
    check_started.send(name, tag=tag)
    start = time.perf_counter()
    try:
        measurement = compute()
    except Exception as exception:
        logging.warning('Check %s raised %s: %s', name,
                        type(exception).__name__, exception)
        measurement = Measurement(math.nan, math.nan, math.nan, False,
                                  {'error': '{}: {}'.format(
                                      type(exception).__name__, exception)})
    check = make_check(name, tag, measurement, time.perf_counter() - start,
                       fingerprint)
    logging.debug('Check %s (%s): estimate %g, target %g, tolerance %g: %s',
                  name, tag, check.estimate, check.target, check.tolerance,
                  'pass' if check.passed else 'FAIL')
    check_completed.send(check)
    return check


@dataclass(frozen=True)
class Report:
    """The checks of one run, in declaration order."""

    config: dict
    checks: tuple
    fingerprint: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'checks', tuple(self.checks))
        if not self.fingerprint:
            object.__setattr__(self, 'fingerprint', fingerprint(self.config))

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def by_tag(self, tag):
        return [check for check in self.checks if check.tag == tag]

    def to_dict(self, runtime=True):
        return {'config': _clean(self.config),
                'fingerprint': self.fingerprint,
                'checks': [check.to_dict(runtime) for check in self.checks]}

    def dumps(self, runtime=True):
        """Return the JSON text of the report; without `runtime` the text is
        a function of the configuration alone.

        """
        return json.dumps(self.to_dict(runtime), indent=2) + '\n'

    def write(self, filename, runtime=True):
        logging.debug('Storing report with %d checks to %s', len(self),
                      filename)
        locked_write_text(filename, self.dumps(runtime))


def loads_report(raw, filename=None):
    """Parse report file contents back into a :class:`Report`."""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode('utf-8')
        except UnicodeDecodeError as exception:
            raise ParseError('not UTF-8 text', exception.start, filename)
    try:
        document = json.loads(raw)
    except json.JSONDecodeError as exception:
        offset = len(raw[:exception.pos].encode('utf-8'))
        raise ParseError(exception.msg, offset, filename)
    if not isinstance(document, dict) or 'checks' not in document:
        raise ParseError('missing key \'checks\'', len(raw), filename)

    def number(x):
        return math.nan if x is None else float(x)

    try:
        checks = [Check(c['name'], c['tag'], number(c['estimate']),
                        number(c['target']), number(c['tol']),
                        bool(c['pass']), float(c.get('runtime_s', 0.0)),
                        document.get('fingerprint', ''),
                        c.get('detail', {}))
                  for c in document['checks']]
    except (KeyError, TypeError, ValueError) as exception:
        raise ParseError('malformed check: {}'.format(exception),
                         max(raw.find('"checks"'), 0), filename)
    return Report(document.get('config', {}), checks,
                  document.get('fingerprint', ''))


def read_report(filename):
    return loads_report(locked_read_bytes(filename), filename)


def write_plot_data(filename, name, x, y):
    """Write two-column TSV data for one figure, headed by a comment naming
    the check it belongs to.

    """
    buffer = io.StringIO()
    buffer.write('# check: {}\n'.format(name))
    buffer.write('x\ty\n')
    for a, b in zip(x, y):
        buffer.write('{}\t{}\n'.format(FLOAT_FORMAT % a, FLOAT_FORMAT % b))
    locked_write_text(filename, buffer.getvalue())
