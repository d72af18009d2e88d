# storage.py - measure files
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
"""Reading and writing measure files.

A measure file is a JSON object::

    {"kind": "gmc", "window": [-4, 4], "meta": {...},
     "atoms": [[position, mass], ...]}

with positions ascending.  Floating point numbers in ``window`` and ``atoms``
are written with 17 significant digits, so a measure read back from a file is
bit-for-bit identical to the one that was written.

"""
import json
import logging

from ..constants import FLOAT_FORMAT
from ..errors import DegenerateInput
from ..errors import InvalidArgument
from ..errors import ParseError
from ..safeio import locked_read_bytes
from ..safeio import locked_write_text
from .base import AtomicMeasure


def _number(x):
    return FLOAT_FORMAT % x


def dumps_measure(measure):
    """Return the canonical JSON text of `measure`."""
    L = measure.half_length
    atoms = ',\n  '.join('[{},{}]'.format(_number(x), _number(m))
                         for x, m in zip(measure.positions, measure.masses))
    return ('{{"kind": {kind}, "window": [{lo}, {hi}],\n'
            ' "meta": {meta},\n'
            ' "atoms": [\n  {atoms}]}}\n').format(
                kind=json.dumps(measure.kind), lo=_number(-L), hi=_number(L),
                meta=json.dumps(measure.meta, sort_keys=True), atoms=atoms)


def _offset_of(raw, token):
    index = raw.find(token.encode('utf-8'))
    return max(index, 0)


def loads_measure(raw, filename=None):
    """Parse measure file contents (`raw` is ``bytes`` or ``str``)."""
    if isinstance(raw, str):
        raw = raw.encode('utf-8')
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as exception:
        raise ParseError('not UTF-8 text', exception.start, filename)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exception:
        offset = len(text[:exception.pos].encode('utf-8'))
        raise ParseError(exception.msg, offset, filename)
    if not isinstance(document, dict):
        raise ParseError('top level value must be an object', 0, filename)
    for key in ('window', 'atoms'):
        if key not in document:
            raise ParseError('missing key {!r}'.format(key), len(raw),
                             filename)
    try:
        lo, hi = (float(v) for v in document['window'])
        positions = [float(atom[0]) for atom in document['atoms']]
        masses = [float(atom[1]) for atom in document['atoms']]
    except (TypeError, ValueError, IndexError):
        raise ParseError('window and atoms must hold numbers',
                         _offset_of(raw, '"atoms"'), filename)
    if lo != -hi:
        raise ParseError('window must be symmetric', _offset_of(raw,
                                                                '"window"'),
                         filename)
    meta = document.get('meta', {})
    if not isinstance(meta, dict):
        raise ParseError('meta must be an object', _offset_of(raw, '"meta"'),
                         filename)
    meta.setdefault('kind', document.get('kind', 'manual'))
    try:
        return AtomicMeasure(positions, masses, hi, meta)
    except (InvalidArgument, DegenerateInput) as exception:
        raise ParseError(str(exception), _offset_of(raw, '"atoms"'), filename)


def write_measure(filename, measure):
    """Write `measure` to `filename` atomically."""
    logging.debug('Storing %d-atom measure to %s', len(measure), filename)
    locked_write_text(filename, dumps_measure(measure))


def read_measure(filename):
    """Load the measure stored in `filename`."""
    logging.debug('Loading measure from %s', filename)
    return loads_measure(locked_read_bytes(filename), filename)
