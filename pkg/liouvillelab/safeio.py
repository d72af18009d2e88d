# safeio.py - artifact file functions with concurrency locks
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import logging
import os.path
import shutil

from lockfile import FileLock
from tempfile import NamedTemporaryFile

from .constants import DEFAULT_TIMEOUT


def locked_read_bytes(filename):
    """Read the raw contents of an artifact file with a lock."""
    with FileLock(filename, timeout=DEFAULT_TIMEOUT):
        with open(filename, 'rb') as f:
            return f.read()


def locked_write_text(filename, text):
    """Store `text` in `filename` without creating corruption.

    The text is written to a temporary file in the target directory first and
    moved onto `filename` second, so readers never observe a partial file.

    """
    directory = os.path.dirname(os.path.abspath(filename))
    with FileLock(filename, timeout=DEFAULT_TIMEOUT):
        with NamedTemporaryFile('w', encoding='utf-8', newline='',
                                dir=directory, delete=False) as fp:
            fp.write(text)
        shutil.move(fp.name, filename)
    logging.debug('Wrote %d characters to %s', len(text), filename)
