# errors.py - exceptions raised by liouvillelab
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.


class InvalidArgument(ValueError):
    """Raised when an argument violates the precondition of an operation."""


class DegenerateInput(ValueError):
    """Raised when the input is well formed but carries nothing to compute
    with: no mass in a fit range, too few atoms, an anchor never visited.

    """


class NumericDegeneracy(ArithmeticError):
    """Raised when a factorization or an eigensolve fails even after the
    configured fallbacks.

    """


class ParseError(ValueError):
    """Raised when an artifact file cannot be parsed.

    `offset` is the byte offset into the file at which the problem was
    detected.

    """

    def __init__(self, message, offset=0, filename=None):
        self.offset = offset
        self.filename = filename
        where = filename or '<string>'
        super().__init__('{}: byte offset {}: {}'.format(where, offset,
                                                         message))
