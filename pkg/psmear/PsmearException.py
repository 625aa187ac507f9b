# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT


class PsmearException(Exception):
    """
    Every error raised by psmear is mapped onto :py:class:`~psmear.PsmearException.PsmearException`
    or a subtype so that you can easily handle errors of the library.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> try:
    ...     build_position_matrix(0)
    ... except PsmearException as e:
    ...     print(e)
    Dimension must be positive, got 0.
    """


class ParameterException(PsmearException):
    """
    Indicates that an argument has an invalid value, e.g. a non-positive step or dimension.
    """


class DimensionException(PsmearException):
    """
    Indicates that shapes of matrices or vectors do not match or that an index is out of range.
    """


class NumericalException(PsmearException):
    """
    Indicates that a numerical procedure failed or produced a result that cannot be trusted.
    """
