# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

from fractions import Fraction

from psmear.PsmearException import ParameterException

SIGNIFICANT_DIGITS = 15


def format_number(value) -> str:
    """
    Formats a value for machine-readable output. Floats carry 15 significant digits, so equal inputs always give
    byte-identical text.

    Example:

    >>> format_number(1 / 3)
    '0.333333333333333'
    >>> format_number(7), format_number(True), format_number(-0.)
    ('7', 'true', '0')
    """
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if value == 0.:
        return '0'
    return '{:.{:d}g}'.format(value, SIGNIFICANT_DIGITS)


def parse_number(text: str) -> float:
    """
    Parses a decimal or a simple fraction ``a/b``.

    Example:

    >>> parse_number('1/48') == 1 / 48
    True
    >>> parse_number(' -0.6 ')
    -0.6
    >>> parse_number('1e-3')
    0.001
    """
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ParameterException('Cannot parse number: {:s}'.format(text))
