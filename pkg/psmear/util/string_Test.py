# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import math

import numpy as np
import pytest

from psmear.PsmearException import ParameterException
from psmear.util.string import format_number, parse_number


def test_format_number_is_stable():
    assert format_number(math.pi) == '3.14159265358979'
    assert format_number(np.float64(0.30290544652768)) == '0.30290544652768'
    assert format_number(1e-20) == '1e-20'
    assert format_number(-math.inf) == '-inf'


def test_format_number_round_trips_to_fifteen_digits():
    value = 1 / 768

    assert float(format_number(value)) == pytest.approx(value, rel=1e-14)


def test_parse_number():
    assert parse_number('3/4') == 0.75
    assert parse_number('-1/48') == -1 / 48
    assert parse_number('0') == 0.


@pytest.mark.parametrize('text', ['', 'abc', '1/0', 'nan', 'inf', '1/2/3'])
def test_parse_number_rejects(text):
    with pytest.raises(ParameterException):
        parse_number(text)
