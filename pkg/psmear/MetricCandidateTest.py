# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from psmear.MetricCandidate import MetricCandidate, MetricBasis, max_norm
from psmear.PsmearException import DimensionException, NumericalException, ParameterException


def test_params_default_to_first_row():
    theta = MetricCandidate([[2., 1.], [1., 3.]])

    assert theta.params.tolist() == [2., 1.]
    assert theta.bandwidth is None
    assert theta.measured_bandwidth() == 1


def test_asymmetric_matrix_is_rejected():
    with pytest.raises(NumericalException):
        MetricCandidate([[1., 0.], [1e-15, 1.]])


def test_declared_bandwidth_is_enforced():
    with pytest.raises(DimensionException):
        MetricCandidate([[1., 0., 1.], [0., 1., 0.], [1., 0., 1.]], bandwidth=1)
    with pytest.raises(ParameterException):
        MetricCandidate(np.eye(3), bandwidth=3)


def test_band_matrix_view():
    theta = MetricCandidate([[1., .1, 0.], [.1, 1., .1], [0., .1, 1.]], bandwidth=1)

    band = theta.to_band_matrix()

    assert (band.lower, band.upper) == (1, 1)


def test_matrix_is_read_only():
    theta = MetricCandidate(np.eye(2))

    with pytest.raises(ValueError):
        theta.matrix[0, 1] = 1.


def test_dieudonne_residual():
    q = np.array([[0., 1.], [2., 0.]])

    assert MetricCandidate(np.diag([1., .5])).dieudonne_residual(q) == 0.
    assert MetricCandidate(np.eye(2)).dieudonne_residual(q) == 1.
    with pytest.raises(DimensionException):
        MetricCandidate(np.eye(2)).dieudonne_residual(np.eye(3))


def test_max_norm():
    assert max_norm(np.array([[1., -1.], [3., 0.]])) == 3.


def test_basis_combination_is_linear():
    basis = MetricBasis([np.eye(2), np.array([[0., 1.], [1., 0.]])])

    theta = basis.combine([1., -0.5])

    assert theta.matrix.tolist() == [[1., -0.5], [-0.5, 1.]]
    assert theta.params.tolist() == [1., -0.5]
    with pytest.raises(DimensionException):
        basis.combine([1.])


def test_dependent_basis_has_vanishing_singular_value():
    independent = MetricBasis([np.eye(2), np.array([[0., 1.], [1., 0.]])])
    dependent = MetricBasis([np.eye(2), 2. * np.eye(2)])

    assert independent.smallest_singular_value() == pytest.approx(1.)
    assert dependent.smallest_singular_value() < 1e-12


def test_singular_value_with_scale():
    basis = MetricBasis([np.diag([1., 1e-12]), np.diag([1., 0.])])

    assert basis.smallest_singular_value() < 1e-10
    assert basis.smallest_singular_value(scale=[1., 1e-6]) > 0.1
