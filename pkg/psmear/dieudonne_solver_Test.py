# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import logging

import numpy as np
import pytest

from psmear import dieudonne_solver
from psmear.PsmearException import DimensionException, ParameterException
from psmear.dieudonne_solver import metric_from_first_row, metric_basis, band_metric_dimension, theta0, theta1, \
    theta2, theta4, dieudonne_residual, nullspace_metrics, metric_from_grid_weights, SolverInconsistencyException
from psmear.hermite_core import build_position_matrix, balancing_scale


def test_unit_first_row_gives_diagonal_metric():
    theta = metric_from_first_row(build_position_matrix(4), [1., 0., 0., 0.])

    assert theta.matrix == pytest.approx(np.diag([1., 1 / 2, 1 / 8, 1 / 48]), abs=1e-16)
    assert theta.bandwidth == 0


def test_generic_first_row_entries():
    k, mu, p, d = 1.3, -0.4, 0.25, 0.7

    theta = metric_from_first_row(build_position_matrix(4), [k, mu, p, d]).matrix

    assert theta[1, 1] == pytest.approx(k / 2 + 2 * p)
    assert theta[1, 2] == pytest.approx(mu / 2 + 3 * d)
    assert theta[3, 3] == pytest.approx(p / 12 + k / 48)


def test_one_by_one():
    theta = metric_from_first_row(build_position_matrix(1), [2.5])

    assert theta.matrix.tolist() == [[2.5]]
    assert len(metric_basis(build_position_matrix(1))) == 1


def test_first_row_of_wrong_length():
    with pytest.raises(DimensionException):
        metric_from_first_row(build_position_matrix(3), [1., 0.])


def test_four_parameter_metric_matches_recurrence_at_random_draws():
    rng = np.random.default_rng(15)
    q = build_position_matrix(4)

    for params in rng.uniform(-2., 2., size=(100, 4)):
        expected = theta4(*params).matrix
        actual = metric_from_first_row(q, params).matrix
        assert np.max(np.abs(actual - expected)) <= 1e-13 * np.max(np.abs(expected))


@pytest.mark.parametrize('n', [2, 3, 5, 8, 12, 16, 24, 32])
def test_recurrence_residual(n):
    rng = np.random.default_rng(n)
    q = build_position_matrix(n)

    theta = metric_from_first_row(q, rng.uniform(-1., 1., size=n))

    assert theta.dieudonne_residual(q.array) < 1e-10 * theta.norm()
    assert dieudonne_residual(q, theta) < 1e-10


@pytest.mark.parametrize('n', range(2, 17))
def test_basis_dimension_matches_nullspace(n):
    q = build_position_matrix(n)

    basis = metric_basis(q)

    assert len(basis) == n
    assert len(nullspace_metrics(q)) == n
    for element in basis:
        residual = np.max(np.sum(np.abs(q.array.T @ element - element @ q.array), axis=1))
        assert residual < 1e-10 * np.max(np.sum(np.abs(element), axis=1))
    assert basis.smallest_singular_value(scale=balancing_scale(q.storage)) > 1e-8


@pytest.mark.parametrize('n', [2, 4, 6, 10])
def test_spans_agree_without_warning(n, caplog):
    with caplog.at_level(logging.WARNING, logger='psmear.dieudonne_solver'):
        metric_basis(build_position_matrix(n))

    assert not [record for record in caplog.records if record.levelno >= logging.WARNING]


def test_count_mismatch_is_a_hard_failure(monkeypatch):
    monkeypatch.setattr(dieudonne_solver, 'nullspace_metrics', lambda q, bandwidth=None: [])

    with pytest.raises(SolverInconsistencyException):
        metric_basis(build_position_matrix(3))


def test_basis_without_verification():
    basis = metric_basis(build_position_matrix(5), verify=False)

    assert basis[0] == pytest.approx(theta0(5).matrix)


def test_basis_element_k_is_diagonal_metric():
    basis = metric_basis(build_position_matrix(4))

    assert basis[0] == pytest.approx(np.diag([1., 1 / 2, 1 / 8, 1 / 48]))


@pytest.mark.parametrize('n', range(1, 17))
def test_band_dimension_is_bandwidth_plus_one(n):
    q = build_position_matrix(n)

    assert [band_metric_dimension(q, alpha) for alpha in range(n)] == list(range(1, n + 1))


def test_band_dimension_for_dimension_four():
    q = build_position_matrix(4)

    assert band_metric_dimension(q, 0) == 1
    assert band_metric_dimension(q, 1) == 2
    assert band_metric_dimension(q, 2) == 3


@pytest.mark.parametrize('alpha', [-1, 4])
def test_band_dimension_rejects_bandwidth_out_of_range(alpha):
    with pytest.raises(ParameterException):
        band_metric_dimension(build_position_matrix(4), alpha)


def test_banded_nullspace_metrics_respect_band():
    for element in nullspace_metrics(build_position_matrix(6), 2):
        assert np.all(np.triu(element, 3) == 0.)


def test_linearity():
    rng = np.random.default_rng(3)
    q = build_position_matrix(9)
    r, s = rng.normal(size=9), rng.normal(size=9)

    combined = metric_from_first_row(q, 2. * r - 0.5 * s).matrix
    separate = 2. * metric_from_first_row(q, r).matrix - 0.5 * metric_from_first_row(q, s).matrix

    assert np.max(np.abs(combined - separate)) <= 1e-12 * np.max(np.abs(separate))


def test_theta1():
    assert theta1(0.).matrix == pytest.approx(np.diag([1., 1 / 2, 1 / 8, 1 / 48]))
    assert theta1(0.1).matrix[0, 1] == 0.1
    assert theta1(0.1).matrix[2, 3] == pytest.approx(0.0125)
    assert theta1(0.1).bandwidth == 1


@pytest.mark.parametrize('mu', [-0.7, 0., 0.1, 0.3029])
def test_theta1_is_a_first_row_metric(mu):
    expected = metric_from_first_row(build_position_matrix(4), [1., mu, 0., 0.]).matrix

    assert theta1(mu).matrix == pytest.approx(expected, abs=1e-15)


def test_theta2():
    theta = theta2(0.2, 0.5)

    assert theta.matrix[0, 2] == 0.5
    assert theta.matrix[2, 2] == pytest.approx(0.625)
    assert theta.matrix[1, 1] == pytest.approx(1.5)
    assert theta.matrix[3, 3] == pytest.approx(0.5 / 12 + 1 / 48)
    assert theta2(0., 0.).matrix == pytest.approx(np.diag([1., 1 / 2, 1 / 8, 1 / 48]))


@pytest.mark.parametrize('mu, p', [(0.2, 0.5), (-1.1, 0.3), (0.05, -0.1)])
def test_theta2_is_a_first_row_metric(mu, p):
    expected = metric_from_first_row(build_position_matrix(4), [1., mu, p, 0.]).matrix

    assert theta2(mu, p).matrix == pytest.approx(expected, abs=1e-15)


def test_theta0_has_factorial_diagonal():
    assert theta0(6).matrix.diagonal() == pytest.approx([1., 1 / 2, 1 / 8, 1 / 48, 1 / 384, 1 / 3840])


@pytest.mark.parametrize('n', [2, 5, 9, 16])
def test_grid_weight_metrics_are_compatible_and_positive(n):
    rng = np.random.default_rng(100 + n)
    q = build_position_matrix(n)

    theta = metric_from_grid_weights(q, rng.uniform(0.5, 2., size=n))

    assert dieudonne_residual(q, theta) < 1e-10
    scale = 1. / np.sqrt(theta.matrix.diagonal())
    assert np.linalg.eigvalsh(scale[:, None] * theta.matrix * scale[None, :])[0] > 0.


def test_grid_weight_metric_with_negative_weight_is_indefinite():
    weights = np.ones(4)
    weights[2] = -1.

    theta = metric_from_grid_weights(build_position_matrix(4), weights)

    assert np.linalg.eigvalsh(theta.matrix)[0] < 0.
