# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Symmetric solutions Θ of the compatibility equation QᵀΘ = ΘQ for a tridiagonal position matrix Q.

The fast path fills Θ row by row from its first row. The oracle path extracts the nullspace of the linear map
Θ ↦ QᵀΘ − ΘQ. It works in balanced coordinates Θ = D M D, where D Q D⁻¹ is symmetric, because the entries of Θ
span many orders of magnitude already for moderate N.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from psmear.MetricCandidate import MetricCandidate, MetricBasis
from psmear.PsmearException import DimensionException, NumericalException, ParameterException
from psmear.hermite_core import PositionMatrix, build_position_matrix, balancing_scale

logger = logging.getLogger(__name__)

NULLSPACE_RCOND = 1e-10
"""
Singular values below NULLSPACE_RCOND times the largest one count as zero in the nullspace oracle.
"""

SPAN_TOLERANCE = 1e-8


class SolverInconsistencyException(NumericalException):
    """
    Indicates that the row recurrence and the nullspace oracle disagree on the number of compatible metrics.
    """


def _last_nonzero(row: np.ndarray) -> int:
    nonzero = np.nonzero(row)[0]
    return int(nonzero[-1]) if nonzero.size else 0


def metric_from_first_row(q: PositionMatrix, first_row: Sequence[float]) -> MetricCandidate:
    """
    Fills rows 2..N of Θ from its first row such that QᵀΘ = ΘQ.

    Only the upper triangle is computed, the lower one is its mirror image. Equation (i, j) of the
    compatibility condition determines Θ[i+1, j] because the subdiagonal of Q has no zeros.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> from psmear.dieudonne_solver import metric_from_first_row
    >>> theta = metric_from_first_row(build_position_matrix(4), [1., 0., 0., 0.])
    >>> print(theta.matrix.diagonal() ** -1)
    [ 1.  2.  8. 48.]

    :param q: Tridiagonal position matrix with nonzero subdiagonal.
    :param first_row: The N free parameters.
    :return: The :py:class:`~psmear.MetricCandidate.MetricCandidate` with the first row as parameters.
    """
    n = q.n
    first_row = np.asarray(first_row, dtype=float)
    if first_row.shape != (n,):
        raise DimensionException('Expected a first row of {:d} entries, got shape {:s}.'.format(
            n, str(first_row.shape)
        ))
    a = q.storage.diagonal()
    c = q.superdiagonal()
    b = q.subdiagonal()
    if np.any(b == 0.):
        raise ParameterException('The row recurrence needs a subdiagonal without zeros.')

    theta = np.zeros((n, n))
    theta[0] = first_row

    def entry(i, j):
        if i < 0 or j < 0 or i >= n or j >= n:
            return 0.
        return theta[min(i, j), max(i, j)]

    for i in range(n - 1):
        for j in range(i + 1, n):
            value = (a[j] - a[i]) * entry(i, j)
            if j >= 1:
                value += c[j - 1] * entry(i, j - 1)
            if j + 1 < n:
                value += b[j] * entry(i, j + 1)
            if i >= 1:
                value -= c[i - 1] * entry(i - 1, j)
            theta[i + 1, j] = value / b[i]

    upper = np.triu(theta)
    matrix = upper + np.triu(upper, 1).T
    return MetricCandidate(matrix, first_row, _last_nonzero(first_row))


def dieudonne_residual(q: PositionMatrix, theta: MetricCandidate) -> float:
    """
    Relative residual ‖QᵀΘ − ΘQ‖∞ / ‖Θ‖∞, zero for the zero matrix.

    Example:

    >>> import numpy as np
    >>> from psmear.MetricCandidate import MetricCandidate
    >>> from psmear.hermite_core import build_position_matrix
    >>> dieudonne_residual(build_position_matrix(4), MetricCandidate(np.eye(4)))
    8.0
    """
    norm = theta.norm()
    if norm == 0.:
        return 0.
    return theta.dieudonne_residual(q.array) / norm


def _symmetric_unknowns(n: int, bandwidth: Optional[int]):
    width = n - 1 if bandwidth is None else bandwidth
    return [(i, j) for i in range(n) for j in range(i, min(n, i + width + 1))]


def nullspace_metrics(q: PositionMatrix, bandwidth: Optional[int] = None) -> List[np.ndarray]:
    """
    All symmetric solutions of QᵀΘ = ΘQ with at most the given bandwidth, extracted as the nullspace of the
    vectorized linear map.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> len(nullspace_metrics(build_position_matrix(4), 1))
    2

    :param q: Tridiagonal position matrix.
    :param bandwidth: None for full metrics.
    :return: Basis of the solution space as symmetric matrices.
    """
    n = q.n
    d = balancing_scale(q.storage)
    balanced = d[:, None] * q.array / d[None, :]
    unknowns = _symmetric_unknowns(n, bandwidth)

    columns = []
    for i, j in unknowns:
        element = np.zeros((n, n))
        element[i, j] = 1.
        element[j, i] = 1.
        columns.append((balanced.T @ element - element @ balanced).ravel())
    operator = np.array(columns).T

    vectors = scipy.linalg.null_space(operator, rcond=NULLSPACE_RCOND)
    logger.debug('Nullspace of the %dx%d compatibility operator (bandwidth %s) has dimension %d.',
                 operator.shape[0], operator.shape[1], bandwidth, vectors.shape[1])

    metrics = []
    for vector in vectors.T:
        m = np.zeros((n, n))
        for value, (i, j) in zip(vector, unknowns):
            m[i, j] = value
            m[j, i] = value
        metrics.append(d[:, None] * m * d[None, :])
    return metrics


def _span_deviation(recurrence: List[np.ndarray], oracle: List[np.ndarray], d: np.ndarray) -> float:
    def balanced_vector(theta):
        v = (theta / d[:, None] / d[None, :]).ravel()
        return v / np.linalg.norm(v)

    span = scipy.linalg.orth(np.array([balanced_vector(m) for m in oracle]).T)
    deviation = 0.
    for theta in recurrence:
        v = balanced_vector(theta)
        deviation = max(deviation, float(np.linalg.norm(v - span @ (span.T @ v))))
    return deviation


def metric_basis(q: PositionMatrix, verify: bool = True) -> MetricBasis:
    """
    The N metrics B_i obtained from unit first rows, so that Θ(params) = Σ params[i] B_i.

    With ``verify`` the count is compared against the nullspace oracle and a mismatch raises
    :py:class:`~psmear.dieudonne_solver.SolverInconsistencyException`. A deviation of the spans is logged as a
    warning.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> basis = metric_basis(build_position_matrix(6))
    >>> len(basis)
    6
    """
    n = q.n
    elements = [metric_from_first_row(q, row).matrix for row in np.eye(n)]
    if verify:
        oracle = nullspace_metrics(q)
        if len(oracle) != n:
            raise SolverInconsistencyException(
                'Row recurrence yields {:d} metrics, nullspace oracle {:d}.'.format(n, len(oracle))
            )
        deviation = _span_deviation(elements, oracle, balancing_scale(q.storage))
        if deviation > SPAN_TOLERANCE:
            logger.warning('Recurrence and nullspace spans deviate by %.3g for N=%d.', deviation, n)
        else:
            logger.debug('Recurrence and nullspace spans agree to %.3g for N=%d.', deviation, n)
    return MetricBasis(elements)


def band_metric_dimension(q: PositionMatrix, bandwidth: int) -> int:
    """
    Dimension of the space of compatible metrics with bandwidth at most ``bandwidth``.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> [band_metric_dimension(build_position_matrix(4), alpha) for alpha in range(4)]
    [1, 2, 3, 4]
    """
    if not 0 <= bandwidth <= q.n - 1:
        raise ParameterException('Bandwidth must be between 0 and {:d}, got {:d}.'.format(q.n - 1, bandwidth))
    return len(nullspace_metrics(q, bandwidth))


def theta0(n: int) -> MetricCandidate:
    """
    The diagonal metric with entries 1 / (2^i i!).

    Example:

    >>> print(theta0(4).matrix.diagonal() * 48)
    [48. 24.  6.  1.]
    """
    q = build_position_matrix(n)
    return metric_from_first_row(q, np.eye(n)[0])


def theta4(k: float, mu: float, p: float, d: float) -> MetricCandidate:
    """
    The complete four-parametric metric compatible with the position matrix of dimension 4, written out entry by
    entry.

    Example:

    >>> theta4(1., 0., 0., 0.).matrix.diagonal().tolist() == [1., 1 / 2, 1 / 8, 1 / 48]
    True
    """
    matrix = [
        [k, mu, p, d],
        [mu, k / 2 + 2 * p, mu / 2 + 3 * d, p / 2],
        [p, mu / 2 + 3 * d, p + k / 8, d / 2 + mu / 8],
        [d, p / 2, d / 2 + mu / 8, p / 12 + k / 48],
    ]
    return MetricCandidate(matrix, [k, mu, p, d], _last_nonzero(np.array([k, mu, p, d], dtype=float)))


def theta1(mu: float) -> MetricCandidate:
    """
    The tridiagonal metric of dimension 4 with k = 1 and p = d = 0.

    Example:

    >>> float(theta1(0.1).matrix[2, 3])
    0.0125
    """
    matrix = [
        [1., mu, 0., 0.],
        [mu, 1 / 2, mu / 2, 0.],
        [0., mu / 2, 1 / 8, mu / 8],
        [0., 0., mu / 8, 1 / 48],
    ]
    return MetricCandidate(matrix, [1., mu, 0., 0.], 1)


def theta2(mu: float, p: float) -> MetricCandidate:
    """
    The pentadiagonal metric of dimension 4 with k = 1 and d = 0.

    Example:

    >>> float(theta2(0.2, 0.5).matrix[2, 2])
    0.625
    """
    matrix = [
        [1., mu, p, 0.],
        [mu, 1 / 2 + 2 * p, mu / 2, p / 2],
        [p, mu / 2, p + 1 / 8, mu / 8],
        [0., p / 2, mu / 8, p / 12 + 1 / 48],
    ]
    return MetricCandidate(matrix, [1., mu, p, 0.], 2)


def metric_from_grid_weights(q: PositionMatrix, weights: Sequence[float]) -> MetricCandidate:
    """
    The compatible metric whose balanced form D⁻¹ΘD⁻¹ has eigenvalue weights[j] on the eigenvector of the j-th
    grid point. The metric is positive definite exactly when all weights are positive, which makes this the
    way to draw random metrics from inside the positivity domain.

    Example:

    >>> import numpy as np
    >>> from psmear.hermite_core import build_position_matrix
    >>> theta = metric_from_grid_weights(build_position_matrix(3), [1., 1., 1.])
    >>> bool(np.allclose(theta.matrix, np.diag([1., 1 / 2, 1 / 8])))
    True
    """
    n = q.n
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (n,):
        raise DimensionException('Expected {:d} weights, got shape {:s}.'.format(n, str(weights.shape)))
    d = balancing_scale(q.storage)
    balanced = d[:, None] * q.array / d[None, :]
    balanced = 0.5 * (balanced + balanced.T)
    if n == 1:
        vectors = np.ones((1, 1))
    else:
        _, vectors = scipy.linalg.eigh_tridiagonal(np.diagonal(balanced), np.diagonal(balanced, 1))
    m = (vectors * weights[None, :]) @ vectors.T
    first_row = d[0] * m[0] * d
    return metric_from_first_row(q, first_row)
