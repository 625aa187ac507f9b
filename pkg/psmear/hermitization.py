# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Dyson maps Ω with Θ = ΩᵀΩ and the Hermitized position matrix q = Ω Q Ω⁻¹.

Exact factorizations are upper triangular, so Ωᵀ is the lower factor of a banded Cholesky decomposition. The
perturbative map of the tridiagonal metric of dimension 4 is lower triangular; both are valid since the
factorization of Θ is not unique.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from psmear.BandMatrix import BandMatrix
from psmear.DysonMap import DysonMap, DysonSource, SingularMapException
from psmear.MetricCandidate import MetricCandidate, max_norm
from psmear.PsmearException import DimensionException, NumericalException, ParameterException
from psmear.hermite_core import PositionMatrix, PositionFlavor, build_position_matrix, balancing_scale

logger = logging.getLogger(__name__)

PIVOT_THRESHOLD = 1e-13
"""
A Cholesky pivot counts as non-positive below PIVOT_THRESHOLD times the corresponding diagonal entry of Θ.
"""

PERTURBATIVE_ORDER = 4
PERTURBATIVE_INVERSE_ORDER = 2


class NotPositiveDefiniteException(NumericalException):
    """
    Indicates that a metric candidate cannot be factorized because it is not positive definite.
    The index of the failing pivot is available as ``pivot``.
    """

    def __init__(self, message: str, pivot: int) -> None:
        super().__init__(message)
        self.pivot = pivot


def omega0(n: int, c: float = 1.) -> DysonMap:
    """
    Diagonal map with entries c / sqrt((2k)!!) = c / sqrt(2^k k!).

    Example:

    >>> print(omega0(4).metric().matrix.diagonal() ** -1)
    [ 1.  2.  8. 48.]
    """
    if c == 0:
        raise ParameterException('The normalization of the diagonal map must not vanish.')
    d = c * balancing_scale(build_position_matrix(n).storage)
    return DysonMap(np.diag(d), np.diag(1. / d), DysonSource.DIAGONAL_OMEGA0)


def cholesky_factor(theta: MetricCandidate) -> DysonMap:
    """
    Upper triangular Ω with ΩᵀΩ = Θ that keeps the band of Θ.

    Only entries within the bandwidth α of Θ are visited, Ω has the diagonal and α superdiagonals.

    Example:

    >>> from psmear.dieudonne_solver import theta1
    >>> omega = cholesky_factor(theta1(0.2))
    >>> omega.omega[0].tolist()
    [1.0, 0.2, 0.0, 0.0]

    :param theta: Positive definite metric.
    :return: The :py:class:`~psmear.DysonMap.DysonMap` of source ``cholesky``.
    :raises NotPositiveDefiniteException: Names the index of the first non-positive pivot.
    """
    matrix = theta.matrix
    n = theta.n
    width = theta.measured_bandwidth() if theta.bandwidth is None else theta.bandwidth
    omega = np.zeros((n, n))

    for k in range(n):
        first = max(0, k - width)
        pivot = matrix[k, k] - np.dot(omega[first:k, k], omega[first:k, k])
        if not matrix[k, k] > 0 or pivot <= PIVOT_THRESHOLD * matrix[k, k]:
            raise NotPositiveDefiniteException(
                'Metric is not positive definite, pivot {:d} is {:.6g}.'.format(k, float(pivot)), k
            )
        omega[k, k] = math.sqrt(pivot)
        for j in range(k + 1, min(n, k + width + 1)):
            first = max(0, j - width)
            omega[k, j] = (matrix[k, j] - np.dot(omega[first:k, k], omega[first:k, j])) / omega[k, k]

    logger.debug('Factorized metric of dimension %d and bandwidth %d.', n, width)
    inverse = scipy.linalg.solve_triangular(omega, np.eye(n), lower=False)
    return DysonMap(omega, inverse, DysonSource.CHOLESKY)


def perturbative_omega(mu: float) -> DysonMap:
    """
    Small-μ factorization of the tridiagonal metric of dimension 4, exact up to corrections of order μ⁴. The
    inverse is only correct up to order μ².

    Example:

    >>> omega = perturbative_omega(0.)
    >>> bool(np.allclose(omega.omega.diagonal(), [1., math.sqrt(2) / 2, math.sqrt(2) / 4, math.sqrt(3) / 12]))
    True
    """
    s2 = math.sqrt(2.)
    s3 = math.sqrt(3.)
    mu2 = mu * mu
    omega = [
        [1. - mu2, 0., 0., 0.],
        [mu * s2 * (1. + 2. * mu2), s2 / 2. * (1. - 2. * mu2), 0., 0.],
        [0., mu * s2 * (1. + 3. * mu2), s2 / 4. * (1. - 3. * mu2), 0.],
        [0., 0., mu * s3 / 2., s3 / 12.],
    ]
    inverse = [
        [1. + mu2, 0., 0., 0.],
        [-2. * mu * (1. + mu2), s2 * (1. + 2. * mu2), 0., 0.],
        [0., -4. * mu * s2 * (1. + 2. * mu2), 2. * s2 * (1. + 3. * mu2), 0.],
        [0., 0., -12. * mu * s2 * (1. + 3. * mu2), 4. * s3],
    ]
    return DysonMap(omega, inverse, DysonSource.PERTURBATIVE, PERTURBATIVE_ORDER, PERTURBATIVE_INVERSE_ORDER, mu)


@dataclass(frozen=True)
class HermitizedPosition:
    matrix: np.ndarray
    asymmetry: float

    def eigenvalues(self) -> np.ndarray:
        """
        Spectrum of the symmetric part, sorted ascending. It differs from the spectrum of ``matrix`` by at most
        the asymmetry.
        """
        return scipy.linalg.eigh(0.5 * (self.matrix + self.matrix.T), eigvals_only=True)


def hermitized_position(q: PositionMatrix, dyson_map: DysonMap) -> HermitizedPosition:
    """
    q = Ω Q Ω⁻¹ and its asymmetry ‖q − qᵀ‖∞, which vanishes when ΩᵀΩ is compatible with Q.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> result = hermitized_position(build_position_matrix(3), omega0(3))
    >>> print(result.matrix ** 2)
    [[0. 2. 0.]
     [2. 0. 4.]
     [0. 4. 0.]]
    """
    if dyson_map.n != q.n:
        raise DimensionException('Map of dimension {:d} cannot conjugate a position matrix of dimension {:d}.'.format(
            dyson_map.n, q.n
        ))
    matrix = dyson_map.conjugate(q.array)
    if not np.all(np.isfinite(matrix)):
        raise SingularMapException('Conjugation with the Dyson map produced non-finite entries.')
    return HermitizedPosition(matrix, max_norm(matrix - matrix.T))


def approx_q1(mu: float) -> PositionMatrix:
    """
    First-order small-μ approximation of the Hermitized position matrix of dimension 4 under the tridiagonal
    metric.

    Example:

    >>> approx_q1(0.1).storage.diagonal().tolist()
    [-0.2, -0.2, -0.2, 0.6000000000000001]
    """
    off_diagonal = [math.sqrt(2.), 2., math.sqrt(2.) * math.sqrt(3.)]
    diagonal = [-2. * mu, -2. * mu, -2. * mu, 6. * mu]
    return PositionMatrix(BandMatrix.tridiagonal(off_diagonal, diagonal, off_diagonal), PositionFlavor.SYMMETRIZED)
