# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

from typing import List, Optional, Sequence

import numpy as np

from psmear.BandMatrix import BandMatrix, measured_bandwidths
from psmear.PsmearException import DimensionException, NumericalException, ParameterException


def max_norm(array: np.ndarray) -> float:
    """
    Maximum absolute row sum.

    Example:

    >>> import numpy as np
    >>> max_norm(np.array([[1., -2.], [0.5, 0.5]]))
    3.0
    """
    array = np.atleast_2d(array)
    return float(np.max(np.sum(np.abs(array), axis=1)))


class MetricCandidate:
    """
    A symmetric real matrix Θ together with the first-row parameters that generated it.

    A candidate is only a metric if it is positive definite, see :py:mod:`psmear.positivity`.
    The bandwidth is None for a full metric.

    Example:

    >>> from psmear.MetricCandidate import MetricCandidate
    >>> theta = MetricCandidate([[1., .2], [.2, .5]], params=[1., .2], bandwidth=1)
    >>> theta.n, theta.bandwidth
    (2, 1)
    >>> theta.params.tolist()
    [1.0, 0.2]
    """

    def __init__(self, matrix, params: Optional[Sequence[float]] = None, bandwidth: Optional[int] = None) -> None:
        super().__init__()
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise DimensionException('A metric must be a nonempty square matrix, got shape {:s}.'.format(
                str(matrix.shape)
            ))
        if not np.array_equal(matrix, matrix.T):
            raise NumericalException('A metric candidate must be exactly symmetric.')
        if bandwidth is not None:
            if not 0 <= bandwidth < matrix.shape[0]:
                raise ParameterException('Bandwidth {:d} out of range for dimension {:d}.'.format(
                    bandwidth, matrix.shape[0]
                ))
            if measured_bandwidths(matrix)[1] > bandwidth:
                raise DimensionException('Metric has entries outside of the declared bandwidth {:d}.'.format(bandwidth))

        matrix.flags.writeable = False
        self._matrix = matrix
        self._params = np.array(matrix[0] if params is None else params, dtype=float)
        self._params.flags.writeable = False
        self._bandwidth = bandwidth

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def params(self) -> np.ndarray:
        return self._params

    @property
    def bandwidth(self) -> Optional[int]:
        return self._bandwidth

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    def measured_bandwidth(self) -> int:
        return measured_bandwidths(self._matrix)[1]

    def to_band_matrix(self) -> BandMatrix:
        width = self.measured_bandwidth() if self._bandwidth is None else self._bandwidth
        return BandMatrix(self._matrix, width, width)

    def norm(self) -> float:
        return max_norm(self._matrix)

    def dieudonne_residual(self, q) -> float:
        """
        Absolute residual ‖QᵀΘ − ΘQ‖∞ of the compatibility equation with an observable Q.

        :param q: Square array of the same dimension.
        :return: The maximum row sum norm of the residual.
        """
        q = np.asarray(q, dtype=float)
        if q.shape != self._matrix.shape:
            raise DimensionException('Observable of shape {:s} does not match metric of dimension {:d}.'.format(
                str(q.shape), self.n
            ))
        return max_norm(q.T @ self._matrix - self._matrix @ q)

    def __repr__(self):
        return 'MetricCandidate(n={:d}, bandwidth={:s}, params={:s})'.format(
            self.n, 'full' if self._bandwidth is None else str(self._bandwidth), str(self._params.tolist())
        )


class MetricBasis:
    """
    N symmetric matrices B_0, ..., B_{N-1} spanning the compatible metrics: Θ(params) = Σ params[i] B_i.

    Example:

    >>> import numpy as np
    >>> from psmear.MetricCandidate import MetricBasis
    >>> basis = MetricBasis([np.eye(2), np.array([[0., 1.], [1., 0.]])])
    >>> basis.combine([2., 3.]).matrix.tolist()
    [[2.0, 3.0], [3.0, 2.0]]
    """

    def __init__(self, basis: List[np.ndarray]) -> None:
        super().__init__()
        if len(basis) == 0:
            raise ParameterException('A metric basis needs at least one element.')
        elements = [np.array(b, dtype=float) for b in basis]
        n = elements[0].shape[0]
        for element in elements:
            if element.shape != (n, n):
                raise DimensionException('Basis elements must all be {:d}x{:d}.'.format(n, n))
            element.flags.writeable = False
        self.dimension = n
        self.basis = elements

    def __len__(self):
        return len(self.basis)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.basis[index]

    def combine(self, params: Sequence[float]) -> MetricCandidate:
        if len(params) != len(self.basis):
            raise DimensionException('Expected {:d} parameters, got {:d}.'.format(len(self.basis), len(params)))
        matrix = np.zeros((self.dimension, self.dimension))
        for weight, element in zip(params, self.basis):
            matrix += weight * element
        return MetricCandidate(matrix, params)

    def smallest_singular_value(self, scale: Optional[np.ndarray] = None) -> float:
        """
        Smallest singular value of the stack of vectorized basis elements, each scaled to unit Frobenius norm.
        Values clearly above zero certify linear independence.

        :param scale: Optional diagonal d. The elements are compared as diag(d)^-1 B diag(d)^-1, which removes the
           dynamic range the metrics inherit from the position matrix.
        :return: The smallest singular value.
        """
        elements = self.basis
        if scale is not None:
            inverse = 1. / np.asarray(scale, dtype=float)
            elements = [inverse[:, None] * element * inverse[None, :] for element in elements]
        stack = np.array([element.ravel() / np.linalg.norm(element) for element in elements])
        return float(np.linalg.svd(stack, compute_uv=False)[-1])
