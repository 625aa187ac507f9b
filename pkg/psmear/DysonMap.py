# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg

from psmear.MetricCandidate import MetricCandidate, max_norm
from psmear.PsmearException import DimensionException, NumericalException


class SingularMapException(NumericalException):
    """
    Indicates that a Dyson map cannot be inverted.
    """


class DysonSource(Enum):
    DIAGONAL_OMEGA0 = 'diagonal_omega0'
    CHOLESKY = 'cholesky'
    PERTURBATIVE = 'perturbative'


def _triangle(array: np.ndarray) -> Optional[bool]:
    """
    True for lower triangular, False for upper triangular (diagonal counts as upper), None otherwise.
    """
    if np.array_equal(array, np.triu(array)):
        return False
    if np.array_equal(array, np.tril(array)):
        return True
    return None


class DysonMap:
    """
    Invertible map Ω with metric Θ = ΩᵀΩ. Observables are carried into the physical space by A ↦ Ω A Ω⁻¹ and
    back by h ↦ Ω⁻¹ h Ω.

    Exact maps come with an inverse that is obtained by triangular back substitution. Perturbative maps carry
    their inverse along and the orders in μ up to which Ω and Ω⁻¹ are correct.

    Example:

    >>> import numpy as np
    >>> from psmear.DysonMap import DysonMap, DysonSource
    >>> omega = DysonMap(np.diag([1., .5]), source=DysonSource.DIAGONAL_OMEGA0)
    >>> print(omega.inverse)
    [[1. 0.]
     [0. 2.]]
    >>> print(omega.metric().matrix)
    [[1.   0.  ]
     [0.   0.25]]
    """

    def __init__(self, omega, inverse=None, source: DysonSource = DysonSource.CHOLESKY, order: Optional[int] = None,
                 inverse_order: Optional[int] = None, mu: Optional[float] = None) -> None:
        super().__init__()
        omega = np.array(omega, dtype=float)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1] or omega.shape[0] == 0:
            raise DimensionException('A Dyson map must be a nonempty square matrix, got shape {:s}.'.format(
                str(omega.shape)
            ))
        if inverse is None:
            inverse = self._invert(omega)
        else:
            inverse = np.array(inverse, dtype=float)
            if inverse.shape != omega.shape:
                raise DimensionException('Inverse of shape {:s} does not match the map.'.format(str(inverse.shape)))

        omega.flags.writeable = False
        inverse.flags.writeable = False
        self.omega = omega
        self.inverse = inverse
        self.source = source
        self.order = order
        self.inverse_order = inverse_order
        self.mu = mu

    @staticmethod
    def _invert(omega: np.ndarray) -> np.ndarray:
        lower = _triangle(omega)
        try:
            if lower is None:
                inverse = scipy.linalg.inv(omega)
            else:
                if np.any(np.diagonal(omega) == 0.):
                    raise SingularMapException('Triangular map has a zero on its diagonal.')
                inverse = scipy.linalg.solve_triangular(omega, np.eye(omega.shape[0]), lower=lower)
        except np.linalg.LinAlgError as exception:
            raise SingularMapException('Dyson map is singular: {:s}'.format(str(exception)))
        if not np.all(np.isfinite(inverse)):
            raise SingularMapException('Inverse of the Dyson map is not finite.')
        return inverse

    @property
    def n(self) -> int:
        return self.omega.shape[0]

    def metric(self) -> MetricCandidate:
        product = self.omega.T @ self.omega
        return MetricCandidate(0.5 * (product + product.T))

    def inverse_residual(self) -> float:
        """
        ‖Ω Ω⁻¹ − I‖∞; at rounding level for exact maps.
        """
        return max_norm(self.omega @ self.inverse - np.eye(self.n))

    def _check(self, array) -> np.ndarray:
        array = np.asarray(array, dtype=float)
        if array.shape != self.omega.shape:
            raise DimensionException('Operator of shape {:s} does not match map of dimension {:d}.'.format(
                str(array.shape), self.n
            ))
        return array

    def conjugate(self, array) -> np.ndarray:
        return self.omega @ self._check(array) @ self.inverse

    def pull_back(self, array) -> np.ndarray:
        return self.inverse @ self._check(array) @ self.omega

    def apply(self, vector) -> np.ndarray:
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (self.n,):
            raise DimensionException('State of shape {:s} does not match map of dimension {:d}.'.format(
                str(vector.shape), self.n
            ))
        return self.omega @ vector

    def to_dict(self) -> dict:
        result = {
            'rows': self.n,
            'cols': self.n,
            'source': self.source.value,
            'omega': self.omega.tolist(),
            'inverse': self.inverse.tolist(),
        }
        if self.source == DysonSource.PERTURBATIVE:
            result.update({'mu': self.mu, 'order': self.order, 'inverse_order': self.inverse_order})
        return result

    def __repr__(self):
        return 'DysonMap(n={:d}, source={:s})'.format(self.n, self.source.value)
