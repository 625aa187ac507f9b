# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import json
from typing import Optional, Sequence

import numpy as np

from psmear.PsmearException import DimensionException, ParameterException


def measured_bandwidths(array: np.ndarray):
    """
    Returns the smallest lower and upper bandwidths that contain all nonzero entries.

    Example:

    >>> import numpy as np
    >>> measured_bandwidths(np.array([[1., 2., 0.], [0., 1., 0.], [5., 0., 1.]]))
    (2, 1)
    """
    rows, cols = np.nonzero(array)
    if rows.size == 0:
        return 0, 0
    offsets = cols - rows
    return int(max(0, -offsets.min())), int(max(0, offsets.max()))


class BandMatrix:
    """
    Real square matrix with declared lower and upper bandwidths. All entries outside of the band are exactly zero.

    The stored array is a read-only copy, instances can be shared between threads.

    Example:

    >>> from psmear.BandMatrix import BandMatrix
    >>> m = BandMatrix.tridiagonal([2., 4.], [0., 0., 0.], [1., 1.])
    >>> m.n, m.lower, m.upper
    (3, 1, 1)
    >>> print(m.array)
    [[0. 1. 0.]
     [2. 0. 1.]
     [0. 4. 0.]]
    """

    def __init__(self, array, lower: Optional[int] = None, upper: Optional[int] = None) -> None:
        super().__init__()
        array = np.array(array, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionException('A band matrix must be square, got shape {:s}.'.format(str(array.shape)))
        if array.shape[0] == 0:
            raise ParameterException('Dimension must be positive, got 0.')

        measured_lower, measured_upper = measured_bandwidths(array)
        lower = measured_lower if lower is None else lower
        upper = measured_upper if upper is None else upper
        if lower < 0 or upper < 0:
            raise ParameterException('Bandwidths must be nonnegative, got ({:d}, {:d}).'.format(lower, upper))
        if measured_lower > lower or measured_upper > upper:
            raise DimensionException(
                'Entries outside of the declared band ({:d}, {:d}), measured ({:d}, {:d}).'.format(
                    lower, upper, measured_lower, measured_upper
                )
            )

        array.flags.writeable = False
        self._array = array
        self._lower = lower
        self._upper = upper

    @classmethod
    def tridiagonal(cls, sub: Sequence[float], diagonal: Sequence[float], sup: Sequence[float]) -> 'BandMatrix':
        """
        Creates a tridiagonal matrix from its three diagonals.

        :param sub: The n-1 subdiagonal entries.
        :param diagonal: The n diagonal entries.
        :param sup: The n-1 superdiagonal entries.
        :return: The :py:class:`~psmear.BandMatrix.BandMatrix` with bandwidths (1, 1).
        """
        diagonal = np.asarray(diagonal, dtype=float)
        n = diagonal.size
        if len(sub) != n - 1 or len(sup) != n - 1:
            raise DimensionException('Off-diagonals of a {:d}x{:d} matrix need {:d} entries.'.format(n, n, n - 1))
        array = np.diag(diagonal)
        if n > 1:
            array += np.diag(np.asarray(sub, dtype=float), -1) + np.diag(np.asarray(sup, dtype=float), 1)
        return cls(array, min(1, n - 1), min(1, n - 1))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def n(self) -> int:
        return self._array.shape[0]

    @property
    def lower(self) -> int:
        return self._lower

    @property
    def upper(self) -> int:
        return self._upper

    def diagonal(self, offset: int = 0) -> np.ndarray:
        return np.diagonal(self._array, offset).copy()

    def transpose(self) -> 'BandMatrix':
        return BandMatrix(self._array.T, self._upper, self._lower)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._array, self._array.T))

    def to_dict(self) -> dict:
        """
        Row-major representation with a dimension header.

        Example:

        >>> from psmear.BandMatrix import BandMatrix
        >>> BandMatrix([[0., 1.], [2., 0.]]).to_dict()
        {'rows': 2, 'cols': 2, 'lower': 1, 'upper': 1, 'data': [[0.0, 1.0], [2.0, 0.0]]}
        """
        return {
            'rows': self.n,
            'cols': self.n,
            'lower': self._lower,
            'upper': self._upper,
            'data': self._array.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> 'BandMatrix':
        array = np.array(data['data'], dtype=float)
        if array.shape != (data['rows'], data['cols']):
            raise DimensionException('Header {:d}x{:d} does not match data of shape {:s}.'.format(
                data['rows'], data['cols'], str(array.shape)
            ))
        return cls(array, data.get('lower'), data.get('upper'))
