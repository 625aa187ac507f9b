# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Hermite polynomials, the smeared position matrix and its grid points.

The grid points of dimension N are the roots x of H_N(x/2) = 0. They are the eigenvalues of the
non-symmetric tridiagonal position matrix Q (unit superdiagonal, subdiagonal 2, 4, ..., 2N-2) and of its
symmetrized form q0 (off-diagonal sqrt(2), sqrt(4), ..., sqrt(2N-2)).
"""

import logging
from enum import Enum
from typing import List

import numpy as np
import scipy.linalg

from psmear.BandMatrix import BandMatrix
from psmear.PsmearException import DimensionException, NumericalException, ParameterException

logger = logging.getLogger(__name__)

RAW_AGREEMENT_TOLERANCE = 1e-10
"""
Largest absolute deviation of the raw spectrum from the symmetric tridiagonal one that is accepted as the same grid.
"""


class EigensolverException(NumericalException):
    """
    Indicates that an eigensolver did not converge or returned values that cannot be used.
    """


class PositionFlavor(Enum):
    RAW = 'raw'
    SYMMETRIZED = 'symmetrized'


class GridProvenance(Enum):
    CLOSED_FORM = 'closed_form'
    EIGENSOLVER = 'eigensolver'


class HermiteTable:
    """
    Values H_0(x), ..., H_max_degree(x) of the physicists' Hermite polynomials at a single argument.

    Example:

    >>> from psmear.hermite_core import HermiteTable
    >>> HermiteTable(3, 2.).values.tolist()
    [1.0, 4.0, 14.0, 40.0]
    """

    def __init__(self, max_degree: int, argument: float) -> None:
        super().__init__()
        if max_degree < 0:
            raise ParameterException('Degree must be nonnegative, got {:d}.'.format(max_degree))
        self.max_degree = max_degree
        self.argument = float(argument)
        values = np.empty(max_degree + 1)
        values[0] = 1.
        if max_degree >= 1:
            values[1] = 2. * self.argument
        for n in range(1, max_degree):
            values[n + 1] = 2. * self.argument * values[n] - 2. * n * values[n - 1]
        values.flags.writeable = False
        self.values = values

    def __getitem__(self, degree: int) -> float:
        return float(self.values[degree])


def hermite_table(max_degree: int, x: float) -> HermiteTable:
    return HermiteTable(max_degree, x)


def hermite_eval(degree: int, x: float) -> float:
    """
    Evaluates H_degree(x) by the three-term recurrence H_{n+1} = 2x H_n - 2n H_{n-1}.

    Example:

    >>> from psmear.hermite_core import hermite_eval
    >>> hermite_eval(3, 2)
    40.0
    >>> hermite_eval(0, 7.3)
    1.0
    """
    return HermiteTable(degree, x)[degree]


def hermite_residual_scale(degree: int, x: float) -> float:
    """
    Returns sum_k |c_k| |x|^k for the coefficients c_k of H_degree.

    The value bounds every intermediate of the recurrence and is the natural scale for the residual
    |H_degree(x)| at a computed root.

    Example:

    >>> from psmear.hermite_core import hermite_residual_scale
    >>> hermite_residual_scale(2, 1.)
    6.0
    """
    if degree < 0:
        raise ParameterException('Degree must be nonnegative, got {:d}.'.format(degree))
    previous, current = 1., 2. * abs(x)
    if degree == 0:
        return previous
    for n in range(1, degree):
        previous, current = current, 2. * abs(x) * current + 2. * n * previous
    return current


class PositionMatrix:
    """
    The tridiagonal position operator of dimension N in its raw (non-symmetric) or symmetrized flavor.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> print(build_position_matrix(2).array)
    [[0. 1.]
     [2. 0.]]
    """

    def __init__(self, storage: BandMatrix, flavor: PositionFlavor) -> None:
        super().__init__()
        if storage.lower > 1 or storage.upper > 1:
            raise DimensionException('A position matrix is tridiagonal.')
        self.storage = storage
        self.flavor = flavor

    @property
    def n(self) -> int:
        return self.storage.n

    @property
    def array(self) -> np.ndarray:
        return self.storage.array

    def superdiagonal(self) -> np.ndarray:
        return self.storage.diagonal(1)

    def subdiagonal(self) -> np.ndarray:
        return self.storage.diagonal(-1)

    def eigenvalues(self) -> np.ndarray:
        """
        Eigenvalues sorted ascending. The symmetrized flavor uses the symmetric tridiagonal solver. The raw flavor is
        balanced by the diagonal similarity of :py:func:`~psmear.hermite_core.balancing_scale` first and then handed
        to a general dense solver, which loses all accuracy on the unbalanced matrix from N = 14 on.
        """
        if self.n == 1:
            return self.storage.diagonal().copy()
        try:
            if self.flavor == PositionFlavor.SYMMETRIZED:
                values = scipy.linalg.eigh_tridiagonal(
                    self.storage.diagonal(), self.superdiagonal(), eigvals_only=True
                )
            else:
                d = balancing_scale(self.storage)
                values = scipy.linalg.eigvals(d[:, None] * self.array / d[None, :])
        except (np.linalg.LinAlgError, ValueError) as exception:
            raise EigensolverException('Eigensolver failed for N={:d}: {:s}'.format(self.n, str(exception)))

        if np.iscomplexobj(values):
            if np.max(np.abs(values.imag)) > 1e-8 * max(1., np.max(np.abs(values.real))):
                raise EigensolverException('Position matrix of dimension {:d} has a complex spectrum.'.format(self.n))
            values = values.real
        if not np.all(np.isfinite(values)):
            raise EigensolverException('Eigensolver returned non-finite values for N={:d}.'.format(self.n))
        return np.sort(values)


class Grid:
    """
    Strictly increasing grid points together with the way they were obtained.

    Example:

    >>> from psmear.hermite_core import grid_points
    >>> grid = grid_points(3)
    >>> grid.provenance.value, len(grid)
    ('eigensolver', 3)
    """

    def __init__(self, points, provenance: GridProvenance) -> None:
        super().__init__()
        points = np.array(points, dtype=float)
        if points.ndim != 1 or points.size == 0:
            raise DimensionException('Grid points must be a nonempty vector.')
        if np.any(np.diff(points) <= 0):
            raise NumericalException('Grid points must be strictly increasing.')
        points.flags.writeable = False
        self.points = points
        self.provenance = provenance

    def __len__(self):
        return self.points.size

    def __getitem__(self, index: int) -> float:
        return float(self.points[index])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.points, -self.points[::-1]))


def _check_dimension(n: int):
    if n < 1:
        raise ParameterException('Dimension must be positive, got {:d}.'.format(n))


def build_position_matrix(n: int) -> PositionMatrix:
    """
    Builds the raw position matrix with unit superdiagonal and subdiagonal 2, 4, ..., 2N-2.

    Example:

    >>> from psmear.hermite_core import build_position_matrix
    >>> print(build_position_matrix(4).array)
    [[0. 1. 0. 0.]
     [2. 0. 1. 0.]
     [0. 4. 0. 1.]
     [0. 0. 6. 0.]]
    """
    _check_dimension(n)
    k = np.arange(1, n)
    return PositionMatrix(BandMatrix.tridiagonal(2. * k, np.zeros(n), np.ones(n - 1)), PositionFlavor.RAW)


def build_symmetrized_position(n: int) -> PositionMatrix:
    """
    Builds the symmetric position matrix with off-diagonal sqrt(2), sqrt(4), ..., sqrt(2N-2).

    Example:

    >>> from psmear.hermite_core import build_symmetrized_position
    >>> print(build_symmetrized_position(3).superdiagonal() ** 2)
    [2. 4.]
    """
    _check_dimension(n)
    off_diagonal = np.sqrt(2. * np.arange(1, n))
    return PositionMatrix(
        BandMatrix.tridiagonal(off_diagonal, np.zeros(n), off_diagonal),
        PositionFlavor.SYMMETRIZED,
    )


def _symmetrize_sorted(values: np.ndarray) -> np.ndarray:
    return 0.5 * (values - values[::-1])


def grid_points(n: int) -> Grid:
    """
    The N grid points x_j with H_N(x_j / 2) = 0, sorted ascending and exactly symmetric about zero.

    Example:

    >>> from psmear.hermite_core import grid_points
    >>> print(grid_points(2).points ** 2)
    [2. 2.]
    >>> grid_points(1).points.tolist()
    [0.0]
    """
    _check_dimension(n)
    values = build_symmetrized_position(n).eigenvalues()
    points = _symmetrize_sorted(values)
    logger.debug('Computed %d grid points, largest %.17g.', n, points[-1])
    return Grid(points, GridProvenance.EIGENSOLVER)


def raw_grid_points(n: int) -> Grid:
    """
    Grid points from the raw non-symmetric position matrix. Only meant as a cross-check of
    :py:func:`~psmear.hermite_core.grid_points`.
    """
    _check_dimension(n)
    values = build_position_matrix(n).eigenvalues()
    drift = float(np.max(np.abs(values - grid_points(n).points)))
    if drift > RAW_AGREEMENT_TOLERANCE:
        raise EigensolverException(
            'Raw position matrix of dimension {:d} deviates from the symmetric spectrum by {:.3g}.'.format(n, drift)
        )
    return Grid(values, GridProvenance.EIGENSOLVER)


def position_eigenvector(n: int, index: int) -> np.ndarray:
    """
    Closed-form eigenvector (H_0(x/2), ..., H_{N-1}(x/2)) of the raw position matrix for the grid point
    x = grid_points(N)[index].

    Example:

    >>> from psmear.hermite_core import position_eigenvector
    >>> position_eigenvector(3, 1).tolist()
    [1.0, 0.0, -2.0]
    """
    _check_dimension(n)
    if not 0 <= index < n:
        raise DimensionException('Index {:d} out of range for dimension {:d}.'.format(index, n))
    x = grid_points(n)[index]
    return np.array(HermiteTable(n - 1, x / 2.).values)


def runge_kutta_grid(n: int, x0: float, h: float) -> Grid:
    """
    Equidistant grid x0 + h j, j = 0, ..., N-1.

    Example:

    >>> from psmear.hermite_core import runge_kutta_grid
    >>> runge_kutta_grid(4, 0., 0.5).points.tolist()
    [0.0, 0.5, 1.0, 1.5]
    """
    _check_dimension(n)
    if not h > 0:
        raise ParameterException('Step must be positive, got {:s}.'.format(repr(h)))
    return Grid(x0 + h * np.arange(n), GridProvenance.CLOSED_FORM)


def balancing_scale(matrix: BandMatrix) -> np.ndarray:
    """
    Diagonal d such that diag(d) A diag(d)^-1 is symmetric for a tridiagonal A whose opposite off-diagonal
    entries have equal signs. d_0 = 1 and d_{i+1} = d_i sqrt(A[i, i+1] / A[i+1, i]).

    For the raw position matrix this reproduces the diagonal Dyson map with c = 1.

    Example:

    >>> from psmear.hermite_core import balancing_scale, build_position_matrix
    >>> print(balancing_scale(build_position_matrix(3).storage) ** -2)
    [1. 2. 8.]
    """
    if matrix.lower > 1 or matrix.upper > 1:
        raise DimensionException('Balancing by a diagonal similarity needs a tridiagonal matrix.')
    sup = matrix.diagonal(1)
    sub = matrix.diagonal(-1)
    ratios = sup / np.where(sub == 0., np.nan, sub) if sub.size else sub
    if np.any(~np.isfinite(ratios)) or np.any(ratios <= 0):
        raise NumericalException('Tridiagonal matrix cannot be symmetrized by a real diagonal similarity.')
    return np.concatenate(([1.], np.cumprod(np.sqrt(ratios))))


def hermite_zero_residuals(grid: Grid) -> List[float]:
    """
    Relative residuals |H_N(x/2)| / scale at the points of a grid of dimension N. The scale is
    :py:func:`~psmear.hermite_core.hermite_residual_scale`, floored at the leading coefficient 2^N so that it stays
    positive at x = 0 for odd N.

    Example:

    >>> from psmear.hermite_core import grid_points, hermite_zero_residuals
    >>> hermite_zero_residuals(grid_points(1))
    [0.0]
    """
    n = len(grid)
    leading = 2. ** n
    return [
        abs(hermite_eval(n, x / 2.)) / max(hermite_residual_scale(n, x / 2.), leading)
        for x in grid.points
    ]
