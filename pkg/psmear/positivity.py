# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Positive definiteness of metric candidates: spectra, one-dimensional boundaries by bisection and scans of the
two-parametric pentadiagonal family.

Example:

>>> from psmear.dieudonne_solver import theta1
>>> from psmear.positivity import positivity_check, positivity_boundary_1d
>>> positivity_check(theta1(0.25)).is_positive
True
>>> round(positivity_boundary_1d(theta1, (0., 1.), 1e-9), 8)
0.30290545
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
import psutil
import scipy.linalg

import psmear
from psmear.MetricCandidate import MetricCandidate, max_norm
from psmear.PsmearException import NumericalException, ParameterException
from psmear.dieudonne_solver import theta2
from psmear.hermite_core import EigensolverException, grid_points

logger = logging.getLogger(__name__)

POSITIVITY_THRESHOLD = 1e-12
"""
A metric counts as positive if the smallest eigenvalue of its Jacobi-scaled form exceeds POSITIVITY_THRESHOLD
times the norm of the scaled matrix.
"""

DEFAULT_STEP = 0.01
MAX_BISECTION_STEPS = 200


class NoSignChangeException(NumericalException):
    """
    Indicates that a bracket handed to a bisection does not contain a change of positivity.
    """


@dataclass(frozen=True)
class PositivityReport:
    smallest_eigenvalue: float
    is_positive: bool
    eigenvalues: np.ndarray
    scaled_smallest_eigenvalue: float


def positivity_check(theta: MetricCandidate) -> PositivityReport:
    """
    Full spectrum of a metric candidate and the positivity verdict.

    The verdict is taken on the Jacobi-scaled matrix S Θ S with S = diag(Θ_kk^(-1/2)). It is congruent to Θ, so
    it has the same inertia, but its spectrum does not suffer from the many orders of magnitude spanned by the
    diagonal of Θ.

    :param theta: Symmetric metric candidate.
    :return: :py:class:`~psmear.positivity.PositivityReport` with eigenvalues sorted ascending.
    """
    matrix = theta.matrix
    try:
        eigenvalues = scipy.linalg.eigh(matrix, eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as exception:
        raise EigensolverException('Symmetric eigensolver failed: {:s}'.format(str(exception)))
    if not np.all(np.isfinite(eigenvalues)):
        raise EigensolverException('Symmetric eigensolver returned non-finite values.')

    scaled_smallest, positive = jacobi_scaled_verdicts(matrix[None, :, :])
    return PositivityReport(float(eigenvalues[0]), bool(positive[0]), eigenvalues, float(scaled_smallest[0]))


def _eigvalsh(stack: np.ndarray) -> np.ndarray:
    try:
        values = np.linalg.eigvalsh(stack)
    except (np.linalg.LinAlgError, ValueError) as exception:
        raise EigensolverException('Symmetric eigensolver failed: {:s}'.format(str(exception)))
    if not np.all(np.isfinite(values)):
        raise EigensolverException('Symmetric eigensolver returned non-finite values.')
    return values


def jacobi_scaled_verdicts(stack: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Positivity verdicts for a stack of symmetric matrices of shape (m, n, n), shared by every positivity decision.

    Each matrix Θ is replaced by S Θ S with S = diag(Θ_kk^(-1/2)) and counts as positive if the smallest eigenvalue
    of S Θ S exceeds POSITIVITY_THRESHOLD times its norm. Matrices with a diagonal entry that is not positive are
    not positive and get the scaled eigenvalue -inf.

    Example:

    >>> import numpy as np
    >>> smallest, positive = jacobi_scaled_verdicts(np.array([np.diag([4., 1e-6]), [[1., 2.], [2., 1.]]]))
    >>> np.round(smallest, 12).tolist(), positive.tolist()
    ([1.0, -1.0], [True, False])

    :return: Scaled smallest eigenvalues and the boolean verdicts.
    """
    stack = np.asarray(stack, dtype=float)
    diagonals = np.diagonal(stack, axis1=1, axis2=2)
    valid = np.all(diagonals > 0., axis=1)
    scale = 1. / np.sqrt(np.where(diagonals > 0., diagonals, 1.))
    scaled = scale[:, :, None] * stack * scale[:, None, :]
    smallest = np.where(valid, _eigvalsh(scaled)[:, 0], -np.inf)
    norms = np.array([max_norm(matrix) for matrix in scaled])
    return smallest, valid & (smallest > POSITIVITY_THRESHOLD * norms)


def is_positive(theta: MetricCandidate) -> bool:
    """
    Verdict of :py:func:`~psmear.positivity.positivity_check` without the full spectrum.
    """
    return bool(jacobi_scaled_verdicts(theta.matrix[None, :, :])[1][0])


def positivity_boundary_1d(family: Callable[[float], MetricCandidate], bracket: Tuple[float, float],
                           tol: float) -> float:
    """
    Locates the parameter where the smallest eigenvalue of ``family`` changes sign by bisection.

    :param family: Maps the parameter onto a metric candidate.
    :param bracket: Interval whose end points have smallest eigenvalues of opposite signs.
    :param tol: Width of the final interval; its midpoint is returned.
    :return: The boundary parameter.
    """
    if not tol > 0:
        raise ParameterException('Tolerance must be positive, got {:s}.'.format(repr(tol)))
    left, right = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(left) and math.isfinite(right)):
        raise ParameterException('Bracket must be finite, got {:s}.'.format(str(bracket)))

    left_positive = is_positive(family(left))
    right_positive = is_positive(family(right))
    if left_positive == right_positive:
        raise NoSignChangeException('Smallest eigenvalue does not change sign in [{:.15g}, {:.15g}].'.format(
            left, right
        ))

    steps = 0
    while abs(right - left) > tol and steps < MAX_BISECTION_STEPS:
        middle = 0.5 * (left + right)
        if is_positive(family(middle)) == left_positive:
            left = middle
        else:
            right = middle
        steps += 1
    logger.debug('Bisection converged to %.17g after %d steps.', 0.5 * (left + right), steps)
    return 0.5 * (left + right)


def positivity_interval(family: Callable[[float], MetricCandidate], reach: float, tol: float) -> Tuple[float, float]:
    """
    The interval around 0 where ``family`` stays positive, searched within [-reach, reach].

    Example:

    >>> from psmear.dieudonne_solver import theta1
    >>> lower, upper = positivity_interval(theta1, 1., 1e-10)
    >>> round(lower, 8), round(upper, 8)
    (-0.30290545, 0.30290545)
    """
    if not positivity_check(family(0.)).is_positive:
        raise NoSignChangeException('The family is not positive at 0.')
    upper = positivity_boundary_1d(family, (0., reach), tol)
    lower = positivity_boundary_1d(family, (-reach, 0.), tol)
    return lower, upper


def width_curve(p_values, tol: float, reach: float = 2.) -> List[Tuple[float, float]]:
    """
    Width of the positive μ-interval of the pentadiagonal metric for every p.
    """
    curve = []
    for p in p_values:
        lower, upper = positivity_interval(lambda mu: theta2(mu, p), reach, tol)
        curve.append((float(p), upper - lower))
    return curve


def boundary_slope(p_a: float, p_b: float, tol: float, reach: float = 2.) -> float:
    """
    Slope dμ/dp of the upper positivity boundary of the pentadiagonal metric between two values of p.
    """
    if p_a == p_b:
        raise ParameterException('Slope needs two different values of p.')
    mu_a = positivity_boundary_1d(lambda mu: theta2(mu, p_a), (0., reach), tol)
    mu_b = positivity_boundary_1d(lambda mu: theta2(mu, p_b), (0., reach), tol)
    return (mu_b - mu_a) / (p_b - p_a)


@dataclass(frozen=True)
class BoundaryLine:
    """
    Straight line μ = sign (1 + p (λ² − 2)) / λ on which the pentadiagonal metric has eigenvalue zero.
    ``p_vertex`` is where the line crosses μ = 0.
    """
    grid_point: float
    sign: int
    p_vertex: float
    slope: float

    def mu(self, p: float) -> float:
        return self.sign * (1. + p * (self.grid_point ** 2 - 2.)) / self.grid_point


def boundary_lines() -> List[BoundaryLine]:
    """
    The nodal lines of the pentadiagonal metric. It is congruent to f(q0) with
    f(λ) = 1 − 2p + μλ + pλ², so it loses positivity where f vanishes on a grid point λ of dimension 4.

    Example:

    >>> [round(line.p_vertex, 9) for line in boundary_lines()]
    [1.112372436, 1.112372436, -0.112372436, -0.112372436]
    """
    lines = []
    for point in grid_points(4).points[2:]:
        point = float(point)
        p_vertex = -1. / (point ** 2 - 2.)
        slope = (point ** 2 - 2.) / point
        lines.extend(BoundaryLine(point, sign, p_vertex, sign * slope) for sign in (1, -1))
    return lines


def secular_det(mu: float, p: float) -> float:
    """
    Determinant of the pentadiagonal metric, computed directly.

    Example:

    >>> round(secular_det(0., 0.) * 768, 12)
    1.0
    """
    return float(scipy.linalg.det(theta2(mu, p).matrix))


def _secular_terms(mu: float, p: float) -> List[float]:
    return [
        1 / 768,
        -p ** 2 * mu ** 2 / 8,
        -p ** 3 / 6,
        p ** 2 / 16,
        p ** 4 / 12,
        p / 48,
        -mu ** 2 / 64,
        mu ** 4 / 64,
    ]


def secular_polynomial(mu: float, p: float) -> float:
    """
    The expanded polynomial form of the determinant of the pentadiagonal metric.

    Example:

    >>> secular_polynomial(0., 0.) == 1 / 768
    True
    """
    return math.fsum(_secular_terms(mu, p))


def secular_polynomial_scale(mu: float, p: float) -> float:
    """
    Sum of the absolute values of the polynomial terms; the scale for comparing both determinant evaluations.
    """
    return math.fsum(abs(term) for term in _secular_terms(mu, p))


@dataclass(frozen=True)
class Lattice:
    """
    Rectangular uniform lattice in (μ, p). The number of points per axis is round((max − min) / step) + 1.

    Example:

    >>> Lattice(-1., 1., .5, 0., .2, .1).mu_axis().tolist()
    [-1.0, -0.5, 0.0, 0.5, 1.0]
    """
    mu_min: float
    mu_max: float
    mu_step: float
    p_min: float
    p_max: float
    p_step: float

    def __post_init__(self):
        values = (self.mu_min, self.mu_max, self.mu_step, self.p_min, self.p_max, self.p_step)
        if not all(math.isfinite(value) for value in values):
            raise ParameterException('Lattice bounds and steps must be finite.')
        if not (self.mu_step > 0 and self.p_step > 0):
            raise ParameterException('Lattice steps must be positive.')
        if self.mu_max < self.mu_min or self.p_max < self.p_min:
            raise ParameterException('Empty lattice: maximum below minimum.')

    @staticmethod
    def _axis(low: float, high: float, step: float) -> np.ndarray:
        return np.linspace(low, high, int(round((high - low) / step)) + 1)

    def mu_axis(self) -> np.ndarray:
        return self._axis(self.mu_min, self.mu_max, self.mu_step)

    def p_axis(self) -> np.ndarray:
        return self._axis(self.p_min, self.p_max, self.p_step)


@dataclass
class DomainScan:
    """
    Smallest eigenvalues on a lattice, ``values[i, j]`` belonging to (mu_axis[j], p_axis[i]), the positivity verdicts
    ``positive[i, j]`` of :py:func:`~psmear.positivity.jacobi_scaled_verdicts` and the points where the verdict
    changes.
    """
    mu_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    positive: np.ndarray
    boundary: List[Tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.values.shape != (self.p_axis.size, self.mu_axis.size):
            raise ParameterException('Scan values of shape {:s} do not match the axes.'.format(
                str(self.values.shape)
            ))
        if self.positive.shape != self.values.shape:
            raise ParameterException('Positivity verdicts of shape {:s} do not match the values.'.format(
                str(self.positive.shape)
            ))

    def value_at(self, mu: float, p: float) -> float:
        return float(self.values[int(np.argmin(np.abs(self.p_axis - p))), int(np.argmin(np.abs(self.mu_axis - mu)))])

    def records(self) -> List[Tuple[float, float, float]]:
        return [
            (float(mu), float(p), float(self.values[i, j]))
            for i, p in enumerate(self.p_axis)
            for j, mu in enumerate(self.mu_axis)
        ]


def _crossing(a: float, b: float, value_a: float, value_b: float) -> float:
    if value_a == value_b:
        return 0.5 * (a + b)
    # verdicts and raw values can disagree within the threshold, keep the point between its neighbors
    return a + min(max(value_a / (value_a - value_b), 0.), 1.) * (b - a)


def extract_boundary(mu_axis: np.ndarray, p_axis: np.ndarray, values: np.ndarray,
                     positive: np.ndarray) -> List[Tuple[float, float]]:
    """
    Zero crossings between neighboring lattice points of which one is positive and the other is not, by linear
    interpolation of ``values`` along rows and columns. Sorted by p, then μ.

    :param positive: Verdicts of :py:func:`~psmear.positivity.jacobi_scaled_verdicts` at the lattice points.
    """
    points = []
    rows, cols = np.nonzero(positive[:, :-1] != positive[:, 1:])
    for i, j in zip(rows, cols):
        points.append((_crossing(mu_axis[j], mu_axis[j + 1], values[i, j], values[i, j + 1]), float(p_axis[i])))
    rows, cols = np.nonzero(positive[:-1, :] != positive[1:, :])
    for i, j in zip(rows, cols):
        points.append((float(mu_axis[j]), _crossing(p_axis[i], p_axis[i + 1], values[i, j], values[i + 1, j])))
    return sorted(((float(mu), float(p)) for mu, p in points), key=lambda point: (point[1], point[0]))


def _workers() -> int:
    if not psmear.parallel_scans:
        return 1
    if psmear.scan_workers is not None:
        return max(1, int(psmear.scan_workers))
    return psutil.cpu_count(logical=False) or 1


def positivity_scan_2d(lattice: Lattice, family: Callable[[float, float], MetricCandidate] = theta2) -> DomainScan:
    """
    Smallest eigenvalue of ``family(mu, p)`` at every lattice point and the interpolated boundary.

    Rows of constant p are evaluated concurrently, each writing its own row of the result.
    """
    mu_axis = lattice.mu_axis()
    p_axis = lattice.p_axis()
    values = np.empty((p_axis.size, mu_axis.size))
    positive = np.empty((p_axis.size, mu_axis.size), dtype=bool)

    def evaluate_row(i: int):
        stack = np.array([family(float(mu), float(p_axis[i])).matrix for mu in mu_axis])
        values[i] = _eigvalsh(stack)[:, 0]
        positive[i] = jacobi_scaled_verdicts(stack)[1]

    workers = _workers()
    logger.debug('Scanning %d x %d lattice with %d workers.', p_axis.size, mu_axis.size, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            list(executor.map(evaluate_row, range(p_axis.size)))
    else:
        for i in range(p_axis.size):
            evaluate_row(i)

    if not np.all(np.isfinite(values)):
        raise EigensolverException('Scan produced non-finite eigenvalues.')
    return DomainScan(mu_axis, p_axis, values, positive, extract_boundary(mu_axis, p_axis, values, positive))


def refine_crossings(scan: DomainScan, mu: float, tol: float,
                     family: Callable[[float, float], MetricCandidate] = theta2) -> List[float]:
    """
    Boundary crossings in p along the lattice column nearest to ``mu``, refined by bisection.
    """
    j = int(np.argmin(np.abs(scan.mu_axis - mu)))
    column_mu = float(scan.mu_axis[j])
    positive = scan.positive[:, j]
    crossings = []
    for i in np.nonzero(positive[:-1] != positive[1:])[0]:
        crossings.append(positivity_boundary_1d(
            lambda p: family(column_mu, p), (float(scan.p_axis[i]), float(scan.p_axis[i + 1])), tol
        ))
    return crossings
