# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Gauss-Hermite quadrature ∫ e^(-x²) f(x) dx ≈ Σ w_j f(z_j) on the zeros z_j of H_N and its comparison with
equidistant trapezoid sums.

The nodes are the standard Hermite zeros. The grid of :py:func:`~psmear.hermite_core.grid_points` is twice as
wide since its points solve H_N(x/2) = 0; :py:meth:`~psmear.quadrature.QuadratureRule.grid_nodes` converts.

Example:

>>> import math
>>> from psmear.quadrature import gauss_hermite_rule, integrate
>>> rule = gauss_hermite_rule(3)
>>> round(integrate(rule, lambda x: x ** 4) / (3 * math.sqrt(math.pi) / 4), 12)
1.0
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
import scipy.integrate
import scipy.linalg

from psmear.PsmearException import DimensionException, NumericalException, ParameterException
from psmear.hermite_core import EigensolverException, grid_points, hermite_eval

logger = logging.getLogger(__name__)

MAX_RULE_SIZE = 100
"""
Largest rule whose weights are evaluated from H_(N-1) without overflowing double precision.
"""

REFERENCE_POINTS = 10 ** 6


class NonFiniteIntegrandException(NumericalException):
    """
    Indicates that the integrand is infinite or not a number at a quadrature point.
    """


@dataclass(frozen=True)
class QuadratureRule:
    """
    Nodes and weights of an N-point rule for the weight function e^(-x²).

    Example:

    >>> from psmear.quadrature import QuadratureRule
    >>> QuadratureRule([-1., 1.], [0.5, 0.5]).size
    2
    """
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.size == 0 or weights.shape != nodes.shape:
            raise DimensionException('Nodes of shape {:s} and weights of shape {:s} do not form a rule.'.format(
                str(nodes.shape), str(weights.shape)
            ))
        if np.any(np.diff(nodes) <= 0.):
            raise ParameterException('Quadrature nodes must be strictly increasing.')
        if not np.all(weights > 0.):
            raise ParameterException('Quadrature weights must be positive.')
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'weights', weights)

    @property
    def size(self) -> int:
        return self.nodes.size

    def grid_nodes(self) -> np.ndarray:
        """
        The nodes scaled to the H_N(x/2) = 0 grid.
        """
        return 2. * self.nodes

    def records(self) -> List[Tuple[float, float]]:
        return [(float(node), float(weight)) for node, weight in zip(self.nodes, self.weights)]


def _check_size(n: int):
    if n < 1:
        raise ParameterException('Rule size must be positive, got {:d}.'.format(n))
    if n > MAX_RULE_SIZE:
        raise ParameterException('Rule size {:d} exceeds the maximum of {:d}.'.format(n, MAX_RULE_SIZE))


def gauss_hermite_rule(n: int) -> QuadratureRule:
    """
    The N-point Gauss-Hermite rule with nodes from the symmetric tridiagonal eigenproblem and weights
    w_j = 2^(N-1) N! √π / (N² H_(N-1)(z_j)²).

    Example:

    >>> rule = gauss_hermite_rule(2)
    >>> print(rule.nodes ** 2)
    [0.5 0.5]
    >>> print(rule.weights ** 2 * 4 / math.pi)
    [1. 1.]

    :param n: Number of nodes, 1 <= n <= MAX_RULE_SIZE.
    :return: :py:class:`~psmear.quadrature.QuadratureRule`
    """
    _check_size(n)
    nodes = grid_points(n).points / 2.
    constant = float(2 ** (n - 1) * math.factorial(n)) * math.sqrt(math.pi) / n ** 2
    weights = np.array([constant / hermite_eval(n - 1, z) ** 2 for z in nodes])
    logger.debug('Gauss-Hermite rule of size %d with weight sum %.17g.', n, float(np.sum(weights)))
    return QuadratureRule(nodes, weights)


def golub_welsch_weights(n: int) -> np.ndarray:
    """
    Weights √π v_0² from the first components of the normalized eigenvectors of the Jacobi matrix of the Hermite
    polynomials. They agree with the weights of :py:func:`~psmear.quadrature.gauss_hermite_rule`.

    Example:

    >>> golub_welsch_weights(1).tolist() == [math.sqrt(math.pi)]
    True
    """
    if n < 1:
        raise ParameterException('Rule size must be positive, got {:d}.'.format(n))
    if n == 1:
        return np.array([math.sqrt(math.pi)])
    try:
        _, vectors = scipy.linalg.eigh_tridiagonal(np.zeros(n), np.sqrt(np.arange(1, n) / 2.))
    except (np.linalg.LinAlgError, ValueError) as exception:
        raise EigensolverException('Tridiagonal eigensolver failed: {:s}'.format(str(exception)))
    return math.sqrt(math.pi) * vectors[0] ** 2


def gaussian_moment(k: int) -> float:
    """
    ∫ x^k e^(-x²) dx over the real line: zero for odd k and Γ((k+1)/2) = (k-1)!! √π / 2^(k/2) for even k.

    Example:

    >>> round(gaussian_moment(2) / math.sqrt(math.pi), 15)
    0.5
    >>> gaussian_moment(3)
    0.0
    """
    if k < 0:
        raise ParameterException('Moment order must be nonnegative, got {:d}.'.format(k))
    if k % 2 == 1:
        return 0.
    return math.gamma((k + 1) / 2)


def _evaluate(f: Callable[[float], float], points: np.ndarray) -> np.ndarray:
    values = np.fromiter((f(float(x)) for x in points), dtype=float, count=points.size)
    bad = np.nonzero(~np.isfinite(values))[0]
    if bad.size > 0:
        raise NonFiniteIntegrandException('Integrand is not finite at x = {:.17g}.'.format(float(points[bad[0]])))
    return values


def integrate(rule: QuadratureRule, f: Callable[[float], float]) -> float:
    """
    Σ w_j f(z_j).

    Example:

    >>> round(integrate(gauss_hermite_rule(4), lambda x: 1.) ** 2, 12) == round(math.pi, 12)
    True

    :raises NonFiniteIntegrandException: If f is not finite at a node.
    """
    values = _evaluate(f, rule.nodes)
    return math.fsum(rule.weights * values)


@dataclass(frozen=True)
class ComparisonRecord:
    n: int
    half_width: float
    gauss_hermite: float
    equidistant: float
    reference: float

    @property
    def gauss_hermite_error(self) -> float:
        return abs(self.gauss_hermite - self.reference)

    @property
    def equidistant_error(self) -> float:
        return abs(self.equidistant - self.reference)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'half_width': self.half_width,
            'gauss_hermite': self.gauss_hermite,
            'equidistant': self.equidistant,
            'reference': self.reference,
            'gauss_hermite_error': self.gauss_hermite_error,
            'equidistant_error': self.equidistant_error,
        }


def _weighted_trapezoid(f: Callable[[float], float], points: int, half_width: float) -> float:
    x = np.linspace(-half_width, half_width, points)
    return float(scipy.integrate.trapezoid(np.exp(-x * x) * _evaluate(f, x), x))


def equidistant_compare(f: Callable[[float], float], n: int, half_width: float,
                        reference_points: int = REFERENCE_POINTS) -> ComparisonRecord:
    """
    Estimates ∫ e^(-x²) f(x) dx with the N-point Gauss-Hermite rule and with the N-point equidistant trapezoid sum
    on [-half_width, half_width]. The reference is a trapezoid sum on the same interval with
    ``reference_points`` points.

    Example:

    >>> record = equidistant_compare(lambda x: x ** 4, 10, 6.)
    >>> record.gauss_hermite_error < 1e-12 < record.equidistant_error
    True
    """
    if not half_width > 0. or not math.isfinite(half_width):
        raise ParameterException('Half width must be positive and finite, got {:s}.'.format(str(half_width)))
    if n < 2:
        raise ParameterException('The equidistant sum needs at least 2 points, got {:d}.'.format(n))
    gauss_hermite = integrate(gauss_hermite_rule(n), f)
    equidistant = _weighted_trapezoid(f, n, half_width)
    reference = _weighted_trapezoid(f, reference_points, half_width)
    logger.debug('Compared %d-point rules on half width %g: %.17g vs %.17g (reference %.17g).', n, half_width,
                 gauss_hermite, equidistant, reference)
    return ComparisonRecord(n, float(half_width), gauss_hermite, equidistant, reference)
