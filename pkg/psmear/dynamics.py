# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Hamiltonians that are Hermitian with respect to a metric Θ and the Θ-weighted geometry of states.

A real matrix H is admissible for Θ if HᵀΘ = ΘH. Given a Dyson map Ω with Θ = ΩᵀΩ, every admissible H is the
pull back Ω⁻¹ h Ω of a symmetric h, and the states ψ of the friendly space map to Ωψ in the physical space.

Example:

>>> import numpy as np
>>> from psmear.dieudonne_solver import theta1
>>> from psmear.hermitization import cholesky_factor
>>> from psmear.dynamics import pullback_hamiltonian, quasi_hermiticity_residual
>>> theta = theta1(0.2)
>>> hamiltonian = pullback_hamiltonian(np.diag([1., 2., 3., 4.]), cholesky_factor(theta))
>>> quasi_hermiticity_residual(hamiltonian, theta) < 1e-12
True
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np
import scipy.linalg

from psmear.DysonMap import DysonMap
from psmear.MetricCandidate import MetricCandidate, max_norm
from psmear.PsmearException import DimensionException, NumericalException, ParameterException
from psmear.dieudonne_solver import NULLSPACE_RCOND
from psmear.hermitization import cholesky_factor

logger = logging.getLogger(__name__)

REAL_SPECTRUM_TOLERANCE = 1e-8
"""
Largest imaginary part of an eigenvalue, relative to the spectral radius, that still counts as real.
"""

SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Observable:
    """
    A real, generally non-symmetric, operator of the friendly space such as a Hamiltonian.

    Example:

    >>> from psmear.dynamics import Observable
    >>> Observable([[0., 1.], [2., 0.]], 'Q').n
    2
    """
    matrix: np.ndarray
    label: str = ''

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise DimensionException('An observable must be a nonempty square matrix, got shape {:s}.'.format(
                str(matrix.shape)
            ))
        matrix.flags.writeable = False
        object.__setattr__(self, 'matrix', matrix)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """
        Complex spectrum sorted by real part.
        """
        values = scipy.linalg.eigvals(self.matrix)
        return values[np.argsort(values.real, kind='stable')]


@dataclass(frozen=True)
class StateVector:
    components: np.ndarray

    def __post_init__(self):
        components = np.array(self.components, dtype=float)
        if components.ndim != 1 or components.size == 0:
            raise DimensionException('A state must be a nonempty vector, got shape {:s}.'.format(
                str(components.shape)
            ))
        if not np.all(np.isfinite(components)):
            raise ParameterException('A state must have finite components.')
        components.flags.writeable = False
        object.__setattr__(self, 'components', components)

    @property
    def n(self) -> int:
        return self.components.size


StateLike = Union[StateVector, np.ndarray, list]


def _state(psi: StateLike) -> StateVector:
    return psi if isinstance(psi, StateVector) else StateVector(psi)


def _check_dimensions(n: int, theta: MetricCandidate):
    if n != theta.n:
        raise DimensionException('Dimension {:d} does not match metric of dimension {:d}.'.format(n, theta.n))


def quasi_hermiticity_residual(hamiltonian: Observable, theta: MetricCandidate) -> float:
    """
    ‖HᵀΘ − ΘH‖∞ / (‖H‖∞ ‖Θ‖∞). It vanishes when H is Hermitian with respect to Θ.

    Example:

    >>> from psmear.MetricCandidate import MetricCandidate
    >>> from psmear.hermite_core import build_position_matrix
    >>> q = Observable(build_position_matrix(4).array)
    >>> round(quasi_hermiticity_residual(q, MetricCandidate(np.eye(4))), 12)
    1.333333333333
    """
    _check_dimensions(hamiltonian.n, theta)
    h = hamiltonian.matrix
    norm = max(max_norm(h) * theta.norm(), np.finfo(float).tiny)
    return max_norm(h.T @ theta.matrix - theta.matrix @ h) / norm


def pullback_hamiltonian(h, dyson_map: DysonMap, label: str = '') -> Observable:
    """
    H = Ω⁻¹ h Ω for a symmetric h of the physical space. H has the spectrum of h and is Hermitian with respect
    to ΩᵀΩ.

    Example:

    >>> from psmear.hermitization import omega0
    >>> pullback_hamiltonian(np.diag([1., 2., 3.]), omega0(3)).matrix.diagonal().tolist()
    [1.0, 2.0, 3.0]

    :param h: Symmetric matrix.
    :param dyson_map: Invertible map Ω.
    :param label: Free text carried by the result.
    :return: The admissible :py:class:`~psmear.dynamics.Observable`.
    :raises ParameterException: If h is not symmetric.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionException('Hamiltonian must be square, got shape {:s}.'.format(str(h.shape)))
    if max_norm(h - h.T) > SYMMETRY_TOLERANCE * max_norm(h):
        raise ParameterException('Hamiltonian of the physical space must be symmetric.')
    return Observable(dyson_map.pull_back(h), label)


def _symmetric_unit(n: int, i: int, j: int) -> np.ndarray:
    element = np.zeros((n, n))
    element[i, j] = 1.
    element[j, i] = 1.
    return element


def admissible_hamiltonian_basis(theta: MetricCandidate) -> List[Observable]:
    """
    Basis of the N(N+1)/2 dimensional space of all H with HᵀΘ = ΘH, obtained as Ω⁻¹ S Ω over the symmetric unit
    matrices S. Every element is scaled to a largest entry of magnitude one and labelled by the indices of S.

    Example:

    >>> from psmear.dieudonne_solver import theta0
    >>> basis = admissible_hamiltonian_basis(theta0(3))
    >>> [element.label for element in basis]
    ['S(0,0)', 'S(0,1)', 'S(0,2)', 'S(1,1)', 'S(1,2)', 'S(2,2)']

    :raises NotPositiveDefiniteException: If Θ is not positive definite.
    """
    dyson_map = cholesky_factor(theta)
    n = theta.n
    basis = []
    for i in range(n):
        for j in range(i, n):
            matrix = dyson_map.pull_back(_symmetric_unit(n, i, j))
            basis.append(Observable(matrix / np.max(np.abs(matrix)), 'S({:d},{:d})'.format(i, j)))
    logger.debug('Built %d admissible Hamiltonians of dimension %d.', len(basis), n)
    return basis


def admissible_dimension(theta: MetricCandidate) -> int:
    """
    Dimension of the solution space of HᵀΘ = ΘH from the nullspace of the vectorized constraint. The constraint
    is solved for G = S⁻¹HS with the Jacobi scaling S = diag(Θ_kk^(-1/2)), which turns it into GᵀΘ' = Θ'G with
    the unit-diagonal Θ' = SΘS.

    Example:

    >>> from psmear.dieudonne_solver import theta1
    >>> admissible_dimension(theta1(0.2))
    10
    """
    diagonal = theta.matrix.diagonal()
    if np.any(diagonal <= 0.):
        raise NumericalException('Jacobi scaling needs a positive diagonal.')
    scale = 1. / np.sqrt(diagonal)
    scaled = scale[:, None] * theta.matrix * scale[None, :]

    n = theta.n
    columns = []
    for k in range(n):
        for m in range(n):
            element = np.zeros((n, n))
            element[k, m] = 1.
            columns.append((element.T @ scaled - scaled @ element).ravel())
    vectors = scipy.linalg.null_space(np.array(columns).T, rcond=NULLSPACE_RCOND)
    logger.debug('Constraint nullspace of dimension %d for metric of dimension %d.', vectors.shape[1], n)
    return vectors.shape[1]


def theta_adjoint(hamiltonian: Observable, theta: MetricCandidate) -> Observable:
    """
    H‡ = Θ⁻¹HᵀΘ, the adjoint with respect to the Θ-weighted inner product. H is admissible iff H‡ = H.

    The adjoint is evaluated as Ω⁻¹(ΩHΩ⁻¹)ᵀΩ with the Cholesky map of Θ.
    """
    _check_dimensions(hamiltonian.n, theta)
    dyson_map = cholesky_factor(theta)
    physical = dyson_map.conjugate(hamiltonian.matrix)
    return Observable(dyson_map.pull_back(physical.T), hamiltonian.label)


def is_real_spectrum(hamiltonian: Observable, tol: float = REAL_SPECTRUM_TOLERANCE) -> bool:
    """
    Example:

    >>> is_real_spectrum(Observable([[0., 1.], [2., 0.]]))
    True
    >>> is_real_spectrum(Observable([[0., 1.], [-2., 0.]]))
    False
    """
    values = hamiltonian.eigenvalues()
    radius = float(np.max(np.abs(values)))
    return bool(np.max(np.abs(values.imag)) <= tol * radius)


def inner_product(psi: StateLike, phi: StateLike, theta: MetricCandidate) -> float:
    """
    ψᵀΘφ, symmetric in its state arguments down to the last bit.

    Example:

    >>> from psmear.dieudonne_solver import theta1
    >>> inner_product([1., 0., 0., 0.], [1., 0., 0., 0.], theta1(0.3))
    1.0
    """
    psi = _state(psi).components
    phi = _state(phi).components
    _check_dimensions(psi.size, theta)
    _check_dimensions(phi.size, theta)
    return 0.5 * (float(psi @ (theta.matrix @ phi)) + float(phi @ (theta.matrix @ psi)))


def theta_norm(psi: StateLike, theta: MetricCandidate) -> float:
    """
    √(ψᵀΘψ).

    Example:

    >>> from psmear.dieudonne_solver import theta0
    >>> round(theta_norm([0., 0., 0., 1.], theta0(4)) ** -2, 10)
    48.0

    :raises NumericalException: If ψᵀΘψ is negative, which happens only for a metric that is not positive.
    """
    squared = inner_product(psi, psi, theta)
    if squared < 0.:
        raise NumericalException('Negative squared norm {:.6g}, the metric is not positive definite.'.format(
            squared
        ))
    return math.sqrt(squared)


def to_physical(psi: StateLike, dyson_map: DysonMap) -> StateVector:
    """
    The state Ωψ of the physical space. Its Euclidean geometry equals the Θ-geometry of ψ.
    """
    return StateVector(dyson_map.apply(_state(psi).components))
