# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import math

import numpy as np
import pytest

import psmear
from psmear.MetricCandidate import MetricCandidate
from psmear.PsmearException import ParameterException
from psmear.dieudonne_solver import theta0, theta1, theta2, metric_from_grid_weights
from psmear.hermite_core import EigensolverException, build_position_matrix, grid_points
from psmear.positivity import positivity_check, positivity_boundary_1d, positivity_interval, width_curve, \
    boundary_slope, boundary_lines, secular_det, secular_polynomial, secular_polynomial_scale, Lattice, \
    DomainScan, positivity_scan_2d, refine_crossings, extract_boundary, jacobi_scaled_verdicts, is_positive, \
    POSITIVITY_THRESHOLD, NoSignChangeException

MU_0 = 1. / math.sqrt(6. + 2. * math.sqrt(6.))
P_UPPER = 1. / (2. * math.sqrt(6.) - 4.)
P_LOWER = 1. - P_UPPER
P_WIDEST = 1. / (2. + math.sqrt(12.))
SMALL_GRID_POINT = math.sqrt(6. - 2. * math.sqrt(6.))
LARGE_GRID_POINT = math.sqrt(6. + 2. * math.sqrt(6.))


def test_diagonal_metric_is_positive():
    report = positivity_check(theta1(0.))

    assert report.is_positive
    assert report.smallest_eigenvalue == pytest.approx(1 / 48)
    assert report.eigenvalues == pytest.approx([1 / 48, 1 / 8, 1 / 2, 1.])


def test_theta1_inside_and_outside():
    assert positivity_check(theta1(0.25)).is_positive
    report = positivity_check(theta1(0.5))
    assert not report.is_positive
    assert report.smallest_eigenvalue < 0.
    assert report.scaled_smallest_eigenvalue < 0.


def test_verdict_is_scale_invariant():
    assert positivity_check(theta0(16)).is_positive

    rng = np.random.default_rng(7)
    q = build_position_matrix(16)
    assert positivity_check(metric_from_grid_weights(q, rng.uniform(0.5, 2., size=16))).is_positive
    weights = rng.uniform(0.5, 2., size=16)
    weights[5] = -0.5
    assert not positivity_check(metric_from_grid_weights(q, weights)).is_positive


def test_boundary_of_tridiagonal_metric():
    assert positivity_boundary_1d(theta1, (0., 1.), 1e-9) == pytest.approx(0.3029054464, abs=1e-8)
    assert positivity_boundary_1d(theta1, (0., 1.), 1e-11) == pytest.approx(MU_0, abs=1e-10)


def test_boundary_is_symmetric():
    tol = 1e-10
    upper = positivity_boundary_1d(theta1, (0., 1.), tol)
    lower = positivity_boundary_1d(theta1, (-1., 0.), tol)

    assert lower == pytest.approx(-0.3029054464, abs=1e-8)
    assert abs(upper + lower) <= tol


def test_boundary_equals_inverse_largest_grid_point():
    assert MU_0 == pytest.approx(1. / grid_points(4)[-1], abs=1e-12)
    assert positivity_boundary_1d(theta1, (0., 1.), 1e-14) == pytest.approx(1. / grid_points(4)[-1], abs=1e-12)


def test_pentadiagonal_boundary_at_half():
    mu_axis = np.arange(0., 2., 1e-3)
    smallest = [positivity_check(theta2(mu, 0.5)).smallest_eigenvalue for mu in mu_axis]
    last_positive = mu_axis[np.nonzero(np.array(smallest) > 0.)[0][-1]]

    boundary = positivity_boundary_1d(lambda mu: theta2(mu, 0.5), (0., 2.), 1e-10)

    assert last_positive <= boundary <= last_positive + 1e-3
    assert boundary == pytest.approx((3. - math.sqrt(6.)) / SMALL_GRID_POINT, abs=1e-9)


def test_no_sign_change():
    with pytest.raises(NoSignChangeException):
        positivity_boundary_1d(theta1, (0., 0.2), 1e-9)
    with pytest.raises(NoSignChangeException):
        positivity_interval(lambda mu: theta2(mu, 1.5), 1., 1e-9)


@pytest.mark.parametrize('tol', [0., -1e-3])
def test_tolerance_must_be_positive(tol):
    with pytest.raises(ParameterException):
        positivity_boundary_1d(theta1, (0., 1.), tol)


def test_positivity_interval():
    lower, upper = positivity_interval(lambda mu: theta2(mu, 0.), 2., 1e-10)

    assert (lower, upper) == (pytest.approx(-MU_0, abs=1e-9), pytest.approx(MU_0, abs=1e-9))


def test_width_grows_then_shrinks():
    p_values = np.linspace(0.02, 0.98, 49)

    curve = width_curve(p_values, 1e-7)
    rising = [width for p, width in curve if p < P_WIDEST]
    falling = [width for p, width in curve if p > P_WIDEST]

    assert len(curve) == 49
    assert all(b >= a for a, b in zip(rising, rising[1:]))
    assert all(b <= a for a, b in zip(falling, falling[1:]))
    assert max(curve, key=lambda point: point[1])[0] == pytest.approx(0.18)


def test_width_matches_nodal_lines():
    for p, width in width_curve([0.05, 0.5, 1.], 1e-10):
        expected = 2. * min(line.mu(p) for line in boundary_lines() if line.sign * line.grid_point > 0)
        assert width == pytest.approx(expected, abs=1e-8)


def test_boundary_slopes():
    upper_slope = (SMALL_GRID_POINT ** 2 - 2.) / SMALL_GRID_POINT
    lower_slope = (LARGE_GRID_POINT ** 2 - 2.) / LARGE_GRID_POINT

    assert boundary_slope(0.5, 0.7, 1e-11) == pytest.approx(upper_slope, abs=1e-6)
    assert boundary_slope(-0.05, 0.1, 1e-11) == pytest.approx(lower_slope, abs=1e-6)
    assert upper_slope == pytest.approx(-0.856746, abs=1e-6)
    assert lower_slope == pytest.approx(2.695549, abs=1e-6)
    with pytest.raises(ParameterException):
        boundary_slope(0.5, 0.5, 1e-9)


def test_boundary_lines():
    lines = boundary_lines()

    assert sorted(line.p_vertex for line in lines) == pytest.approx([P_LOWER, P_LOWER, P_UPPER, P_UPPER])
    assert P_UPPER == pytest.approx(1.112372435, abs=1e-9)
    assert P_LOWER == pytest.approx(-0.1123724357, abs=1e-10)
    for line in lines:
        assert line.mu(line.p_vertex) == pytest.approx(0., abs=1e-15)
        assert secular_det(line.mu(0.3), 0.3) == pytest.approx(0., abs=1e-14)


def test_secular_determinant_examples():
    assert secular_det(0., 0.) == pytest.approx(1 / 768, rel=1e-15)
    assert secular_polynomial(0., 0.) == 1 / 768
    assert abs(secular_det(MU_0, 0.)) < 1e-12
    assert secular_det(0.3, 0.7) == pytest.approx(secular_polynomial(0.3, 0.7),
                                                  abs=1e-13 * secular_polynomial_scale(0.3, 0.7))


def test_secular_determinant_matches_polynomial():
    rng = np.random.default_rng(768)

    for mu, p in rng.uniform(-2., 2., size=(1000, 2)):
        scale = secular_polynomial_scale(mu, p)
        assert abs(secular_det(mu, p) - secular_polynomial(mu, p)) <= 1e-12 * scale
        assert secular_det(-mu, p) == pytest.approx(secular_det(mu, p), abs=1e-13 * scale)


def test_secular_polynomial_factorizes():
    rng = np.random.default_rng(5)

    for mu, p in rng.uniform(-2., 2., size=(50, 2)):
        product = np.prod([(1. + p * (x ** 2 - 2.)) ** 2 - mu ** 2 * x ** 2
                           for x in (SMALL_GRID_POINT, LARGE_GRID_POINT)]) / 768
        assert secular_polynomial(mu, p) == pytest.approx(product, abs=1e-12 * secular_polynomial_scale(mu, p))


def test_lattice_axes():
    lattice = Lattice(-1.5, 1.5, 0.01, -0.2, 1.2, 0.01)

    assert lattice.mu_axis().size == 301
    assert lattice.p_axis().size == 141
    assert Lattice(0., 0., 0.1, 0., 0., 0.1).p_axis().tolist() == [0.]


@pytest.mark.parametrize('bounds', [
    (0., 1., 0., 0., 1., 0.1),
    (0., 1., 0.1, 0., 1., -0.1),
    (1., 0., 0.1, 0., 1., 0.1),
    (0., math.inf, 0.1, 0., 1., 0.1),
    (0., 1., 0.1, math.nan, 1., 0.1),
])
def test_invalid_lattices_are_rejected(bounds):
    with pytest.raises(ParameterException):
        Lattice(*bounds)


def test_scan_shape_mismatch():
    with pytest.raises(ParameterException):
        DomainScan(np.zeros(3), np.zeros(2), np.zeros((3, 2)), np.zeros((3, 2), dtype=bool))
    with pytest.raises(ParameterException):
        DomainScan(np.zeros(3), np.zeros(2), np.zeros((2, 3)), np.zeros((3, 2), dtype=bool))


def test_extract_boundary_interpolates():
    values = np.array([[1., -1., -3.], [1., 1., -1.]])

    boundary = extract_boundary(np.array([0., 1., 2.]), np.array([0., 1.]), values, values > 0.)

    assert boundary == [(0.5, 0.), (1., 0.5), (1.5, 1.)]


@pytest.fixture(scope='module')
def full_scan():
    return positivity_scan_2d(Lattice(-1.5, 1.5, 0.01, -0.2, 1.2, 0.01))


def test_scan_values(full_scan):
    assert full_scan.values.shape == (141, 301)
    assert full_scan.value_at(0., 0.) == pytest.approx(1 / 48, abs=1e-12)
    assert full_scan.value_at(0., 1.2) < 0.
    assert len(full_scan.records()) == 141 * 301


def test_scan_boundary_passes_the_vertices(full_scan):
    def distance(point, target):
        return math.hypot(point[0] - target[0], point[1] - target[1])

    assert min(distance(point, (0., P_UPPER)) for point in full_scan.boundary) < 0.01
    assert min(distance(point, (0., P_LOWER)) for point in full_scan.boundary) < 0.01


def test_scan_boundary_lies_on_nodal_lines(full_scan):
    lines = boundary_lines()

    assert full_scan.boundary
    for mu, p in full_scan.boundary:
        assert min(abs(mu - line.mu(p)) for line in lines) < 0.05
        assert full_scan.mu_axis[0] <= mu <= full_scan.mu_axis[-1]


def test_refined_crossings(full_scan):
    crossings = refine_crossings(full_scan, 0., 1e-10)

    assert sorted(crossings) == [pytest.approx(P_LOWER, abs=1e-4), pytest.approx(P_UPPER, abs=1e-4)]


def test_refined_crossings_on_fine_lattice():
    scan = positivity_scan_2d(Lattice(-0.01, 0.01, 1e-3, -0.2, 1.2, 1e-3))

    crossings = sorted(refine_crossings(scan, 0., 1e-12))

    assert crossings[0] == pytest.approx(-0.1123724357, abs=1e-9)
    assert crossings[1] == pytest.approx(1.112372435, abs=1e-9)


def test_sequential_and_parallel_scans_agree(monkeypatch):
    lattice = Lattice(-1., 1., 0.1, 0., 1., 0.1)
    monkeypatch.setattr(psmear, 'scan_workers', 3)
    parallel = positivity_scan_2d(lattice)
    monkeypatch.setattr(psmear, 'parallel_scans', False)
    sequential = positivity_scan_2d(lattice)

    assert parallel.values == pytest.approx(sequential.values, abs=1e-15)
    assert parallel.boundary == sequential.boundary


def _nearly_singular(c):
    return MetricCandidate([[1., c], [c, 1.]])


def test_verdicts_of_a_stack():
    stack = np.array([theta1(0.25).matrix, theta1(0.5).matrix, np.diag([1., 0., 1., 1.])])

    smallest, positive = jacobi_scaled_verdicts(stack)

    assert positive.tolist() == [True, False, False]
    assert smallest[0] == pytest.approx(positivity_check(theta1(0.25)).scaled_smallest_eigenvalue, abs=1e-14)
    assert smallest[2] == -math.inf


def test_bisection_agrees_with_check():
    boundary = positivity_boundary_1d(theta1, (0., 1.), 1e-13)

    assert positivity_check(theta1(boundary - 1e-11)).is_positive
    assert not positivity_check(theta1(boundary + 1e-11)).is_positive
    assert is_positive(theta1(boundary - 1e-11))
    assert not is_positive(theta1(boundary + 1e-11))


def test_threshold_band_is_not_positive():
    report = positivity_check(_nearly_singular(1. - 1e-14))

    assert report.smallest_eigenvalue > 0.
    assert not report.is_positive
    assert not is_positive(_nearly_singular(1. - 1e-14))


def test_bisection_uses_the_threshold():
    edge = (1. - POSITIVITY_THRESHOLD) / (1. + POSITIVITY_THRESHOLD)

    boundary = positivity_boundary_1d(_nearly_singular, (0., 1. - 1e-14), 1e-15)

    assert boundary == pytest.approx(edge, abs=1e-13)


def test_scan_boundary_uses_the_threshold():
    def family(mu, p):
        return _nearly_singular(1. - 1e-14 if mu > 0.25 else 0.)

    scan = positivity_scan_2d(Lattice(-1., 1., 0.5, 0., 1., 0.5), family)

    assert np.all(scan.values > 0.)
    assert scan.positive[:, :3].all()
    assert not scan.positive[:, 3:].any()
    assert len(scan.boundary) == 3
    assert all(0. <= mu <= 0.5 for mu, _ in scan.boundary)
    assert [p for _, p in scan.boundary] == [0., 0.5, 1.]


def _failing_eigensolver(*args, **kwargs):
    raise np.linalg.LinAlgError('Eigenvalues did not converge')


def test_scan_eigensolver_failure(monkeypatch):
    monkeypatch.setattr(np.linalg, 'eigvalsh', _failing_eigensolver)

    with pytest.raises(EigensolverException, match='did not converge'):
        positivity_scan_2d(Lattice(-1., 1., 0.5, 0., 1., 0.5))
    monkeypatch.setattr(psmear, 'scan_workers', 2)
    with pytest.raises(EigensolverException):
        positivity_scan_2d(Lattice(-1., 1., 0.5, 0., 1., 0.5))


def test_bisection_eigensolver_failure(monkeypatch):
    monkeypatch.setattr(np.linalg, 'eigvalsh', _failing_eigensolver)

    with pytest.raises(EigensolverException):
        positivity_boundary_1d(theta1, (0., 1.), 1e-9)
