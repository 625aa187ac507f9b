# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

"""
Command line front end. Every command writes plot-ready tables as CSV (default) or JSON, either to standard output
or to ``--output``. Tables besides the main one go to siblings ``<stem>_<name>`` of the output file.

Exit codes: 0 on success, 2 for invalid parameters or usage, 3 for numerical failures, 4 for I/O errors.

Example:

>>> from psmear.cli import main
>>> main(['quadrature', '--n', '1'])
node,weight
0,1.77245385090552
0
"""

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from psmear import PROJECT, __version__
from psmear.BandMatrix import BandMatrix
from psmear.DysonMap import DysonMap
from psmear.MetricCandidate import MetricCandidate, max_norm
from psmear.PsmearException import DimensionException, NumericalException, ParameterException
from psmear.dieudonne_solver import theta0, theta1, theta2, theta4, metric_from_first_row, dieudonne_residual
from psmear.dynamics import pullback_hamiltonian, admissible_hamiltonian_basis, admissible_dimension, \
    quasi_hermiticity_residual, is_real_spectrum
from psmear.hermite_core import build_position_matrix, grid_points, raw_grid_points, hermite_zero_residuals
from psmear.hermitization import omega0, cholesky_factor, perturbative_omega, hermitized_position, approx_q1
from psmear.output.Output import Output, MAIN_TABLE
from psmear.output.OutputCsv import OutputCsv
from psmear.output.OutputJson import OutputJson
from psmear.positivity import DEFAULT_STEP, Lattice, positivity_check, positivity_boundary_1d, positivity_scan_2d, \
    refine_crossings, width_curve
from psmear.quadrature import gauss_hermite_rule, equidistant_compare
from psmear.util.file import resolve_output
from psmear.util.string import parse_number

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MU_RANGE = (-1.5, 1.5)
DEFAULT_P_RANGE = (-0.2, 1.2)
DEFAULT_FIGURE_MU_RANGE = (-0.6, 0.6)
DEFAULT_FIGURE_STEP = 0.005

SCAN_HEADER = ['mu', 'p', 'smallest_eigenvalue']

INTEGRANDS = {
    'one': lambda x: 1.,
    'x2': lambda x: x ** 2,
    'x4': lambda x: x ** 4,
    'cos': math.cos,
}


class Command(Enum):
    GRID = 'grid'
    METRIC = 'metric'
    POSITIVITY = 'positivity'
    SCAN = 'scan'
    FACTORIZE = 'factorize'
    HAMILTONIAN = 'hamiltonian'
    QUADRATURE = 'quadrature'
    FIGURES = 'figures'


class OutputFormat(Enum):
    CSV = 'csv'
    JSON = 'json'


@dataclass
class RunConfig:
    """
    Everything a command needs. Parameters not given on the command line keep their defaults
    mu = p = d = 0 and k = c = 1.
    """
    command: Command
    n: int = 4
    parameters: Dict[str, float] = field(default_factory=dict)
    family: str = 'theta1'
    lattice: Optional[Lattice] = None
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV
    values: Optional[List[float]] = None
    bracket: Optional[Tuple[float, float]] = None
    tol: float = DEFAULT_TOLERANCE
    method: str = 'cholesky'
    which: int = 1
    raw: bool = False
    basis: bool = False
    integrand: Optional[str] = None
    half_width: float = 6.
    refine_at: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise ParameterException('Dimension must be positive, got {:d}.'.format(self.n))
        if not self.tol > 0:
            raise ParameterException('Tolerance must be positive, got {:s}.'.format(repr(self.tol)))

    def parameter(self, name: str) -> float:
        return self.parameters.get(name, 1. if name in ('k', 'c') else 0.)


def _matrix_rows(array: np.ndarray) -> Tuple[List[str], List[list]]:
    header = ['row'] + ['col_{:d}'.format(j) for j in range(array.shape[1])]
    return header, [[i] + [float(value) for value in row] for i, row in enumerate(array)]


def _matrix_table(output: Output, name: str, array: np.ndarray):
    output.matrix(name, BandMatrix(array).to_dict())


def _summary_table(output: Output, rows: Sequence[Tuple[str, object]]):
    output.table('summary', ['quantity', 'value'], rows)


FOUR_DIMENSIONAL_FAMILIES = ('theta1', 'theta2', 'theta4')


def _check_family_dimension(config: RunConfig):
    if config.family in FOUR_DIMENSIONAL_FAMILIES and config.n != 4:
        raise ParameterException('Family {:s} is defined for dimension 4, got {:d}.'.format(config.family, config.n))


def _metric(config: RunConfig) -> MetricCandidate:
    _check_family_dimension(config)
    mu, p = config.parameter('mu'), config.parameter('p')
    families = {
        'theta0': lambda: theta0(config.n),
        'theta1': lambda: theta1(mu),
        'theta2': lambda: theta2(mu, p),
        'theta4': lambda: theta4(config.parameter('k'), mu, p, config.parameter('d')),
        'row': lambda: metric_from_first_row(build_position_matrix(config.n), _values(config)),
    }
    if config.family not in families:
        raise ParameterException('Unknown metric family: {:s}'.format(config.family))
    return families[config.family]()


def _mu_family(config: RunConfig) -> Callable[[float], MetricCandidate]:
    _check_family_dimension(config)
    p, k, d = config.parameter('p'), config.parameter('k'), config.parameter('d')
    families = {
        'theta1': theta1,
        'theta2': lambda mu: theta2(mu, p),
        'theta4': lambda mu: theta4(k, mu, p, d),
    }
    if config.family not in families:
        raise ParameterException('Family {:s} does not depend on mu.'.format(config.family))
    return families[config.family]


def _scan_family(config: RunConfig) -> Callable[[float, float], MetricCandidate]:
    _check_family_dimension(config)
    if config.family == 'theta2':
        return theta2
    if config.family == 'theta4':
        k, d = config.parameter('k'), config.parameter('d')
        return lambda mu, p: theta4(k, mu, p, d)
    raise ParameterException('Scans need a family of mu and p, got {:s}.'.format(config.family))


def _values(config: RunConfig) -> List[float]:
    if config.values is None:
        raise ParameterException('Command needs --values.')
    return config.values


def _lattice(config: RunConfig) -> Lattice:
    if config.lattice is not None:
        return config.lattice
    return Lattice(*DEFAULT_MU_RANGE, DEFAULT_STEP, *DEFAULT_P_RANGE, DEFAULT_STEP)


def run_grid(config: RunConfig, output: Output):
    grid = raw_grid_points(config.n) if config.raw else grid_points(config.n)
    residuals = hermite_zero_residuals(grid)
    rows = [(j, x, residual) for j, (x, residual) in enumerate(zip(grid.points, residuals))]
    output.table(MAIN_TABLE, ['j', 'x', 'residual'], rows)


def run_metric(config: RunConfig, output: Output):
    theta = _metric(config)
    report = positivity_check(theta)
    output.matrix(MAIN_TABLE, theta.to_band_matrix().to_dict())
    _summary_table(output, [
        ('dieudonne_residual', dieudonne_residual(build_position_matrix(theta.n), theta)),
        ('bandwidth', theta.measured_bandwidth()),
        ('smallest_eigenvalue', report.smallest_eigenvalue),
        ('is_positive', report.is_positive),
    ])


def run_positivity(config: RunConfig, output: Output):
    if config.bracket is not None:
        boundary = positivity_boundary_1d(_mu_family(config), config.bracket, config.tol)
        output.table(MAIN_TABLE, ['boundary'], [(boundary,)])
        return
    report = positivity_check(_metric(config))
    output.table(MAIN_TABLE, ['index', 'eigenvalue'], list(enumerate(report.eigenvalues)))
    _summary_table(output, [
        ('smallest_eigenvalue', report.smallest_eigenvalue),
        ('scaled_smallest_eigenvalue', report.scaled_smallest_eigenvalue),
        ('is_positive', report.is_positive),
    ])


def run_scan(config: RunConfig, output: Output):
    family = _scan_family(config)
    scan = positivity_scan_2d(_lattice(config), family)
    output.table(MAIN_TABLE, SCAN_HEADER, scan.records())
    output.table('boundary', ['mu', 'p'], scan.boundary)
    if config.refine_at is not None:
        crossings = refine_crossings(scan, config.refine_at, config.tol, family)
        output.table('crossings', ['mu', 'p'], [(config.refine_at, p) for p in crossings])


def _dyson_map(config: RunConfig) -> Tuple[DysonMap, Optional[MetricCandidate]]:
    if config.method == 'omega0':
        return omega0(config.n, config.parameter('c')), None
    if config.method == 'perturbative':
        if config.n != 4:
            raise ParameterException('The perturbative map is defined for dimension 4, got {:d}.'.format(config.n))
        mu = config.parameter('mu')
        return perturbative_omega(mu), theta1(mu)
    if config.method == 'cholesky':
        theta = _metric(config)
        return cholesky_factor(theta), theta
    raise ParameterException('Unknown factorization method: {:s}'.format(config.method))


def run_factorize(config: RunConfig, output: Output):
    dyson_map, theta = _dyson_map(config)
    position = hermitized_position(build_position_matrix(dyson_map.n), dyson_map)
    output.matrix(MAIN_TABLE, dyson_map.to_dict(), 'omega')
    _matrix_table(output, 'inverse', dyson_map.inverse)
    _matrix_table(output, 'position', position.matrix)
    summary = [('source', dyson_map.source.value), ('inverse_residual', dyson_map.inverse_residual()),
               ('asymmetry', position.asymmetry)]
    if theta is not None:
        summary.append(('metric_residual', max_norm(dyson_map.metric().matrix - theta.matrix) / theta.norm()))
    summary.extend(('eigenvalue_{:d}'.format(j), value) for j, value in enumerate(position.eigenvalues()))
    _summary_table(output, summary)


def run_hamiltonian(config: RunConfig, output: Output):
    theta = _metric(config)
    if config.basis:
        rows = []
        for element in admissible_hamiltonian_basis(theta):
            rows.extend([element.label] + row for row in _matrix_rows(element.matrix)[1])
        output.table(MAIN_TABLE, ['label'] + _matrix_rows(np.zeros((theta.n, theta.n)))[0], rows)
        _summary_table(output, [('admissible_dimension', admissible_dimension(theta))])
        return

    values = _values(config)
    if len(values) != theta.n:
        raise DimensionException('Expected {:d} diagonal values, got {:d}.'.format(theta.n, len(values)))
    hamiltonian = pullback_hamiltonian(np.diag(values), cholesky_factor(theta), 'diagonal')
    _matrix_table(output, MAIN_TABLE, hamiltonian.matrix)
    summary = [('quasi_hermiticity_residual', quasi_hermiticity_residual(hamiltonian, theta)),
               ('real_spectrum', is_real_spectrum(hamiltonian))]
    summary.extend(('eigenvalue_{:d}'.format(j), float(value.real))
                   for j, value in enumerate(hamiltonian.eigenvalues()))
    _summary_table(output, summary)


def run_quadrature(config: RunConfig, output: Output):
    rule = gauss_hermite_rule(config.n)
    output.table(MAIN_TABLE, ['node', 'weight'], rule.records())
    if config.integrand is not None:
        if config.integrand not in INTEGRANDS:
            raise ParameterException('Unknown integrand: {:s}'.format(config.integrand))
        record = equidistant_compare(INTEGRANDS[config.integrand], config.n, config.half_width).to_dict()
        output.table('comparison', list(record), [list(record.values())])


def _figure_axis(config: RunConfig) -> np.ndarray:
    if config.lattice is not None:
        return config.lattice.mu_axis()
    return Lattice(*DEFAULT_FIGURE_MU_RANGE, DEFAULT_FIGURE_STEP, 0., 0., DEFAULT_FIGURE_STEP).mu_axis()


def emit_figure_data(config: RunConfig, output: Output):
    """
    Figure 1: eigenvalues of the first-order Hermitized position matrix next to the exact grid. Figure 2: eigenvalues
    of the tridiagonal metric. Figure 3: the scan of the pentadiagonal metric, its boundary and the width of the
    positive μ-interval as a function of p.
    """
    if config.which not in (1, 2, 3):
        raise ParameterException('Figure must be 1, 2 or 3, got {:d}.'.format(config.which))
    if config.n != 4:
        raise ParameterException('Figures are defined for dimension 4, got {:d}.'.format(config.n))

    if config.which == 1:
        exact = [float(x) for x in grid_points(4).points]
        header = ['mu'] + ['eig_{:d}'.format(j) for j in range(1, 5)] + ['exact_{:d}'.format(j) for j in range(1, 5)]
        rows = [[float(mu)] + approx_q1(float(mu)).eigenvalues().tolist() + exact for mu in _figure_axis(config)]
        output.table(MAIN_TABLE, header, rows)
    elif config.which == 2:
        header = ['mu'] + ['eig_{:d}'.format(j) for j in range(1, 5)]
        rows = [[float(mu)] + positivity_check(theta1(float(mu))).eigenvalues.tolist() for mu in _figure_axis(config)]
        output.table(MAIN_TABLE, header, rows)
    else:
        lattice = _lattice(config)
        scan = positivity_scan_2d(lattice)
        output.table(MAIN_TABLE, SCAN_HEADER, scan.records())
        output.table('boundary', ['mu', 'p'], scan.boundary)
        p_values = [p for p in scan.p_axis if positivity_check(theta2(0., float(p))).is_positive]
        output.table('width', ['p', 'width'], width_curve(p_values, config.tol))


COMMANDS = {
    Command.GRID: run_grid,
    Command.METRIC: run_metric,
    Command.POSITIVITY: run_positivity,
    Command.SCAN: run_scan,
    Command.FACTORIZE: run_factorize,
    Command.HAMILTONIAN: run_hamiltonian,
    Command.QUADRATURE: run_quadrature,
    Command.FIGURES: emit_figure_data,
}


def _error(message: str):
    print('{:s}: error: {:s}'.format(PROJECT, ' '.join(message.split())), file=sys.stderr)


def run(config: RunConfig) -> int:
    """
    Dispatches the command and writes its tables once it finished.

    :return: The exit code.
    """
    try:
        output_class = OutputJson if config.format == OutputFormat.JSON else OutputCsv
        with output_class(resolve_output(config.output)) as output:
            COMMANDS[config.command](config, output)
    except (ParameterException, DimensionException) as exception:
        _error(str(exception))
        return EXIT_USAGE
    except NumericalException as exception:
        _error(str(exception))
        return EXIT_NUMERICAL
    except OSError as exception:
        _error(str(exception))
        return EXIT_IO
    return EXIT_OK


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except ParameterException as exception:
        raise argparse.ArgumentTypeError(str(exception))


def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    common.add_argument('--output', default=None, help='Output file. Relative paths are placed below '
                                                       '$PSMEAR_OUTPUT_DIR if set. Standard output if omitted.')
    common.add_argument('--verbose', action='store_true', help='Log debug messages to standard error.')
    common.add_argument('--n', type=int, default=4, help='Dimension.')
    for name in ('mu', 'p', 'k', 'd', 'c'):
        common.add_argument('--' + name, type=_number, default=None, help='Metric parameter, decimal or a/b.')
    common.add_argument('--family', default=None, choices=['theta0', 'theta1', 'theta2', 'theta4', 'row'])
    common.add_argument('--tol', type=_number, default=DEFAULT_TOLERANCE, help='Bisection tolerance.')

    parser = argparse.ArgumentParser(prog=PROJECT, description='Smeared coordinates on Hermite grids.')
    parser.add_argument('--version', action='version', version='{:s} {:s}'.format(PROJECT, __version__))
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    grid = commands.add_parser('grid', parents=[common], help='Grid points x with H_N(x/2) = 0.')
    grid.add_argument('--raw', action='store_true', help='Use the non-symmetric position matrix.')

    metric = commands.add_parser('metric', parents=[common], help='Metric candidate and its checks.')
    metric.add_argument('--values', type=_number, nargs='+', help='First row for the family "row".')

    positivity = commands.add_parser('positivity', parents=[common], help='Positivity check or boundary.')
    positivity.add_argument('--bracket', type=_number, nargs=2, help='Bisect for the boundary in mu.')

    for name, text in (('scan', 'Smallest eigenvalue on a (mu, p) lattice.'), ('figures', 'Plot-ready data.')):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('--mu-range', type=_number, nargs=2)
        sub.add_argument('--p-range', type=_number, nargs=2)
        sub.add_argument('--step', type=_number, default=None, help='Lattice step of both axes.')
        if name == 'scan':
            sub.add_argument('--refine-at', type=_number, default=None, help='Refine crossings in p at this mu.')
        else:
            sub.add_argument('--which', type=int, choices=[1, 2, 3], required=True)

    factorize = commands.add_parser('factorize', parents=[common], help='Dyson map of a metric.')
    factorize.add_argument('--method', choices=['cholesky', 'omega0', 'perturbative'], default='cholesky')
    factorize.add_argument('--values', type=_number, nargs='+', help='First row for the family "row".')

    hamiltonian = commands.add_parser('hamiltonian', parents=[common], help='Admissible Hamiltonians.')
    hamiltonian.add_argument('--values', type=_number, nargs='+', help='Diagonal of the physical Hamiltonian.')
    hamiltonian.add_argument('--basis', action='store_true', help='Emit a basis of all admissible Hamiltonians.')

    quadrature = commands.add_parser('quadrature', parents=[common], help='Gauss-Hermite rule.')
    quadrature.add_argument('--compare', choices=sorted(INTEGRANDS), default=None,
                            help='Compare with the equidistant trapezoid sum for this integrand.')
    quadrature.add_argument('--half-width', type=_number, default=6.)
    return parser


def _config_lattice(args, command: Command) -> Optional[Lattice]:
    if command not in (Command.SCAN, Command.FIGURES):
        return None
    if args.mu_range is None and args.p_range is None and args.step is None:
        return None
    figure = command == Command.FIGURES and args.which in (1, 2)
    step = args.step if args.step is not None else (DEFAULT_FIGURE_STEP if figure else DEFAULT_STEP)
    mu_range = args.mu_range or (DEFAULT_FIGURE_MU_RANGE if figure else DEFAULT_MU_RANGE)
    p_range = args.p_range or ((0., 0.) if figure else DEFAULT_P_RANGE)
    return Lattice(mu_range[0], mu_range[1], step, p_range[0], p_range[1], step)


def config_from_args(args) -> RunConfig:
    command = Command(args.command)
    parameters = {name: getattr(args, name) for name in ('mu', 'p', 'k', 'd', 'c') if getattr(args, name) is not None}
    default_family = 'theta2' if command in (Command.SCAN, Command.FIGURES) else 'theta1'
    return RunConfig(
        command=command,
        n=args.n,
        parameters=parameters,
        family=args.family or default_family,
        lattice=_config_lattice(args, command),
        output=args.output,
        format=OutputFormat(args.format),
        values=getattr(args, 'values', None),
        bracket=tuple(args.bracket) if getattr(args, 'bracket', None) else None,
        tol=args.tol,
        method=getattr(args, 'method', 'cholesky'),
        which=getattr(args, 'which', 1),
        raw=getattr(args, 'raw', False),
        basis=getattr(args, 'basis', False),
        integrand=getattr(args, 'compare', None),
        half_width=getattr(args, 'half_width', 6.),
        refine_at=getattr(args, 'refine_at', None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = create_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        config = config_from_args(args)
    except ParameterException as exception:
        _error(str(exception))
        return EXIT_USAGE
    logger.debug('Running %s with %s.', config.command.value, config)
    return run(config)
