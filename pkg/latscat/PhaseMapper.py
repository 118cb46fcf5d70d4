import logging
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy import ndimage

from latscat.AngularScan import AngularScan
from latscat.ChainSpec import ChainSpec
from latscat.DisorderSpec import DisorderSpec
from latscat.ExactDiagonalizer import ExactDiagonalizer
from latscat.LatScatException import (ConstraintViolationError, NoDipError,
                                      NumericalError)
from latscat.LatScatObject import LatScatObject
from latscat.PhaseGrid import GridAxis, PhaseGrid
from latscat.Scattering import Scattering

logger = logging.getLogger(__name__)

# one solver per worker process; its sector cache is reused across cells
_solver = None


def _worker_solver(tol: float) -> ExactDiagonalizer:
    global _solver
    if _solver is None or _solver.tol != tol:
        _solver = ExactDiagonalizer(tol=tol)
    return _solver


def _evaluate_cell(task: tuple) -> dict:
    spec, grand_canonical, options = task
    record = {'R_max': None, 'W_R': None, 'sum_dd': None, 'phi': None,
              'K_b': None, 'label': '', 'error_flag': '', 'bosons': None}
    try:
        solver = _worker_solver(options['tol'])
        if grand_canonical:
            state = solver.grand_canonical(spec, spec.mu,
                                           options['max_filling'])
        else:
            state = solver.ground_state(spec)
        record['bosons'] = state.spec.bosons
        record['sum_dd'] = float(np.trace(state.dd))
        scan = AngularScan.from_ed(state,
                                   points_per_pi=options['points_per_pi'])
        record['R_max'] = float(np.max(scan.values))
        if spec.boundary == 'periodic' and state.spec.bosons:
            estimate = Scattering.luttinger_parameter(
                state.dd, np.arange(spec.sites))
            record['K_b'] = estimate.value
        try:
            record['W_R'] = scan.extract_summary().w_r
        except NoDipError as error:
            logger.debug('no dip for %r: %s', spec, error)
    except NumericalError as error:
        record['error_flag'] = type(error).__name__
        logger.warning('cell %r failed: %s', spec, error)
    return record


class PhaseThresholds(LatScatObject):
    '''
    High/low boundaries for R_max and W_R.
    '''

    def __init__(self, r_max: float, w_r: float, source: str = 'supplied'):
        super().__init__()
        if not (r_max > 0 and w_r > 0):
            raise ConstraintViolationError(
                f'thresholds must be positive, got R_max {r_max}, W_R {w_r}')
        self._r_max = float(r_max)
        self._w_r = float(w_r)
        self._source = source
        self._data = {'R_max': self._r_max, 'W_R': self._w_r,
                      'source': source}

    @property
    def r_max(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._r_max

    @property
    def w_r(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._w_r

    @property
    def source(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._source


class PhaseMapper:
    '''
    Parameter sweeps of exact ground states and their angular scans, with
    SF/MI/BG classification of the resulting maps.

    All couplings are in units of 2J of the template chain.
    '''

    LABELS = ('SF', 'MI', 'BG')
    UNCLASSIFIED = 'unclassified'

    def __init__(
                self,
                jobs: int = 1,
                tol: float = 1e-10,
                points_per_pi: int = 256,
                max_filling: float = 1.5
            ) -> None:
        '''
        :param int jobs: (optional) worker processes; 1 runs in-process.
        :param float tol: (optional) eigensolver residual bound.
        :param int points_per_pi: (optional) angular resolution of the
            per-cell scans.
        :param float max_filling: (optional) largest density tried by the
            grand-canonical search.
        '''
        if jobs < 1:
            raise ConstraintViolationError(f'jobs >= 1 required, got {jobs}')
        self._jobs = int(jobs)
        self._options = {'tol': tol, 'points_per_pi': int(points_per_pi),
                         'max_filling': float(max_filling)}

    @property
    def jobs(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._jobs

    def sweep_mu_u(
                self,
                template: ChainSpec,
                mu_axis: GridAxis,
                u_axis: GridAxis
            ) -> PhaseGrid:
        '''(U/2J, mu/2J) map; every cell takes the particle number that
        minimizes E(N) - mu N.

        :param template: chain giving M, J, boundary and disorder.
        :param mu_axis: mu/2J values (fast axis).
        :param u_axis: U/2J values (slow axis).
        :rtype: :class:`latscat.PhaseGrid.PhaseGrid`
        '''
        scale = 2.0 * template.hopping
        tasks = []
        for u in u_axis.values:
            for mu in mu_axis.values:
                spec = ChainSpec(template.sites, 0, u * scale,
                                 template.hopping, mu * scale,
                                 template.boundary, template.disorder)
                tasks.append((spec, True, self._options))
        cells = self._run(tasks, chunk=mu_axis.count)
        return PhaseGrid('mu-u', u_axis, mu_axis, cells,
                         self._metadata(template, 'U/2J', 'mu/2J'))

    def sweep_disorder(
                self,
                template: ChainSpec,
                u_axis: GridAxis,
                v_axis: GridAxis,
                ratio: float = 0.77,
                offset: float = 0.0,
                thresholds: PhaseThresholds = None
            ) -> PhaseGrid:
        '''(U/2J, V/2J) map at the template's fixed density, labelled with
        :meth:`classify`.

        Without ``thresholds`` they are calibrated from the corners of the
        map, which then must span V = 0 and small U.

        :param template: chain with fixed M and N.
        :param u_axis: U/2J values (slow axis).
        :param v_axis: V/2J values (fast axis).
        :param float ratio: (optional) superlattice period ratio r.
        :param float offset: (optional) superlattice phase.
        :param thresholds: (optional) fixed classification thresholds.
        :rtype: :class:`latscat.PhaseGrid.PhaseGrid`
        '''
        scale = 2.0 * template.hopping
        tasks = []
        for u in u_axis.values:
            for v in v_axis.values:
                disorder = DisorderSpec(v * scale, ratio, offset) if v \
                    else None
                spec = ChainSpec(template.sites, template.bosons, u * scale,
                                 template.hopping, 0.0, template.boundary,
                                 disorder)
                tasks.append((spec, False, self._options))
        cells = self._run(tasks, chunk=1)
        metadata = self._metadata(template, 'U/2J', 'V/2J')
        metadata.update({'bosons': template.bosons, 'ratio': ratio,
                         'offset': offset})
        grid = PhaseGrid('disorder', u_axis, v_axis, cells, metadata)
        self.label_grid(grid, thresholds)
        return grid

    @staticmethod
    def classify(summary, thresholds: PhaseThresholds) -> str:
        '''Phase label from R_max and W_R.

        High R_max with a narrow dip is SF, low R_max with a wide dip is MI,
        and high R_max with a wide dip is BG; the remaining quadrant and
        cells without a summary are unclassified.

        :param summary: scan summary or a mapping with 'R_max' and 'W_R'.
        :param thresholds: high/low boundaries.
        :rtype: :class:`str`
        '''
        if summary is None:
            return PhaseMapper.UNCLASSIFIED
        r_max = summary.get('R_max')
        w_r = summary.get('W_R')
        if r_max is None or w_r is None or np.isnan(r_max) \
                or np.isnan(w_r):
            return PhaseMapper.UNCLASSIFIED
        high_r = r_max > thresholds.r_max
        wide = w_r > thresholds.w_r
        if high_r and not wide:
            return 'SF'
        if wide and not high_r:
            return 'MI'
        if high_r and wide:
            return 'BG'
        return PhaseMapper.UNCLASSIFIED

    @staticmethod
    def corners(grid: PhaseGrid) -> dict:
        '''Calibration cells of a (U, V) grid: SF at (U_min, V_min), MI at
        (U_max, V_min) and BG at (U_min, V_max).'''
        rows, columns = grid.shape
        return {'SF': (0, 0), 'MI': (rows - 1, 0), 'BG': (0, columns - 1)}

    @staticmethod
    def calibrate(grid: PhaseGrid) -> PhaseThresholds:
        '''Thresholds at the logarithmic midpoint of the SF and MI corner
        values of each quantity.

        :raises: NumericalError: if a corner has no usable summary.
        '''
        corners = PhaseMapper.corners(grid)
        sf = grid.cell(*corners['SF'])
        mi = grid.cell(*corners['MI'])
        values = []
        for key in ('R_max', 'W_R'):
            pair = (sf.get(key), mi.get(key))
            if any(v is None or not np.isfinite(v) or v <= 0 for v in pair):
                raise NumericalError(
                    f'cannot calibrate {key} from corners {pair}')
            values.append(float(np.sqrt(pair[0] * pair[1])))
        return PhaseThresholds(values[0], values[1], 'corners')

    @staticmethod
    def label_grid(grid: PhaseGrid, thresholds: PhaseThresholds = None):
        '''Classify every cell, check the calibration corners and count the
        connected region of each label.'''
        if thresholds is None:
            try:
                thresholds = PhaseMapper.calibrate(grid)
            except NumericalError as error:
                logger.warning('grid left unclassified: %s', error)
                grid.apply_labels([PhaseMapper.UNCLASSIFIED] * len(grid.cells),
                                  None, False, {})
                return grid
        labels = np.array([PhaseMapper.classify(cell, thresholds)
                           for cell in grid.cells],
                          dtype=object).reshape(grid.shape)

        valid = True
        for expected, index in PhaseMapper.corners(grid).items():
            if labels[index] != expected:
                valid = False
                logger.warning('corner %s labelled %s, expected %s',
                               index, labels[index], expected)
        regions = {}
        for label in PhaseMapper.LABELS:
            _, count = ndimage.label(labels == label)
            regions[label] = int(count)
        grid.apply_labels(labels, thresholds, valid, regions)
        return grid

    def _run(self, tasks: list, chunk: int = 1) -> list:
        logger.info('sweeping %d cells on %d worker(s)', len(tasks),
                    self._jobs)
        if self._jobs == 1:
            return [_evaluate_cell(task) for task in tasks]
        with ProcessPoolExecutor(max_workers=self._jobs) as executor:
            return list(executor.map(_evaluate_cell, tasks,
                                     chunksize=max(1, chunk)))

    @staticmethod
    def _metadata(template: ChainSpec, name1: str, name2: str) -> dict:
        return {'sites': template.sites, 'boundary': template.boundary,
                'axis1': name1, 'axis2': name2, 'units': '2J'}
