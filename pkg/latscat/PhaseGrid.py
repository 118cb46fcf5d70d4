import numpy as np

from latscat.LatScatException import ConstraintViolationError
from latscat.LatScatObject import LatScatObject


class GridAxis:
    '''
    Uniform axis of a phase map, both ends included.
    '''

    def __init__(
                self,
                name: str,
                start: float,
                stop: float,
                count: int
            ) -> None:
        if count < 1:
            raise ConstraintViolationError(
                f'axis {name!r} needs count >= 1, got {count}')
        if count > 1 and stop <= start:
            raise ConstraintViolationError(
                f'axis {name!r} needs stop > start, got {start}..{stop}')
        self._name = name
        self._start = float(start)
        self._stop = float(stop)
        self._count = int(count)

    def __repr__(self) -> str:
        return (f'GridAxis({self._name!r}, {self._start:.6g}, '
                f'{self._stop:.6g}, {self._count})')

    @property
    def name(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._name

    @property
    def start(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._start

    @property
    def stop(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._stop

    @property
    def count(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._count

    @property
    def values(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        if self._count == 1:
            return np.array([self._start])
        return np.linspace(self._start, self._stop, self._count)

    def as_dict(self) -> dict:
        return {'name': self._name, 'start': self._start,
                'stop': self._stop, 'count': self._count}


class PhaseGrid(LatScatObject):
    '''
    Rectangular map of scan summaries over two parameter axes.

    Cells are stored row-major: axis1 varies slowest. A cell whose solver
    failed keeps NaN observables and the exception name in ``error_flag``.
    '''

    CAVEAT = 'Transition lines are shifted due to finite size effects'
    COLUMNS = ('axis1', 'axis2', 'Rmax', 'W_R', 'sum_dd', 'phi', 'Kb',
               'label', 'error_flag')

    def __init__(
                self,
                mode: str,
                axis1: GridAxis,
                axis2: GridAxis,
                cells: list,
                metadata: dict = None
            ) -> None:
        '''
        :param str mode: 'mu-u' or 'disorder'.
        :param axis1: slow axis.
        :param axis2: fast axis.
        :param list cells: one record per cell in row-major order, each a
            dict with keys R_max, W_R, sum_dd, phi, K_b, label, error_flag.
        :param dict metadata: (optional) run description (sites, units...).
        :raises: ConstraintViolationError: if the grid is not fully
            populated.
        '''
        super().__init__()
        expected = axis1.count * axis2.count
        if len(cells) != expected:
            raise ConstraintViolationError(
                f'grid {axis1.count}x{axis2.count} needs {expected} cells, '
                f'got {len(cells)}')
        self._mode = mode
        self._axis1 = axis1
        self._axis2 = axis2
        self._cells = [dict(cell) for cell in cells]
        self._metadata = dict(metadata or {})
        self._thresholds = None
        self._valid = None
        self._regions = {}
        self._data = {
            'mode': mode,
            'axis1': axis1.as_dict(),
            'axis2': axis2.as_dict(),
            'caveat': self.CAVEAT,
            'failed_cells': self.failed_count,
            'metadata': self._metadata,
        }

    @property
    def mode(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._mode

    @property
    def axis1(self) -> GridAxis:
        '''
        :type: :class:`latscat.PhaseGrid.GridAxis`
        '''
        return self._axis1

    @property
    def axis2(self) -> GridAxis:
        '''
        :type: :class:`latscat.PhaseGrid.GridAxis`
        '''
        return self._axis2

    @property
    def shape(self) -> tuple:
        '''
        :type: :class:`tuple`
        '''
        return (self._axis1.count, self._axis2.count)

    @property
    def cells(self) -> list:
        '''
        :type: :class:`list` of :class:`dict`
        '''
        return self._cells

    @property
    def metadata(self) -> dict:
        '''
        :type: :class:`dict`
        '''
        return self._metadata

    @property
    def caveat(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self.CAVEAT

    @property
    def failed_count(self) -> int:
        '''
        :type: :class:`int`
        '''
        return sum(1 for cell in self._cells if cell.get('error_flag'))

    @property
    def thresholds(self):
        '''
        Classification thresholds, once labels are assigned.

        :type: :class:`latscat.PhaseMapper.PhaseThresholds` or None
        '''
        return self._thresholds

    @property
    def valid(self) -> bool:
        '''
        False when a calibration corner got an unexpected label; None
        before classification.

        :type: :class:`bool` or None
        '''
        return self._valid

    @property
    def regions(self) -> dict:
        '''
        Number of connected regions per phase label.

        :type: :class:`dict`
        '''
        return self._regions

    def cell(self, i: int, j: int) -> dict:
        return self._cells[i * self._axis2.count + j]

    def column(self, key: str) -> np.ndarray:
        '''Cell values of ``key`` shaped as the grid; missing values are
        NaN.'''
        values = [np.nan if cell.get(key) is None else cell[key]
                  for cell in self._cells]
        return np.array(values, dtype=float).reshape(self.shape)

    def labels(self) -> np.ndarray:
        return np.array([cell.get('label', '') for cell in self._cells],
                        dtype=object).reshape(self.shape)

    def apply_labels(
                self,
                labels,
                thresholds=None,
                valid: bool = None,
                regions: dict = None
            ) -> None:
        '''Attach phase labels (row-major) and the classification
        bookkeeping.'''
        labels = list(np.ravel(np.asarray(labels, dtype=object)))
        if len(labels) != len(self._cells):
            raise ConstraintViolationError(
                f'{len(labels)} labels for {len(self._cells)} cells')
        for cell, label in zip(self._cells, labels):
            cell['label'] = label
        self._thresholds = thresholds
        self._valid = valid
        self._regions = dict(regions or {})
        self._data['valid'] = valid
        self._data['regions'] = self._regions
        if thresholds is not None:
            self._data['thresholds'] = thresholds.raw_data

    def rows(self):
        '''CSV rows in grid order, matching :attr:`COLUMNS`.'''
        values1 = self._axis1.values
        values2 = self._axis2.values
        for i, a1 in enumerate(values1):
            for j, a2 in enumerate(values2):
                cell = self.cell(i, j)
                yield (a1, a2, cell.get('R_max'), cell.get('W_R'),
                       cell.get('sum_dd'), cell.get('phi'), cell.get('K_b'),
                       cell.get('label', ''), cell.get('error_flag', ''))
