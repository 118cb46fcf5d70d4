import logging
import warnings

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from latscat.BlochBand import BlochBand
from latscat.LatScatException import (BandSolverError,
                                      ConstraintViolationError)

logger = logging.getLogger(__name__)


class LatticePotential:
    '''
    One-dimensional optical lattice V(x) = V0 sin^2(pi x / d).

    Energies are in recoil units E_R, lengths in units of the period d and
    the lattice wavevector is k_L = pi / d.
    '''

    CONVERGENCE_STEP = 4
    CONVERGENCE_TOL = 1e-10

    def __init__(self, depth: float = 5.0, period: float = 1.0) -> None:
        '''
        :param float depth: (optional) lattice depth V0 in E_R.
        :param float period: (optional) lattice period d.
        :raises: ConstraintViolationError: if depth < 0 or period <= 0.
        '''
        if depth < 0:
            raise ConstraintViolationError(
                f'depth >= 0 required, got {depth}')
        if period <= 0:
            raise ConstraintViolationError(
                f'period > 0 required, got {period}')
        self._depth = float(depth)
        self._period = float(period)

    @property
    def depth(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._depth

    @property
    def period(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._period

    @property
    def k_lattice(self) -> float:
        '''
        :type: :class:`float`
        '''
        return np.pi / self._period

    def value(self, x: np.ndarray) -> np.ndarray:
        '''Potential in E_R at positions x.'''
        return self._depth * np.sin(self.k_lattice * np.asarray(x)) ** 2

    def solve_bloch_band(self, cutoff: int = 21, n_q: int = 64) -> BlochBand:
        '''Lowest Bloch band on a symmetric quasimomentum grid.

        :param int cutoff: (optional) odd number of plane waves (>= 11).
        :param int n_q: (optional) number of quasimomenta (>= 32).
        :returns: gauge-fixed band table.
        :rtype: :class:`latscat.BlochBand.BlochBand`
        :raises: BandSolverError: if the eigensolve fails at some q.
        '''
        if cutoff < 11 or cutoff % 2 == 0:
            raise ConstraintViolationError(
                f'cutoff must be odd and >= 11, got {cutoff}')
        if n_q < 32:
            raise ConstraintViolationError(f'n_q >= 32 required, got {n_q}')

        # quasimomenta in units of k_L, midpoints avoid the zone edge
        q = -1.0 + (np.arange(n_q) + 0.5) * 2.0 / n_q
        energies, coefficients = self._lowest_band(q, cutoff)

        finer, _ = self._lowest_band(q, cutoff + self.CONVERGENCE_STEP)
        change = np.max(np.abs(finer - energies))
        if change > self.CONVERGENCE_TOL:
            warnings.warn(
                f'plane-wave cutoff {cutoff} not converged at depth '
                f'{self._depth}: band energy changes by {change:.3e} E_R',
                RuntimeWarning)

        edges, _ = self._lowest_band(np.array([0.0, 1.0]), cutoff)
        logger.debug('bloch band depth=%g cutoff=%d n_q=%d width=%.6e',
                     self._depth, cutoff, n_q, edges[1] - edges[0])

        return BlochBand(
            potential=self,
            quasimomenta=q * self.k_lattice,
            energies=energies,
            coefficients=coefficients,
            bandwidth=edges[1] - edges[0])

    def _lowest_band(self, q: np.ndarray, cutoff: int) -> tuple:
        orders = np.arange(cutoff) - cutoff // 2
        off_diagonal = np.full(cutoff - 1, -self._depth / 4.0)
        energies = np.empty(len(q))
        coefficients = np.empty((len(q), cutoff))
        for i, qi in enumerate(q):
            diagonal = (qi + 2.0 * orders) ** 2 + self._depth / 2.0
            try:
                value, vector = eigh_tridiagonal(
                    diagonal, off_diagonal, select='i', select_range=(0, 0))
            except (LinAlgError, ValueError) as error:
                raise BandSolverError(
                    f'Bloch eigensolve failed: {error}',
                    qi * self.k_lattice) from error
            c = vector[:, 0]
            # u_q(0) > 0 makes the band sum real and even
            if c.sum() < 0:
                c = -c
            energies[i] = value[0]
            coefficients[i] = c
        return energies, coefficients
