import logging

import numpy as np
from scipy.integrate import trapezoid

from latscat.LatScatException import ConstraintViolationError, WannierGridError
from latscat.LatScatObject import LatScatObject
from latscat.WannierBasis import WannierBasis

logger = logging.getLogger(__name__)


class BlochBand(LatScatObject):
    '''
    Lowest-band Bloch coefficients over the first Brillouin zone.
    '''

    TAIL_TOL = 1e-6

    def __init__(
                self,
                potential,
                quasimomenta: np.ndarray,
                energies: np.ndarray,
                coefficients: np.ndarray,
                bandwidth: float
            ) -> None:
        super().__init__()
        self._potential = potential
        self._quasimomenta = quasimomenta
        self._energies = energies
        self._coefficients = coefficients
        self._bandwidth = float(bandwidth)
        self._data = {
            'depth': potential.depth,
            'period': potential.period,
            'n_q': len(quasimomenta),
            'cutoff': coefficients.shape[1],
            'bandwidth': self._bandwidth,
        }

    @property
    def potential(self):
        '''
        :type: :class:`latscat.LatticePotential.LatticePotential`
        '''
        return self._potential

    @property
    def quasimomenta(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._quasimomenta

    @property
    def energies(self) -> np.ndarray:
        '''
        Band energies in E_R.

        :type: :class:`numpy.ndarray`
        '''
        return self._energies

    @property
    def coefficients(self) -> np.ndarray:
        '''
        Plane-wave coefficients, shape (n_q, cutoff).

        :type: :class:`numpy.ndarray`
        '''
        return self._coefficients

    @property
    def bandwidth(self) -> float:
        '''
        E(pi/d) - E(0) in E_R.

        :type: :class:`float`
        '''
        return self._bandwidth

    @property
    def hopping(self) -> float:
        '''
        Nearest-neighbour hopping from the band width, in E_R.

        :type: :class:`float`
        '''
        return self._bandwidth / 4.0

    def wavevectors(self) -> np.ndarray:
        '''q + 2 k_L n for every coefficient, same shape as coefficients.'''
        cutoff = self._coefficients.shape[1]
        orders = np.arange(cutoff) - cutoff // 2
        k_lattice = self._potential.k_lattice
        return self._quasimomenta[:, None] + 2.0 * k_lattice * orders[None, :]

    def build_wannier(
                self,
                periods: int = 15,
                points_per_period: int = 256,
                n_k: int = 1024
            ):
        '''Real, even lowest-band Wannier orbital centred at x = 0.

        :param int periods: (optional) grid span in lattice periods (>= 11).
        :param int points_per_period: (optional) even sampling density.
        :param int n_k: (optional) size of the Fourier tables.
        :returns: Wannier orbital with overlap products and transforms.
        :rtype: :class:`latscat.WannierBasis.WannierBasis`
        :raises: WannierGridError: if the tails reach the grid boundary.
        '''
        if periods < 11:
            raise ConstraintViolationError(
                f'periods >= 11 required, got {periods}')
        if points_per_period % 2:
            raise ConstraintViolationError(
                'points_per_period must be even')
        if len(self._quasimomenta) <= periods:
            raise ConstraintViolationError(
                'quasimomentum grid shorter than the real-space grid; '
                'periodic images would overlap')

        d = self._potential.period
        x = np.linspace(-periods * d / 2.0, periods * d / 2.0,
                        periods * points_per_period + 1)
        kappa = self.wavevectors().ravel()
        c = self._coefficients.ravel()
        scale = len(self._quasimomenta) * np.sqrt(d)
        phases = np.cos(np.outer(x, kappa))
        w = phases @ c / scale
        d2w = -(phases @ (c * kappa ** 2)) / scale

        peak = np.max(np.abs(w))
        boundary = max(abs(w[0]), abs(w[-1]))
        if boundary > self.TAIL_TOL * peak:
            raise WannierGridError(
                f'Wannier tail {boundary / peak:.3e} of peak at the grid '
                f'boundary ({periods} periods, depth {self._potential.depth})')

        norm = trapezoid(w ** 2, x)
        logger.debug('wannier norm before rescaling: 1 - %.3e', 1.0 - norm)
        w = w / np.sqrt(norm)
        d2w = d2w / np.sqrt(norm)

        return WannierBasis(
            band=self,
            grid=x,
            w=w,
            d2w=d2w,
            points_per_period=points_per_period,
            n_k=n_k)
