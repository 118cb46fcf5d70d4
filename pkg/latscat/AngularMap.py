import numpy as np

from latscat.LatScatException import ConstraintViolationError
from latscat.LatScatObject import LatScatObject
from latscat.LightMode import LightMode
from latscat.MeasurementGeometry import MeasurementGeometry


class AngularMap(LatScatObject):
    '''
    Mean-field scattering over the sphere of detection directions for a
    simple cubic block of sites, inter-site correlations neglected.

    For quantity 'R' the map is sigma^2 sum_i |u1*(r_i) u0(r_i)|^2; for
    'quadrature' (travelling waves) it is the variance of
    X^F_beta = sum_i cos(dk.r_i - beta) n_i, i.e.
    sigma^2 sum_i cos^2(dk.r_i - beta). Both are divided by N_K = n K.
    '''

    QUANTITIES = ('R', 'quadrature')

    def __init__(
                self,
                theta: np.ndarray,
                phi: np.ndarray,
                values: np.ndarray,
                bragg: dict,
                quantity: str = 'R',
                phase: float = 0.0
            ) -> None:
        super().__init__()
        self._theta = theta
        self._phi = phi
        self._values = values
        self._bragg = bragg
        self._quantity = quantity
        self._phase = phase
        self._data = {
            'quantity': quantity,
            'phase': phase,
            'n_theta': len(theta),
            'n_phi': len(phi),
            'max': float(np.max(values)),
            'median': float(np.median(values)),
        }

    @classmethod
    def compute(
                cls,
                variance: float,
                density: float,
                probe: LightMode,
                detected: LightMode,
                dims: tuple = (10, 10, 10),
                n_theta: int = 91,
                n_phi: int = 180,
                quantity: str = 'R',
                beta: float = 0.0,
                period: float = 1.0,
                basis=None
            ) -> 'AngularMap':
        '''Evaluate R/N_K (or the quadrature variance over N_K) on a
        (theta, phi) grid; the detected mode keeps its kind and phase and
        has |k1| = |k0|.

        :param float variance: on-site sigma^2 = <n^2> - <n>^2.
        :param float density: mean filling n.
        :param probe: probe mode.
        :param detected: template of the detected mode.
        :param tuple dims: (optional) sites per axis.
        :param str quantity: (optional) 'R' or 'quadrature'.
        :param float beta: (optional) quadrature phase.
        :param basis: (optional) Wannier orbital; weights the travelling
            quadrature by prod_a F[W0](dk_a)^2.
        :rtype: :class:`latscat.AngularMap.AngularMap`
        '''
        if quantity not in cls.QUANTITIES:
            raise ConstraintViolationError(
                f'quantity must be one of {cls.QUANTITIES}, got {quantity!r}')
        if density <= 0:
            raise ConstraintViolationError(f'density > 0 required, got {density}')
        if quantity == 'quadrature' and (probe.is_standing
                                         or detected.is_standing):
            raise ConstraintViolationError(
                'quadrature maps need travelling probe and detected waves')

        axes = [np.arange(n) * period for n in dims]
        sites = np.stack(np.meshgrid(*axes, indexing='ij'), -1).reshape(-1, 3)
        theta = np.linspace(0.0, np.pi, n_theta)
        phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
        t, p = np.meshgrid(theta, phi, indexing='ij')
        direction = np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p),
                              np.cos(t)], -1)
        k = probe.magnitude(period)
        k1 = k * direction
        k0 = probe.k3(period)

        u0 = np.abs(probe.value(sites, period, vector=True)) ** 2
        values = np.empty(t.shape)
        for row in range(n_theta):
            if quantity == 'R':
                phase1 = k1[row] @ sites.T + detected.phase
                u1 = np.cos(phase1) if detected.is_standing else 1.0
                values[row] = (np.abs(u1) ** 2 * u0).sum(-1)
            else:
                phase = (k0 - k1[row]) @ sites.T + probe.phase \
                    - detected.phase
                values[row] = (np.cos(phase - beta) ** 2).sum(-1)
        values = variance * values
        if quantity == 'quadrature' and basis is not None:
            values = values * cls._wannier_weight(basis, k0 - k1)
        values = values / (density * len(sites))

        mask = cls._bragg_mask(probe, detected, k1, period)
        return cls(theta, phi, values, mask, quantity,
                   beta if quantity == 'quadrature' else detected.phase)

    @staticmethod
    def _wannier_weight(basis, dk: np.ndarray) -> np.ndarray:
        factor = np.ones(dk.shape[:-1])
        for axis in range(3):
            factor = factor * basis.fourier_overlap('W0', dk[..., axis])
        return factor ** 2

    @staticmethod
    def _bragg_mask(probe, detected, k1, period):
        geometry = MeasurementGeometry(probe, detected)
        return geometry.bragg_mask(k1, period)

    @property
    def theta(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._theta

    @property
    def phi(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._phi

    @property
    def values(self) -> np.ndarray:
        '''
        R/N_K on the (theta, phi) grid.

        :type: :class:`numpy.ndarray`
        '''
        return self._values

    @property
    def bragg(self) -> dict:
        '''
        Boolean masks of the generalized and classical Bragg directions.

        :type: :class:`dict`
        '''
        return self._bragg

    @property
    def quantity(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._quantity

    def rows(self):
        '''(theta, phi, value) triples in grid order.'''
        for i, theta in enumerate(self._theta):
            for j, phi in enumerate(self._phi):
                yield theta, phi, self._values[i, j]
