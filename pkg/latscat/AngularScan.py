import logging

import numpy as np

from latscat.LatScatException import ConstraintViolationError, NoDipError
from latscat.LatScatObject import LatScatObject
from latscat.MeasurementGeometry import MeasurementGeometry
from latscat.Scattering import Scattering
from latscat.ScanSummary import ScanSummary

logger = logging.getLogger(__name__)


class AngularScan(LatScatObject):
    '''
    Scattered light as a function of the detection angle theta1 at a fixed
    probe angle theta0, both measured from the lattice normal in the x-z
    plane (k_x = |k| sin theta).

    ``kind`` is 'R' for the quantum addition <F^dag F> - |<F>|^2 and
    'intensity' for the raw <F^dag F>, which also contains classical
    diffraction.
    '''

    KINDS = ('R', 'intensity')
    NORMALIZATIONS = ('raw', 'N_K')
    FLAT_TOL = 1e-12

    def __init__(
                self,
                theta1: np.ndarray,
                values: np.ndarray,
                theta0: float = 0.0,
                magnitude: float = 1.0,
                period: float = 1.0,
                site_count: int = None,
                geometry: str = 'density',
                kind: str = 'R',
                normalization: str = 'raw',
                bragg: dict = None
            ) -> None:
        '''
        :param theta1: detection angles in radians, increasing.
        :param values: R or intensity per angle.
        :param float theta0: (optional) probe angle.
        :param float magnitude: (optional) |k| in units of pi/d.
        :param float period: (optional) lattice period d.
        :param int site_count: (optional) number of illuminated sites K.
        :param str geometry: (optional) geometry tag.
        :param str kind: (optional) 'R' or 'intensity'.
        :param str normalization: (optional) 'raw' or 'N_K'.
        :param dict bragg: (optional) output of
            :meth:`latscat.MeasurementGeometry.MeasurementGeometry.bragg_peaks`.
        '''
        super().__init__()
        if kind not in self.KINDS:
            raise ConstraintViolationError(
                f'kind must be one of {self.KINDS}, got {kind!r}')
        if normalization not in self.NORMALIZATIONS:
            raise ConstraintViolationError(
                f'normalization must be one of {self.NORMALIZATIONS}, '
                f'got {normalization!r}')
        self._theta1 = np.asarray(theta1, dtype=float)
        self._values = np.asarray(values, dtype=float)
        self._theta0 = float(theta0)
        self._magnitude = float(magnitude)
        self._period = float(period)
        self._site_count = site_count
        self._geometry = geometry
        self._kind = kind
        self._normalization = normalization
        self._bragg = bragg or {'generalized': [], 'classical': []}
        self._data = {
            'theta0': self._theta0,
            'geometry': geometry,
            'kind': kind,
            'normalization': normalization,
            'sites': site_count,
            'points': len(self._theta1),
            'bragg_generalized': list(self._bragg['generalized']),
            'bragg_classical': list(self._bragg['classical']),
        }

    @staticmethod
    def angle_grid(
                points_per_pi: int = 512,
                theta_range: tuple = (-np.pi / 2, np.pi / 2)
            ) -> np.ndarray:
        '''Uniform detection-angle grid, both ends included.'''
        low, high = theta_range
        count = int(round(points_per_pi * (high - low) / np.pi)) + 1
        return np.linspace(low, high, max(count, 3))

    @classmethod
    def from_correlations(
                cls,
                dd: np.ndarray,
                positions: np.ndarray,
                densities: np.ndarray = None,
                theta0: float = 0.0,
                magnitude: float = 1.0,
                period: float = 1.0,
                points_per_pi: int = 512,
                include_classical: bool = False,
                normalization: str = 'raw',
                geometry: str = 'density'
            ) -> 'AngularScan':
        '''Density-coupled scan, F = sum_i exp[i (k0 - k1) r_i] n_i.

        R is the structure-factor double sum over ``dd``; with
        ``include_classical`` the diffraction term |sum_i e^{i dk r_i}
        <n_i>|^2 is added.
        '''
        dd = Scattering._check_dd(dd)
        positions = np.asarray(positions, dtype=float)
        theta1 = cls.angle_grid(points_per_pi)
        k = magnitude * np.pi / period
        q = k * (np.sin(theta1) - np.sin(theta0))
        amplitude = np.exp(1j * np.outer(q, positions))
        values = np.real(np.einsum('ti,ij,tj->t', amplitude, dd,
                                   np.conj(amplitude)))
        if include_classical or normalization == 'N_K':
            if densities is None:
                raise ConstraintViolationError(
                    'densities required for classical terms or N_K '
                    'normalization')
            densities = np.asarray(densities, dtype=float)
        if include_classical:
            values = values + np.abs(amplitude @ densities) ** 2
        if normalization == 'N_K':
            values = values / np.sum(densities)

        bragg = MeasurementGeometry.density(theta0).bragg_peaks(period)
        return cls(theta1, values, theta0, magnitude, period, len(positions),
                   geometry, 'intensity' if include_classical else 'R',
                   normalization, bragg)

    @classmethod
    def from_ed(
                cls,
                state,
                site_count: int = None,
                theta0: float = 0.0,
                **kwargs
            ) -> 'AngularScan':
        '''Density-coupled scan of an exact ground state, illuminating K
        centred sites of the chain.'''
        sites = state.spec.sites
        site_count = site_count or sites
        offset = (sites - site_count) // 2
        window = slice(offset, offset + site_count)
        period = kwargs.get('period', 1.0)
        positions = (offset + np.arange(site_count)) * period
        return cls.from_correlations(
            state.dd[window, window], positions, state.densities[window],
            theta0, **kwargs)

    @classmethod
    def from_mf(
                cls,
                state,
                site_count: int,
                theta0: float = 0.0,
                **kwargs
            ) -> 'AngularScan':
        '''Density-coupled scan of a Gutzwiller state; inter-site
        correlations vanish so dd = sigma^2 on the diagonal.'''
        period = kwargs.get('period', 1.0)
        dd = state.density_variance * np.eye(site_count)
        densities = np.full(site_count, state.density)
        return cls.from_correlations(
            dd, np.arange(site_count) * period, densities, theta0, **kwargs)

    @classmethod
    def from_operator(
                cls,
                evaluator,
                geometry: MeasurementGeometry,
                basis,
                site_count: int,
                total_sites: int = None,
                points_per_pi: int = 512,
                include_classical: bool = False,
                particle_count: float = None
            ) -> 'AngularScan':
        '''Scan of an arbitrary geometry with numerically integrated
        coefficients at every detection angle.

        :param evaluator: callable coeffs -> moments dict, for instance
            ``state.expectation_F`` of an ED or Gutzwiller state.
        :param geometry: probe and detected mode; the detected mode is
            rotated across the scan.
        :param basis: Wannier orbital.
        :param int site_count: illuminated sites K.
        :param int total_sites: (optional) chain length M.
        :param float particle_count: (optional) N_K for normalized output.
        '''
        theta1 = cls.angle_grid(points_per_pi)
        values = np.empty(len(theta1))
        for index, angle in enumerate(theta1):
            coeffs = geometry.with_detection_angle(angle) \
                .coupling_coefficients(basis, site_count, total_sites)
            moments = evaluator(coeffs)
            values[index] = moments['FdagF'] if include_classical \
                else moments['FdagF'] - abs(moments['F']) ** 2
        normalization = 'raw'
        if particle_count:
            values = values / particle_count
            normalization = 'N_K'
        magnitude = geometry.probe.magnitude(basis.period) * basis.period \
            / np.pi
        theta0 = float(np.arcsin(np.clip(
            geometry.probe.kx(basis.period)
            / geometry.probe.magnitude(basis.period), -1.0, 1.0)))
        bragg = geometry.bragg_peaks(basis.period)
        return cls(theta1, values, theta0, magnitude, basis.period,
                   site_count, geometry.name,
                   'intensity' if include_classical else 'R', normalization,
                   bragg)

    @property
    def theta1(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._theta1

    @property
    def values(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._values

    @property
    def theta0(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._theta0

    @property
    def kind(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._kind

    @property
    def normalization(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._normalization

    @property
    def geometry(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._geometry

    @property
    def site_count(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._site_count

    @property
    def bragg(self) -> dict:
        '''
        :type: :class:`dict`
        '''
        return self._bragg

    @property
    def delta_k(self) -> np.ndarray:
        '''
        k0x - k1x per angle, in 1/length units.

        :type: :class:`numpy.ndarray`
        '''
        k = self._magnitude * np.pi / self._period
        return k * (np.sin(self._theta0) - np.sin(self._theta1))

    def bragg_flags(self, which: str) -> np.ndarray:
        '''Grid points nearest to each Bragg angle of ``which``.'''
        flags = np.zeros(len(self._theta1), dtype=bool)
        if len(self._theta1) < 2:
            return flags
        step = np.min(np.diff(self._theta1))
        for angle in self._bragg[which]:
            index = int(np.argmin(np.abs(self._theta1 - angle)))
            if abs(self._theta1[index] - angle) <= step / 2 + 1e-12:
                flags[index] = True
        return flags

    def classical_centres(self) -> np.ndarray:
        '''Angles where k0x - k1x is a reciprocal lattice vector, forward
        direction included.'''
        k = self._magnitude * np.pi / self._period
        step = 2 * np.pi / self._period
        orders = np.arange(-int(2 * k / step) - 1, int(2 * k / step) + 2)
        ratio = np.sin(self._theta0) - orders * step / k
        ratio = ratio[np.abs(ratio) <= 1.0]
        angles = np.arcsin(ratio)
        low, high = self._theta1[0], self._theta1[-1]
        return np.sort(angles[(angles >= low) & (angles <= high)])

    def extract_summary(self, mask_classical: bool = None) -> ScanSummary:
        '''R_max, dip floor and the full width W_R of the dip at height
        (R_max + R_min)/2, measured in delta k d around the classical angle
        nearest the scan centre.

        Raw-intensity scans mask a window of full width 4 pi/(M d) in delta k
        around every classical angle before measuring.

        :param bool mask_classical: (optional) override the masking rule.
        :rtype: :class:`latscat.ScanSummary.ScanSummary`
        :raises: NoDipError: for flat or monotone scans.
        '''
        if mask_classical is None:
            mask_classical = self._kind == 'intensity'
        values = self._values.copy()
        x = self.delta_k * self._period
        centres = self.classical_centres()
        if mask_classical and len(centres):
            sites = self._site_count or 1
            half = 2 * np.pi / sites
            for angle in centres:
                centre_x = (self._magnitude * np.pi
                            * (np.sin(self._theta0) - np.sin(angle)))
                values[np.abs(x - centre_x) < half] = np.nan

        r_max = float(np.nanmax(values))
        r_min = float(np.nanmin(values))
        if r_max - r_min <= self.FLAT_TOL * max(1.0, abs(r_max)):
            raise NoDipError('scan is flat')

        middle = (self._theta1[0] + self._theta1[-1]) / 2
        if len(centres):
            centre_angle = centres[np.argmin(np.abs(centres - middle))]
            centre = int(np.argmin(np.abs(self._theta1 - centre_angle)))
        else:
            centre = int(np.nanargmin(values))
        valid = np.nonzero(~np.isnan(values))[0]
        if np.isnan(values[centre]):
            centre = int(valid[np.argmin(np.abs(valid - centre))])

        half_height = (r_max + r_min) / 2
        if values[centre] >= half_height:
            raise NoDipError('no dip at the classical angle')
        left = self._crossing(x, values, centre, -1, half_height)
        right = self._crossing(x, values, centre, 1, half_height)
        if left is None or right is None:
            raise NoDipError('dip does not close inside the scan')
        width = abs(right - left)
        logger.debug('scan summary R_max=%.6g W_R=%.6g', r_max, width)
        return ScanSummary(r_max, r_min, width, self._theta1[centre])

    @staticmethod
    def _crossing(x, values, start, direction, level):
        previous = start
        index = start + direction
        while 0 <= index < len(values):
            if np.isnan(values[index]):
                index += direction
                continue
            if values[index] >= level:
                y0, y1 = values[previous], values[index]
                fraction = (level - y0) / (y1 - y0) if y1 != y0 else 0.0
                return x[previous] + fraction * (x[index] - x[previous])
            previous = index
            index += direction
        return None
