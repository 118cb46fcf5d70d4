import logging

import numpy as np

from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.CouplingPrefactor import CouplingPrefactor
from latscat.LatScatException import GeometryError
from latscat.LightMode import LightMode

logger = logging.getLogger(__name__)


class MeasurementGeometry:
    '''
    Probe mode u0, detected mode u1, coupling prefactor C and local
    oscillator phase. Together they fix the operator F = D + B and the
    measured light quadrature.
    '''

    BRAGG_TOL = 1e-9

    def __init__(
                self,
                probe: LightMode,
                detected: LightMode,
                prefactor: CouplingPrefactor = None,
                lo_phase: float = 0.0,
                name: str = 'custom'
            ) -> None:
        '''
        :param probe: probe mode (label 0).
        :type probe: :class:`latscat.LightMode.LightMode`
        :param detected: detected mode (label 1).
        :type detected: :class:`latscat.LightMode.LightMode`
        :param prefactor: (optional) C, defaults to the unit prefactor.
        :type prefactor: :class:`latscat.CouplingPrefactor.CouplingPrefactor`
        :param float lo_phase: (optional) local oscillator phase phi.
        :param str name: (optional) short tag used in artifacts.
        '''
        self._probe = probe
        self._detected = detected
        self._prefactor = prefactor or CouplingPrefactor.unit()
        self._lo_phase = float(lo_phase)
        self._name = name

    def __repr__(self) -> str:
        return (f'MeasurementGeometry({self._name!r}, probe={self._probe!r}, '
                f'detected={self._detected!r})')

    @classmethod
    def diffraction_maximum(
                cls,
                basis,
                prefactor: CouplingPrefactor = None
            ) -> 'MeasurementGeometry':
        '''Standing waves with k0x = k1x = pi/d and phi0 + phi1 = pi chosen
        so that every J_{i,i} vanishes, leaving uniform bond coefficients
        F[W1](2pi/d)/2 of the same sign as the quadrature mean.

        :raises: GeometryError: if F[W0](2pi/d)/F[W0](0) lies outside [-1, 1].
        '''
        d = basis.period
        ratio = -basis.fourier_overlap('W0', 2 * np.pi / d) \
            / basis.fourier_overlap('W0', 0.0)
        if abs(ratio) > 1.0:
            raise GeometryError(
                f'density suppression impossible: ratio {ratio:.6g}')
        phase = np.arccos(ratio) / 2.0
        return cls(LightMode('standing', 1.0, phase, 0),
                   LightMode('standing', 1.0, np.pi - phase, 1),
                   prefactor, name='max')

    @classmethod
    def diffraction_minimum(
                cls,
                phi1: float = np.pi / 2,
                phi0: float = 0.0,
                travelling: bool = False,
                prefactor: CouplingPrefactor = None,
                lo_phase: float = 0.0
            ) -> 'MeasurementGeometry':
        '''k0x = 0 and k1x = pi/d: neighbouring bonds scatter with opposite
        signs and the mean amplitude cancels.

        With ``travelling=True`` both modes are plane waves, the probe
        propagating perpendicular to the lattice; the light quadrature at
        phase beta then reads D cos(beta) + B sin(beta) up to signs.
        '''
        if travelling:
            probe = LightMode('travelling', [0.0, 0.0, 1.0], phi0, 0)
            detected = LightMode('travelling', [1.0, 0.0, 0.0], phi1, 1)
        else:
            probe = LightMode('standing', 0.0, phi0, 0)
            detected = LightMode('standing', 1.0, phi1, 1)
        return cls(probe, detected, prefactor, lo_phase, name='min')

    @classmethod
    def density(
                cls,
                theta0: float = 0.0,
                theta1: float = 0.0,
                prefactor: CouplingPrefactor = None
            ) -> 'MeasurementGeometry':
        '''Travelling probe and detected waves with |k| = pi/d, the usual
        density-coupled scattering geometry.'''
        return cls(LightMode.from_angle('travelling', theta0, label=0),
                   LightMode.from_angle('travelling', theta1, label=1),
                   prefactor, name='density')

    def with_detection_angle(self, theta1: float) -> 'MeasurementGeometry':
        '''Same geometry with the detected mode rotated in the x-z plane.'''
        detected = LightMode.from_angle(
            self._detected.kind, theta1, self._probe.magnitude() / np.pi,
            self._detected.phase, 1)
        return MeasurementGeometry(self._probe, detected, self._prefactor,
                                   self._lo_phase, self._name)

    @property
    def probe(self) -> LightMode:
        '''
        :type: :class:`latscat.LightMode.LightMode`
        '''
        return self._probe

    @property
    def detected(self) -> LightMode:
        '''
        :type: :class:`latscat.LightMode.LightMode`
        '''
        return self._detected

    @property
    def prefactor(self) -> CouplingPrefactor:
        '''
        :type: :class:`latscat.CouplingPrefactor.CouplingPrefactor`
        '''
        return self._prefactor

    @property
    def lo_phase(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._lo_phase

    @property
    def beta(self) -> float:
        '''
        Quadrature phase of the matter operator, phi - phi_C.

        :type: :class:`float`
        '''
        return self._prefactor.quadrature_phase(self._lo_phase)

    @property
    def name(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._name

    def coupling_coefficients(
                self,
                basis,
                site_count: int,
                total_sites: int = None
            ) -> CouplingCoefficients:
        '''Numerically integrated J coefficients on the centred window.'''
        return CouplingCoefficients.compute(
            basis, self._probe, self._detected, site_count, total_sites)

    def closed_form_db(
                self,
                basis,
                site_count: int,
                total_sites: int = None
            ) -> CouplingCoefficients:
        '''Standing-wave closed form of the D and B coefficients.

        :raises: GeometryError: if either mode is a travelling wave.
        '''
        if not (self._probe.is_standing and self._detected.is_standing):
            raise GeometryError(
                'closed form needs standing waves; use coupling_coefficients')
        d = basis.period
        return CouplingCoefficients.closed_form(
            basis, self._probe.kx(d), self._detected.kx(d),
            self._probe.phase, self._detected.phase, site_count, total_sites)

    def bragg_peaks(
                self,
                period: float = 1.0,
                theta_range: tuple = (-np.pi / 2, np.pi / 2)
            ) -> dict:
        '''Detection angles theta1 of the Bragg structures of a 1D scan.

        The detected wave is elastic (|k1| = |k0|) with k1x = |k1| sin(theta1).
        Generalized peaks satisfy 2(k0x - k1x) = G for a travelling detected
        wave and 2 k1x = G for a standing one; classical angles satisfy
        k0x - k1x = G. G = 0 is the forward direction and is left out of
        the difference conditions.

        :param float period: (optional) lattice period d.
        :param tuple theta_range: (optional) scanned interval of theta1.
        :returns: ``{'generalized': [...], 'classical': [...]}`` in radians.
        :rtype: :class:`dict`
        '''
        k = self._probe.magnitude(period)
        k0x = self._probe.kx(period)
        step = np.pi / period
        orders = np.arange(-int(4 * k / step) - 2, int(4 * k / step) + 3)

        if self._detected.is_standing:
            generalized = orders * step
        else:
            generalized = k0x - orders[orders != 0] * step
        classical = k0x - orders[orders != 0] * 2 * step

        def angles(k1x):
            ratio = k1x / k
            ratio = ratio[np.abs(ratio) <= 1.0 + self.BRAGG_TOL]
            theta = np.arcsin(np.clip(ratio, -1.0, 1.0))
            low, high = theta_range
            theta = theta[(theta >= low - self.BRAGG_TOL)
                          & (theta <= high + self.BRAGG_TOL)]
            return sorted({round(float(t), 12) for t in theta})

        return {'generalized': angles(generalized),
                'classical': angles(classical)}

    def bragg_mask(self, k1: np.ndarray, period: float = 1.0) -> dict:
        '''Flags 3D detected wavevectors lying on the Bragg conditions of a
        simple cubic lattice of period d.

        :param numpy.ndarray k1: detected wavevectors, shape (..., 3).
        :returns: ``{'generalized': bool array, 'classical': bool array}``.
        :rtype: :class:`dict`
        '''
        k1 = np.asarray(k1, dtype=float)
        k0 = self._probe.k3(period)
        step = np.pi / period

        def on_lattice(q, spacing):
            n = q / spacing
            return np.all(np.abs(n - np.round(n)) < 1e-6, axis=-1)

        delta = k0 - k1
        if self._detected.is_standing:
            generalized = on_lattice(k1, step)
        else:
            generalized = on_lattice(delta, step) \
                & (np.linalg.norm(delta, axis=-1) > 1e-9)
        classical = on_lattice(delta, 2 * step) \
            & (np.linalg.norm(delta, axis=-1) > 1e-9)
        return {'generalized': generalized, 'classical': classical}
