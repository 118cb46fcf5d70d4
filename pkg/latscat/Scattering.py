import logging
import warnings

import numpy as np

from latscat.LatScatException import ConstraintViolationError, NumericalError
from latscat.LatScatObject import LatScatObject

logger = logging.getLogger(__name__)


class LuttingerEstimate(LatScatObject):
    '''
    Small-k estimate of the Tomonaga-Luttinger parameter K_b.
    '''

    def __init__(
                self,
                value: float,
                structure_factor: float,
                k_min: float,
                reliable: bool,
                reason: str = ''
            ) -> None:
        super().__init__()
        self._value = float(value)
        self._structure_factor = float(structure_factor)
        self._k_min = float(k_min)
        self._reliable = bool(reliable)
        self._reason = reason
        self._data = {
            'K_b': self._value,
            'S_k_min': self._structure_factor,
            'k_min': self._k_min,
            'reliable': self._reliable,
            'reason': self._reason,
        }

    @property
    def value(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._value

    @property
    def structure_factor(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._structure_factor

    @property
    def k_min(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._k_min

    @property
    def reliable(self) -> bool:
        '''
        :type: :class:`bool`
        '''
        return self._reliable

    @property
    def reason(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._reason


class Scattering:
    '''
    Scattered-light observables computed from solver outputs.
    '''

    IMAG_TOL = 1e-10
    SYMMETRY_TOL = 1e-10
    RESONANCE_FACTOR = 10.0

    @staticmethod
    def _check_dd(dd: np.ndarray) -> np.ndarray:
        dd = np.asarray(dd, dtype=float)
        if dd.ndim != 2 or dd.shape[0] != dd.shape[1]:
            raise ConstraintViolationError(
                f'dd must be a square table, got shape {dd.shape}')
        asymmetry = np.max(np.abs(dd - dd.T)) if dd.size else 0.0
        if asymmetry > Scattering.SYMMETRY_TOL:
            raise ConstraintViolationError(
                f'dd is not symmetric (max asymmetry {asymmetry:.3e})')
        return dd

    @staticmethod
    def quantum_addition(dd, k0, k1, positions) -> float:
        '''R = sum_{i,j} exp[i (k1 - k0).(r_i - r_j)] <dn_i dn_j>.

        :param dd: symmetric density fluctuation table over the sites.
        :param k0: probe wavevector, x component or 3-vector.
        :param k1: detected wavevector, same shape as k0.
        :param positions: site positions, shape (K,) or (K, 3).
        :returns: real R.
        :rtype: :class:`float`
        :raises: ConstraintViolationError: if dd is not symmetric.
        '''
        dd = Scattering._check_dd(dd)
        positions = np.asarray(positions, dtype=float)
        q = np.asarray(k1, dtype=float) - np.asarray(k0, dtype=float)
        if positions.ndim == 2:
            phase = positions @ q
        else:
            phase = q * positions
        amplitude = np.exp(1j * phase)
        value = amplitude @ dd @ np.conj(amplitude)
        scale = max(1.0, float(np.sum(np.abs(dd))))
        if abs(value.imag) > Scattering.IMAG_TOL * scale:
            raise NumericalError(
                f'quantum addition has imaginary residue {value.imag:.3e}')
        return float(value.real)

    @staticmethod
    def structure_factor(dd, k: float, positions) -> float:
        '''S(k) = (1/M) sum_{i,j} exp[i k (r_i - r_j)] dd_ij.'''
        dd = np.asarray(dd, dtype=float)
        return Scattering.quantum_addition(dd, 0.0, k, positions) / len(dd)

    @staticmethod
    def light_quadrature_variance(evaluator, geometry) -> float:
        '''(Delta X_phi)^2 = 1/4 + |C|^2 (Delta X^F_beta)^2 with
        beta = phi - phi_C taken from the geometry.

        :param evaluator: callable beta -> moments dict with keys 'X' and
            'X2' (for instance a bound ``expectation_F`` with fixed
            coefficients), or None for an empty lattice.
        :param geometry: measurement geometry giving C and the local
            oscillator phase.
        :type geometry: :class:`latscat.MeasurementGeometry.MeasurementGeometry`
        :rtype: :class:`float`
        '''
        if evaluator is None:
            return 0.25
        moments = evaluator(geometry.beta)
        variance = moments['X2'] - moments['X'] ** 2
        return 0.25 + geometry.prefactor.magnitude ** 2 * variance

    @staticmethod
    def luttinger_parameter(dd, positions, period: float = 1.0) -> LuttingerEstimate:
        '''K_b = pi S(k_min) / k_min with k_min = 2 pi / (M d).

        The estimate is flagged unreliable when S(k_min) <= 0, when S does
        not grow from k_min to 2 k_min, or when K_b < 1/2 (insulating side).

        :param dd: density fluctuation table of a periodic chain.
        :param positions: site positions.
        :param float period: (optional) lattice period d.
        :rtype: :class:`latscat.Scattering.LuttingerEstimate`
        '''
        dd = Scattering._check_dd(dd)
        sites = len(dd)
        k_min = 2.0 * np.pi / (sites * period)
        s1 = Scattering.structure_factor(dd, k_min, positions)
        s2 = Scattering.structure_factor(dd, 2.0 * k_min, positions)
        value = np.pi * s1 / k_min
        reasons = []
        if s1 <= 0:
            reasons.append('S(k_min) <= 0')
        if s2 < s1:
            reasons.append('S(k) not increasing at small k')
        if value < 0.5:
            reasons.append('K_b < 1/2, insulating side')
        if reasons:
            logger.info('Luttinger estimate %.6g flagged: %s', value,
                        '; '.join(reasons))
        return LuttingerEstimate(value, s1, k_min, not reasons,
                                 '; '.join(reasons))

    @staticmethod
    def photon_rate(
                omega0: float,
                delta_a: float,
                gamma: float,
                site_count: int,
                variance: float
            ) -> float:
        '''n_Phi = (Omega0 / Delta_a)^2 Gamma K (<n^2> - <n>^2) / 8.

        Rates share the unit of gamma (s^-1 for a rate in s^-1). Warns when
        |Delta_a| <= 10 Gamma, outside the off-resonant regime.
        '''
        if delta_a == 0:
            raise ConstraintViolationError('delta_a must be nonzero')
        if abs(delta_a) <= Scattering.RESONANCE_FACTOR * gamma:
            warnings.warn(
                f'|delta_a| = {abs(delta_a):.3g} is within '
                f'{Scattering.RESONANCE_FACTOR:g} gamma of resonance; the '
                f'off-resonant rate formula is unreliable', RuntimeWarning)
        return (omega0 / delta_a) ** 2 * gamma * site_count / 8.0 * variance

    @staticmethod
    def infer_matter_quadratures(
                quadrature_mean: float,
                intensity: float,
                density: float,
                site_count: int,
                c_magnitude: float,
                ft_w1_pi: float,
                ft_w1_2pi: float,
                sign: int = -1
            ) -> dict:
        '''Recover Phi^2, <b^2> and both matter quadrature variances from a
        diffraction-maximum quadrature mean and a diffraction-minimum
        intensity, given the density from a density measurement.

        The intensity fixes (<b^2> - Phi^2) only up to sign; ``sign`` picks
        the branch, negative for number-squeezed repulsive ground states.
        '''
        bonds = site_count - 1
        phi2 = quadrature_mean / (ft_w1_2pi * bonds)
        scale = 2.0 * c_magnitude ** 2 * bonds * ft_w1_pi ** 2
        excess = density - phi2
        square = intensity / scale - excess * (1.0 + excess)
        if square < 0:
            if square < -1e-9 * max(1.0, intensity / scale):
                raise NumericalError(
                    f'inconsistent inputs: (<b^2> - Phi^2)^2 = {square:.3e}')
            square = 0.0
        anomalous = np.copysign(np.sqrt(square), sign)
        return {
            'phi2': phi2,
            'b2': phi2 + anomalous,
            'var_x0': 0.25 + (excess + anomalous) / 2.0,
            'var_xpi2': 0.25 + (excess - anomalous) / 2.0,
        }
