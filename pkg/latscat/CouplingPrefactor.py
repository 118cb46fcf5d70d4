import numpy as np
from scipy import constants

from latscat.LatScatException import ConstraintViolationError


class CouplingPrefactor:
    '''
    Complex prefactor C linking the scattered light to the atomic operator:
    a1 = C F in a cavity, E1 = C_E F in free space.
    '''

    VARIANTS = ('cavity', 'free_space', 'unit')

    def __init__(self, variant: str, value: complex, parameters: dict) -> None:
        if variant not in self.VARIANTS:
            raise ConstraintViolationError(
                f'variant must be one of {self.VARIANTS}, got {variant!r}')
        self._variant = variant
        self._value = complex(value)
        self._parameters = dict(parameters)

    @classmethod
    def cavity(
                cls,
                g0: float,
                g1: float,
                delta_a: float,
                delta_p: float,
                kappa: float,
                a0: complex
            ) -> 'CouplingPrefactor':
        '''C = U10 a0 / (Delta_p + i kappa) with U10 = g1 g0 / Delta_a.

        All rates share one unit; a0 is the probe amplitude.
        '''
        if delta_a == 0:
            raise ConstraintViolationError('delta_a must be nonzero')
        if kappa < 0:
            raise ConstraintViolationError('kappa >= 0 required')
        if delta_p == 0 and kappa == 0:
            raise ConstraintViolationError(
                'delta_p + i kappa must be nonzero')
        u10 = g1 * g0 / delta_a
        value = u10 * a0 / (delta_p + 1j * kappa)
        return cls('cavity', value, {
            'g0': g0, 'g1': g1, 'delta_a': delta_a, 'delta_p': delta_p,
            'kappa': kappa, 'a0': a0})

    @classmethod
    def free_space(
                cls,
                dipole: float,
                field: float,
                omega_a: float,
                delta_a: float,
                distance: float
            ) -> 'CouplingPrefactor':
        '''C_E = omega_a^2 d_A^2 E0 / (8 pi hbar eps0 c^2 Delta_a r), SI units.

        Taken real and positive; the sign of Delta_a only shifts the
        quadrature phase and is absorbed into the local oscillator.
        '''
        if delta_a == 0 or distance <= 0:
            raise ConstraintViolationError(
                'delta_a != 0 and distance > 0 required')
        value = omega_a ** 2 * dipole ** 2 * field / (
            8.0 * np.pi * constants.hbar * constants.epsilon_0
            * constants.c ** 2 * delta_a * distance)
        return cls('free_space', abs(value), {
            'dipole': dipole, 'field': field, 'omega_a': omega_a,
            'delta_a': delta_a, 'distance': distance})

    @classmethod
    def unit(cls, magnitude: float = 1.0) -> 'CouplingPrefactor':
        '''Real prefactor of given magnitude (the CLI default |C| = 1).'''
        return cls('unit', magnitude, {'magnitude': magnitude})

    @property
    def variant(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._variant

    @property
    def value(self) -> complex:
        '''
        :type: :class:`complex`
        '''
        return self._value

    @property
    def magnitude(self) -> float:
        '''
        :type: :class:`float`
        '''
        return abs(self._value)

    @property
    def phase(self) -> float:
        '''
        phi_C in radians.

        :type: :class:`float`
        '''
        return float(np.angle(self._value))

    @property
    def parameters(self) -> dict:
        '''
        :type: :class:`dict`
        '''
        return self._parameters

    def quadrature_phase(self, lo_phase: float) -> float:
        '''beta = phi - phi_C for a local oscillator phase phi.'''
        return lo_phase - self.phase
