import numpy as np

from latscat.LatScatException import ConstraintViolationError


class DisorderSpec:
    '''
    Quasiperiodic superlattice: eps_i = V cos(2 pi r i + offset), added to
    the chain Hamiltonian as sum_i eps_i n_i.
    '''

    def __init__(
                self,
                strength: float,
                ratio: float = 0.77,
                offset: float = 0.0
            ) -> None:
        '''
        :param float strength: V, same energy unit as the chain couplings.
        :param float ratio: (optional) superlattice to lattice period ratio r.
        :param float offset: (optional) superlattice phase in radians.
        '''
        if strength < 0:
            raise ConstraintViolationError(
                f'disorder strength >= 0 required, got {strength}')
        self._strength = float(strength)
        self._ratio = float(ratio)
        self._offset = float(offset)

    def __repr__(self) -> str:
        return (f'DisorderSpec(strength={self._strength:.6g}, '
                f'ratio={self._ratio:.6g}, offset={self._offset:.6g})')

    def __eq__(self, other) -> bool:
        return isinstance(other, DisorderSpec) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def strength(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._strength

    @property
    def ratio(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._ratio

    @property
    def offset(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._offset

    @property
    def key(self) -> tuple:
        return (self._strength, self._ratio, self._offset)

    def energies(self, sites: int) -> np.ndarray:
        '''On-site energies eps_i for i = 0..M-1.'''
        i = np.arange(sites)
        return self._strength * np.cos(2 * np.pi * self._ratio * i
                                       + self._offset)
